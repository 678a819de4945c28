// cli.cpp: Config parsing, command dispatch and report emission

#include "pseudomode_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "pseudomode/drive.hpp"
#include "pseudomode/fit.hpp"
#include "pseudomode/memory.hpp"
#include "pseudomode/reduction.hpp"
#include "pseudomode/resolvent.hpp"

namespace pseudomode::cli {

namespace {

using io::format_integer;
using io::format_number;

std::string join(const std::string& path, const std::string& key) { return path + "." + key; }

// Runs f(i) for i in [0, n) on up to `threads` workers. Each index writes its
// own slot, so the result does not depend on the thread count.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& f)
{
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string fock_cell(const FockState& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out;
}

FrequencyWindow get_window(const Json& block, const std::string& path)
{
    const auto p = join(path, "window");
    const auto& w = io::require(block, "window", path);
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
        throw ConfigError(p, "expected [lower, upper]");
    }
    const FrequencyWindow win{w[0].get<double>(), w[1].get<double>()};
    if (!(win.upper > win.lower)) throw ConfigError(p, "window must be nonempty (lower < upper)");
    return win;
}

std::size_t get_count(const Json& block, const std::string& key, const std::string& path, std::size_t fallback,
                      std::size_t minimum)
{
    if (!block.contains(key)) return fallback;
    const auto v = io::get_integer(block, key, path);
    if (v < static_cast<std::int64_t>(minimum)) {
        throw ConfigError(join(path, key), "must be at least " + std::to_string(minimum));
    }
    return static_cast<std::size_t>(v);
}

const Json& command_block(const Json& j, Command c)
{
    const std::string key(to_string(c));
    return io::require(j, key, "");
}

const ModeNetwork& need_network(const RunConfig& c)
{
    if (!c.network) throw ConfigError("network", "required by command " + std::string(to_string(c.command)));
    return *c.network;
}

// ---- commands ------------------------------------------------------------

void run_sector(const RunConfig& c, std::ostream& out)
{
    const auto& net = need_network(c);
    const Charges q = c.sector.charges ? *c.sector.charges : charges_of(net, *c.sector.state);
    const auto sector = enumerate_sector(net, q);
    const auto ev = chain_eigenvalues(sector);
    if (c.output_format == OutputFormat::Structured) {
        Json j{{"command", "sector"}, {"sector", io::sector_to_json(sector)}, {"eigenvalues", ev}};
        out << io::dump(j);
        return;
    }
    io::Table t({"r", "state", "energy [freq]", "jump_to_next [freq]", "eigenvalue [freq]"});
    for (std::size_t r = 0; r < sector.dimension(); ++r) {
        t.row({format_integer(static_cast<std::int64_t>(r)), fock_cell(sector.states[r]),
               format_number(sector.diagonal_energies[r]),
               r + 1 < sector.dimension() ? format_number(sector.jumps[r]) : "", format_number(ev[r])});
    }
    t.write(out);
}

void run_poles(const RunConfig& c, std::ostream& out)
{
    const auto ch = reduce(need_network(c), c.poles.source);
    if (c.output_format == OutputFormat::Structured) {
        out << io::dump(Json{{"command", "poles"}, {"channel", io::channel_to_json(ch)}});
        return;
    }
    io::Table t({"case", "source", "omega_alpha [freq]", "omega_beta [freq]", "m2 [freq^2]", "z_lower [freq]",
                 "z_upper [freq]", "reference_energy [freq]", "validity"});
    t.row({std::string(to_string(ch.kind)), fock_cell(ch.source), format_number(ch.omega_alpha),
           format_number(ch.omega_beta), format_number(ch.m2), format_number(ch.poles.lower.real()),
           format_number(ch.poles.upper.real()), format_number(ch.reference_energy),
           std::string(to_string(ch.validity))});
    t.write(out);
}

void run_reduce(const RunConfig& c, std::ostream& out)
{
    const auto ch = reduce(need_network(c), c.reduce.source);
    const auto& p = c.reduce;
    const double eta = p.eta ? *p.eta : 1e-3 * p.window.width();
    std::vector<double> omega(p.points);
    std::vector<Complex> green(p.points), sigma(p.points);
    parallel_for(p.points, c.threads, [&](std::size_t i) {
        omega[i] = p.window.lower + p.window.width() * static_cast<double>(i) / static_cast<double>(p.points - 1);
        const ComplexFrequency z(Complex{omega[i], eta});
        sigma[i] = channel_self_energy(ch, z);
        green[i] = channel_green(ch, z);
    });
    if (c.output_format == OutputFormat::Structured) {
        Json g = Json::array(), s = Json::array();
        for (std::size_t i = 0; i < p.points; ++i) {
            g.push_back(io::complex_to_json(green[i]));
            s.push_back(io::complex_to_json(sigma[i]));
        }
        out << io::dump(Json{{"command", "reduce"},
                             {"channel", io::channel_to_json(ch)},
                             {"eta", eta},
                             {"omega", omega},
                             {"green", g},
                             {"self_energy", s}});
        return;
    }
    io::Table t({"omega [freq]", "eta [freq]", "re_G [1/freq]", "im_G [1/freq]", "re_sigma [freq]", "im_sigma [freq]"});
    for (std::size_t i = 0; i < p.points; ++i) {
        t.row({format_number(omega[i]), format_number(eta), format_number(green[i].real()),
               format_number(green[i].imag()), format_number(sigma[i].real()), format_number(sigma[i].imag())});
    }
    t.write(out);
}

void run_dynamics(const RunConfig& c, std::ostream& out)
{
    const auto& p = c.dynamics;
    PoleResidueSet kernel;
    double omega_alpha = p.omega_alpha;
    if (p.source) {
        const auto ch = reduce(need_network(c), *p.source);
        kernel = channel_kernel(ch);
        omega_alpha = ch.omega_alpha;
    } else {
        kernel = *p.kernel;
    }
    EquivalenceReport rep;
    double dt = 0.0, order = 0.0;
    bool converged = false;
    if (p.dt) {
        dt = *p.dt;
        rep = equivalence_report(omega_alpha, kernel, p.c0, p.T, dt);
    } else {
        auto conv = converge_equivalence(omega_alpha, kernel, p.c0, p.T, p.tolerance);
        rep = std::move(conv.report);
        dt = conv.dt;
        order = conv.observed_order;
        converged = true;
    }
    if (c.output_format == OutputFormat::Structured) {
        Json v = Json::array(), s = Json::array();
        for (std::size_t n = 0; n < rep.volterra.t.size(); ++n) {
            v.push_back(io::complex_to_json(rep.volterra.c[n]));
            s.push_back(io::complex_to_json(rep.pseudomode.c[n]));
        }
        Json j{{"command", "dynamics"},
               {"omega_alpha", omega_alpha},
               {"kernel", io::pole_residue_to_json(kernel)},
               {"dt", dt},
               {"t", rep.volterra.t},
               {"volterra", v},
               {"pseudomode", s},
               {"max_deviation", rep.max_deviation},
               {"flagged", rep.flagged}};
        if (converged) j["observed_order"] = order;
        out << io::dump(j);
        return;
    }
    io::Table t({"t [1/freq]", "re_c_volterra", "im_c_volterra", "re_c_pseudomode", "im_c_pseudomode",
                 "abs_deviation"});
    for (std::size_t n = 0; n < rep.volterra.t.size(); ++n) {
        const auto a = rep.volterra.c[n], b = rep.pseudomode.c[n];
        t.row({format_number(rep.volterra.t[n]), format_number(a.real()), format_number(a.imag()),
               format_number(b.real()), format_number(b.imag()), format_number(std::abs(a - b))});
    }
    t.write(out);
}

void run_fit(const RunConfig& c, std::ostream& out)
{
    const auto& p = c.fit;
    std::vector<FrequencySample> samples = p.samples;
    std::function<Complex(Complex)> truth;
    FitOptions options;

    switch (p.source) {
    case FitParams::Source::Kernel:
        truth = [&](Complex z) { return self_energy_eval(p.kernel, z); };
        break;
    case FitParams::Source::Density: {
        if (!c.drive) throw ConfigError("drive", "required by fit.source = density");
        const DriveSpec s = *c.drive;
        validate(s);
        // Background and drive Lorentzian continued off the real axis; the
        // delta line is a weight, not a sampled function.
        truth = [s](Complex z) {
            using std::numbers::pi;
            const double W = s.cutoff, h = s.g_eb / 2.0;
            const Complex ohmic = 2.0 * s.mass * s.g_sb / pi * z * W * W / (W * W + z * z);
            const Complex lor = s.a_rf * s.a_rf / (2.0 * pi) * h / ((z - s.omega_rf) * (z - s.omega_rf) + h * h);
            return ohmic + lor;
        };
        options.causal = false;
        break;
    }
    case FitParams::Source::Samples:
        break;
    }
    if (truth) {
        samples.clear();
        for (std::size_t k = 0; k < p.points; ++k) {
            const double w = p.window.lower + p.window.width() * static_cast<double>(k) / static_cast<double>(p.points - 1);
            samples.push_back({w, truth(Complex{w, 0.0})});
        }
    }
    const auto fit = fit_rational(samples, p.n_poles, p.window, options);

    std::optional<FitErrorBound> bound;
    if (truth) {
        const auto g_fit = [&](Complex z) { return 1.0 / (z - p.omega_alpha - self_energy_eval(fit.set, z)); };
        const auto delta = [&](Complex z) { return truth(z) - self_energy_eval(fit.set, z); };
        bound = fit_error_bound(g_fit, delta, p.window, p.bound_points);
    }

    if (c.output_format == OutputFormat::Structured) {
        Json j{{"command", "fit"},
               {"fit", io::pole_residue_to_json(fit.set)},
               {"residual", fit.residual},
               {"iterations", fit.iterations},
               {"converged", fit.converged},
               {"reflections", fit.reflections}};
        if (bound) {
            j["error_bound"] = Json{{"bound", bound->bound},
                                    {"eta", bound->eta},
                                    {"at_omega", bound->at_omega},
                                    {"controlled", bound->controlled()}};
        } else {
            j["error_bound"] = nullptr;
        }
        out << io::dump(j);
        return;
    }
    io::Table t({"term", "re_pole [freq]", "im_pole [freq]", "re_residue [freq^2]", "im_residue [freq^2]",
                 "residual", "error_bound"});
    for (std::size_t l = 0; l < fit.set.size(); ++l) {
        const auto& term = fit.set.terms[l];
        t.row({format_integer(static_cast<std::int64_t>(l)), format_number(term.pole.real()),
               format_number(term.pole.imag()), format_number(term.residue.real()), format_number(term.residue.imag()),
               format_number(fit.residual), bound ? format_number(bound->bound) : ""});
    }
    t.write(out);
}

void run_displace(const RunConfig& c, std::ostream& out)
{
    const auto& net = need_network(c);
    const auto& p = c.displace;
    CollapseOptions opt;
    opt.effective_coupling = p.effective_coupling;
    std::vector<CollapseRow> rows(p.betas.size());
    parallel_for(p.betas.size(), c.threads, [&](std::size_t i) {
        rows[i] = collapse_diagnostic(net, {p.betas[i]}, p.source, opt).front();
    });

    std::optional<StiffPumpReduction> pump;
    if (c.drive) pump = stiff_pump_reduce(net, displacement_amplitude(*c.drive)).reduction;

    if (c.output_format == OutputFormat::Structured) {
        Json r = Json::array();
        for (const auto& row : rows) r.push_back(io::collapse_row_to_json(row));
        Json j{{"command", "displace"}, {"k_rule", "round(|beta|^2)"}, {"rows", r}};
        if (rows.size() >= 2) {
            std::vector<double> x, y;
            for (const auto& row : rows) {
                x.push_back(row.beta_magnitude);
                y.push_back(row.mismatch);
            }
            if (std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0; })) j["loglog_slope"] = loglog_slope(x, y);
        }
        j["expected_order"] = collapse_expected_order(p.effective_coupling.has_value());
        if (pump) j["stiff_pump"] = io::stiff_pump_to_json(*pump);
        out << io::dump(j);
        return;
    }
    io::Table t({"beta_abs", "k", "parent_z_upper [freq]", "parent_z_lower [freq]", "reduced_z_upper [freq]",
                 "reduced_z_lower [freq]", "mismatch [freq]"});
    for (const auto& row : rows) {
        t.row({format_number(row.beta_magnitude), format_integer(row.k), format_number(row.parent.upper.real()),
               format_number(row.parent.lower.real()), format_number(row.reduced.upper.real()),
               format_number(row.reduced.lower.real()), format_number(row.mismatch)});
    }
    t.write(out);
}

// ---- parsing -------------------------------------------------------------

Charges get_charges(const Json& v, const std::string& path)
{
    if (!v.is_array() || v.empty() || v.size() > 3) throw ConfigError(path, "expected 1 to 3 integers");
    Charges q{};
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer()) throw ConfigError(path + "[" + std::to_string(i) + "]", "expected an integer");
        q[i] = v[i].get<std::int64_t>();
    }
    return q;
}

std::vector<FrequencySample> get_samples(const Json& v, const std::string& path)
{
    if (!v.is_array()) throw ConfigError(path, "expected an array of [omega, re, im]");
    std::vector<FrequencySample> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        const auto& s = v[i];
        if (!s.is_array() || s.size() != 3 || !s[0].is_number() || !s[1].is_number() || !s[2].is_number()) {
            throw ConfigError(p, "expected [omega, re, im]");
        }
        out.push_back({s[0].get<double>(), Complex{s[1].get<double>(), s[2].get<double>()}});
    }
    return out;
}

void parse_command(const Json& j, RunConfig& c)
{
    const std::string path(to_string(c.command));
    const Json& b = command_block(j, c.command);
    if (!b.is_object()) throw ConfigError(path, "expected an object");
    switch (c.command) {
    case Command::Sector:
        if (b.contains("charges")) {
            c.sector.charges = get_charges(b.at("charges"), join(path, "charges"));
        } else if (b.contains("state")) {
            c.sector.state = io::get_fock_state(b.at("state"), join(path, "state"));
        } else {
            throw ConfigError(join(path, "charges"), "missing (give charges or state)");
        }
        break;
    case Command::Poles:
        c.poles.source = io::get_fock_state(io::require(b, "source", path), join(path, "source"));
        break;
    case Command::Reduce:
        c.reduce.source = io::get_fock_state(io::require(b, "source", path), join(path, "source"));
        c.reduce.window = get_window(b, path);
        c.reduce.points = get_count(b, "points", path, 201, 2);
        if (b.contains("eta")) {
            c.reduce.eta = io::get_number(b, "eta", path);
            if (!(*c.reduce.eta > 0.0)) throw ConfigError(join(path, "eta"), "must be positive");
        }
        break;
    case Command::Dynamics: {
        auto& d = c.dynamics;
        if (b.contains("source")) {
            d.source = io::get_fock_state(b.at("source"), join(path, "source"));
        } else if (b.contains("kernel")) {
            d.kernel = io::pole_residue_from_json(b.at("kernel"), join(path, "kernel"));
            d.omega_alpha = io::get_number_or(b, "omega_alpha", path, 0.0);
        } else {
            throw ConfigError(join(path, "source"), "missing (give source or kernel)");
        }
        if (b.contains("c0")) d.c0 = io::get_complex(b.at("c0"), join(path, "c0"));
        d.T = io::get_number(b, "T", path);
        if (!(d.T > 0.0)) throw ConfigError(join(path, "T"), "must be positive");
        if (b.contains("dt")) {
            d.dt = io::get_number(b, "dt", path);
            if (!(*d.dt > 0.0)) throw ConfigError(join(path, "dt"), "must be positive");
        }
        d.tolerance = io::get_number_or(b, "tolerance", path, 1e-6);
        if (!(d.tolerance > 0.0)) throw ConfigError(join(path, "tolerance"), "must be positive");
        break;
    }
    case Command::Fit: {
        auto& f = c.fit;
        const auto src = b.contains("source") ? io::get_string(b, "source", path) : std::string("kernel");
        if (src == "kernel") {
            f.source = FitParams::Source::Kernel;
            f.kernel = io::pole_residue_from_json(io::require(b, "kernel", path), join(path, "kernel"));
        } else if (src == "density") {
            f.source = FitParams::Source::Density;
        } else if (src == "samples") {
            f.source = FitParams::Source::Samples;
            f.samples = get_samples(io::require(b, "samples", path), join(path, "samples"));
        } else {
            throw ConfigError(join(path, "source"), "expected kernel, density or samples");
        }
        f.window = get_window(b, path);
        f.n_poles = get_count(b, "n_poles", path, 1, 1);
        f.points = get_count(b, "points", path, 401, 2);
        f.bound_points = get_count(b, "bound_points", path, 2001, 2);
        f.omega_alpha = io::get_number_or(b, "omega_alpha", path, 0.0);
        break;
    }
    case Command::Displace: {
        auto& d = c.displace;
        const auto& betas = io::require(b, "betas", path);
        if (!betas.is_array() || betas.empty()) throw ConfigError(join(path, "betas"), "expected a nonempty array");
        for (std::size_t i = 0; i < betas.size(); ++i) {
            if (!betas[i].is_number()) throw ConfigError(join(path, "betas") + "[" + std::to_string(i) + "]", "expected a number");
            d.betas.push_back(betas[i].get<double>());
        }
        d.source = io::get_fock_state(io::require(b, "source", path), join(path, "source"));
        if (b.contains("effective_coupling")) d.effective_coupling = io::get_number(b, "effective_coupling", path);
        break;
    }
    }
}

} // namespace

std::string_view to_string(Command c)
{
    switch (c) {
    case Command::Sector: return "sector";
    case Command::Poles: return "poles";
    case Command::Reduce: return "reduce";
    case Command::Dynamics: return "dynamics";
    case Command::Fit: return "fit";
    case Command::Displace: return "displace";
    }
    return "?";
}

Command command_from_string(std::string_view name)
{
    for (auto c : {Command::Sector, Command::Poles, Command::Reduce, Command::Dynamics, Command::Fit, Command::Displace}) {
        if (to_string(c) == name) return c;
    }
    throw ConfigError("command", "unknown command '" + std::string(name) +
                                     "' (expected sector, poles, reduce, dynamics, fit or displace)");
}

RunConfig parse_config(const Json& j)
{
    if (!j.is_object()) throw ConfigError("(root)", "expected an object");
    RunConfig c;
    c.command = command_from_string(io::get_string(j, "command", ""));
    if (j.contains("network")) c.network = io::network_from_json(j.at("network"));
    if (j.contains("drive")) c.drive = io::drive_from_json(j.at("drive"));
    c.threads = get_count(j, "threads", "", 1, 1);
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (!o.is_object()) throw ConfigError("output", "expected an object");
        if (o.contains("path")) c.output_path = io::get_string(o, "path", "output");
        if (o.contains("format")) {
            const auto f = io::get_string(o, "format", "output");
            if (f == "delimited") c.output_format = OutputFormat::Delimited;
            else if (f == "structured") c.output_format = OutputFormat::Structured;
            else throw ConfigError("output.format", "expected delimited or structured");
        }
    }
    parse_command(j, c);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        // nlohmann reports "line L, column C" in the message.
        throw ConfigError(path, e.what());
    }
    return parse_config(j);
}

void execute(const RunConfig& c, std::ostream& out)
{
    switch (c.command) {
    case Command::Sector: run_sector(c, out); break;
    case Command::Poles: run_poles(c, out); break;
    case Command::Reduce: run_reduce(c, out); break;
    case Command::Dynamics: run_dynamics(c, out); break;
    case Command::Fit: run_fit(c, out); break;
    case Command::Displace: run_displace(c, out); break;
    }
}

namespace {

int guarded(std::ostream& err, const std::function<void()>& body)
{
    try {
        body();
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

void emit(const RunConfig& c, std::ostream& fallback)
{
    if (c.output_path.empty()) {
        execute(c, fallback);
        return;
    }
    // Render fully before touching the file so a failed run leaves no partial output.
    std::ostringstream buffer;
    execute(c, buffer);
    std::ofstream file(c.output_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + c.output_path);
    file << buffer.str();
}

} // namespace

int run(const RunConfig& config, std::ostream& fallback, std::ostream& err)
{
    return guarded(err, [&] { emit(config, fallback); });
}

int run_file(const std::string& config_path, std::ostream& fallback, std::ostream& err,
             const std::optional<std::string>& output_override, const std::optional<OutputFormat>& format_override)
{
    return guarded(err, [&] {
        auto c = load_config(config_path);
        if (output_override) c.output_path = *output_override;
        if (format_override) c.output_format = *format_override;
        emit(c, fallback);
    });
}

} // namespace pseudomode::cli

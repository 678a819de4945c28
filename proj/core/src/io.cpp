// io.cpp: JSON schemas and delimited tables

#include "pseudomode/io.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace pseudomode::io {

namespace {

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

const Json& require_array(const Json& value, const std::string& path)
{
    if (!value.is_array()) throw ConfigError(path, "expected an array");
    return value;
}

double as_number(const Json& value, const std::string& path)
{
    if (!value.is_number()) throw ConfigError(path, "expected a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

Json pole_pair_to_json(const PolePair& p)
{
    return Json{{"lower", complex_to_json(p.lower)}, {"upper", complex_to_json(p.upper)}};
}

PolePair pole_pair_from_json(const Json& j, const std::string& path)
{
    return {get_complex(require(j, "lower", path), join(path, "lower")),
            get_complex(require(j, "upper", path), join(path, "upper"))};
}

Json fock_to_json(const FockState& s) { return Json(s.n); }

void dump_value(const Json& j, std::string& out, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) { out += "{}"; return; }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + Json(it.key()).dump() + ": ";
            dump_value(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) { out += "[]"; return; }
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump_value(j[i], out, indent + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            dump_value(j[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case Json::value_t::number_float: out += format_number(j.get<double>()); return;
    default: out += j.dump(); return;
    }
}

} // namespace

const Json& require(const Json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) throw ConfigError(join(path, key), "missing required field");
    return *it;
}

double get_number(const Json& obj, const std::string& key, const std::string& path)
{
    return as_number(require(obj, key, path), join(path, key));
}

double get_number_or(const Json& obj, const std::string& key, const std::string& path, double fallback)
{
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return as_number(obj.at(key), join(path, key));
}

std::int64_t get_integer(const Json& obj, const std::string& key, const std::string& path)
{
    const auto& v = require(obj, key, path);
    if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
    return v.get<std::int64_t>();
}

std::string get_string(const Json& obj, const std::string& key, const std::string& path)
{
    const auto& v = require(obj, key, path);
    if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
    return v.get<std::string>();
}

Complex get_complex(const Json& value, const std::string& path)
{
    if (value.is_number()) return {as_number(value, path), 0.0};
    if (!value.is_array() || value.size() != 2) throw ConfigError(path, "expected [re, im]");
    return {as_number(value[0], index_path(path, 0)), as_number(value[1], index_path(path, 1))};
}

FockState get_fock_state(const Json& value, const std::string& path)
{
    require_array(value, path);
    FockState s;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number_integer()) throw ConfigError(index_path(path, i), "expected an integer");
        s.n.push_back(value[i].get<std::int64_t>());
    }
    return s;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json network_to_json(const ModeNetwork& net)
{
    Json modes = Json::array();
    for (const auto& m : net.modes()) modes.push_back({{"omega", m.omega}, {"kerr", m.kerr}});
    Json chi = Json::array();
    for (Eigen::Index i = 0; i < net.cross_kerr().rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < net.cross_kerr().cols(); ++j) row.push_back(net.cross_kerr()(i, j));
        chi.push_back(row);
    }
    Json j{{"modes", modes},
           {"cross_kerr", chi},
           {"coupling", {{"kind", std::string(to_string(net.kind()))}, {"g", net.g()}}}};
    if (net.drive_mode()) j["drive_mode"] = *net.drive_mode();
    return j;
}

ModeNetwork network_from_json(const Json& j, const std::string& path)
{
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    const auto& modes_json = require_array(require(j, "modes", path), join(path, "modes"));
    std::vector<Mode> modes;
    for (std::size_t i = 0; i < modes_json.size(); ++i) {
        const auto p = index_path(join(path, "modes"), i);
        modes.push_back({get_number(modes_json[i], "omega", p), get_number_or(modes_json[i], "kerr", p, 0.0)});
    }
    const auto n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(n, n);
    if (j.contains("cross_kerr")) {
        const auto p = join(path, "cross_kerr");
        const auto& rows = require_array(j.at("cross_kerr"), p);
        if (static_cast<Eigen::Index>(rows.size()) != n) {
            throw ConfigError(p, "expected " + std::to_string(n) + " rows");
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            const auto rp = index_path(p, static_cast<std::size_t>(r));
            const auto& row = require_array(rows[static_cast<std::size_t>(r)], rp);
            if (static_cast<Eigen::Index>(row.size()) != n) {
                throw ConfigError(rp, "expected " + std::to_string(n) + " entries");
            }
            for (Eigen::Index c = 0; c < n; ++c) {
                chi(r, c) = as_number(row[static_cast<std::size_t>(c)], index_path(rp, static_cast<std::size_t>(c)));
            }
        }
    }
    const auto cp = join(path, "coupling");
    const auto& coupling = require(j, "coupling", path);
    CouplingTerm term;
    try {
        term.kind = coupling_kind_from_string(get_string(coupling, "kind", cp));
    } catch (const ConfigError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ConfigError(join(cp, "kind"), e.what());
    }
    term.g = get_number(coupling, "g", cp);
    std::optional<std::size_t> drive;
    if (j.contains("drive_mode") && !j.at("drive_mode").is_null()) {
        const auto v = get_integer(j, "drive_mode", path);
        if (v < 0) throw ConfigError(join(path, "drive_mode"), "must be non-negative");
        drive = static_cast<std::size_t>(v);
    }
    try {
        return ModeNetwork(std::move(modes), std::move(chi), term, drive);
    } catch (const ConfigError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ConfigError(path, e.what());
    }
}

Json drive_to_json(const DriveSpec& s)
{
    return Json{{"g_sb", s.g_sb},     {"mass", s.mass},     {"cutoff", s.cutoff},
                {"g_e", s.g_e},       {"a_rf", s.a_rf},     {"omega_rf", s.omega_rf},
                {"g_eb", s.g_eb},     {"kappa_d", s.kappa_d}, {"omega_d", s.omega_d}};
}

DriveSpec drive_from_json(const Json& j, const std::string& path)
{
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    DriveSpec s;
    s.g_sb = get_number_or(j, "g_sb", path, 0.0);
    s.mass = get_number_or(j, "mass", path, 1.0);
    s.cutoff = get_number_or(j, "cutoff", path, 1.0);
    s.g_e = get_number_or(j, "g_e", path, 0.0);
    s.a_rf = get_number_or(j, "a_rf", path, 0.0);
    s.omega_rf = get_number_or(j, "omega_rf", path, 0.0);
    s.g_eb = get_number_or(j, "g_eb", path, 1.0);
    s.kappa_d = get_number_or(j, "kappa_d", path, 0.0);
    s.omega_d = get_number_or(j, "omega_d", path, 0.0);
    try {
        validate(s);
    } catch (const ValidationError& e) {
        throw ConfigError(path, e.what());
    }
    return s;
}

Json pole_residue_to_json(const PoleResidueSet& prs)
{
    Json terms = Json::array();
    for (const auto& t : prs.terms) {
        terms.push_back({{"pole", complex_to_json(t.pole)}, {"residue", complex_to_json(t.residue)}});
    }
    return Json{{"terms", terms}};
}

PoleResidueSet pole_residue_from_json(const Json& j, const std::string& path)
{
    const auto p = join(path, "terms");
    const auto& terms = require_array(require(j, "terms", path), p);
    PoleResidueSet prs;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto tp = index_path(p, i);
        prs.terms.push_back({get_complex(require(terms[i], "pole", tp), join(tp, "pole")),
                             get_complex(require(terms[i], "residue", tp), join(tp, "residue"))});
    }
    return prs;
}

Json sector_to_json(const SectorBasis& sector)
{
    Json states = Json::array();
    for (const auto& s : sector.states) states.push_back(fock_to_json(s));
    return Json{{"kind", std::string(to_string(sector.kind))},
                {"charges", Json(std::vector<std::int64_t>(sector.charges.begin(), sector.charges.end()))},
                {"states", states},
                {"diagonal_energies", sector.diagonal_energies},
                {"jumps", sector.jumps}};
}

SectorBasis sector_from_json(const Json& j, const std::string& path)
{
    SectorBasis sector;
    try {
        sector.kind = coupling_kind_from_string(get_string(j, "kind", path));
    } catch (const ConfigError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ConfigError(join(path, "kind"), e.what());
    }
    const auto q = get_fock_state(require(j, "charges", path), join(path, "charges"));
    if (q.size() != 3) throw ConfigError(join(path, "charges"), "expected three integers");
    sector.charges = {q[0], q[1], q[2]};
    const auto& states = require_array(require(j, "states", path), join(path, "states"));
    for (std::size_t i = 0; i < states.size(); ++i) {
        sector.states.push_back(get_fock_state(states[i], index_path(join(path, "states"), i)));
    }
    const auto read_vec = [&](const std::string& key) {
        const auto p = join(path, key);
        const auto& arr = require_array(require(j, key, path), p);
        std::vector<double> v;
        for (std::size_t i = 0; i < arr.size(); ++i) v.push_back(as_number(arr[i], index_path(p, i)));
        return v;
    };
    sector.diagonal_energies = read_vec("diagonal_energies");
    sector.jumps = read_vec("jumps");
    return sector;
}

Json channel_to_json(const ReducedChannel& ch)
{
    return Json{{"case", std::string(to_string(ch.kind))},
                {"source", fock_to_json(ch.source)},
                {"omega_alpha", ch.omega_alpha},
                {"omega_beta", ch.omega_beta},
                {"m2", ch.m2},
                {"poles", pole_pair_to_json(ch.poles)},
                {"reference_energy", ch.reference_energy},
                {"validity", std::string(to_string(ch.validity))}};
}

ReducedChannel channel_from_json(const Json& j, const std::string& path)
{
    ReducedChannel ch;
    const auto kind = get_string(j, "case", path);
    bool known = false;
    for (auto c : {ChannelCase::TwoModeBilinear, ChannelCase::ThreeWaveMixing,
                   ChannelCase::FourModeBilinear, ChannelCase::FourWaveParent}) {
        if (to_string(c) == kind) {
            ch.kind = c;
            known = true;
        }
    }
    if (!known) throw ConfigError(join(path, "case"), "unknown channel case '" + kind + "'");
    ch.source = get_fock_state(require(j, "source", path), join(path, "source"));
    ch.omega_alpha = get_number(j, "omega_alpha", path);
    ch.omega_beta = get_number(j, "omega_beta", path);
    ch.m2 = get_number(j, "m2", path);
    ch.poles = pole_pair_from_json(require(j, "poles", path), join(path, "poles"));
    ch.reference_energy = get_number(j, "reference_energy", path);
    const auto validity = get_string(j, "validity", path);
    if (validity == to_string(ChannelValidity::BoundaryExact)) ch.validity = ChannelValidity::BoundaryExact;
    else if (validity == to_string(ChannelValidity::LocalProjection)) ch.validity = ChannelValidity::LocalProjection;
    else throw ConfigError(join(path, "validity"), "unknown validity '" + validity + "'");
    return ch;
}

Json collapse_row_to_json(const CollapseRow& row)
{
    return Json{{"beta_magnitude", row.beta_magnitude},
                {"k", row.k},
                {"g4", row.g4},
                {"parent", pole_pair_to_json(row.parent)},
                {"reduced", pole_pair_to_json(row.reduced)},
                {"mismatch", row.mismatch},
                {"splitting", row.splitting}};
}

CollapseRow collapse_row_from_json(const Json& j, const std::string& path)
{
    CollapseRow row;
    row.beta_magnitude = get_number(j, "beta_magnitude", path);
    row.k = get_integer(j, "k", path);
    row.g4 = get_number(j, "g4", path);
    row.parent = pole_pair_from_json(require(j, "parent", path), join(path, "parent"));
    row.reduced = pole_pair_from_json(require(j, "reduced", path), join(path, "reduced"));
    row.mismatch = get_number(j, "mismatch", path);
    row.splitting = get_number(j, "splitting", path);
    return row;
}

Json stiff_pump_to_json(const StiffPumpReduction& red)
{
    return Json{{"beta", complex_to_json(red.beta)},
                {"g3_eff", complex_to_json(red.g3_eff)},
                {"stark_shifts", Json::array({red.stark_shifts[0], red.stark_shifts[1], red.stark_shifts[2]})}};
}

StiffPumpReduction stiff_pump_from_json(const Json& j, const std::string& path)
{
    StiffPumpReduction red;
    red.beta = get_complex(require(j, "beta", path), join(path, "beta"));
    red.g3_eff = get_complex(require(j, "g3_eff", path), join(path, "g3_eff"));
    const auto p = join(path, "stark_shifts");
    const auto& shifts = require_array(require(j, "stark_shifts", path), p);
    if (shifts.size() != 3) throw ConfigError(p, "expected three entries");
    for (std::size_t i = 0; i < 3; ++i) red.stark_shifts[i] = as_number(shifts[i], index_path(p, i));
    return red;
}

std::string dump(const Json& j)
{
    std::string out;
    dump_value(j, out, 0);
    out += "\n";
    return out;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

Table& Table::row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size()) {
        throw std::logic_error("table row has " + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(cells));
    return *this;
}

void Table::write(std::ostream& os) const
{
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    }
}

std::string format_number(double v)
{
    if (v == 0.0) return "0"; // also folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // Keep floats recognisable as floats when re-parsed.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string format_integer(std::int64_t v) { return std::to_string(v); }

} // namespace pseudomode::io

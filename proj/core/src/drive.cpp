// drive.cpp: Spectral density, Lamb-type shift and stiff-pump reduction

#include "pseudomode/drive.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pseudomode/errors.hpp"

namespace pseudomode {

namespace {

using std::numbers::pi;

constexpr double kQuadTolerance = 1e-13;

template <class F>
double integrate_finite(F f, double lo, double hi)
{
    if (!(hi > lo)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, kQuadTolerance);
}

template <class F>
double integrate_to_infinity(F f, double lo)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, lo, std::numeric_limits<double>::infinity(), kQuadTolerance);
}

// (2/pi) int_0^inf [L(w) - L(-w)] / w dw. The odd combination divided by w is
//   (a_rf^2 / 2 pi) (g_eb / 2) 4 w_rf / (((w - w_rf)^2 + h^2)((w + w_rf)^2 + h^2)),
// finite at w = 0.
double lorentzian_shift(const DriveSpec& spec)
{
    if (spec.a_rf == 0.0) return 0.0;
    const double a = spec.omega_rf;
    const double h = 0.5 * spec.g_eb;
    const double prefactor = (2.0 / pi) * (spec.a_rf * spec.a_rf / (2.0 * pi)) * h * 4.0 * a;
    const auto f = [=](double w) {
        return prefactor / (((w - a) * (w - a) + h * h) * ((w + a) * (w + a) + h * h));
    };
    const double upper = a + 50.0 * spec.g_eb;
    // Break points around the line so the adaptive rule resolves narrow peaks.
    const double lo = std::max(0.0, a - 10.0 * h);
    const double hi = std::min(upper, a + 10.0 * h);
    double sum = integrate_finite(f, 0.0, lo) + integrate_finite(f, lo, hi) + integrate_finite(f, hi, upper);
    sum += integrate_to_infinity(f, upper);
    return sum;
}

double coherent_line_shift(const DriveSpec& spec)
{
    const double weight = pi * spec.g_e * spec.g_e * spec.a_rf * spec.a_rf / 2.0;
    if (weight == 0.0) return 0.0;
    return (2.0 / pi) * weight / spec.omega_rf;
}

void check_line(const DriveSpec& spec)
{
    if (spec.a_rf > 0.0 && spec.omega_rf == 0.0) {
        throw DivergenceError("Lamb shift diverges: drive line at omega_rf = 0 with a_rf > 0");
    }
}

} // namespace

void validate(const DriveSpec& spec)
{
    const double fields[] = {spec.g_sb, spec.mass, spec.cutoff, spec.g_e, spec.a_rf,
                             spec.omega_rf, spec.g_eb, spec.kappa_d, spec.omega_d};
    for (double v : fields) {
        if (!std::isfinite(v)) throw ValidationError("drive parameters must be finite");
    }
    if (!(spec.cutoff > 0.0)) throw ValidationError("drive.cutoff must be positive");
    if (!(spec.g_eb > 0.0)) throw ValidationError("drive.g_eb must be positive");
    if (spec.kappa_d < 0.0) throw ValidationError("drive.kappa_d must be non-negative");
    if (spec.a_rf < 0.0) throw ValidationError("drive.a_rf must be non-negative");
}

SpectralDensityTerms spectral_density(const DriveSpec& spec, double omega)
{
    validate(spec);
    if (omega < 0.0) throw ValidationError("spectral density is defined for omega >= 0");
    const double W = spec.cutoff;
    const double h = 0.5 * spec.g_eb;
    const double dw = omega - spec.omega_rf;
    SpectralDensityTerms out;
    out.background = (2.0 * spec.mass * spec.g_sb / pi) * omega * W * W / (W * W + omega * omega);
    out.coherent_weight = pi * spec.g_e * spec.g_e * spec.a_rf * spec.a_rf / 2.0;
    out.lorentzian = (spec.a_rf * spec.a_rf / (2.0 * pi)) * h / (dw * dw + h * h);
    return out;
}

LambShift lamb_shift(const DriveSpec& spec)
{
    validate(spec);
    check_line(spec);
    LambShift out;
    out.ohmic = 2.0 * spec.mass * spec.g_sb * spec.cutoff / pi;
    out.coherent_line = coherent_line_shift(spec);
    out.lorentzian = lorentzian_shift(spec);
    return out;
}

LambShift lamb_shift_quadrature(const DriveSpec& spec)
{
    validate(spec);
    check_line(spec);
    LambShift out;
    const double W = spec.cutoff;
    const double prefactor = (2.0 / pi) * (2.0 * spec.mass * spec.g_sb / pi);
    // Ohmic D(w)/w = (2 m g_sb / pi) Omega^2 / (Omega^2 + w^2).
    const auto f = [=](double w) { return prefactor * W * W / (W * W + w * w); };
    if (prefactor != 0.0) out.ohmic = integrate_finite(f, 0.0, W) + integrate_to_infinity(f, W);
    out.coherent_line = coherent_line_shift(spec);
    out.lorentzian = lorentzian_shift(spec);
    return out;
}

Complex displacement_amplitude(const DriveSpec& spec)
{
    validate(spec);
    const double detuning = spec.omega_rf - spec.omega_d;
    if (detuning == 0.0 && spec.kappa_d == 0.0) {
        throw DivergenceError("displacement diverges: undamped drive mode driven on resonance");
    }
    return spec.g_e * spec.a_rf / Complex{detuning, 0.5 * spec.kappa_d};
}

StiffPumpResult stiff_pump_reduce(const ModeNetwork& net, Complex beta)
{
    if (net.kind() != CouplingKind::FourWave) {
        throw ValidationError("stiff_pump_reduce requires a four_wave network");
    }
    if (!net.drive_mode() || *net.drive_mode() != 3) {
        throw ValidationError("stiff_pump_reduce requires the drive mode designation drive_mode = 3");
    }
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw ValidationError("displacement amplitude must be finite");
    }
    constexpr std::size_t d = 3;
    const double occupation = std::norm(beta);

    StiffPumpReduction red;
    red.beta = beta;
    red.g3_eff = net.g() * std::conj(beta);
    std::vector<Mode> modes;
    for (std::size_t mu = 0; mu < 3; ++mu) {
        red.stark_shifts[mu] = net.chi(mu, d) * occupation;
        modes.push_back({net.omega(mu) + red.stark_shifts[mu], net.kerr(mu)});
    }
    Eigen::MatrixXd chi = net.cross_kerr().topLeftCorner(3, 3);
    ModeNetwork effective(std::move(modes), std::move(chi),
                          CouplingTerm{CouplingKind::ThreeWave, std::abs(red.g3_eff)});
    return {std::move(effective), red};
}

std::vector<CollapseRow> collapse_diagnostic(const ModeNetwork& net,
                                             const std::vector<double>& beta_magnitudes,
                                             const FockState& source,
                                             const CollapseOptions& options)
{
    if (net.kind() != CouplingKind::FourWave) {
        throw ValidationError("collapse_diagnostic requires a four_wave network");
    }
    if (source.size() != 3 || !source.physical()) {
        throw ValidationError("collapse_diagnostic source must hold three occupations (n, m, l)");
    }
    std::vector<CollapseRow> rows;
    for (double magnitude : beta_magnitudes) {
        if (!(magnitude > 0.0) || !std::isfinite(magnitude)) {
            throw ValidationError("beta magnitudes must be positive and finite");
        }
        const double occupation = magnitude * magnitude;
        if (occupation > static_cast<double>(kMaxSectorDimension)) {
            std::ostringstream os;
            os << "|beta|^2 = " << occupation << " exceeds the sector dimension limit "
               << kMaxSectorDimension;
            throw ValidationError(os.str());
        }
        CollapseRow row;
        row.beta_magnitude = magnitude;
        row.k = std::llround(occupation);
        row.g4 = options.effective_coupling ? *options.effective_coupling / magnitude : net.g();

        const ModeNetwork scaled = net.with_coupling_strength(row.g4);
        // Frame co-rotating with the Kerr-shifted pump: the classical drive
        // mode carries neither omega_d nor K_d; chi_{mu d} k stays explicit.
        auto modes = scaled.modes();
        modes[3] = {0.0, 0.0};
        const ModeNetwork parent_net(std::move(modes), scaled.cross_kerr(), scaled.coupling(), 3);
        const FockState parent_source{source[0], source[1], source[2], row.k};
        const auto parent = reduce_four_wave_parent(parent_net, parent_source);

        const auto stiff = stiff_pump_reduce(scaled, Complex{magnitude, 0.0});
        const auto reduced = reduce_three_mode(stiff.effective, source);

        row.parent = {parent.reference_energy + parent.poles.lower,
                      parent.reference_energy + parent.poles.upper};
        row.reduced = {reduced.reference_energy + reduced.poles.lower,
                       reduced.reference_energy + reduced.poles.upper};
        row.mismatch = std::max(std::abs(row.parent.lower - row.reduced.lower),
                                std::abs(row.parent.upper - row.reduced.upper));
        row.splitting = (reduced.poles.upper - reduced.poles.lower).real();
        rows.push_back(row);
    }
    return rows;
}

double collapse_expected_order(bool fixed_effective_coupling)
{
    return fixed_effective_coupling ? -2.0 : -1.0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw ValidationError("loglog_slope needs two equally long sequences of length >= 2");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("loglog_slope needs positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace pseudomode

// drive.hpp: Field-biased spectral density, Lamb-type shift, coherent
// displacement of the drive mode and the stiff-pump reduction

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "pseudomode/model.hpp"
#include "pseudomode/reduction.hpp"

namespace pseudomode {

struct DriveSpec {
    double g_sb{0.0};     // intrinsic system-bath strength
    double mass{1.0};     // effective mass m
    double cutoff{1.0};   // Lorentz-Drude cutoff Omega
    double g_e{0.0};      // field-bias strength
    double a_rf{0.0};     // drive amplitude
    double omega_rf{0.0}; // drive frequency
    double g_eb{1.0};     // drive-line width
    double kappa_d{0.0};  // drive-mode linewidth
    double omega_d{0.0};  // drive-mode frequency
};

// Throws ValidationError unless cutoff > 0, g_eb > 0, kappa_d >= 0, a_rf >= 0.
void validate(const DriveSpec& spec);

struct SpectralDensityTerms {
    double background{0.0};      // (2 m g_sb / pi) w Omega^2 / (Omega^2 + w^2)
    double coherent_weight{0.0}; // pi g_e^2 a_rf^2 / 2, a delta line located at omega_rf
    double lorentzian{0.0};      // (a_rf^2 / 2 pi) (g_eb/2) / ((w - omega_rf)^2 + (g_eb/2)^2)
};

SpectralDensityTerms spectral_density(const DriveSpec& spec, double omega);

struct LambShift {
    double ohmic{0.0};
    double coherent_line{0.0};
    double lorentzian{0.0};
    double total() const noexcept { return ohmic + coherent_line + lorentzian; }
};

// delta Omega^2 = (2/pi) int_0^inf D(w)/w dw, term by term:
//   ohmic          2 m g_sb Omega / pi                       (closed form)
//   coherent_line  g_e^2 a_rf^2 / omega_rf                   (delta line, analytic)
//   lorentzian     adaptive quadrature on [0, omega_rf + 50 g_eb] plus a
//                  semi-infinite tail, using the odd extension L(w) - L(-w)
//                  so the integrand stays finite at w = 0.
// Throws DivergenceError when omega_rf = 0 with a_rf > 0.
LambShift lamb_shift(const DriveSpec& spec);

// Same decomposition with the Ohmic part also integrated numerically.
LambShift lamb_shift_quadrature(const DriveSpec& spec);

// beta = g_e a_rf / (omega_rf - omega_d + i kappa_d / 2). Throws
// DivergenceError at undamped exact resonance.
Complex displacement_amplitude(const DriveSpec& spec);

struct StiffPumpReduction {
    Complex beta;
    Complex g3_eff;                    // g4 * conj(beta)
    std::array<double, 3> stark_shifts{}; // chi_{mu d} |beta|^2 for mu = a, b, c
};

struct StiffPumpResult {
    ModeNetwork effective;
    StiffPumpReduction reduction;
};

// Replaces d by the classical amplitude beta in g4 (a b c^dag d^dag + h.c.)
// and drops the fluctuation. The three-mode network keeps K and the mutual
// chi of a, b, c; frequencies shift by chi_{mu d}|beta|^2 and the stored
// coupling is |g3| (phase in the reduction record).
StiffPumpResult stiff_pump_reduce(const ModeNetwork& net, Complex beta);

struct CollapseRow {
    double beta_magnitude{0.0};
    std::int64_t k{0}; // round(|beta|^2), drive occupation of the parent source
    double g4{0.0};
    // Absolute dressed energies of the two-state block, in the frame
    // co-rotating with the Kerr-shifted drive (omega_d and K_d removed).
    PolePair parent;
    PolePair reduced;
    double mismatch{0.0};
    double splitting{0.0}; // reduced upper - lower
};

struct CollapseOptions {
    // When set, g4 = effective_coupling / |beta| for each row, so the
    // three-wave rate g4|beta| is held fixed across the sweep.
    std::optional<double> effective_coupling;
};

// For each |beta|: parent channel |n,m,l,k> <-> |n-1,m-1,l+1,k+1> with
// k = round(|beta|^2) against the reduced three-wave channel
// |n,m,l> <-> |n-1,m-1,l+1> of stiff_pump_reduce(net, |beta|).
// source holds the three occupations (n, m, l).
std::vector<CollapseRow> collapse_diagnostic(const ModeNetwork& net,
                                             const std::vector<double>& beta_magnitudes,
                                             const FockState& source,
                                             const CollapseOptions& options = {});

// Leading power of |beta| in the mismatch for chi_{mu d} = 0. The parent
// carries m2 = g4^2 nm(l+1)(k+1) against g4^2 |beta|^2 nm(l+1) in the reduced
// channel: at fixed g4|beta| the excess is a factor 1 + 1/|beta|^2 (order -2);
// at fixed g4 it is a constant g4^2 nm(l+1) against a splitting growing like
// |beta| (order -1).
double collapse_expected_order(bool fixed_effective_coupling);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace pseudomode

// memory.hpp: Pole-residue self-energies, memory kernels and the two
// equivalent time-domain routes (Volterra kernel vs. pseudomode ODE)
//
// Conventions (scalar retained channel, vacuum initial condition for the
// eliminated sector):
//   Sigma(z) = sum_l r_l / (z - z_l),          z_l = xi_l - i lambda_l
//   K(t)     = sum_l r_l exp(-i z_l t)         (no -i theta(t) prefactor)
//   dc/dt    = -int_0^t K~(t - t') c(t') dt'   in the frame rotating at Omega_alpha,
//              K~(t) = K(t) exp(i Omega_alpha t)

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "pseudomode/resolvent.hpp"

namespace pseudomode {

struct PoleTerm {
    Complex pole;
    Complex residue;
};

struct PoleResidueSet {
    std::vector<PoleTerm> terms;

    std::size_t size() const noexcept { return terms.size(); }
    bool empty() const noexcept { return terms.empty(); }
};

inline constexpr double kPoleMergeTolerance = 1e-9;

// Throws ValidationError when a pole sits in the anti-causal half-plane
// (Im z > 0), a component is non-finite, or two poles coincide within
// kPoleMergeTolerance.
void validate(const PoleResidueSet& prs);

Complex kernel_eval(const PoleResidueSet& prs, double t);
Complex self_energy_eval(const PoleResidueSet& prs, ComplexFrequency z);

struct Trajectory {
    std::vector<double> t;
    std::vector<Complex> c;
};

// Amplitude growth (relative to |c0|) treated as a numerical blow-up.
inline constexpr double kInstabilityGrowth = 1e6;

// Trapezoidal product integration on the uniform grid t_n = n dt,
// n = 0 .. round(T / dt): c is taken piecewise linear and the exponential
// kernel is integrated exactly against it. Second order in dt.
Trajectory solve_volterra(double omega_alpha, const PoleResidueSet& prs, Complex c0, double T,
                          double dt);

struct Pseudomode {
    double frequency{0.0}; // xi_l
    double linewidth{0.0}; // lambda_l
    Complex coupling;      // g_l with g_l * g_l = r_l
};

struct PseudomodeSystem {
    double retained_frequency{0.0};
    std::vector<Pseudomode> modes;
};

struct FactorizationReport {
    PseudomodeSystem system;
    // Indices of undamped terms whose residue is not positive real; their
    // coupling is the principal square root and therefore not real.
    std::vector<std::size_t> flagged;
};

// Rank-one scalar factorization g_l = sqrt(r_l) on the principal branch.
FactorizationReport factorize(double omega_alpha, const PoleResidueSet& prs);

// Residues reproduced by the couplings, r_l = g_l * g_l.
PoleResidueSet induced_kernel(const PseudomodeSystem& sys);

// Fixed-step classical RK4 on the (1 + L)-dimensional linear system
//   dc/dt   = -i sum_l g_l b_l
//   db_l/dt = (-i (xi_l - Omega_alpha) - lambda_l) b_l - i g_l c,   b_l(0) = 0.
Trajectory solve_pseudomode(const PseudomodeSystem& sys, Complex c0, double T, double dt);

struct EquivalenceReport {
    Trajectory volterra;
    Trajectory pseudomode;
    double max_deviation{0.0};
    std::vector<std::size_t> flagged;
};

EquivalenceReport equivalence_report(double omega_alpha, const PoleResidueSet& prs, Complex c0,
                                     double T, double dt);

struct ConvergedEquivalence {
    EquivalenceReport report;
    double dt{0.0};
    // log2 of the deviation ratio between the last two halvings.
    double observed_order{0.0};
    std::size_t halvings{0};
};

// Characteristic rate of the rotating-frame kernel: max over terms of
// max(|xi_l - Omega_alpha|, lambda_l, sqrt|r_l|), floored at 1/T.
double kernel_rate(double omega_alpha, const PoleResidueSet& prs, double T);

// Built-in step rule: start at dt = 0.05 / kernel_rate and halve until the
// Volterra/pseudomode deviation falls below tolerance; after that one more
// halving measures the observed order. Throws ConvergenceError after
// max_halvings.
ConvergedEquivalence converge_equivalence(double omega_alpha, const PoleResidueSet& prs,
                                          Complex c0, double T, double tolerance,
                                          std::size_t max_halvings = 16);

} // namespace pseudomode

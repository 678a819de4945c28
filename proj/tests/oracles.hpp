// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's numerics; networks are described by
// plain parameter records so the oracles cannot inherit a library bug.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

enum class Kind { Bilinear2, ThreeWave, Bilinear4, FourWave };

struct Params {
    Kind kind{Kind::Bilinear2};
    std::vector<double> omega;
    std::vector<double> kerr;
    Eigen::MatrixXd chi; // symmetric, zero diagonal
    double g{0.0};
};

using Occ = std::vector<std::int64_t>;

// sum n w + sum K/2 n(n-1) + sum_{i<j} chi n_i n_j, written out directly.
double energy(const Params& p, const Occ& s);

// <to| g (O + O^dag) |from> with O applied through explicit ladder factors:
//   a|n> = sqrt(n)|n-1>, a^dag|n> = sqrt(n+1)|n+1>.
double coupling(const Params& p, const Occ& from, const Occ& to);

// All Fock states with occupations <= max_occ sharing the invariants of
// `seed` under the coupling (found by brute-force flood fill over the
// operator, not from any charge formula).
std::vector<Occ> connected_states(const Params& p, const Occ& seed, std::int64_t max_occ);

struct Dense {
    std::vector<Occ> states;
    Eigen::MatrixXd h;
};

Dense dense_hamiltonian(const Params& p, const Occ& seed, std::int64_t max_occ);

// <i| (z - H)^{-1} |i> by LU.
Complex dense_green(const Eigen::MatrixXd& h, std::size_t i, Complex z);

// Eigenvalues of H whose eigenvector weight on site i exceeds threshold,
// paired with that weight.
std::vector<std::pair<double, double>> dense_poles(const Eigen::MatrixXd& h, std::size_t i,
                                                   double threshold);

// Eigenvalues of [[a, sqrt(m2)], [sqrt(m2), b]] from a general solver.
std::pair<double, double> eig2(double a, double b, double m2);

// c(t) of the resonant two-state problem i dc/dt = g d, i dd/dt = g c.
double rabi_abs(double g, double t);

// Retained component of exp(-i M t) e_0 for the pseudomode generator
//   M = [[0, g^T], [g, diag(xi - Omega - i lambda)]].
Complex pseudomode_exact(double omega_alpha, const std::vector<Complex>& poles,
                         const std::vector<Complex>& couplings, double t);

// sum_l r_l exp(-i z_l t) accumulated in long double.
std::complex<long double> kernel_long(const std::vector<Complex>& poles,
                                      const std::vector<Complex>& residues, long double t);

// Random network with g > 0 and generic Kerr/cross-Kerr.
Params random_params(Kind kind, std::mt19937_64& rng);

std::size_t mode_count(Kind kind);

} // namespace oracle

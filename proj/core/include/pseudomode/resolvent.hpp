// resolvent.hpp: Projected resolvents of tridiagonal sectors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pseudomode/model.hpp"

namespace pseudomode {

using Complex = std::complex<double>;

// Finite complex frequency z = w - i*gamma. Construction rejects NaN/Inf.
class ComplexFrequency {
public:
    ComplexFrequency(Complex z); // NOLINT(google-explicit-constructor)
    ComplexFrequency(double re, double im = 0.0) : ComplexFrequency(Complex{re, im}) {}
    Complex value() const noexcept { return z_; }
    operator Complex() const noexcept { return z_; } // NOLINT(google-explicit-constructor)

private:
    Complex z_;
};

// Read-only view of a real symmetric tridiagonal chain and one projected site.
struct ChainResolvent {
    std::span<const double> energies;
    std::span<const double> jumps;
    std::size_t site{0};

    ChainResolvent(std::span<const double> e, std::span<const double> j, std::size_t r);
    ChainResolvent(const SectorBasis& sector, std::size_t r);

    std::size_t dimension() const noexcept { return energies.size(); }
};

// Magnitude below which a continued-fraction denominator counts as a pole hit.
inline constexpr double kPoleGuard = 1e-300;

struct SelfEnergyBranches {
    Complex left;  // Sigma_{r,-}: sites 0 .. r-1
    Complex right; // Sigma_{r,+}: sites r+1 .. N
    Complex total() const noexcept { return left + right; }
};

// Both continued-fraction branches, each evaluated from its chain end inward
// with Sigma_{0,-} = Sigma_{N,+} = 0.
SelfEnergyBranches continued_fraction_branches(const ChainResolvent& chain, ComplexFrequency z);

Complex continued_fraction_self_energy(const ChainResolvent& chain, ComplexFrequency z);

// d Sigma_r / dz by differentiating the same recursion.
Complex continued_fraction_self_energy_derivative(const ChainResolvent& chain, ComplexFrequency z);

// 1 / (z - E_r - Sigma_r(z)).
Complex projected_green(const ChainResolvent& chain, ComplexFrequency z);

struct PolePair {
    Complex lower;
    Complex upper;
};

// Roots of (z - omega_alpha)(z - omega_beta) - m2 = 0, lower root first.
PolePair dressed_poles_local(double omega_alpha, double omega_beta, double m2);

// Ascending eigenvalues of the chain matrix.
std::vector<double> chain_eigenvalues(std::span<const double> energies, std::span<const double> jumps);
std::vector<double> chain_eigenvalues(const SectorBasis& sector);

struct ChainPole {
    Complex pole;
    Complex residue; // weight |<r|psi>|^2, summed over merged degenerate roots
    std::size_t multiplicity{1};
};

inline constexpr double kOverlapThreshold = 1e-12;
inline constexpr double kDegenerateMergeFactor = 1e-9;

// Poles of projected_green: chain eigenvalues whose eigenvector has overlap
// above kOverlapThreshold with the projected site. Roots closer than
// kDegenerateMergeFactor * spectral span are merged and their multiplicity
// recorded.
std::vector<ChainPole> dressed_poles_chain(const ChainResolvent& chain);

// Residue of projected_green at a simple pole, from 1 / (1 - Sigma_r'(pole)).
Complex residue_from_self_energy(const ChainResolvent& chain, Complex pole);

} // namespace pseudomode

// resolvent.cpp: Continued-fraction self-energies and chain spectra

#include "pseudomode/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "pseudomode/errors.hpp"

namespace pseudomode {

namespace {

[[noreturn]] void throw_pole_hit(const char* where, std::size_t depth, Complex z)
{
    std::ostringstream os;
    os.precision(17);
    os << where << ": denominator below " << kPoleGuard << " at chain site " << depth
       << " for z = " << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    throw PoleProximityError(os.str(), depth);
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_chain(std::span<const double> energies,
                                                           std::span<const double> jumps,
                                                           int options)
{
    const auto n = static_cast<Eigen::Index>(energies.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(energies.data(), n);
    Eigen::VectorXd sub(std::max<Eigen::Index>(n - 1, 0));
    for (Eigen::Index i = 0; i + 1 < n; ++i) sub(i) = jumps[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, options);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("tridiagonal eigensolver did not converge for chain of dimension " +
                               std::to_string(n));
    }
    return solver;
}

} // namespace

ComplexFrequency::ComplexFrequency(Complex z) : z_(z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ValidationError("complex frequency must be finite");
    }
}

ChainResolvent::ChainResolvent(std::span<const double> e, std::span<const double> j, std::size_t r)
    : energies(e), jumps(j), site(r)
{
    if (energies.empty()) throw ValidationError("chain must have at least one site");
    if (jumps.size() + 1 != energies.size()) {
        throw ValidationError("chain needs exactly dimension - 1 jump amplitudes");
    }
    if (site >= energies.size()) {
        throw ValidationError("projected site " + std::to_string(site) +
                              " outside chain of dimension " + std::to_string(energies.size()));
    }
}

ChainResolvent::ChainResolvent(const SectorBasis& sector, std::size_t r)
    : ChainResolvent(sector.diagonal_energies, sector.jumps, r)
{
}

SelfEnergyBranches continued_fraction_branches(const ChainResolvent& chain, ComplexFrequency zf)
{
    const Complex z = zf;
    const std::size_t last = chain.dimension() - 1;
    const std::size_t r = chain.site;

    // Sigma_{j,+} = J_{j+1}^2 / (z - E_{j+1} - Sigma_{j+1,+}), from j = N - 1 down to r.
    Complex right{0.0, 0.0};
    for (std::size_t j = last; j > r; --j) {
        const Complex den = z - chain.energies[j] - right;
        if (std::abs(den) < kPoleGuard) throw_pole_hit("continued fraction (+ branch)", j, z);
        const double hop = chain.jumps[j - 1];
        right = hop * hop / den;
    }

    // Sigma_{j,-} = J_j^2 / (z - E_{j-1} - Sigma_{j-1,-}), from j = 1 up to r.
    Complex left{0.0, 0.0};
    for (std::size_t j = 0; j < r; ++j) {
        const Complex den = z - chain.energies[j] - left;
        if (std::abs(den) < kPoleGuard) throw_pole_hit("continued fraction (- branch)", j, z);
        const double hop = chain.jumps[j];
        left = hop * hop / den;
    }
    return {left, right};
}

Complex continued_fraction_self_energy(const ChainResolvent& chain, ComplexFrequency z)
{
    return continued_fraction_branches(chain, z).total();
}

Complex continued_fraction_self_energy_derivative(const ChainResolvent& chain, ComplexFrequency zf)
{
    const Complex z = zf;
    const std::size_t last = chain.dimension() - 1;
    const std::size_t r = chain.site;

    // s = J^2 / den, den = z - E - s_prev  =>  s' = -J^2 (1 - s_prev') / den^2
    Complex right{0.0, 0.0}, right_d{0.0, 0.0};
    for (std::size_t j = last; j > r; --j) {
        const Complex den = z - chain.energies[j] - right;
        if (std::abs(den) < kPoleGuard) throw_pole_hit("continued fraction derivative", j, z);
        const double hop2 = chain.jumps[j - 1] * chain.jumps[j - 1];
        right_d = -hop2 * (1.0 - right_d) / (den * den);
        right = hop2 / den;
    }
    Complex left{0.0, 0.0}, left_d{0.0, 0.0};
    for (std::size_t j = 0; j < r; ++j) {
        const Complex den = z - chain.energies[j] - left;
        if (std::abs(den) < kPoleGuard) throw_pole_hit("continued fraction derivative", j, z);
        const double hop2 = chain.jumps[j] * chain.jumps[j];
        left_d = -hop2 * (1.0 - left_d) / (den * den);
        left = hop2 / den;
    }
    return left_d + right_d;
}

Complex projected_green(const ChainResolvent& chain, ComplexFrequency zf)
{
    const Complex z = zf;
    const Complex den = z - chain.energies[chain.site] - continued_fraction_self_energy(chain, zf);
    if (std::abs(den) < kPoleGuard) throw_pole_hit("projected Green function", chain.site, z);
    return 1.0 / den;
}

PolePair dressed_poles_local(double omega_alpha, double omega_beta, double m2)
{
    if (!std::isfinite(omega_alpha) || !std::isfinite(omega_beta) || !std::isfinite(m2)) {
        throw ValidationError("dressed_poles_local: non-finite input");
    }
    if (m2 < 0.0) throw ValidationError("dressed_poles_local: m2 must be non-negative");
    if (m2 == 0.0) {
        return {Complex{std::min(omega_alpha, omega_beta), 0.0}, Complex{std::max(omega_alpha, omega_beta), 0.0}};
    }
    const double mean = 0.5 * (omega_alpha + omega_beta);
    const double half_split = 0.5 * std::hypot(omega_alpha - omega_beta, 2.0 * std::sqrt(m2));
    return {Complex{mean - half_split, 0.0}, Complex{mean + half_split, 0.0}};
}

std::vector<double> chain_eigenvalues(std::span<const double> energies, std::span<const double> jumps)
{
    if (energies.empty()) throw ValidationError("chain must have at least one site");
    if (jumps.size() + 1 != energies.size()) {
        throw ValidationError("chain needs exactly dimension - 1 jump amplitudes");
    }
    const auto solver = solve_chain(energies, jumps, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> chain_eigenvalues(const SectorBasis& sector)
{
    return chain_eigenvalues(sector.diagonal_energies, sector.jumps);
}

std::vector<ChainPole> dressed_poles_chain(const ChainResolvent& chain)
{
    const auto solver = solve_chain(chain.energies, chain.jumps, Eigen::ComputeEigenvectors);
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    const auto n = values.size();
    const double span = n > 1 ? values(n - 1) - values(0) : 0.0;
    const double merge = kDegenerateMergeFactor * std::max(span, 1.0);
    const auto site = static_cast<Eigen::Index>(chain.site);

    std::vector<ChainPole> poles;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double weight = vectors(site, i) * vectors(site, i);
        if (!poles.empty() && std::abs(values(i) - poles.back().pole.real()) < merge) {
            // Degenerate root: keep the first location, accumulate weight.
            auto& p = poles.back();
            p.residue += weight;
            ++p.multiplicity;
            continue;
        }
        poles.push_back({Complex{values(i), 0.0}, Complex{weight, 0.0}, 1});
    }
    std::erase_if(poles, [](const ChainPole& p) { return p.residue.real() <= kOverlapThreshold; });
    return poles;
}

Complex residue_from_self_energy(const ChainResolvent& chain, Complex pole)
{
    const Complex slope = 1.0 - continued_fraction_self_energy_derivative(chain, pole);
    if (std::abs(slope) < kPoleGuard) throw_pole_hit("residue extraction", chain.site, pole);
    return 1.0 / slope;
}

} // namespace pseudomode

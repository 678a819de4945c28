// memory.cpp: Memory kernels, Volterra and pseudomode propagation

#include "pseudomode/memory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "pseudomode/errors.hpp"

namespace pseudomode {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t step_count(double T, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("time step dt must be positive");
    if (!(T >= dt) || !std::isfinite(T)) throw ValidationError("final time T must satisfy T >= dt");
    return static_cast<std::size_t>(std::llround(T / dt));
}

void check_growth(Complex c, Complex c0, double t, const char* method)
{
    const double bound = kInstabilityGrowth * std::max(std::abs(c0), 1e-300);
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > bound) {
        std::ostringstream os;
        os << method << ": amplitude grew beyond " << kInstabilityGrowth
           << " x |c0| at t = " << t << "; reduce dt";
        throw InstabilityError(os.str());
    }
}

// m_k = int_0^1 e^{x s} s^k ds for k = 0, 1, 2. Power series near the origin,
// where the closed form cancels catastrophically.
std::array<Complex, 3> exp_moments(Complex x)
{
    std::array<Complex, 3> m{};
    if (std::abs(x) < 1.0) {
        Complex term{1.0, 0.0}; // x^j / j!
        for (int j = 0; j < 40; ++j) {
            for (int k = 0; k < 3; ++k) m[static_cast<std::size_t>(k)] += term / static_cast<double>(j + k + 1);
            term *= x / static_cast<double>(j + 1);
        }
        return m;
    }
    const Complex e = std::exp(x);
    m[0] = (e - 1.0) / x;
    m[1] = (e - m[0]) / x;
    m[2] = (e - 2.0 * m[1]) / x;
    return m;
}

} // namespace

void validate(const PoleResidueSet& prs)
{
    for (std::size_t i = 0; i < prs.terms.size(); ++i) {
        const auto& [z, r] = prs.terms[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(r.real()) ||
            !std::isfinite(r.imag())) {
            throw ValidationError("pole-residue term " + std::to_string(i) + " is not finite");
        }
        if (z.imag() > 0.0) {
            throw ValidationError("pole " + std::to_string(i) +
                                  " lies in the anti-causal half-plane (Im z > 0)");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(prs.terms[j].pole - z) < kPoleMergeTolerance) {
                throw ValidationError("poles " + std::to_string(j) + " and " + std::to_string(i) +
                                      " coincide within the merge tolerance");
            }
        }
    }
}

Complex kernel_eval(const PoleResidueSet& prs, double t)
{
    Complex k{0.0, 0.0};
    for (const auto& [z, r] : prs.terms) k += r * std::exp(-kI * z * t);
    return k;
}

Complex self_energy_eval(const PoleResidueSet& prs, ComplexFrequency zf)
{
    const Complex z = zf;
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < prs.terms.size(); ++i) {
        const Complex den = z - prs.terms[i].pole;
        if (std::abs(den) < kPoleGuard) {
            throw PoleProximityError("self-energy evaluated on pole " + std::to_string(i), i);
        }
        s += prs.terms[i].residue / den;
    }
    return s;
}

Trajectory solve_volterra(double omega_alpha, const PoleResidueSet& prs, Complex c0, double T,
                          double dt)
{
    const std::size_t steps = step_count(T, dt);
    if (!std::isfinite(c0.real()) || !std::isfinite(c0.imag())) {
        throw ValidationError("initial amplitude must be finite");
    }
    const std::size_t L = prs.terms.size();

    // Integrated form c(t) = c0 - sum_l r_l M_l(t) with
    //   J_l(t) = int_0^t e^{-i w_l (t - s)} c(s) ds,   M_l(t) = int_0^t J_l,
    // w_l = z_l - Omega_alpha. With c linear on each step both integrals are
    // exact, which gives the trapezoidal product rule.
    struct Weights {
        Complex decay, q0, p1, p2, r1, r2;
    };
    std::vector<Weights> w(L);
    Complex implicit{1.0, 0.0};
    for (std::size_t l = 0; l < L; ++l) {
        const Complex x = -kI * (prs.terms[l].pole - omega_alpha) * dt;
        const auto m = exp_moments(x);
        w[l] = {std::exp(x), m[0], m[1], m[0] - m[1], 0.5 * (m[0] - m[2]), 0.5 * (m[0] - 2.0 * m[1] + m[2])};
        implicit += dt * dt * prs.terms[l].residue * w[l].r2;
    }

    Trajectory out;
    out.t.resize(steps + 1);
    out.c.resize(steps + 1);
    out.t[0] = 0.0;
    out.c[0] = c0;
    std::vector<Complex> J(L, Complex{}), M(L, Complex{});

    for (std::size_t n = 0; n < steps; ++n) {
        const Complex cn = out.c[n];
        Complex rhs = c0;
        for (std::size_t l = 0; l < L; ++l) {
            rhs -= prs.terms[l].residue * (M[l] + dt * w[l].q0 * J[l] + dt * dt * w[l].r1 * cn);
        }
        const Complex next = rhs / implicit;
        for (std::size_t l = 0; l < L; ++l) {
            M[l] += dt * w[l].q0 * J[l] + dt * dt * (w[l].r1 * cn + w[l].r2 * next);
            J[l] = w[l].decay * J[l] + dt * (w[l].p1 * cn + w[l].p2 * next);
        }
        out.t[n + 1] = static_cast<double>(n + 1) * dt;
        out.c[n + 1] = next;
        check_growth(next, c0, out.t[n + 1], "solve_volterra");
    }
    return out;
}

FactorizationReport factorize(double omega_alpha, const PoleResidueSet& prs)
{
    FactorizationReport rep;
    rep.system.retained_frequency = omega_alpha;
    for (std::size_t l = 0; l < prs.terms.size(); ++l) {
        const auto& [z, r] = prs.terms[l];
        rep.system.modes.push_back({z.real(), -z.imag(), std::sqrt(r)});
        const bool positive_real = r.imag() == 0.0 && r.real() >= 0.0;
        if (z.imag() == 0.0 && !positive_real) rep.flagged.push_back(l);
    }
    return rep;
}

PoleResidueSet induced_kernel(const PseudomodeSystem& sys)
{
    PoleResidueSet prs;
    for (const auto& m : sys.modes) {
        prs.terms.push_back({Complex{m.frequency, -m.linewidth}, m.coupling * m.coupling});
    }
    return prs;
}

Trajectory solve_pseudomode(const PseudomodeSystem& sys, Complex c0, double T, double dt)
{
    const std::size_t steps = step_count(T, dt);
    if (!std::isfinite(c0.real()) || !std::isfinite(c0.imag())) {
        throw ValidationError("initial amplitude must be finite");
    }
    const auto L = static_cast<Eigen::Index>(sys.modes.size());
    const Eigen::Index dim = 1 + L;

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index l = 0; l < L; ++l) {
        const auto& m = sys.modes[static_cast<std::size_t>(l)];
        A(0, 1 + l) = -kI * m.coupling;
        A(1 + l, 0) = -kI * m.coupling;
        A(1 + l, 1 + l) = -kI * (m.frequency - sys.retained_frequency) - m.linewidth;
    }

    // One RK4 step of a linear autonomous system is the degree-4 Taylor polynomial of e^{hA}.
    const Eigen::MatrixXcd hA = dt * A;
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd step = I + hA * (I + hA / 2.0 * (I + hA / 3.0 * (I + hA / 4.0)));

    Trajectory out;
    out.t.resize(steps + 1);
    out.c.resize(steps + 1);
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
    y(0) = c0;
    out.t[0] = 0.0;
    out.c[0] = c0;
    for (std::size_t n = 0; n < steps; ++n) {
        y = step * y;
        out.t[n + 1] = static_cast<double>(n + 1) * dt;
        out.c[n + 1] = y(0);
        check_growth(y(0), c0, out.t[n + 1], "solve_pseudomode");
    }
    return out;
}

EquivalenceReport equivalence_report(double omega_alpha, const PoleResidueSet& prs, Complex c0,
                                     double T, double dt)
{
    validate(prs);
    auto fac = factorize(omega_alpha, prs);
    EquivalenceReport rep;
    rep.volterra = solve_volterra(omega_alpha, prs, c0, T, dt);
    rep.pseudomode = solve_pseudomode(fac.system, c0, T, dt);
    rep.flagged = std::move(fac.flagged);
    for (std::size_t n = 0; n < rep.volterra.c.size(); ++n) {
        rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.volterra.c[n] - rep.pseudomode.c[n]));
    }
    return rep;
}

double kernel_rate(double omega_alpha, const PoleResidueSet& prs, double T)
{
    double rate = 1.0 / T;
    for (const auto& [z, r] : prs.terms) {
        rate = std::max({rate, std::abs(z.real() - omega_alpha), -z.imag(), std::sqrt(std::abs(r))});
    }
    return rate;
}

ConvergedEquivalence converge_equivalence(double omega_alpha, const PoleResidueSet& prs,
                                          Complex c0, double T, double tolerance,
                                          std::size_t max_halvings)
{
    if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
    double dt = std::min(0.05 / kernel_rate(omega_alpha, prs, T), T);
    ConvergedEquivalence out;
    double previous = -1.0;
    for (std::size_t h = 0; h <= max_halvings; ++h) {
        auto rep = equivalence_report(omega_alpha, prs, c0, T, dt);
        const double dev = rep.max_deviation;
        if (dev < tolerance) {
            // One more halving to measure the order of the leading error term,
            // sampled on the coarse grid so both levels use the same norm.
            const auto fine = equivalence_report(omega_alpha, prs, c0, T, 0.5 * dt);
            double finer = 0.0;
            for (std::size_t n = 0; n < fine.volterra.c.size(); n += 2) {
                finer = std::max(finer, std::abs(fine.volterra.c[n] - fine.pseudomode.c[n]));
            }
            out.report = std::move(rep);
            out.dt = dt;
            out.halvings = h;
            out.observed_order = (finer > 0.0 && dev > 0.0) ? std::log2(dev / finer) : 0.0;
            return out;
        }
        previous = dev;
        dt *= 0.5;
    }
    std::ostringstream os;
    os << "equivalence did not reach tolerance " << tolerance << " after " << max_halvings
       << " halvings (last deviation " << previous << ")";
    throw ConvergenceError(os.str());
}

} // namespace pseudomode

// fit.cpp: Iterative pole relocation for pole-residue fits

#include "pseudomode/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "pseudomode/errors.hpp"

namespace pseudomode {

namespace {

struct WindowData {
    Eigen::VectorXd omega;
    Eigen::VectorXcd value;
    Eigen::VectorXd weight; // sqrt of the user weights
};

WindowData select(const std::vector<FrequencySample>& samples, FrequencyWindow window,
                  const std::vector<double>& weights)
{
    if (!(window.upper > window.lower)) throw ValidationError("frequency window must be nonempty");
    if (!weights.empty() && weights.size() != samples.size()) {
        throw ValidationError("fit weights must match the number of samples");
    }
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (window.contains(samples[k].omega)) keep.push_back(k);
    }
    WindowData d;
    const auto K = static_cast<Eigen::Index>(keep.size());
    d.omega.resize(K);
    d.value.resize(K);
    d.weight.resize(K);
    for (Eigen::Index i = 0; i < K; ++i) {
        const auto k = keep[static_cast<std::size_t>(i)];
        const auto& s = samples[k];
        if (!std::isfinite(s.omega) || !std::isfinite(s.value.real()) || !std::isfinite(s.value.imag())) {
            throw ValidationError("fit sample " + std::to_string(k) + " is not finite");
        }
        const double w = weights.empty() ? 1.0 : weights[k];
        if (!(w > 0.0)) throw ValidationError("fit weights must be positive");
        d.omega(i) = s.omega;
        d.value(i) = s.value;
        d.weight(i) = std::sqrt(w);
    }
    return d;
}

// Solves min |A x - b| with column equilibration; throws on rank deficiency.
Eigen::VectorXcd least_squares(Eigen::MatrixXcd A, const Eigen::VectorXcd& b, const char* what)
{
    Eigen::VectorXd scale(A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const double norm = A.col(j).norm();
        scale(j) = norm > 0.0 ? 1.0 / norm : 1.0;
        A.col(j) *= scale(j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    qr.setThreshold(1e-13);
    if (qr.rank() < A.cols()) {
        std::ostringstream os;
        os << what << ": least-squares matrix is rank deficient (rank " << qr.rank() << " of "
           << A.cols() << ")";
        throw IllPosedFitError(os.str());
    }
    Eigen::VectorXcd x = qr.solve(b);
    return x.cwiseProduct(scale.cast<Complex>());
}

PoleResidueSet residues_for(const WindowData& d, const std::vector<Complex>& poles)
{
    const auto K = d.omega.size();
    const auto n = static_cast<Eigen::Index>(poles.size());
    Eigen::MatrixXcd A(K, n);
    for (Eigen::Index k = 0; k < K; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            A(k, l) = d.weight(k) / (d.omega(k) - poles[static_cast<std::size_t>(l)]);
        }
    }
    const Eigen::VectorXcd b = d.value.cwiseProduct(d.weight.cast<Complex>());
    const Eigen::VectorXcd r = least_squares(std::move(A), b, "residue solve");
    PoleResidueSet set;
    for (Eigen::Index l = 0; l < n; ++l) set.terms.push_back({poles[static_cast<std::size_t>(l)], r(l)});
    return set;
}

double rms_residual(const WindowData& d, const PoleResidueSet& set)
{
    double num = 0.0, den = 0.0;
    for (Eigen::Index k = 0; k < d.omega.size(); ++k) {
        Complex fit{0.0, 0.0};
        for (const auto& [z, r] : set.terms) fit += r / (d.omega(k) - z);
        const double w = d.weight(k) * d.weight(k);
        num += w * std::norm(fit - d.value(k));
        den += w;
    }
    return std::sqrt(num / den);
}

void sort_terms(PoleResidueSet& set)
{
    std::sort(set.terms.begin(), set.terms.end(), [](const PoleTerm& a, const PoleTerm& b) {
        if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
        return a.pole.imag() < b.pole.imag();
    });
}

} // namespace

PoleResidueSet fit_residues(const std::vector<FrequencySample>& samples,
                            const std::vector<Complex>& poles, FrequencyWindow window,
                            const std::vector<double>& weights)
{
    const auto d = select(samples, window, weights);
    if (static_cast<std::size_t>(d.omega.size()) < poles.size()) {
        throw IllPosedFitError("fewer in-window samples than poles");
    }
    return residues_for(d, poles);
}

RationalFit fit_rational(const std::vector<FrequencySample>& samples, std::size_t n_poles,
                         FrequencyWindow window, const FitOptions& options)
{
    if (n_poles == 0) throw ValidationError("n_poles must be at least 1");
    const auto d = select(samples, window, options.weights);
    const auto K = d.omega.size();
    if (static_cast<std::size_t>(K) < 4 * n_poles) {
        std::ostringstream os;
        os << "fit needs at least " << 4 * n_poles << " samples inside the window for " << n_poles
           << " poles (got " << K << ")";
        throw IllPosedFitError(os.str());
    }
    const double scale = std::sqrt(d.value.squaredNorm() / static_cast<double>(K));

    // Starting poles spread over the window, just below the real axis.
    const auto n = static_cast<Eigen::Index>(n_poles);
    const double width = window.width();
    std::vector<Complex> poles(n_poles);
    for (std::size_t l = 0; l < n_poles; ++l) {
        const double xi = window.lower + (static_cast<double>(l) + 0.5) * width / static_cast<double>(n_poles);
        poles[l] = Complex{xi, -0.5 * width / static_cast<double>(n_poles)};
    }

    RationalFit out;
    double previous = std::numeric_limits<double>::infinity();

    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        // Columns: r_l / (w - a_l) and -f(w) c_l / (w - a_l); rhs f(w).
        Eigen::MatrixXcd A(K, 2 * n);
        for (Eigen::Index k = 0; k < K; ++k) {
            for (Eigen::Index l = 0; l < n; ++l) {
                const Complex basis = d.weight(k) / (d.omega(k) - poles[static_cast<std::size_t>(l)]);
                A(k, l) = basis;
                A(k, n + l) = -d.value(k) * basis;
            }
        }
        const Eigen::VectorXcd b = d.value.cwiseProduct(d.weight.cast<Complex>());
        const Eigen::VectorXcd x = least_squares(std::move(A), b, "pole relocation");

        // Zeros of sigma are the eigenvalues of diag(a) - 1 c^T.
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index l = 0; l < n; ++l) H(l, l) = poles[static_cast<std::size_t>(l)];
        H -= Eigen::VectorXcd::Ones(n) * x.tail(n).transpose();
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(H, false);
        if (eig.info() != Eigen::Success) throw ConvergenceError("pole relocation eigensolver failed");
        for (Eigen::Index l = 0; l < n; ++l) {
            Complex z = eig.eigenvalues()(l);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw IllPosedFitError("pole relocation produced a non-finite pole");
            }
            if (options.causal && z.imag() > 0.0) {
                z = std::conj(z);
                ++out.reflections;
            }
            poles[static_cast<std::size_t>(l)] = z;
        }
        std::sort(poles.begin(), poles.end(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });

        out.set = residues_for(d, poles);
        out.residual = rms_residual(d, out.set);
        out.iterations = it;
        const double change = std::abs(previous - out.residual) / std::max(out.residual, 1e-300);
        if (change < options.relative_tolerance || out.residual <= 1e-15 * scale) {
            out.converged = true;
            break;
        }
        previous = out.residual;
    }

    sort_terms(out.set);
    return out;
}

FitErrorBound fit_error_bound(const ComplexEvaluator& g_fit, const ComplexEvaluator& delta_sigma,
                              FrequencyWindow window, std::size_t grid_points)
{
    if (!(window.upper > window.lower)) throw ValidationError("frequency window must be nonempty");
    if (grid_points < 2) throw ValidationError("fit_error_bound needs at least two grid points");
    FitErrorBound out;
    out.eta = 1e-3 * window.width();
    out.at_omega = window.lower;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double w = window.lower + window.width() * static_cast<double>(i) /
                                            static_cast<double>(grid_points - 1);
        const Complex z{w, out.eta};
        const double v = std::abs(g_fit(z) * delta_sigma(z));
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os.precision(17);
            os << "fit_error_bound: non-finite sample at omega = " << w;
            throw NumericalError(os.str());
        }
        if (v > out.bound) {
            out.bound = v;
            out.at_omega = w;
        }
    }
    return out;
}

} // namespace pseudomode

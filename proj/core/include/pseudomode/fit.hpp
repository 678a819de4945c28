// fit.hpp: Rational (pole-residue) fitting of sampled response functions

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pseudomode/memory.hpp"

namespace pseudomode {

struct FrequencySample {
    double omega{0.0};
    Complex value;
};

struct FrequencyWindow {
    double lower{0.0};
    double upper{0.0};
    double width() const noexcept { return upper - lower; }
    bool contains(double w) const noexcept { return w >= lower && w <= upper; }
};

struct FitOptions {
    std::size_t max_iterations{100};
    double relative_tolerance{1e-10};
    // Reflect poles that relocate into Im z > 0. Disable when fitting a real
    // spectral density rather than a causal response: its poles come in
    // conjugate pairs.
    bool causal{true};
    // Optional per-sample weights (same length as the samples); empty = uniform.
    std::vector<double> weights;
};

struct RationalFit {
    PoleResidueSet set;
    double residual{0.0}; // weighted RMS |f_fit - f| over in-window samples
    std::size_t iterations{0};
    bool converged{false};
    // Number of relocated poles that left the causal half-plane and were
    // reflected back (lambda <- |lambda|).
    std::size_t reflections{0};
};

// Strictly proper fit f(w) ~ sum_l r_l / (w - z_l) by iterative pole
// relocation: each pass solves a linear least-squares problem for the
// residues of sigma*f and of sigma(w) = 1 + sum_l c_l / (w - a_l), moves the
// poles to the zeros of sigma, and stops when the relative residual change
// drops below the tolerance. Only samples inside the window are used.
RationalFit fit_rational(const std::vector<FrequencySample>& samples, std::size_t n_poles,
                         FrequencyWindow window, const FitOptions& options = {});

// Least-squares residues for fixed poles.
PoleResidueSet fit_residues(const std::vector<FrequencySample>& samples,
                            const std::vector<Complex>& poles, FrequencyWindow window,
                            const std::vector<double>& weights = {});

using ComplexEvaluator = std::function<Complex(Complex)>;

struct FitErrorBound {
    double bound{0.0};
    double eta{0.0}; // imaginary offset used for the grid
    double at_omega{0.0};
    // The pseudomode approximation is only controlled when the bound is well below 1.
    bool controlled() const noexcept { return bound < 1.0; }
};

// max over w in the window of |G_fit(w + i eta) * dSigma(w + i eta)| with
// eta = 1e-3 * window width on grid_points uniformly spaced samples.
FitErrorBound fit_error_bound(const ComplexEvaluator& g_fit, const ComplexEvaluator& delta_sigma,
                              FrequencyWindow window, std::size_t grid_points);

} // namespace pseudomode

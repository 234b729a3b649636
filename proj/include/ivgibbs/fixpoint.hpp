#pragma once

/// \file fixpoint.hpp
/// \brief Positive fixed points of the scalar map g, their stability, the
/// tangency thresholds and solution-count prediction.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ivgibbs/model.hpp"

namespace ivgibbs {

enum class Stability { stable, unstable, marginal, unknown };

std::string to_string(Stability s);

/// |g'| within this distance of 1 is marginal.
inline constexpr double kMarginalTolerance = 1e-9;

Stability stability_from_derivative(double derivative, double tol = kMarginalTolerance);

struct FixedPoint {
    double x;
    double derivative;  ///< g'(x)
    Stability stability = Stability::unknown;
    bool tangent = false;  ///< double root located at a critical point of g(x)/x
};

struct FixedPointReport {
    std::vector<FixedPoint> roots;  ///< ascending

    std::size_t count() const { return roots.size(); }
    std::vector<double> values() const;
};

enum class Regime {
    unique,         ///< d < 1, or no positive critical points
    unstated_band,  ///< 1 <= d <= 2, count decided by root finding only
    multi_capable,  ///< d > 2
};

std::string to_string(Regime r);

struct ThresholdReport {
    Regime regime = Regime::unique;
    bool has_critical_points = false;
    double x_crit_1 = 0.0;  ///< smaller root of c^2 d x^2 - 2c(d^2-2) x + d = 0
    double x_crit_2 = 0.0;
    double eta1 = 0.0;  ///< g(x_crit_1) / x_crit_1 (local minimum of g(x)/x)
    double eta2 = 0.0;  ///< g(x_crit_2) / x_crit_2 (local maximum)
    double eta1_closed_form = 0.0;
    double eta2_closed_form = 0.0;
    /// True when the printed closed forms disagree with the ratio route by
    /// more than 1e-8 relative.
    bool closed_form_disagrees = false;
};

/// Descending coefficients of x (d + c x)^3 - (1 + c d x)^3.
std::array<double, 5> quartic_coefficients(const TransferWeights& w);

/// Positive real roots of the quartic via companion-matrix eigenvalues,
/// Newton-polished on the polynomial. Independent of the g-based finder.
std::vector<double> quartic_positive_roots(const TransferWeights& w);

/// All positive solutions of g(x) = x, found by sign-change bracketing on a
/// log grid (with the critical points of g(x)/x inserted), bisection and a
/// Newton polish. Stability labels are filled in.
FixedPointReport find_positive_fixed_points(const TransferWeights& w);

FixedPointReport classify_stability(FixedPointReport report, const TransferWeights& w);

ThresholdReport critical_points(const TransferWeights& w);

/// Printed closed forms of the two thresholds; NaN when d^4 - 5d^2 + 4 < 0.
std::array<double, 2> eta_closed_forms(double c, double d);

struct CountPrediction {
    int count;
    Regime regime;
    std::string explanation;
};

/// Number of positive solutions of g(x) = slope * x.
CountPrediction predict_count(const TransferWeights& w, double slope = 1.0);

struct IterationResult {
    std::vector<double> trajectory;  ///< x0, g(x0), ...
    double limit;
    bool converged;
    int iterations;
    std::optional<std::size_t> matched_root;  ///< index into the fixed-point report
};

/// x_{n+1} = g(x_n) until |x_{n+1} - x_n| < tol max(1, x_n) or max_iter.
IterationResult iterate_map(double x0, const TransferWeights& w, int max_iter = 1000,
                            double tol = 1e-12);

}  // namespace ivgibbs

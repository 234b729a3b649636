#include "ivgibbs/fixpoint.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "ivgibbs/recurrence.hpp"

namespace ivgibbs {

namespace {

constexpr int kBaseGridPoints = 400;
constexpr double kGridLow = 1e-8;
constexpr double kGridHigh = 1e8;
constexpr double kTangentTolerance = 1e-10;
constexpr double kMergeDistance = 1e-6;
constexpr double kEqualityTolerance = 1e-9;

// sign(g(x) - m x), evaluated as log g(x) - log(m x) for scale robustness
double log_excess(double x, const TransferWeights& w, double slope)
{
    const double c = w.c(), d = w.d();
    return 3.0 * (std::log1p(c * d * x) - std::log(d + c * x)) - std::log(slope * x);
}

double bisect(double lo, double hi, double f_lo, const TransferWeights& w, double slope)
{
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (!(mid > lo && mid < hi) || hi / lo - 1.0 < 1e-15)
            break;
        const double f_mid = log_excess(mid, w, slope);
        if (f_mid == 0.0)
            return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        }
        else {
            hi = mid;
        }
    }
    return std::sqrt(lo * hi);
}

double newton_polish(double x, double lo, double hi, const TransferWeights& w, double slope)
{
    auto residual = [&](double t) { return scalar_map_g(t, w) - slope * t; };
    double best = x;
    double best_res = std::abs(residual(x));
    for (int it = 0; it < 8 && best_res > 0.0; ++it) {
        const double deriv = scalar_map_dg(best, w) - slope;
        if (deriv == 0.0 || !std::isfinite(deriv))
            break;
        const double cand = best - residual(best) / deriv;
        if (!(cand >= lo && cand <= hi))
            break;
        const double cand_res = std::abs(residual(cand));
        if (!(cand_res < best_res))
            break;
        best = cand;
        best_res = cand_res;
    }
    return best;
}

std::vector<double> build_grid(const TransferWeights& w, const ThresholdReport& thr)
{
    // every fixed point lies between g(0) = d^-3 and g(inf) = d^3
    const double log_extent = 3.0 * std::abs(std::log(w.d())) + std::log(2.0);
    const double log_lo = std::max(std::min(std::log(kGridLow), -log_extent), std::log(1e-300));
    const double log_hi = std::min(std::max(std::log(kGridHigh), log_extent), std::log(1e300));
    const double decades = (log_hi - log_lo) / std::log(10.0);
    const int n = std::max(kBaseGridPoints, static_cast<int>(std::ceil(25.0 * decades)));

    std::vector<double> grid;
    grid.reserve(n + 3);
    for (int i = 0; i < n; ++i)
        grid.push_back(std::exp(log_lo + (log_hi - log_lo) * i / (n - 1)));
    if (thr.has_critical_points) {
        const double lo = grid.front(), hi = grid.back();
        const double inflection = (w.d() * w.d() - 2.0) / (w.c() * w.d());
        for (double extra : {thr.x_crit_1, thr.x_crit_2, inflection})
            if (extra > lo && extra < hi)
                grid.push_back(extra);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

// Positive solutions of g(x) = slope * x (derivative field is g').
std::vector<FixedPoint> solve_line_intersections(const TransferWeights& w, double slope)
{
    const ThresholdReport thr = critical_points(w);
    const std::vector<double> grid = build_grid(w, thr);

    std::vector<FixedPoint> roots;
    double f_prev = log_excess(grid[0], w, slope);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double f_next = log_excess(grid[i + 1], w, slope);
        if (!std::isfinite(f_prev) || !std::isfinite(f_next))
            throw std::range_error("scalar map is not finite on the search grid");
        double root = std::numeric_limits<double>::quiet_NaN();
        if (f_prev == 0.0)
            root = grid[i];
        else if ((f_prev > 0.0) != (f_next > 0.0) && f_next != 0.0)
            root = newton_polish(bisect(grid[i], grid[i + 1], f_prev, w, slope), grid[i],
                                 grid[i + 1], w, slope);
        if (!std::isnan(root))
            roots.push_back(FixedPoint{root, scalar_map_dg(root, w)});
        f_prev = f_next;
    }

    if (thr.has_critical_points) {
        // g(x)/x is monotone between its critical points, so a bracketed root on
        // each side of xc means the pair is genuinely split, not a tangency
        const std::array<double, 4> bounds{0.0, thr.x_crit_1, thr.x_crit_2,
                                           std::numeric_limits<double>::infinity()};
        for (int k = 1; k <= 2; ++k) {
            const double xc = bounds[k];
            const double ratio = scalar_map_g(xc, w) / (slope * xc);
            if (std::abs(ratio - 1.0) >= kTangentTolerance)
                continue;
            auto found_in = [&](double a, double b) {
                return std::any_of(roots.begin(), roots.end(),
                                   [&](const FixedPoint& r) { return r.x > a && r.x < b; });
            };
            if (found_in(bounds[k - 1], xc) && found_in(xc, bounds[k + 1]))
                continue;
            std::erase_if(roots, [xc](const FixedPoint& r) {
                return std::abs(r.x - xc) <= kMergeDistance * xc;
            });
            roots.push_back(FixedPoint{xc, scalar_map_dg(xc, w), Stability::unknown, true});
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const FixedPoint& a, const FixedPoint& b) { return a.x < b.x; });
    // x_crit_1 == x_crit_2 when d == 2
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const FixedPoint& a, const FixedPoint& b) { return a.x == b.x; }),
                roots.end());
    if (roots.empty())
        throw std::runtime_error("no sign change of g(x) - x found on [" + std::to_string(grid.front())
                                 + ", " + std::to_string(grid.back()) + "]");
    return roots;
}

double horner(const std::array<double, 5>& p, double x)
{
    double acc = 0.0;
    for (double coef : p)
        acc = acc * x + coef;
    return acc;
}

double horner_derivative(const std::array<double, 5>& p, double x)
{
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        acc = acc * x + p[i] * (4 - i);
    return acc;
}

}  // namespace

std::string to_string(Stability s)
{
    switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::marginal: return "marginal";
    case Stability::unknown: break;
    }
    return "unknown";
}

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::unique: return "unique";
    case Regime::unstated_band: return "unstated_band";
    case Regime::multi_capable: return "multi_capable";
    }
    return "unknown";
}

Stability stability_from_derivative(double derivative, double tol)
{
    const double mag = std::abs(derivative);
    if (mag < 1.0 - tol)
        return Stability::stable;
    if (mag > 1.0 + tol)
        return Stability::unstable;
    return Stability::marginal;
}

std::vector<double> FixedPointReport::values() const
{
    std::vector<double> out;
    out.reserve(roots.size());
    for (const auto& r : roots)
        out.push_back(r.x);
    return out;
}

std::array<double, 5> quartic_coefficients(const TransferWeights& w)
{
    const double c = w.c(), d = w.d();
    const double c2 = c * c, c3 = c2 * c;
    const double d2 = d * d, d3 = d2 * d;
    return {c3, 3.0 * c2 * d - c3 * d3, 3.0 * c * d2 - 3.0 * c2 * d2, d3 - 3.0 * c * d, -1.0};
}

std::vector<double> quartic_positive_roots(const TransferWeights& w)
{
    const auto p = quartic_coefficients(w);
    Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i)
        companion(0, i) = -p[i + 1] / p[0];
    for (int i = 1; i < 4; ++i)
        companion(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
    std::vector<double> roots;
    for (const std::complex<double>& z : solver.eigenvalues()) {
        if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z)) || z.real() <= 0.0)
            continue;
        double x = z.real();
        for (int it = 0; it < 50; ++it) {
            const double dp = horner_derivative(p, x);
            if (dp == 0.0)
                break;
            const double step = horner(p, x) / dp;
            const double next = x - step;
            if (!(next > 0.0) || std::abs(horner(p, next)) >= std::abs(horner(p, x)))
                break;
            x = next;
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) <= kMergeDistance * b; }),
                roots.end());
    return roots;
}

FixedPointReport classify_stability(FixedPointReport report, const TransferWeights& w)
{
    for (auto& r : report.roots) {
        r.derivative = scalar_map_dg(r.x, w);
        r.stability = stability_from_derivative(r.derivative);
    }
    return report;
}

FixedPointReport find_positive_fixed_points(const TransferWeights& w)
{
    return classify_stability(FixedPointReport{solve_line_intersections(w, 1.0)}, w);
}

std::array<double, 2> eta_closed_forms(double c, double d)
{
    const double d2 = d * d;
    const double d4 = d2 * d2;
    const double disc = 4.0 - 5.0 * d2 + d4;
    if (disc < 0.0)
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    const double s = std::sqrt(disc);
    const double eta1 = -c * d4 * std::pow(1.0 - d2 + s, 3)
                        / (std::pow(2.0 - 2.0 * d2 + s, 3) * (2.0 - d2 + s));
    const double eta2 = c * d4 * std::pow(-1.0 + d2 + s, 3)
                        / ((-2.0 + d2 + s) * std::pow(-2.0 + 2.0 * d2 + s, 3));
    return {eta1, eta2};
}

ThresholdReport critical_points(const TransferWeights& w)
{
    const double c = w.c(), d = w.d();
    ThresholdReport out;
    out.regime = d > 2.0 ? Regime::multi_capable : Regime::unique;
    const double d2 = d * d;
    // (d^2 - 1)(d^2 - 4); negative for 1 < d < 2
    const double disc = (d2 - 1.0) * (d2 - 4.0);
    if (disc < 0.0 || d2 - 2.0 <= 0.0)
        return out;

    out.has_critical_points = true;
    out.x_crit_2 = ((d2 - 2.0) + std::sqrt(disc)) / (c * d);
    // product of the roots is 1/c^2
    out.x_crit_1 = 1.0 / (c * c * out.x_crit_2);
    out.eta1 = scalar_map_g(out.x_crit_1, w) / out.x_crit_1;
    out.eta2 = scalar_map_g(out.x_crit_2, w) / out.x_crit_2;

    const auto closed = eta_closed_forms(c, d);
    out.eta1_closed_form = closed[0];
    out.eta2_closed_form = closed[1];
    auto differs = [](double a, double b) {
        return !(std::abs(a - b) <= 1e-8 * std::max(std::abs(a), std::abs(b)));
    };
    out.closed_form_disagrees = differs(out.eta1, closed[0]) || differs(out.eta2, closed[1]);
    return out;
}

CountPrediction predict_count(const TransferWeights& w, double slope)
{
    if (!(slope > 0.0))
        throw std::domain_error("slope must be positive");
    const double d = w.d();
    if (d < 1.0)
        return {1, Regime::unique, "d < 1: g is decreasing, one solution"};
    if (d <= 2.0) {
        const int n = static_cast<int>(solve_line_intersections(w, slope).size());
        return {n, Regime::unstated_band, "1 <= d <= 2: count taken from direct root finding"};
    }
    const ThresholdReport thr = critical_points(w);
    auto equal = [slope](double eta) { return std::abs(eta - slope) <= kEqualityTolerance * slope; };
    if (equal(thr.eta1) || equal(thr.eta2))
        return {2, Regime::multi_capable, "d > 2: slope touches eta1 or eta2, tangent solution"};
    if (thr.eta1 < slope && slope < thr.eta2)
        return {3, Regime::multi_capable, "d > 2: eta1 < slope < eta2"};
    return {1, Regime::multi_capable, "d > 2: slope outside (eta1, eta2)"};
}

IterationResult iterate_map(double x0, const TransferWeights& w, int max_iter, double tol)
{
    if (!(x0 > 0.0) || !std::isfinite(x0))
        throw std::domain_error("iterate_map requires a positive finite start");
    IterationResult out{{x0}, x0, false, 0, std::nullopt};
    double x = x0;
    for (int it = 1; it <= max_iter; ++it) {
        const double next = scalar_map_g(x, w);
        if (!std::isfinite(next))
            break;
        out.trajectory.push_back(next);
        out.iterations = it;
        const bool done = std::abs(next - x) < tol * std::max(1.0, x);
        x = next;
        if (done) {
            out.converged = true;
            break;
        }
    }
    out.limit = x;
    if (out.converged) {
        const auto report = find_positive_fixed_points(w);
        for (std::size_t i = 0; i < report.roots.size(); ++i) {
            const double r = report.roots[i].x;
            if (std::abs(x - r) <= 1e-6 * std::max(1.0, r)) {
                out.matched_root = i;
                break;
            }
        }
    }
    return out;
}

}  // namespace ivgibbs

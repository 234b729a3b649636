#include "ivgibbs/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ivgibbs {

namespace {

// Bracket terms above this magnitude are summed in log space.
const double kLogDirectLimit = std::log(1e280);

double log_sum(const std::array<double, 4>& log_terms)
{
    const double top = *std::max_element(log_terms.begin(), log_terms.end());
    if (top <= kLogDirectLimit) {
        double sum = 0.0;
        for (double t : log_terms)
            sum += std::exp(t);
        if (sum > 0.0 && std::isfinite(sum))
            return std::log(sum);
    }
    double sum = 0.0;
    for (double t : log_terms)
        sum += std::exp(t - top);
    return top + std::log(sum);
}

// log(e^x + e^y)
double log_add(double x, double y)
{
    const double top = std::max(x, y);
    return top + std::log1p(std::exp(std::min(x, y) - top));
}

double checked_exp(double log_value, const char* what, int index)
{
    const double v = std::exp(log_value);
    if (!std::isfinite(v) || v <= 0.0 || std::isnan(log_value))
        throw std::range_error(std::string("overflow in the equation for ") + what
                               + std::to_string(index) + " (log value "
                               + std::to_string(log_value) + ")");
    return v;
}

void check_gauge(double gauge)
{
    if (!(gauge > 0.0) || !std::isfinite(gauge))
        throw std::domain_error("gauge must be positive and finite");
}

}  // namespace

UVector::UVector(const std::array<double, 8>& u) : u_(u)
{
    for (double v : u)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error("UVector components must be positive and finite");
}

VVector::VVector(double v1, double v4, double v5, double v8) : v_{v1, v4, v5, v8}
{
    for (double v : v_)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error("VVector components must be positive and finite");
}

VVector VVector::on_invariant_set(double v4, double v5)
{
    return VVector(v4 * v4 * v4, v4, v5, v5 * v5 * v5);
}

bool VVector::on_invariant_set(double rel_tol) const
{
    auto close = [rel_tol](double x, double y) {
        return std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y));
    };
    return close(v1(), v4() * v4() * v4()) && close(v8(), v5() * v5() * v5());
}

std::array<double, 4> log_branch_sums(const UVector& u, const TransferWeights& w)
{
    static constexpr double kLogBinom[4] = {0.0, 1.0986122886681098, 1.0986122886681098, 0.0};
    std::array<double, 4> out{};
    int slot = 0;
    for (int parent : {+1, -1}) {
        for (int child : {+1, -1}) {
            // exponent per unit of (sum of grandchild spins)
            const double field = w.log_a() * child + w.log_b() * parent;
            const int base = child > 0 ? 1 : 5;
            std::array<double, 4> terms{};
            for (int minus = 0; minus <= 3; ++minus) {
                const int spin_sum = 3 - 2 * minus;
                const int spin_prod = (minus % 2 == 0) ? 1 : -1;
                const double log_u = std::log(u(base + minus));
                terms[minus] = kLogBinom[minus] + field * spin_sum + child * spin_prod * log_u;
            }
            out[slot++] = log_sum(terms);
        }
    }
    return out;
}

std::array<double, 8> log_class_products(const UVector& u, const TransferWeights& w)
{
    const auto branch = log_branch_sums(u, w);
    auto slot = [](int parent, Spin child) { return (parent > 0 ? 0 : 2) + (child == Spin::plus ? 0 : 1); };
    std::array<double, 8> out{};
    for (int cls = 1; cls <= 8; ++cls) {
        const SemiBallConfiguration rep = class_representative(cls);
        double total = 0.0;
        for (Spin s : rep.successors)
            total += branch[slot(value(rep.center), s)];
        out[cls - 1] = total;
    }
    return out;
}

UStep full_step(const UVector& u, const TransferWeights& w, double gauge)
{
    check_gauge(gauge);
    const auto log_products = log_class_products(u, w);
    const double log_gauge = std::log(gauge);
    std::array<double, 8> next{};
    for (int cls = 1; cls <= 8; ++cls) {
        const double log_next = class_sign(cls) * (log_gauge + log_products[cls - 1]);
        next[cls - 1] = checked_exp(log_next, "u'_", cls);
    }
    return UStep{UVector(next), gauge};
}

std::array<double, 4> check_identities(const UVector& u)
{
    auto l = [&u](int i) { return std::log(u(i)); };
    return {std::abs(std::expm1(3.0 * l(2) + 2.0 * l(1) - l(4))),
            std::abs(std::expm1(3.0 * l(3) + 2.0 * l(4) - l(1))),
            std::abs(std::expm1(3.0 * l(6) + 2.0 * l(5) - l(8))),
            std::abs(std::expm1(3.0 * l(7) + 2.0 * l(8) - l(5)))};
}

VStep reduced_step(const VVector& v, const TransferWeights& w, double gauge)
{
    check_gauge(gauge);
    const double la = w.log_a();
    const double lb = w.log_b();
    const double lv1 = std::log(v.v1());
    const double lv4 = std::log(v.v4());
    const double lv5 = std::log(v.v5());
    const double lv8 = std::log(v.v8());

    // (1 + (ab)^2 v1 v4) / (ab v4) and its three siblings, as logs
    const double log_b1 = log_add(0.0, 2.0 * (la + lb) + lv1 + lv4) - (la + lb) - lv4;
    const double log_b4 = log_add(2.0 * lb, 2.0 * la + lv5 + lv8) - (la + lb) - lv5;
    const double log_b5 = log_add(2.0 * lb, 2.0 * la + lv1 + lv4) - (la + lb) - lv4;
    const double log_b8 = log_add(0.0, 2.0 * (la + lb) + lv5 + lv8) - (la + lb) - lv5;

    const double lg = std::log(gauge);
    return VStep{VVector(checked_exp(lg + 3.0 * log_b1, "v'_", 1),
                         checked_exp(-(lg + 3.0 * log_b4), "v'_", 4),
                         checked_exp(-(lg + 3.0 * log_b5), "v'_", 5),
                         checked_exp(lg + 3.0 * log_b8, "v'_", 8)),
                 gauge};
}

UVector lift_to_u(const VVector& v)
{
    const double v1 = v.v1(), v4 = v.v4(), v5 = v.v5(), v8 = v.v8();
    return UVector({v1 * v1 * v1, v4 / (v1 * v1), v1 / (v4 * v4), v4 * v4 * v4,
                    v5 * v5 * v5, v8 / (v5 * v5), v5 / (v8 * v8), v8 * v8 * v8});
}

std::array<double, 2> gauge_free_products(const VVector& next)
{
    return {next.v1() * next.v4(), next.v5() * next.v8()};
}

double scalar_map_g(double x, const TransferWeights& w)
{
    const double c = w.c(), d = w.d();
    const double ratio = (1.0 + c * d * x) / (d + c * x);
    return ratio * ratio * ratio;
}

double scalar_map_dg(double x, const TransferWeights& w)
{
    const double c = w.c(), d = w.d();
    const double num = 1.0 + c * d * x;
    const double den = d + c * x;
    const double den2 = den * den;
    return 3.0 * c * (d * d - 1.0) * num * num / (den2 * den2);
}

double scalar_map_d2g(double x, const TransferWeights& w)
{
    const double c = w.c(), d = w.d();
    const double num = 1.0 + c * d * x;
    const double den = d + c * x;
    const double den2 = den * den;
    return -6.0 * c * c * (d * d - 1.0) * num * (2.0 - d * d + c * d * x) / (den2 * den2 * den);
}

}  // namespace ivgibbs

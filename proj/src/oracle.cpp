#include "ivgibbs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ivgibbs {

namespace {

// Running log-sum-exp accumulator.
class LogSum {
public:
    void add(double log_term)
    {
        if (log_term == -std::numeric_limits<double>::infinity())
            return;
        if (log_term <= top_) {
            sum_ += std::exp(log_term - top_);
        }
        else {
            sum_ = sum_ * std::exp(top_ - log_term) + 1.0;
            top_ = log_term;
        }
    }
    double value() const
    {
        return sum_ == 0.0 ? -std::numeric_limits<double>::infinity() : top_ + std::log(sum_);
    }

private:
    double top_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

constexpr std::array<int, 2> kSpins = {+1, -1};

SemiBallConfiguration triple_config(int center, const std::array<int, 3>& succ)
{
    return SemiBallConfiguration{spin_of(center), {spin_of(succ[0]), spin_of(succ[1]), spin_of(succ[2])}};
}

// log of sum over the successor triple of a vertex in W_{n-1} with spin s
// whose parent has spin s_parent (0 for the root).
double log_leaf_triple(int s, int s_parent, const CouplingParameters& params,
                       const BoundaryFieldVector& h)
{
    const double beta = params.beta();
    LogSum acc;
    for (int bits = 0; bits < 8; ++bits) {
        std::array<int, 3> c{};
        int sum = 0;
        for (int i = 0; i < 3; ++i) {
            c[i] = (bits >> i) & 1 ? -1 : 1;
            sum += c[i];
        }
        acc.add(beta * params.J() * s * sum + beta * params.Jp() * s_parent * sum
                + h.boundary_exponent(triple_config(s, c)));
    }
    return acc.value();
}

void require_depth(int depth, int max_depth, const char* what)
{
    if (depth < 1 || depth > max_depth)
        throw std::invalid_argument(std::string(what) + ": depth " + std::to_string(depth)
                                    + " is outside 1.." + std::to_string(max_depth));
}

// -beta H restricted to pairs with both ends at level <= max_level.
double log_inner_energy(const SpinConfiguration& cfg, const CayleyTree& tree,
                        const CouplingParameters& params, int max_level)
{
    double acc = 0.0;
    for (const auto& e : tree.edges())
        if (tree.level(e[1]) <= max_level)
            acc += params.J() * cfg.value(e[0]) * cfg.value(e[1]);
    for (const auto& p : tree.prolonged_pairs())
        if (tree.level(p[1]) <= max_level)
            acc += params.Jp() * cfg.value(p[0]) * cfg.value(p[1]);
    return params.beta() * acc;
}

}  // namespace

CayleyTree::CayleyTree(int depth) : depth_(depth)
{
    require_depth(depth, kMaxDepth, "CayleyTree");
    int width = 1;
    int begin = 0;
    for (int m = 0; m <= depth; ++m) {
        level_begin_.push_back(begin);
        for (int i = 0; i < width; ++i) {
            const int v = begin + i;
            level_.push_back(m);
            parent_.push_back(v == 0 ? -1 : (v - 1) / kOrder);
        }
        begin += width;
        width *= kOrder;
    }
    level_begin_.push_back(begin);
}

std::vector<int> CayleyTree::successors(int v) const
{
    if (level_[v] >= depth_)
        return {};
    return {kOrder * v + 1, kOrder * v + 2, kOrder * v + 3};
}

std::vector<int> CayleyTree::sphere(int m) const
{
    std::vector<int> out;
    for (int v = level_begin_[m]; v < level_begin_[m + 1]; ++v)
        out.push_back(v);
    return out;
}

std::vector<std::array<int, 2>> CayleyTree::edges() const
{
    std::vector<std::array<int, 2>> out;
    for (int v = 1; v < vertex_count(); ++v)
        out.push_back({parent_[v], v});
    return out;
}

std::vector<std::array<int, 2>> CayleyTree::prolonged_pairs() const
{
    std::vector<std::array<int, 2>> out;
    for (int v = 0; v < vertex_count(); ++v)
        if (level_[v] >= 2)
            out.push_back({parent_[parent_[v]], v});
    return out;
}

CayleyTree build_tree(int depth)
{
    return CayleyTree(depth);
}

SpinConfiguration SpinConfiguration::from_bits(std::uint64_t bits, int vertex_count)
{
    std::vector<Spin> spins(vertex_count);
    for (int v = 0; v < vertex_count; ++v)
        spins[v] = (bits >> v) & 1u ? Spin::minus : Spin::plus;
    return SpinConfiguration(std::move(spins));
}

SpinConfiguration SpinConfiguration::all_plus(int vertex_count)
{
    return SpinConfiguration(std::vector<Spin>(vertex_count, Spin::plus));
}

std::uint64_t SpinConfiguration::to_bits() const
{
    std::uint64_t bits = 0;
    for (std::size_t v = 0; v < spins_.size(); ++v)
        if (spins_[v] == Spin::minus)
            bits |= std::uint64_t{1} << v;
    return bits;
}

double hamiltonian(const SpinConfiguration& cfg, const CayleyTree& tree,
                   const CouplingParameters& params)
{
    double nn = 0.0;
    for (const auto& e : tree.edges())
        nn += cfg.value(e[0]) * cfg.value(e[1]);
    double nnn = 0.0;
    for (const auto& p : tree.prolonged_pairs())
        nnn += cfg.value(p[0]) * cfg.value(p[1]);
    return -params.Jp() * nnn - params.J() * nn;
}

double boundary_exponent(const SpinConfiguration& cfg, const CayleyTree& tree,
                         const BoundaryFieldVector& h)
{
    double acc = 0.0;
    for (int x : tree.sphere(tree.depth() - 1)) {
        const auto succ = tree.successors(x);
        acc += h.boundary_exponent(
            SemiBallConfiguration{cfg[x], {cfg[succ[0]], cfg[succ[1]], cfg[succ[2]]}});
    }
    return acc;
}

double partition_function_by_enumeration(const CayleyTree& tree, const CouplingParameters& params,
                                         const BoundaryFieldVector& h)
{
    require_depth(tree.depth(), FiniteVolumeMeasure::kMaxTableDepth, "enumeration");
    const int n = tree.vertex_count();
    LogSum acc;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        const auto cfg = SpinConfiguration::from_bits(bits, n);
        acc.add(-params.beta() * hamiltonian(cfg, tree, params) + boundary_exponent(cfg, tree, h));
    }
    return std::exp(acc.value());
}

namespace {

// log M_m(s_parent, s) for a vertex at level m, see partition_function_by_branches.
double log_branch(int level, int s, int s_parent, const CayleyTree& tree,
                  const CouplingParameters& params, const BoundaryFieldVector& h)
{
    const int n = tree.depth();
    if (level == n - 1)
        return log_leaf_triple(s, s_parent, params, h);
    LogSum child;
    for (int sc : kSpins)
        child.add(params.beta() * (params.J() * s * sc + params.Jp() * s_parent * sc)
                  + log_branch(level + 1, sc, s, tree, params, h));
    return CayleyTree::kOrder * child.value();
}

}  // namespace

double partition_function_by_branches(const CayleyTree& tree, const CouplingParameters& params,
                                      const BoundaryFieldVector& h)
{
    LogSum acc;
    for (int s : kSpins)
        acc.add(log_branch(0, s, 0, tree, params, h));
    return std::exp(acc.value());
}

FiniteVolumeMeasure::FiniteVolumeMeasure(const CayleyTree& tree, const CouplingParameters& params,
                                         const BoundaryFieldVector& h)
    : tree_(tree), params_(params), h_(h)
{
    require_depth(tree.depth(), kMaxDepth, "finite_measure");
    if (tree.depth() <= kMaxTableDepth) {
        const int n = tree.vertex_count();
        const std::size_t states = std::size_t{1} << n;
        table_.resize(states);
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t bits = 0; bits < states; ++bits) {
            table_[bits] = log_weight(SpinConfiguration::from_bits(bits, n));
            top = std::max(top, table_[bits]);
        }
        double sum = 0.0;
        for (double& t : table_) {
            t = std::exp(t - top);
            sum += t;
        }
        for (double& t : table_)
            t /= sum;
        log_z_ = top + std::log(sum);
    }
    else {
        LogSum acc;
        for (int s : kSpins)
            acc.add(log_branch(0, s, 0, tree_, params_, h_));
        log_z_ = acc.value();
    }
}

double FiniteVolumeMeasure::log_weight(const SpinConfiguration& cfg) const
{
    return -params_.beta() * hamiltonian(cfg, tree_, params_) + boundary_exponent(cfg, tree_, h_);
}

double FiniteVolumeMeasure::probability(const SpinConfiguration& cfg) const
{
    if (has_table())
        return table_[cfg.to_bits()];
    return std::exp(log_weight(cfg) - log_z_);
}

double FiniteVolumeMeasure::leaf_marginal(const SpinConfiguration& inner) const
{
    const int n = tree_.depth();
    if (static_cast<int>(inner.size()) != tree_.level_begin(n))
        throw std::invalid_argument("leaf_marginal expects a configuration on V_{n-1}");
    // pad to V_n so the tree helpers can index it; leaf spins are ignored
    std::vector<Spin> padded(tree_.vertex_count(), Spin::plus);
    for (int v = 0; v < static_cast<int>(inner.size()); ++v)
        padded[v] = inner[v];
    const SpinConfiguration full(std::move(padded));

    double log_mass = log_inner_energy(full, tree_, params_, n - 1);
    for (int x : tree_.sphere(n - 1)) {
        const int s_parent = tree_.parent(x) < 0 ? 0 : full.value(tree_.parent(x));
        log_mass += log_leaf_triple(full.value(x), s_parent, params_, h_);
    }
    return std::exp(log_mass - log_z_);
}

FiniteVolumeMeasure finite_measure(const CayleyTree& tree, const CouplingParameters& params,
                                   const BoundaryFieldVector& h)
{
    return FiniteVolumeMeasure(tree, params, h);
}

double kolmogorov_consistency_check(const CouplingParameters& params, const BoundaryFieldVector& h,
                                    int depth)
{
    require_depth(depth, FiniteVolumeMeasure::kMaxDepth, "kolmogorov_consistency_check");
    if (depth < 2)
        throw std::invalid_argument("kolmogorov_consistency_check needs depth >= 2");
    const CayleyTree outer(depth);
    const CayleyTree inner(depth - 1);
    const FiniteVolumeMeasure mu_outer(outer, params, h);
    const FiniteVolumeMeasure mu_inner(inner, params, h);
    const std::size_t inner_states = mu_inner.table().size();

    std::vector<double> marginal(inner_states, 0.0);
    if (mu_outer.has_table()) {
        const std::uint64_t mask = inner_states - 1;
        const auto& table = mu_outer.table();
        for (std::size_t bits = 0; bits < table.size(); ++bits)
            marginal[bits & mask] += table[bits];
    }
    else {
        for (std::size_t bits = 0; bits < inner_states; ++bits)
            marginal[bits] = mu_outer.leaf_marginal(
                SpinConfiguration::from_bits(bits, inner.vertex_count()));
    }

    double worst = 0.0;
    for (std::size_t bits = 0; bits < inner_states; ++bits)
        worst = std::max(worst, std::abs(marginal[bits] - mu_inner.table()[bits]));
    return worst;
}

namespace {

double log_semi_ball_sum(const SemiBallConfiguration& cfg, const UVector& u,
                         const TransferWeights& w)
{
    const BoundaryFieldVector h = u.to_field();
    const int center = value(cfg.center);
    LogSum acc;
    for (int bits = 0; bits < 512; ++bits) {
        double log_term = 0.0;
        int total = 0;
        for (int branch = 0; branch < 3; ++branch) {
            const int child = value(cfg.successors[branch]);
            std::array<int, 3> leaves{};
            int sum = 0;
            for (int i = 0; i < 3; ++i) {
                leaves[i] = (bits >> (3 * branch + i)) & 1 ? -1 : 1;
                sum += leaves[i];
            }
            total += sum;
            log_term += w.log_a() * child * sum + h.boundary_exponent(triple_config(child, leaves));
        }
        log_term += w.log_b() * center * total;
        acc.add(log_term);
    }
    return acc.value();
}

}  // namespace

double enumerate_semi_ball_sum(const SemiBallConfiguration& cfg, const UVector& u,
                               const TransferWeights& w)
{
    const double out = std::exp(log_semi_ball_sum(cfg, u, w));
    if (!std::isfinite(out))
        throw std::range_error("enumerated semi-ball sum overflows");
    return out;
}

std::array<double, 8> verify_recurrence_by_enumeration(const UVector& u, const TransferWeights& w)
{
    const auto log_products = log_class_products(u, w);
    std::array<double, 8> log_ratio{};
    for (int cls = 1; cls <= 8; ++cls)
        log_ratio[cls - 1] = log_semi_ball_sum(class_representative(cls), u, w)
                             - log_products[cls - 1];
    std::array<double, 8> out{};
    for (int i = 0; i < 8; ++i)
        out[i] = std::abs(std::expm1(log_ratio[i] - log_ratio[0]));
    return out;
}

}  // namespace ivgibbs

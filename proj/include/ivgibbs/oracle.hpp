#pragma once

/// \file oracle.hpp
/// \brief Exact finite-volume computations on the rooted order-3 tree.
///
/// The finite-volume measure on V_n is
///
///   mu(sigma) = exp(-beta H_n(sigma) + sum_{x in W_{n-1}} sign * h_class(x)) / Z_n
///
/// where the boundary sum has one term per vertex of W_{n-1} together with
/// its ordered successor triple. Everything here is brute force or a direct
/// product over independent branches; none of it reuses the closed-form
/// recurrence.

#include <cmath>
#include <array>
#include <cstdint>
#include <vector>

#include "ivgibbs/model.hpp"
#include "ivgibbs/recurrence.hpp"

namespace ivgibbs {

/// Rooted tree where every vertex has exactly three successors.
/// Vertices are numbered breadth first; the root is 0.
class CayleyTree {
public:
    static constexpr int kOrder = 3;
    static constexpr int kMaxDepth = 4;

    explicit CayleyTree(int depth);

    int depth() const { return depth_; }
    int vertex_count() const { return static_cast<int>(level_.size()); }
    int level(int v) const { return level_[v]; }
    /// -1 for the root.
    int parent(int v) const { return parent_[v]; }
    /// Successors of v; empty for v in W_n.
    std::vector<int> successors(int v) const;
    /// Vertices of W_m, ascending.
    std::vector<int> sphere(int m) const;
    /// First vertex index of W_m.
    int level_begin(int m) const { return level_begin_[m]; }

    /// Nearest-neighbour pairs (parent, child).
    std::vector<std::array<int, 2>> edges() const;
    /// Prolonged next-nearest-neighbour pairs (grandparent, grandchild).
    std::vector<std::array<int, 2>> prolonged_pairs() const;

private:
    int depth_;
    std::vector<int> level_;
    std::vector<int> parent_;
    std::vector<int> level_begin_;
};

CayleyTree build_tree(int depth);

/// Assignment of a spin to every vertex of V_n, indexed like the tree.
class SpinConfiguration {
public:
    explicit SpinConfiguration(std::vector<Spin> spins) : spins_(std::move(spins)) {}
    /// Bit v set means vertex v is minus.
    static SpinConfiguration from_bits(std::uint64_t bits, int vertex_count);
    static SpinConfiguration all_plus(int vertex_count);

    Spin operator[](int v) const { return spins_[v]; }
    int value(int v) const { return ivgibbs::value(spins_[v]); }
    void flip(int v) { spins_[v] = spins_[v] == Spin::plus ? Spin::minus : Spin::plus; }
    std::size_t size() const { return spins_.size(); }
    std::uint64_t to_bits() const;

private:
    std::vector<Spin> spins_;
};

/// -Jp sum_{prolonged pairs} s s - J sum_{edges} s s over V_n.
double hamiltonian(const SpinConfiguration& cfg, const CayleyTree& tree,
                   const CouplingParameters& params);

/// sum over x in W_{n-1} of sign * h_class for the semi-ball at x.
double boundary_exponent(const SpinConfiguration& cfg, const CayleyTree& tree,
                         const BoundaryFieldVector& h);

/// Gibbs measure on V_n with a translation-invariant boundary field.
///
/// Depths 1 and 2 carry a full probability table (2^4 and 2^13 entries).
/// Depth 3 keeps only the partition function (branch factorization) and
/// evaluates probabilities on demand.
class FiniteVolumeMeasure {
public:
    static constexpr int kMaxTableDepth = 2;
    static constexpr int kMaxDepth = 3;

    FiniteVolumeMeasure(const CayleyTree& tree, const CouplingParameters& params,
                        const BoundaryFieldVector& h);

    const CayleyTree& tree() const { return tree_; }
    double partition_function() const { return std::exp(log_z_); }
    double log_partition_function() const { return log_z_; }
    bool has_table() const { return !table_.empty(); }
    /// Indexed by SpinConfiguration::to_bits().
    const std::vector<double>& table() const { return table_; }

    double log_weight(const SpinConfiguration& cfg) const;
    double probability(const SpinConfiguration& cfg) const;

    /// Marginal of an inner configuration on V_{n-1}, summing the leaves by
    /// independence of the leaf triples. cfg covers V_{n-1}.
    double leaf_marginal(const SpinConfiguration& inner) const;

private:
    CayleyTree tree_;
    CouplingParameters params_;
    BoundaryFieldVector h_;
    double log_z_ = 0.0;
    std::vector<double> table_;
};

FiniteVolumeMeasure finite_measure(const CayleyTree& tree, const CouplingParameters& params,
                                   const BoundaryFieldVector& h);

/// Full 2^|V_n| sum of the unnormalised weights (depth <= 2).
double partition_function_by_enumeration(const CayleyTree& tree, const CouplingParameters& params,
                                         const BoundaryFieldVector& h);

/// Partition function from the product over independent root branches.
double partition_function_by_branches(const CayleyTree& tree, const CouplingParameters& params,
                                      const BoundaryFieldVector& h);

/// max over sigma in Omega^{V_{n-1}} of |sum_omega mu_n(sigma v omega) - mu_{n-1}(sigma)|.
/// depth 2 marginalises the full table; depth 3 uses leaf summation.
double kolmogorov_consistency_check(const CouplingParameters& params, const BoundaryFieldVector& h,
                                    int depth = 2);

/// Sum over the nine grandchild spins of the right-hand side of the
/// semi-ball equation for the configuration (i; j, k, l), with the field
/// given by u.
double enumerate_semi_ball_sum(const SemiBallConfiguration& cfg, const UVector& u,
                               const TransferWeights& w);

/// For each class, |(S_c / P_c) / (S_1 / P_1) - 1| where S_c is the
/// enumerated sum and P_c the closed-form bracket product.
std::array<double, 8> verify_recurrence_by_enumeration(const UVector& u, const TransferWeights& w);

}  // namespace ivgibbs

#pragma once

/// \file recurrence.hpp
/// \brief The eight-equation boundary-field recurrence, its four-variable
/// reduction, and the scalar map g with derivatives.
///
/// Every map carries an explicit gauge (the partition-function ratio that
/// multiplies each equation). Components whose equation is written for the
/// inverse (classes 2, 4, 5, 7 -- the negative-sign classes) are returned
/// solved for the component itself, so with gauge lambda a direct component
/// scales as lambda and an inverted one as 1/lambda.

#include <array>

#include "ivgibbs/model.hpp"

namespace ivgibbs {

/// u_1..u_8, all strictly positive and finite.
class UVector {
public:
    explicit UVector(const std::array<double, 8>& u);
    static UVector ones() { return UVector({1, 1, 1, 1, 1, 1, 1, 1}); }
    static UVector from_field(const BoundaryFieldVector& h) { return UVector(h.u_values()); }

    /// 1-based class index.
    double operator()(int class_index) const { return u_[class_index - 1]; }
    const std::array<double, 8>& values() const { return u_; }
    BoundaryFieldVector to_field() const { return BoundaryFieldVector::from_u(u_); }

private:
    std::array<double, 8> u_;
};

/// (v1, v4, v5, v8), all strictly positive; u_i = v_i^3 for i in {1,4,5,8}.
class VVector {
public:
    VVector(double v1, double v4, double v5, double v8);

    double v1() const { return v_[0]; }
    double v4() const { return v_[1]; }
    double v5() const { return v_[2]; }
    double v8() const { return v_[3]; }
    const std::array<double, 4>& values() const { return v_; }

    /// On the invariant set v1 = v4^3 and v8 = v5^3.
    static VVector on_invariant_set(double v4, double v5);
    bool on_invariant_set(double rel_tol = 1e-12) const;

private:
    std::array<double, 4> v_;
};

/// The four branch sums of a semi-ball: B(s_parent, s_child) is the sum over
/// the three successor spins of the child's semi-ball.
///   index 0: (+,+), 1: (+,-), 2: (-,+), 3: (-,-)
/// Returned as natural logarithms.
std::array<double, 4> log_branch_sums(const UVector& u, const TransferWeights& w);

/// Log of the right-hand bracket product for each class (without gauge):
/// class (i; j,k,l) -> log B(i,j) + log B(i,k) + log B(i,l).
std::array<double, 8> log_class_products(const UVector& u, const TransferWeights& w);

struct UStep {
    UVector next;
    double gauge;
};

struct VStep {
    VVector next;
    double gauge;
};

/// One application of the eight equations. Throws std::range_error naming
/// the offending component on overflow.
UStep full_step(const UVector& u, const TransferWeights& w, double gauge = 1.0);

/// |u2^3 u1^2 / u4 - 1|, |u3^3 u4^2 / u1 - 1|, |u6^3 u5^2 / u8 - 1|,
/// |u7^3 u8^2 / u5 - 1|.
std::array<double, 4> check_identities(const UVector& u_next);

/// One application of the reduced system; gauge here is the cube root of the
/// full-system gauge.
VStep reduced_step(const VVector& v, const TransferWeights& w, double gauge = 1.0);

/// Lift v to the full u vector via u_i = v_i^3 and the cube identities.
UVector lift_to_u(const VVector& v);

/// Gauge-free combinations of a reduced step output: v1' v4' and v5' v8'.
/// On the invariant set with v4 = v5 both equal g(v4^4).
std::array<double, 2> gauge_free_products(const VVector& next);

/// g(x) = ((1 + c d x) / (d + c x))^3
double scalar_map_g(double x, const TransferWeights& w);
double scalar_map_dg(double x, const TransferWeights& w);
double scalar_map_d2g(double x, const TransferWeights& w);

}  // namespace ivgibbs

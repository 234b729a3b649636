#pragma once

/// \file model.hpp
/// \brief Physical parameters, transfer weights, semi-ball configuration
/// classes and boundary-field vectors for the Ising-Vannimenus model on the
/// order-3 Cayley tree.

#include <array>
#include <cstdint>

namespace ivgibbs {

/// Couplings J (nearest neighbour), Jp (prolonged next-nearest neighbour)
/// and temperature T. Boltzmann constant is 1, so beta = 1/T. Negative T is
/// accepted; T == 0 is not.
class CouplingParameters {
public:
    CouplingParameters(double J, double Jp, double T);

    double J() const { return J_; }
    double Jp() const { return Jp_; }
    double T() const { return T_; }
    double beta() const { return beta_; }

private:
    double J_;
    double Jp_;
    double T_;
    double beta_;
};

/// a = e^{beta J}, b = e^{beta Jp}, c = a^2, d = b^2.
///
/// The logarithms are the stored representation; the accessors exponentiate.
/// Construction guarantees c and d are positive and finite.
class TransferWeights {
public:
    static TransferWeights from_logs(double log_a, double log_b);
    /// Build from c, d directly (a = sqrt(c), b = sqrt(d)). Used for
    /// parameter sweeps over the scalar map.
    static TransferWeights from_cd(double c, double d);

    double log_a() const { return log_a_; }
    double log_b() const { return log_b_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

private:
    TransferWeights(double log_a, double log_b);

    double log_a_;
    double log_b_;
    double a_;
    double b_;
    double c_;
    double d_;
};

TransferWeights derive_weights(const CouplingParameters& params);

enum class Spin : std::int8_t { minus = -1, plus = 1 };

constexpr int value(Spin s) { return static_cast<int>(s); }
constexpr Spin spin_of(int v) { return v > 0 ? Spin::plus : Spin::minus; }

/// A vertex x with its three direct successors y, z, w.
struct SemiBallConfiguration {
    Spin center;
    std::array<Spin, 3> successors;

    friend bool operator==(const SemiBallConfiguration&, const SemiBallConfiguration&) = default;
};

/// One of the eight permutation classes; index is 1-based.
///
/// Classes 1..4 have a plus centre and 0..3 minus successors, classes 5..8
/// a minus centre and 0..3 minus successors. sign is the product of all four
/// spins.
struct ConfigClass {
    int index;
    int sign;

    friend bool operator==(const ConfigClass&, const ConfigClass&) = default;
};

ConfigClass classify_config(const SemiBallConfiguration& cfg);

/// Sign shared by every member of a class (index 1..8).
int class_sign(int class_index);

/// Number of the 16 configurations in each class (1,3,3,1,1,3,3,1).
int class_multiplicity(int class_index);

/// Canonical member: minus successors placed last.
SemiBallConfiguration class_representative(int class_index);

/// All 16 semi-ball configurations, centre-major, successors in binary order.
std::array<SemiBallConfiguration, 16> all_semi_ball_configurations();

/// The collapsed 8-component field h_1..h_8 (u_i = e^{h_i}).
class BoundaryFieldVector {
public:
    BoundaryFieldVector() = default;
    static BoundaryFieldVector from_h(const std::array<double, 8>& h);
    /// Throws std::domain_error unless every u_i is positive and finite.
    static BoundaryFieldVector from_u(const std::array<double, 8>& u);

    /// 1-based class index.
    double h(int class_index) const;
    double u(int class_index) const;

    const std::array<double, 8>& h_values() const { return h_; }
    std::array<double, 8> u_values() const;

    /// Field value entering the measure for a configuration: sign * h_class.
    double boundary_exponent(const SemiBallConfiguration& cfg) const;

    /// Residuals of h2 = (h4-2h1)/3, h3 = (h1-2h4)/3, h6 = (h8-2h5)/3,
    /// h7 = (h5-2h8)/3, as absolute differences.
    std::array<double, 4> cube_identity_residuals() const;

private:
    explicit BoundaryFieldVector(const std::array<double, 8>& h) : h_(h) {}

    std::array<double, 8> h_{};
};

/// h = (p, (q-2p)/3, (p-2q)/3, q, r, (s-2r)/3, (r-2s)/3, s).
BoundaryFieldVector field_form_from_pqrs(double p, double q, double r, double s);

/// Field on the invariant set with v4 = v5 = x^{1/4}, v1 = v4^3, v8 = v5^3
/// and u_i = v_i^3. Throws std::domain_error for x <= 0.
BoundaryFieldVector field_from_scalar(double x);

/// Inverse of field_from_scalar on its image: exp(4 h4 / 3).
double scalar_from_field(const BoundaryFieldVector& h);

}  // namespace ivgibbs

#include "ivgibbs/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ivgibbs {

namespace {

bool usable_weight(double w)
{
    return std::isfinite(w) && w >= std::numeric_limits<double>::min();
}

void check_class_index(int class_index)
{
    if (class_index < 1 || class_index > 8)
        throw std::out_of_range("class index must be in 1..8, got " + std::to_string(class_index));
}

}  // namespace

CouplingParameters::CouplingParameters(double J, double Jp, double T)
    : J_(J), Jp_(Jp), T_(T), beta_(0.0)
{
    if (!std::isfinite(J) || !std::isfinite(Jp))
        throw std::domain_error("couplings J and Jp must be finite");
    if (!std::isfinite(T) || T == 0.0)
        throw std::domain_error("temperature must be finite and nonzero");
    beta_ = 1.0 / T;
}

TransferWeights::TransferWeights(double log_a, double log_b)
    : log_a_(log_a), log_b_(log_b)
{
    a_ = std::exp(log_a);
    b_ = std::exp(log_b);
    c_ = a_ * a_;
    d_ = b_ * b_;
}

TransferWeights TransferWeights::from_logs(double log_a, double log_b)
{
    if (!std::isfinite(log_a) || !std::isfinite(log_b))
        throw std::range_error("transfer weight exponents must be finite");
    TransferWeights w(log_a, log_b);
    if (!usable_weight(w.c_))
        throw std::range_error("weight c = exp(2 beta J) is out of double range (beta J = "
                               + std::to_string(log_a) + ")");
    if (!usable_weight(w.d_))
        throw std::range_error("weight d = exp(2 beta Jp) is out of double range (beta Jp = "
                               + std::to_string(log_b) + ")");
    return w;
}

TransferWeights TransferWeights::from_cd(double c, double d)
{
    if (!(c > 0.0) || !(d > 0.0) || !std::isfinite(c) || !std::isfinite(d))
        throw std::domain_error("c and d must be positive and finite");
    TransferWeights w = from_logs(0.5 * std::log(c), 0.5 * std::log(d));
    // keep the caller's exact c and d; a and b follow from them
    w.c_ = c;
    w.d_ = d;
    w.a_ = std::sqrt(c);
    w.b_ = std::sqrt(d);
    return w;
}

TransferWeights derive_weights(const CouplingParameters& params)
{
    return TransferWeights::from_logs(params.beta() * params.J(), params.beta() * params.Jp());
}

ConfigClass classify_config(const SemiBallConfiguration& cfg)
{
    int minus = 0;
    int product = value(cfg.center);
    for (Spin s : cfg.successors) {
        if (s == Spin::minus)
            ++minus;
        product *= value(s);
    }
    const int base = cfg.center == Spin::plus ? 1 : 5;
    return ConfigClass{base + minus, product};
}

int class_sign(int class_index)
{
    check_class_index(class_index);
    return classify_config(class_representative(class_index)).sign;
}

int class_multiplicity(int class_index)
{
    check_class_index(class_index);
    const int minus = (class_index - 1) % 4;
    return (minus == 0 || minus == 3) ? 1 : 3;
}

SemiBallConfiguration class_representative(int class_index)
{
    check_class_index(class_index);
    const int minus = (class_index - 1) % 4;
    SemiBallConfiguration cfg{class_index <= 4 ? Spin::plus : Spin::minus,
                              {Spin::plus, Spin::plus, Spin::plus}};
    for (int i = 0; i < minus; ++i)
        cfg.successors[2 - i] = Spin::minus;
    return cfg;
}

std::array<SemiBallConfiguration, 16> all_semi_ball_configurations()
{
    std::array<SemiBallConfiguration, 16> out{};
    for (int idx = 0; idx < 16; ++idx) {
        auto bit = [idx](int b) { return (idx >> b) & 1 ? Spin::minus : Spin::plus; };
        out[idx] = SemiBallConfiguration{bit(3), {bit(2), bit(1), bit(0)}};
    }
    return out;
}

BoundaryFieldVector BoundaryFieldVector::from_h(const std::array<double, 8>& h)
{
    for (double v : h)
        if (!std::isfinite(v))
            throw std::domain_error("boundary field components must be finite");
    return BoundaryFieldVector(h);
}

BoundaryFieldVector BoundaryFieldVector::from_u(const std::array<double, 8>& u)
{
    std::array<double, 8> h{};
    for (std::size_t i = 0; i < 8; ++i) {
        if (!(u[i] > 0.0) || !std::isfinite(u[i]))
            throw std::domain_error("u components must be positive and finite");
        h[i] = std::log(u[i]);
    }
    return BoundaryFieldVector(h);
}

double BoundaryFieldVector::h(int class_index) const
{
    check_class_index(class_index);
    return h_[class_index - 1];
}

double BoundaryFieldVector::u(int class_index) const
{
    return std::exp(h(class_index));
}

std::array<double, 8> BoundaryFieldVector::u_values() const
{
    std::array<double, 8> u{};
    for (std::size_t i = 0; i < 8; ++i)
        u[i] = std::exp(h_[i]);
    return u;
}

double BoundaryFieldVector::boundary_exponent(const SemiBallConfiguration& cfg) const
{
    const ConfigClass cls = classify_config(cfg);
    return cls.sign * h_[cls.index - 1];
}

std::array<double, 4> BoundaryFieldVector::cube_identity_residuals() const
{
    const auto& h = h_;
    return {std::abs(h[1] - (h[3] - 2.0 * h[0]) / 3.0),
            std::abs(h[2] - (h[0] - 2.0 * h[3]) / 3.0),
            std::abs(h[5] - (h[7] - 2.0 * h[4]) / 3.0),
            std::abs(h[6] - (h[4] - 2.0 * h[7]) / 3.0)};
}

BoundaryFieldVector field_form_from_pqrs(double p, double q, double r, double s)
{
    return BoundaryFieldVector::from_h({p, (q - 2.0 * p) / 3.0, (p - 2.0 * q) / 3.0, q,
                                        r, (s - 2.0 * r) / 3.0, (r - 2.0 * s) / 3.0, s});
}

BoundaryFieldVector field_from_scalar(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("field_from_scalar requires a positive finite x");
    const double log_x = std::log(x);
    // u4 = u5 = x^{3/4}, u1 = u8 = x^{9/4}
    const double h14 = 0.75 * log_x;
    const double h18 = 2.25 * log_x;
    return field_form_from_pqrs(h18, h14, h14, h18);
}

double scalar_from_field(const BoundaryFieldVector& h)
{
    return std::exp(4.0 * h.h(4) / 3.0);
}

}  // namespace ivgibbs

#include <stdexcept>
#include <doctest.h>

#include <cmath>
#include <random>

#include "ivgibbs/fixpoint.hpp"
#include "ivgibbs/recurrence.hpp"
#include "test_support.hpp"

using namespace ivgibbs;
using ivgibbs::testing::rel_err;


TEST_CASE("full_step with unit weights")
{
    const auto w = TransferWeights::from_logs(0.0, 0.0);
    const auto step = full_step(UVector::ones(), w);
    // every bracket is 1 + 3 + 3 + 1
    CHECK(step.next(1) == doctest::Approx(512.0).epsilon(1e-15));
    CHECK(step.next(8) == doctest::Approx(512.0).epsilon(1e-15));
    CHECK(step.next(3) == doctest::Approx(512.0).epsilon(1e-15));
    CHECK(step.next(2) == doctest::Approx(1.0 / 512.0).epsilon(1e-15));

    const auto scaled = full_step(UVector::ones(), w, 0.5);
    CHECK(scaled.gauge == 0.5);
    CHECK(scaled.next(1) == doctest::Approx(256.0).epsilon(1e-13));
    CHECK(scaled.next(4) == doctest::Approx(1.0 / 256.0).epsilon(1e-13));
}

TEST_CASE("full_step brackets match the hand-written equations")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto u = ivgibbs::testing::random_u(rng);
        const auto w = ivgibbs::testing::random_weights(rng);
        const double a = w.a(), b = w.b(), ab = a * b;
        const double pp = ab * ab * ab * u(1) + 3 * ab / u(2) + 3 * u(3) / ab + 1 / (ab * ab * ab * u(4));
        const double pm = b * b * b / (a * a * a * u(5)) + 3 * b * u(6) / a + 3 * a / (b * u(7))
                          + a * a * a * u(8) / (b * b * b);
        const double mp = a * a * a * u(1) / (b * b * b) + 3 * a / (b * u(2)) + 3 * b * u(3) / a
                          + b * b * b / (a * a * a * u(4));
        const double mm = 1 / (ab * ab * ab * u(5)) + 3 * u(6) / ab + 3 * ab / u(7) + ab * ab * ab * u(8);
        const std::array<double, 8> want{pp * pp * pp,      1 / (pp * pp * pm), pp * pm * pm,
                                         1 / (pm * pm * pm), 1 / (mp * mp * mp), mp * mp * mm,
                                         1 / (mp * mm * mm), mm * mm * mm};
        const auto got = full_step(u, w).next;
        for (int k = 1; k <= 8; ++k)
            CHECK(rel_err(got(k), want[k - 1]) < 1e-12);
    }
}

TEST_CASE("check_identities")
{
    for (double r : check_identities(UVector::ones()))
        CHECK(r == 0.0);

    auto u = UVector::ones().values();
    u[1] = 2.0;
    const auto r = check_identities(UVector(u));
    CHECK(r[0] == doctest::Approx(7.0).epsilon(1e-14));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto step = full_step(ivgibbs::testing::random_u(rng), ivgibbs::testing::three_root_weights());
        for (double res : check_identities(step.next))
            CHECK(res < 1e-10);
    }
}

TEST_CASE("gauge covariance of full_step")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto u = ivgibbs::testing::random_u(rng);
        const auto w = ivgibbs::testing::random_weights(rng);
        const double lambda = std::exp(std::uniform_real_distribution<double>(-2, 2)(rng));
        const auto base = full_step(u, w).next;
        const auto scaled = full_step(u, w, lambda).next;
        for (int k = 1; k <= 8; ++k) {
            const double factor = class_sign(k) > 0 ? lambda : 1.0 / lambda;
            CHECK(rel_err(scaled(k), factor * base(k)) < 1e-13);
        }
        CHECK(rel_err(scaled(1) * scaled(4), base(1) * base(4)) < 1e-13);
        CHECK(rel_err(scaled(5) * scaled(8), base(5) * base(8)) < 1e-13);
    }
}

TEST_CASE("large weights switch to log-space brackets")
{
    // (ab)^3 u1 alone is e^{690}, beyond 1e280
    const auto w = TransferWeights::from_logs(115.0, 115.0);
    const auto u = UVector::ones();
    const auto logs = log_branch_sums(u, w);
    CHECK(logs[0] == doctest::Approx(690.0).epsilon(1e-12));
    CHECK_THROWS_AS(full_step(u, w), std::range_error);
}

TEST_CASE("reduced_step")
{
    SUBCASE("unit weights")
    {
        const auto step = reduced_step(VVector(1, 1, 1, 1), TransferWeights::from_logs(0, 0));
        CHECK(step.next.v1() == doctest::Approx(8.0).epsilon(1e-15));
        CHECK(step.next.v8() == doctest::Approx(8.0).epsilon(1e-15));
        CHECK(step.next.v4() == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    }
    SUBCASE("cubing the reduced step reproduces the full step")
    {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> lv(-1.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const VVector v(std::exp(lv(rng)), std::exp(lv(rng)), std::exp(lv(rng)), std::exp(lv(rng)));
            const auto w = ivgibbs::testing::random_weights(rng);
            const double lambda = std::exp(lv(rng));
            const auto reduced = reduced_step(v, w, lambda).next;
            const auto full = full_step(lift_to_u(v), w, lambda * lambda * lambda).next;
            CHECK(rel_err(full(1), std::pow(reduced.v1(), 3)) < 1e-12);
            CHECK(rel_err(full(4), std::pow(reduced.v4(), 3)) < 1e-12);
            CHECK(rel_err(full(5), std::pow(reduced.v5(), 3)) < 1e-12);
            CHECK(rel_err(full(8), std::pow(reduced.v8(), 3)) < 1e-12);
            for (double r : check_identities(full))
                CHECK(r < 1e-10);
        }
    }
    SUBCASE("reduction commutes with g on the invariant set")
    {
        std::mt19937_64 rng(37);
        std::uniform_real_distribution<double> lx(-6.0, 6.0);
        for (int trial = 0; trial < 200; ++trial) {
            const auto w = ivgibbs::testing::random_weights(rng);
            const double x = std::exp(lx(rng));
            const double v4 = std::pow(x, 0.25);
            const auto next = reduced_step(VVector::on_invariant_set(v4, v4), w, 3.7).next;
            const auto products = gauge_free_products(next);
            CHECK(rel_err(products[0], scalar_map_g(x, w)) < 1e-10);
            CHECK(rel_err(products[1], scalar_map_g(x, w)) < 1e-10);
        }
    }
}

TEST_CASE("fixed points of g are fixed points of the recurrences up to gauge")
{
    const auto w = ivgibbs::testing::three_root_weights();
    for (const auto& fp : find_positive_fixed_points(w).roots) {
        // (next_i / u_i)^{sign_i} is one common number
        const auto u = UVector::from_field(field_from_scalar(fp.x));
        const auto next = full_step(u, w).next;
        const double ref = next(1) / u(1);
        for (int k = 2; k <= 8; ++k)
            CHECK(rel_err(std::pow(next(k) / u(k), class_sign(k)), ref) < 1e-10);

        const double v4 = std::pow(fp.x, 0.25);
        const auto v = VVector::on_invariant_set(v4, v4);
        const auto vn = reduced_step(v, w).next;
        const double vref = vn.v1() / v.v1();
        CHECK(rel_err(v.v4() / vn.v4(), vref) < 1e-10);
        CHECK(rel_err(v.v5() / vn.v5(), vref) < 1e-10);
        CHECK(rel_err(vn.v8() / v.v8(), vref) < 1e-10);
    }
}

TEST_CASE("scalar map g")
{
    const auto unit = TransferWeights::from_cd(1.0, 1.0);
    for (double x : {0.0, 0.3, 1.0, 42.0, 1e6})
        CHECK(scalar_map_g(x, unit) == doctest::Approx(1.0).epsilon(1e-15));

    const auto w = TransferWeights::from_cd(0.8, 2.5);
    CHECK(rel_err(scalar_map_g(0.0, w), 1.0 / (2.5 * 2.5 * 2.5)) < 1e-15);
}

TEST_CASE("derivatives of g")
{
    SUBCASE("d = 1 flattens g")
    {
        const auto w = TransferWeights::from_cd(3.0, 1.0);
        for (double x : {0.0, 1.0, 10.0})
            CHECK(scalar_map_dg(x, w) == 0.0);
    }
    SUBCASE("monotonicity follows d")
    {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> c(0.01, 10.0);
        std::uniform_real_distribution<double> dlow(0.01, 0.99);
        std::uniform_real_distribution<double> dhigh(1.01, 10.0);
        std::uniform_real_distribution<double> x(0.0, 100.0);
        for (int i = 0; i < 300; ++i) {
            CHECK(scalar_map_dg(x(rng), TransferWeights::from_cd(c(rng), dlow(rng))) < 0.0);
            CHECK(scalar_map_dg(x(rng), TransferWeights::from_cd(c(rng), dhigh(rng))) > 0.0);
        }
    }
    SUBCASE("closed forms agree with central differences")
    {
        std::mt19937_64 rng(43);
        std::uniform_real_distribution<double> cd(1e-3, 10.0);
        std::uniform_real_distribution<double> xs(0.0, 100.0);
        for (int i = 0; i < 500; ++i) {
            const double c = cd(rng), d = cd(rng), x = xs(rng);
            const auto w = TransferWeights::from_cd(c, d);
            CHECK(rel_err(scalar_map_dg(x, w), ivgibbs::testing::fd_first(x, c, d)) < 1e-6);
            CHECK(rel_err(scalar_map_d2g(x, w), ivgibbs::testing::fd_second(x, c, d)) < 1e-6);
        }
    }
}

TEST_CASE("vector validation")
{
    CHECK_THROWS_AS(UVector({1, 1, 1, 0, 1, 1, 1, 1}), std::domain_error);
    CHECK_THROWS_AS(VVector(1, -1, 1, 1), std::domain_error);
    CHECK(VVector::on_invariant_set(1.3, 0.7).on_invariant_set());
    CHECK_FALSE(VVector(1, 2, 1, 1).on_invariant_set());
}

#include <gtest/gtest.h>

#include "lipfree/weighting.hpp"
#include "support/random_instances.hpp"

using namespace lipfree;
using testkit::Rng;

namespace {

// Base point plus one point per radius, all on a star through the base.
FiniteMetricSpace<Rational> star(const std::vector<Rational>& radii) {
    const Index n = static_cast<Index>(radii.size()) + 1;
    Matrix<Rational> d = Matrix<Rational>::Zero(n, n);
    for (Index i = 1; i < n; ++i) {
        d(i, 0) = d(0, i) = radii[static_cast<std::size_t>(i - 1)];
        for (Index j = 1; j < i; ++j) d(i, j) = d(j, i) = d(i, 0) + d(j, 0);
    }
    return validate_metric(std::move(d));
}

}  // namespace

TEST(Daleth, ThreeBranches) {
    for (int n : {-3, 0, 2, 5}) {
        const Rational p = pow2<Rational>(n);
        const auto space = star({p / 2, Rational(3, 2) * p, 4 * p, p, 2 * p});
        const auto h = daleth(n, space);
        EXPECT_EQ(h.values(0), Rational(1));
        EXPECT_EQ(h.values(1), Rational(1));
        EXPECT_EQ(h.values(2), Rational(1, 2));
        EXPECT_EQ(h.values(3), Rational(0));
        EXPECT_EQ(h.values(4), Rational(1));
        EXPECT_EQ(h.values(5), Rational(0));
        EXPECT_EQ(h.kind, WeightKind::Daleth);
    }
}

TEST(PiWindow, OneOnTheAnnulusAndZeroAtBase) {
    for (int n = 1; n <= 4; ++n) {
        const auto space = star({pow2<Rational>(-n + 1), pow2<Rational>(n), Rational(3, 4) * pow2<Rational>(n)});
        const auto h = pi_window(n, space);
        EXPECT_EQ(h.values(0), Rational(0));
        for (Index x = 1; x < space.size(); ++x) EXPECT_EQ(h.values(x), Rational(1));
    }
    EXPECT_THROW(pi_window(0, star({Rational(1)})), Error);
}

TEST(PiWindow, DifferenceEqualsProduct) {
    Rng rng(51);
    for (int t = 0; t < 100; ++t) {
        const int n = testkit::uniform_int(rng, 1, 5);
        const auto space = testkit::random_space<Rational>(8, rng, 40, 8, testkit::uniform_int(rng, -4, 4));
        const auto hi = daleth(n, space).values;
        const auto lo = daleth(-n, space).values;
        const Vector<Rational> product = hi.cwiseProduct(Vector<Rational>::Ones(8) - lo);
        EXPECT_EQ(pi_window(n, space).values, product);
    }
}

TEST(WeightFunction, IdentityAndLargeCutoff) {
    Rng rng(52);
    const auto space = testkit::random_space<Rational>(7, rng);
    const auto f = testkit::random_potential(space, rng);
    const auto one = make_weight(Vector<Rational>(Vector<Rational>::Ones(7)), space);
    EXPECT_EQ(weight_function(f, one, space).values(), f.values());

    int n = 0;
    while (pow2<Rational>(n) < rho(space).values().maxCoeff()) ++n;
    EXPECT_EQ(weight_function(rho(space), daleth(n, space), space).values(), rho(space).values());
}

TEST(WeightFunction, OperatorBoundThree) {
    Rng rng(53);
    for (int t = 0; t < 1000; ++t) {
        const int n = testkit::uniform_int(rng, -4, 8);
        const auto space = testkit::random_space<Rational>(testkit::uniform_int(rng, 2, 8), rng, 12,
                                                           testkit::uniform_int(rng, 1, 4), n + testkit::uniform_int(rng, -3, 1));
        const auto f = testkit::random_potential(space, rng);
        EXPECT_LE(weight_function(f, daleth(n, space), space).lip(), Rational(3) * f.lip());
    }
}

TEST(WeightedAdjoint, Examples) {
    Rng rng(54);
    const auto space = testkit::random_space<Rational>(6, rng);
    Vector<Rational> v = Vector<Rational>::Ones(6);
    v(3) = 0;
    EXPECT_TRUE(weighted_adjoint(Functional<Rational>::delta(3), make_weight(v, space)).empty());

    for (int t = 0; t < 50; ++t) {
        const auto phi = testkit::random_functional(space, 4, rng);
        EXPECT_EQ(weighted_adjoint(phi, daleth(10, space)), phi);
    }
}

TEST(WeightedAdjoint, AdjointIdentity) {
    Rng rng(55);
    for (int t = 0; t < 300; ++t) {
        const auto space = testkit::random_space<Rational>(testkit::uniform_int(rng, 2, 8), rng, 10, 1,
                                                           testkit::uniform_int(rng, -2, 4));
        const auto f = testkit::random_potential(space, rng);
        const auto phi = testkit::random_functional(space, 4, rng);
        const auto h = t % 2 ? daleth(testkit::uniform_int(rng, -3, 6), space) : pi_window(testkit::uniform_int(rng, 1, 5), space);
        EXPECT_EQ(evaluate(weighted_adjoint(phi, h), f), evaluate(phi, weight_function(f, h, space)));
    }
}

TEST(WeightedAdjoint, EventuallyStable) {
    Rng rng(56);
    for (int t = 0; t < 50; ++t) {
        const auto space = testkit::random_space<Rational>(7, rng, 30, 3);
        const auto phi = testkit::random_functional(space, 5, rng);
        const Rational radius = rho(space).values().maxCoeff();
        for (int n = -4; n < 12; ++n) {
            if (pow2<Rational>(n) >= radius) {
                EXPECT_EQ(weighted_adjoint(phi, daleth(n, space)), phi);
            }
        }
    }
}

TEST(MakeWeight, RejectsValuesOutsideUnitInterval) {
    const auto space = star({Rational(1), Rational(2)});
    Vector<Rational> v(3);
    v << 0, Rational(3, 2), 1;
    EXPECT_THROW(make_weight(v, space), Error);
    EXPECT_THROW(make_weight(Vector<Rational>(Vector<Rational>::Ones(2)), space), Error);
}

#include <gtest/gtest.h>

#include "lipfree/exotic.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/transport.hpp"
#include "support/random_instances.hpp"

using namespace lipfree;
using lipfree::testkit::Rng;

namespace {

Matrix<Rational> colinear() {
    Matrix<Rational> d(3, 3);
    d << 0, 1, 2,
         1, 0, 1,
         2, 1, 0;
    return d;
}

MetricError expect_metric_error(Matrix<Rational> d) {
    try {
        validate_metric(std::move(d));
    } catch (const MetricError& e) {
        return e;
    }
    ADD_FAILURE() << "expected MetricError";
    return MetricError(Errc::InvalidArgument, "", {-1, -1, -1});
}

// Independent slope maximum over ordered pairs.
template <typename Scalar>
Scalar brute_lip(const Vector<Scalar>& f, const FiniteMetricSpace<Scalar>& space) {
    Scalar best(0);
    for (Index i = 0; i < space.size(); ++i) {
        for (Index j = 0; j < space.size(); ++j) {
            if (i == j) continue;
            Scalar s = (f(i) - f(j)) / space.d(i, j);
            if (s > best) best = s;
        }
    }
    return best;
}

}  // namespace

TEST(Numeric, ParsesDecimalsAndFractionsExactly) {
    EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
    EXPECT_EQ(parse_rational("-2/6"), Rational(-1, 3));
    EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
    EXPECT_EQ(parse_rational("25e-3"), Rational(1, 40));
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("0.0625"), Rational(1, 16));
    EXPECT_EQ(parse_rational("010/0.08"), Rational(125));
    EXPECT_EQ(parse_rational("000"), Rational(0));
    EXPECT_EQ(rational_from_double(0.1), Rational(1, 10));
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Numeric, FormatsTwelveSignificantDigits) {
    EXPECT_EQ(format12(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format12(0.0), "0");
    EXPECT_DOUBLE_EQ(round12(2.0 / 3.0), 0.666666666667);
}

TEST(Numeric, ComparatorIsExactForRationals) {
    const Comparator<Rational> exact(0.5);
    EXPECT_FALSE(exact.eq(Rational(1), Rational(1) + Rational(1, 1000000)));
    const Comparator<double> approx(1e-9);
    EXPECT_TRUE(approx.eq(1.0, 1.0 + 1e-12));
    EXPECT_TRUE(approx.lt(1.0, 1.1));
    EXPECT_FALSE(approx.lt(1.0, 1.0 + 1e-12));
}

TEST(ValidateMetric, AcceptsLineMetric) {
    const auto space = validate_metric(colinear(), {"0", "a", "b"});
    EXPECT_EQ(space.size(), 3);
    EXPECT_EQ(space.index_of("b"), 2);
    EXPECT_THROW(space.index_of("zzz"), Error);
}

TEST(ValidateMetric, ReportsViolatedAxiom) {
    Matrix<Rational> tri(3, 3);
    tri << 0, 1, 1,
           1, 0, 5,
           1, 5, 0;
    const auto e = expect_metric_error(tri);
    EXPECT_EQ(e.code(), Errc::TriangleViolation);
    // 5 = d(a,b) > d(a,0) + d(0,b) = 2
    EXPECT_EQ(e.witness()[1], 0);

    Matrix<Rational> asym = colinear();
    asym(0, 1) = 3;
    EXPECT_EQ(expect_metric_error(asym).code(), Errc::AsymmetricMatrix);

    Matrix<Rational> neg = colinear();
    neg(0, 1) = neg(1, 0) = -1;
    EXPECT_EQ(expect_metric_error(neg).code(), Errc::NegativeDistance);

    Matrix<Rational> dup = colinear();
    dup(1, 2) = dup(2, 1) = 0;
    EXPECT_EQ(expect_metric_error(dup).code(), Errc::ZeroOffDiagonal);

    Matrix<Rational> diag = colinear();
    diag(2, 2) = 1;
    EXPECT_EQ(expect_metric_error(diag).code(), Errc::NonzeroDiagonal);

    EXPECT_THROW(validate_metric(colinear(), {"0", "a"}), MetricError);
}

TEST(ValidateMetric, RejectsExactlyTheBrokenTriangles) {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto space = testkit::random_space<Rational>(6, rng);
        Matrix<Rational> d = space.dist();
        // Stretch one edge past a two-step detour.
        const Index i = 1 + trial % 5, k = (i % 5) + 1;
        Rational detour = d(i, 0) + d(0, k);
        d(i, k) = d(k, i) = detour + Rational(1, 7);
        const auto e = expect_metric_error(d);
        EXPECT_EQ(e.code(), Errc::TriangleViolation);
        const auto [a, b, c] = e.witness();
        EXPECT_GT(d(a, c), d(a, b) + d(b, c));
    }
}

TEST(ValidateMetric, ExoticPrefixIsAMetric) {
    const auto family = exotic::build_i_family(64);
    EXPECT_NO_THROW(exotic::exotic_metric(64, family));
}

TEST(LipConstant, RhoHasSlopeOne) {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const auto space = testkit::random_space<Rational>(7, rng, 9, 2);
        EXPECT_EQ(lip_constant<Rational>(space.dist().col(0), space), Rational(1));
        EXPECT_EQ(rho(space).lip(), Rational(1));
    }
}

TEST(LipConstant, ConstantIsZero) {
    const auto space = validate_metric(colinear());
    EXPECT_EQ(lip_constant<Rational>(Vector<Rational>::Constant(3, Rational(4)), space), Rational(0));
}

TEST(LipConstant, MatchesOrderedPairMaximum) {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const auto space = testkit::random_space<Rational>(6, rng);
        const Vector<Rational> f = testkit::random_values<Rational>(6, rng);
        EXPECT_EQ(lip_constant(f, space), brute_lip(f, space));
    }
}

TEST(DeLeeuw, RhoIsOneTowardsTheBase) {
    Rng rng(8);
    const auto space = testkit::random_space<Rational>(6, rng);
    const Matrix<Rational> t = de_leeuw_transform(rho(space), space);
    for (Index x = 1; x < space.size(); ++x) EXPECT_EQ(t(x, 0), Rational(1));
}

TEST(DeLeeuw, ConstantGivesZero) {
    const auto space = validate_metric(colinear());
    const LipschitzPotential<Rational> f(Vector<Rational>::Constant(3, Rational(2)), space);
    EXPECT_TRUE(de_leeuw_transform(f, space).isZero());
}

TEST(DeLeeuw, AntisymmetricAndIsometric) {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const auto space = testkit::random_space<Rational>(7, rng);
        const auto f = testkit::random_potential(space, rng);
        const Matrix<Rational> t = de_leeuw_transform(f, space);
        EXPECT_EQ(t, Matrix<Rational>(-t.transpose()));
        EXPECT_EQ(t.cwiseAbs().maxCoeff(), f.lip());
    }
}

TEST(Evaluate, DeltaAndMolecule) {
    const auto space = validate_metric(colinear(), {"0", "a", "b"});
    EXPECT_EQ(evaluate(Functional<Rational>::delta(1), rho(space)), Rational(1));

    // f(a) = d(a,b), f(b) = 0
    Vector<Rational> v(3);
    v << 1, 1, 0;
    const LipschitzPotential<Rational> f(v, space);
    EXPECT_EQ(evaluate(molecule(1, 2, space), f), Rational(1));
}

TEST(Evaluate, Bilinear) {
    Rng rng(10);
    const auto space = testkit::random_space<Rational>(6, rng);
    for (int t = 0; t < 50; ++t) {
        const auto phi = testkit::random_functional(space, 3, rng);
        const auto psi = testkit::random_functional(space, 3, rng);
        const auto f = testkit::random_potential(space, rng);
        EXPECT_EQ(evaluate(phi + psi, f), evaluate(phi, f) + evaluate(psi, f));
        const Rational c = testkit::random_coefficient<Rational>(rng);
        EXPECT_EQ(evaluate(c * phi, f), c * evaluate(phi, f));
    }
}

TEST(Functional, BaseCoefficientIsDropped) {
    Functional<Rational> phi;
    phi.add(0, Rational(5));
    phi.add(2, Rational(1));
    phi.add(2, Rational(-1));
    EXPECT_TRUE(phi.empty());
}

TEST(Rho, TwoPointSpace) {
    Matrix<Rational> d(2, 2);
    d << 0, 3,
         3, 0;
    const auto space = validate_metric(d);
    const auto r = rho(space);
    EXPECT_EQ(r(0), Rational(0));
    EXPECT_EQ(r(1), Rational(3));
    EXPECT_EQ(r.lip(), Rational(1));
}

TEST(Rho, ExoticSpaceIsHalfAwayFromBase) {
    const auto family = exotic::build_i_family(64);
    const auto space = exotic::exotic_metric(64, family);
    const auto r = rho(space);
    EXPECT_EQ(r(0), Rational(0));
    for (Index x = 1; x < space.size(); ++x) EXPECT_EQ(r(x), Rational(1, 2));
}

TEST(Molecule, UnitNormWitnessedByDistanceFunction) {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        const auto space = testkit::random_space<Rational>(6, rng);
        const Index x = 1 + t % 5, y = (x + 2) % 6;
        Vector<Rational> v(space.size());
        for (Index z = 0; z < space.size(); ++z) v(z) = space.d(z, y) - space.d(0, y);
        const LipschitzPotential<Rational> f(v, space);
        ASSERT_EQ(f.lip(), Rational(1));
        EXPECT_EQ(evaluate(molecule(x, y, space), f), Rational(1));
        EXPECT_EQ(free_norm(molecule(x, y, space), space), Rational(1));
    }
}

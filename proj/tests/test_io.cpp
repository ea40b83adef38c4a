#include <gtest/gtest.h>

#include "lipfree/io.hpp"
#include "support/random_instances.hpp"

using namespace lipfree;
using io::Json;
using testkit::Rng;

TEST(MetricJson, ReadsExactDecimalsAndFractions) {
    const auto j = io::parse_json(R"({"labels": ["0", "a", "b"], "dist": [[0, 0.25, "1/3"], [0.25, 0, 0.2], ["1/3", 0.2, 0]]})");
    const auto space = io::metric_from_json<Rational>(j);
    EXPECT_EQ(space.d(0, 1), Rational(1, 4));
    EXPECT_EQ(space.d(0, 2), Rational(1, 3));
    EXPECT_EQ(space.label(2), "b");
}

TEST(MetricJson, RoundTrip) {
    Rng rng(71);
    const auto space = testkit::random_space<Rational>(6, rng, 9, 4);
    const auto back = io::metric_from_json<double>(io::metric_to_json(space));
    EXPECT_EQ(back.labels(), space.labels());
    for (Index i = 0; i < 6; ++i) {
        for (Index k = 0; k < 6; ++k) EXPECT_NEAR(back.d(i, k), to_double(space.d(i, k)), 1e-11);
    }
}

TEST(MetricJson, ExactRoundTripKeepsFractions) {
    const auto space = exotic::exotic_metric(64, exotic::build_i_family(64));
    const Json j = io::metric_to_json(space);
    EXPECT_EQ(io::metric_from_json<Rational>(j).dist(), space.dist());
    EXPECT_EQ(io::metric_from_csv<Rational>(io::metric_to_csv(space)).dist(), space.dist());
    EXPECT_EQ(j["dist"][0][1], "1/2");
}

TEST(MetricJson, SchemaErrors) {
    EXPECT_THROW(io::metric_from_json<double>(io::parse_json(R"({"dist": []})")), Error);
    EXPECT_THROW(io::metric_from_json<double>(io::parse_json(R"({"labels": ["0"], "dist": [[0, 1]]})")), Error);
    EXPECT_THROW(io::metric_from_json<double>(io::parse_json(R"({"labels": ["0","a"], "dist": [[0, "x"], [1, 0]]})")), Error);
    EXPECT_THROW(io::parse_json("{not json"), Error);
    try {
        io::parse_json("[1,");
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ParseError);
    }
}

TEST(MetricJson, TriangleViolationSurfaces) {
    const auto j = io::parse_json(R"({"labels": ["0","a","b"], "dist": [[0,1,1],[1,0,5],[1,5,0]]})");
    EXPECT_THROW(io::metric_from_json<Rational>(j), MetricError);
}

TEST(MetricJson, FloatToleranceAbsorbsRounding) {
    // 0.1 + 0.2 > 0.3 in doubles
    const auto j = io::parse_json(R"({"labels": ["0","a","b"], "dist": [[0,0.1,0.3],[0.1,0,0.2],[0.3,0.2,0]]})");
    EXPECT_NO_THROW(io::metric_from_json<double>(j));
    EXPECT_NO_THROW(io::metric_from_json<Rational>(j));
}

TEST(MetricCsv, ParsesHeaderAndRows) {
    const auto space = io::metric_from_csv<Rational>("0, a, b\n0,1,2\n1,0,1\r\n2,1,0\n\n");
    EXPECT_EQ(space.index_of("a"), 1);
    EXPECT_EQ(space.d(2, 0), Rational(2));
    EXPECT_THROW(io::metric_from_csv<Rational>("0,a\n0,1\n"), Error);
    EXPECT_THROW(io::metric_from_csv<Rational>(""), Error);
}

TEST(MetricCsv, RoundTrip) {
    Rng rng(72);
    const auto space = testkit::random_space<Rational>(5, rng);
    const auto back = io::metric_from_csv<Rational>(io::metric_to_csv(space));
    EXPECT_EQ(back.dist(), space.dist());
}

TEST(FunctionalJson, RoundTripAndUnknownLabel) {
    Rng rng(73);
    const auto space = testkit::random_space<Rational>(6, rng);
    const auto phi = testkit::random_functional(space, 4, rng);
    const auto text = io::functional_to_json(phi, space).dump();
    const auto back = io::functional_from_json(io::parse_json(text), space);
    for (const auto& [x, c] : phi.coeffs()) EXPECT_NEAR(to_double(back.coeff(x)), to_double(c), 1e-11);

    try {
        io::functional_from_json(io::parse_json(R"({"coeffs": {"zz": 1}})"), space);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::UnknownLabel);
    }
}

TEST(PairSetJson, ParsesAndValidates) {
    Rng rng(74);
    const auto space = testkit::random_space<Rational>(4, rng);
    const auto c = io::pair_set_from_json(io::parse_json(R"({"pairs": [["1","2"], ["3","0"]]})"), space);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[1], (Pair{3, 0}));
    EXPECT_THROW(io::pair_set_from_json(io::parse_json(R"({"pairs": [["1","1"]]})"), space), Error);
    EXPECT_THROW(io::pair_set_from_json(io::parse_json(R"({"pairs": [["1"]]})"), space), Error);
}

TEST(Output, TwelveSignificantDigitsAndStableOrder) {
    Rng rng(75);
    const auto space = testkit::random_space<Rational>(5, rng, 9, 3);
    const auto phi = testkit::random_functional(space, 3, rng);
    const auto r = optimal_coupling(phi, space);
    const auto a = io::transport_to_json(r, space).dump();
    const auto b = io::transport_to_json(optimal_coupling(phi, space), space).dump();
    EXPECT_EQ(a, b);
    const Json j = io::transport_to_json(r, space);
    EXPECT_EQ(j.begin().key(), "value");
    EXPECT_EQ(io::scalar_to_json(Rational(1, 3)).dump(), "0.333333333333");
}

TEST(Output, CertificateJson) {
    Matrix<Rational> d(3, 3);
    d << 0, 1, 2,
         1, 0, 1,
         2, 1, 0;
    const auto space = validate_metric(std::move(d), {"0", "a", "b"});
    const PairSet c({{1, 2}, {2, 1}}, 3);
    const Json j = io::certificate_to_json(check_cyclically_monotone(c, space), c, space);
    EXPECT_FALSE(j["monotone"].get<bool>());
    EXPECT_EQ(j["slack"].get<double>(), -2.0);
    EXPECT_EQ(j["cycle"].size(), 2u);
}

TEST(Output, GammaTables) {
    const auto family = exotic::build_i_family(32);
    const Json j = io::gamma_to_json(family, 32);
    EXPECT_EQ(j["horizon"].get<int>(), 32);
    std::size_t total = 0;
    for (const auto& [n, pairs] : j["gamma"].items()) {
        for (const auto& kp : pairs) EXPECT_LT(kp[0].get<int>(), kp[1].get<int>());
        total += pairs.size();
    }
    EXPECT_GT(total, 0u);
}

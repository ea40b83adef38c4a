#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

namespace lipfree {

/// Exact rational scalar. Expression templates are disabled so that the type
/// behaves like a plain value inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct is_exact : std::false_type {};

template <>
struct is_exact<Rational> : std::true_type {};

template <typename Scalar>
inline constexpr bool is_exact_v = is_exact<Scalar>::value;

template <typename Scalar>
Scalar absolute(const Scalar& a) {
    return a < Scalar(0) ? Scalar(-a) : a;
}

/// Default absolute tolerance for floating-point comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

/// Threshold below which a cycle weight counts as negative in float mode.
inline constexpr double kCycleTolerance = 1e-12;

/// The single comparison policy used by every algorithm. In exact mode the
/// tolerance is always zero; in float mode it is an absolute tolerance.
template <typename Scalar>
class Comparator {
public:
    Comparator() : tol_(is_exact_v<Scalar> ? Scalar(0) : Scalar(kDefaultTolerance)) {}
    explicit Comparator(double tolerance)
        : tol_(is_exact_v<Scalar> ? Scalar(0) : Scalar(tolerance)) {}

    const Scalar& tolerance() const { return tol_; }

    bool eq(const Scalar& a, const Scalar& b) const { return absolute(Scalar(a - b)) <= tol_; }
    bool le(const Scalar& a, const Scalar& b) const { return a <= b + tol_; }
    bool lt(const Scalar& a, const Scalar& b) const { return a < b - tol_; }
    bool is_zero(const Scalar& a) const { return absolute(a) <= tol_; }
    bool is_negative(const Scalar& a) const { return a < -tol_; }
    bool is_positive(const Scalar& a) const { return a > tol_; }

private:
    Scalar tol_;
};

template <typename Scalar>
Comparator<Scalar> cycle_comparator() {
    return Comparator<Scalar>(kCycleTolerance);
}

template <typename Scalar>
double to_double(const Scalar& a) {
    return static_cast<double>(a);
}

/// 2^n for any integer n (negative allowed), exact for rationals.
template <typename Scalar>
Scalar pow2(int n) {
    if constexpr (is_exact_v<Scalar>) {
        Rational r(1);
        Rational two(2);
        for (int i = 0; i < (n < 0 ? -n : n); ++i) r *= two;
        return n < 0 ? Rational(Rational(1) / r) : r;
    } else {
        return Scalar(std::ldexp(1.0, n));
    }
}

/// Parses "3", "-0.25", "1e-3" or "2/7" into an exact rational. Decimal
/// literals are read as the decimal fraction they spell, not as the nearest
/// binary double. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Shortest round-trip decimal of a double, read back as an exact rational.
Rational rational_from_double(double value);

template <typename Scalar>
Scalar parse_scalar(std::string_view text) {
    if constexpr (is_exact_v<Scalar>) {
        return parse_rational(text);
    } else {
        return Scalar(to_double(parse_rational(text)));
    }
}

template <typename Scalar>
Scalar scalar_from_double(double value) {
    if constexpr (is_exact_v<Scalar>) {
        return rational_from_double(value);
    } else {
        return Scalar(value);
    }
}

/// Rounds to 12 significant digits; the output format of every emitted number.
double round12(double value);

/// Text of round12(value) in "%.12g" form.
std::string format12(double value);

}  // namespace lipfree

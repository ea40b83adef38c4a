#include "lipfree/numeric.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "lipfree/errors.hpp"

namespace lipfree {

namespace {

using Integer = boost::multiprecision::mpz_int;

bool all_digits(std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view ex = s.substr(e + 1);
        s = s.substr(0, e);
        bool neg_ex = false;
        if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
            neg_ex = ex.front() == '-';
            ex.remove_prefix(1);
        }
        if (!all_digits(ex) || ex.size() > 6) throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(ex)) * (neg_ex ? -1 : 1);
    }
    std::string digits;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const std::string_view whole = s.substr(0, dot);
        const std::string_view frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw std::invalid_argument("bad number '" + std::string(text) + "'");
        }
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("bad number '" + std::string(text) + "'");
        digits = std::string(s);
    }
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    Rational value{Integer(digits)};
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    value = exponent < 0 ? Rational(value / Rational(scale)) : Rational(value * Rational(scale));
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty number");
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const Rational num = parse_decimal(text.substr(0, slash));
        const Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    return parse_decimal(text);
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite number");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

double round12(double value) {
    if (value == 0.0) return 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return std::strtod(buf, nullptr);
}

std::string format12(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
        case Errc::NegativeDistance: return "NegativeDistance";
        case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
        case Errc::ZeroOffDiagonal: return "ZeroOffDiagonal";
        case Errc::TriangleViolation: return "TriangleViolation";
        case Errc::InvalidPair: return "InvalidPair";
        case Errc::UnknownLabel: return "UnknownLabel";
        case Errc::SignedMeasure: return "SignedMeasure";
        case Errc::NotARepresentation: return "NotARepresentation";
        case Errc::TooLarge: return "TooLarge";
        case Errc::NotMonotone: return "NotMonotone";
        case Errc::EmptySet: return "EmptySet";
        case Errc::EmptyFamily: return "EmptyFamily";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
        case Errc::SchemaMismatch: return "SchemaMismatch";
    }
    return "Unknown";
}

}  // namespace lipfree

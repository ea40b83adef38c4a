#include "lipfree/exotic.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace lipfree::exotic {

namespace {

int ruler(std::int64_t t) { return std::countr_zero(static_cast<std::uint64_t>(t)) + 1; }

/// Stern's diatomic sequence; fusc(i) / fusc(i+1) runs through the
/// Calkin-Wilf enumeration of the positive rationals.
std::int64_t fusc(std::int64_t n) {
    std::int64_t a = 1, b = 0;
    while (n > 0) {
        if (n & 1) {
            b += a;
        } else {
            a += b;
        }
        n >>= 1;
    }
    return b;
}

bool in_window(std::int64_t num, std::int64_t den) { return 2 * num >= den && num <= den; }

}  // namespace

IFamily::IFamily(int horizon) : horizon_(horizon) {
    if (horizon < 2) throw Error(Errc::InvalidArgument, "I-family horizon must be at least 2");
    const std::size_t stride = static_cast<std::size_t>(horizon) + 1;
    table_.assign(stride * stride, 0);
    parent_.assign(stride, {0, 0});
    auto at = [&](int k, int p) -> std::uint16_t& {
        return table_[static_cast<std::size_t>(k) * stride + static_cast<std::size_t>(p)];
    };

    for (int p = 2; p <= horizon; ++p) at(1, p) = static_cast<std::uint16_t>(ruler(p - 1));

    for (int m = 1; m + 1 < horizon; ++m) {
        const int next = m + 1;
        LevelTrace tr;
        tr.level = next;
        for (int k = m; k >= 1; --k) {
            if (const int n = at(k, next); n != 0) {
                tr.k0 = k;
                tr.n0 = n;
                break;
            }
        }
        tr.k1 = tr.k0;
        tr.n1 = tr.n0;
        for (int k = m; k > tr.k0; --k) {
            // Every set of level k shares one parent, so either all of them
            // sit inside I(k0,n0) or none does; take the first such index.
            if (nested_in(k, 1, tr.k0, tr.n0)) {
                tr.k1 = k;
                tr.n1 = 1;
                break;
            }
        }
        parent_[static_cast<std::size_t>(next)] = {tr.k1, tr.n1};
        std::int64_t t = 0;
        for (int q = next + 1; q <= horizon; ++q) {
            if (at(tr.k1, q) != tr.n1) continue;
            at(next, q) = static_cast<std::uint16_t>(ruler(++t));
        }
        trace_.push_back(tr);
    }
}

int IFamily::index_of(int k, int p) const {
    if (k < 1 || k > horizon_ || p < 1 || p > horizon_) return 0;
    return table_[static_cast<std::size_t>(k) * (static_cast<std::size_t>(horizon_) + 1) + static_cast<std::size_t>(p)];
}

std::vector<int> IFamily::elements(int k, int n) const {
    std::vector<int> out;
    for (int p = k + 1; p <= horizon_; ++p) {
        if (member(k, n, p)) out.push_back(p);
    }
    return out;
}

int IFamily::max_index(int k) const {
    int best = 0;
    for (int p = k + 1; p <= horizon_; ++p) best = std::max(best, index_of(k, p));
    return best;
}

std::pair<int, int> IFamily::parent(int k) const {
    if (k < 1 || k > horizon_) throw Error(Errc::InvalidArgument, "level out of range");
    return parent_[static_cast<std::size_t>(k)];
}

bool IFamily::nested_in(int k, int n, int k2, int n2) const {
    if (k == k2) return n == n2;
    if (k < k2) return false;
    auto [pk, pn] = parent(k);
    while (pk > k2) std::tie(pk, pn) = parent(pk);
    return pk == k2 && pn == n2;
}

IFamily build_i_family(int horizon) { return IFamily(horizon); }

std::vector<std::pair<int, int>> gamma_pairs(const IFamily& family, int n, int N) {
    if (N > family.horizon()) throw Error(Errc::InvalidArgument, "Gamma horizon exceeds the family horizon");
    std::vector<std::pair<int, int>> out;
    for (int k = 1; k < N; ++k) {
        for (int p = k + 1; p <= N; ++p) {
            if (family.member(k, n, p)) out.emplace_back(k, p);
        }
    }
    return out;
}

Rational rational_enumeration(std::int64_t n) {
    if (n < 1) throw Error(Errc::InvalidArgument, "rational enumeration is indexed from 1");
    std::int64_t seen = 0;
    std::int64_t prev = fusc(1);
    for (std::int64_t i = 1;; ++i) {
        const std::int64_t cur = fusc(i + 1);
        if (in_window(prev, cur) && ++seen == n) return Rational(prev) / Rational(cur);
        prev = cur;
    }
}

std::vector<Rational> rational_prefix(std::int64_t count) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    std::int64_t prev = fusc(1);
    for (std::int64_t i = 1; static_cast<std::int64_t>(out.size()) < count; ++i) {
        const std::int64_t cur = fusc(i + 1);
        if (in_window(prev, cur)) out.push_back(Rational(prev) / Rational(cur));
        prev = cur;
    }
    return out;
}

Matrix<Rational> exotic_distances(int N, const IFamily& family) {
    if (N < 2) throw Error(Errc::InvalidArgument, "exotic metric needs N >= 2");
    if (2 * family.horizon() < N) throw Error(Errc::InvalidArgument, "family horizon is too small for N");
    std::vector<Rational> q(1, Rational(0));
    auto value = [&](int n) -> const Rational& {
        while (static_cast<int>(q.size()) <= n) q.push_back(rational_enumeration(static_cast<std::int64_t>(q.size())));
        return q[static_cast<std::size_t>(n)];
    };
    const Rational half(1, 2);
    Matrix<Rational> dist = Matrix<Rational>::Constant(N, N, half);
    for (int x = 1; x <= N; ++x) dist(x - 1, x - 1) = Rational(0);
    for (int even = 2; even <= N; even += 2) {
        const int p = even / 2;
        for (int odd = 3; odd <= N; odd += 2) {
            const int qi = (odd - 1) / 2;
            if (p >= qi) continue;
            if (const int n = family.index_of(p, qi); n != 0) {
                dist(even - 1, odd - 1) = value(n);
                dist(odd - 1, even - 1) = value(n);
            }
        }
    }
    return dist;
}

FiniteMetricSpace<Rational> exotic_metric(int N, const IFamily& family) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(N));
    for (int x = 1; x <= N; ++x) labels.push_back(std::to_string(x));
    return validate_metric(exotic_distances(N, family), std::move(labels));
}

}  // namespace lipfree::exotic

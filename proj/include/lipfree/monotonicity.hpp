#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lipfree/metric.hpp"

namespace lipfree {

/// Ordered list of pairs of a space; duplicates allowed.
class PairSet {
public:
    PairSet() = default;

    /// Throws Error(InvalidPair) on x == y or an index outside [0, n).
    PairSet(std::vector<Pair> pairs, Index n) : pairs_(std::move(pairs)) {
        for (const Pair& p : pairs_) {
            if (p.x == p.y || p.x < 0 || p.y < 0 || p.x >= n || p.y >= n) {
                throw Error(Errc::InvalidPair, "pair (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                                                   ") is not a pair of distinct points of the space");
            }
        }
    }

    const std::vector<Pair>& pairs() const { return pairs_; }
    const Pair& operator[](std::size_t i) const { return pairs_[i]; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    /// Sorted, duplicate-free copy.
    PairSet unique() const {
        PairSet out = *this;
        std::sort(out.pairs_.begin(), out.pairs_.end());
        out.pairs_.erase(std::unique(out.pairs_.begin(), out.pairs_.end()), out.pairs_.end());
        return out;
    }

private:
    std::vector<Pair> pairs_;
};

template <typename Scalar>
struct CycleCertificate {
    bool monotone = true;
    /// Indices into the checked PairSet, in cycle order i1 -> i2 -> ... -> i1.
    std::vector<std::size_t> cycle;
    /// Sum over the cycle of d(x_t, y_{t+1}) - d(x_t, y_t); negative when present.
    std::optional<Scalar> slack;
};

template <typename Scalar>
class NotMonotoneError : public Error {
public:
    explicit NotMonotoneError(CycleCertificate<Scalar> certificate)
        : Error(Errc::NotMonotone, "pair set is not cyclically monotone"), certificate_(std::move(certificate)) {}

    const CycleCertificate<Scalar>& certificate() const { return certificate_; }

private:
    CycleCertificate<Scalar> certificate_;
};

/// Complete digraph on the pairs: w(i -> j) = d(x_i, y_j) - d(x_i, y_i).
/// The set is cyclically monotone iff this graph has no negative cycle.
template <typename Scalar>
Matrix<Scalar> pair_graph(const PairSet& pairs, const FiniteMetricSpace<Scalar>& space) {
    const Index k = static_cast<Index>(pairs.size());
    Matrix<Scalar> w = Matrix<Scalar>::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
        const Pair& pi = pairs[static_cast<std::size_t>(i)];
        for (Index j = 0; j < k; ++j) {
            if (i == j) continue;
            w(i, j) = space.d(pi.x, pairs[static_cast<std::size_t>(j)].y) - space.d(pi.x, pi.y);
        }
    }
    return w;
}

/// Slack of the cycle i1 -> ... -> ik -> i1 in a PairSet.
template <typename Scalar>
Scalar cycle_slack(const PairSet& pairs, const std::vector<std::size_t>& cycle, const FiniteMetricSpace<Scalar>& space) {
    Scalar s(0);
    for (std::size_t t = 0; t < cycle.size(); ++t) {
        const Pair& cur = pairs[cycle[t]];
        const Pair& next = pairs[cycle[(t + 1) % cycle.size()]];
        s += space.d(cur.x, next.y) - space.d(cur.x, cur.y);
    }
    return s;
}

namespace detail {

/// Bellman-Ford on a dense weight matrix. Returns a negative cycle (node
/// list in forward order) if one exists; otherwise fills dist.
template <typename Scalar>
std::optional<std::vector<Index>> bellman_ford(const Matrix<Scalar>& w, std::vector<Scalar>& dist,
                                               std::optional<Index> origin, const Comparator<Scalar>& strict) {
    const Index k = w.rows();
    std::vector<std::optional<Scalar>> d(static_cast<std::size_t>(k));
    std::vector<Index> pred(static_cast<std::size_t>(k), -1);
    if (origin) {
        d[static_cast<std::size_t>(*origin)] = Scalar(0);
    } else {
        for (auto& v : d) v = Scalar(0);  // virtual zero-cost super-source
    }
    Index last = -1;
    for (Index round = 0; round < k; ++round) {
        last = -1;
        for (Index i = 0; i < k; ++i) {
            const auto& di = d[static_cast<std::size_t>(i)];
            if (!di) continue;
            for (Index j = 0; j < k; ++j) {
                if (i == j) continue;
                const Scalar cand = *di + w(i, j);
                auto& dj = d[static_cast<std::size_t>(j)];
                if (!dj || strict.lt(cand, *dj)) {
                    dj = cand;
                    pred[static_cast<std::size_t>(j)] = i;
                    last = j;
                }
            }
        }
        if (last < 0) break;
    }
    if (last >= 0) {
        Index v = last;
        for (Index t = 0; t < k; ++t) {
            v = pred[static_cast<std::size_t>(v)];
            if (v < 0) throw std::logic_error("predecessor walk left the cycle");
        }
        std::vector<Index> cycle{v};
        for (Index u = pred[static_cast<std::size_t>(v)]; u != v; u = pred[static_cast<std::size_t>(u)]) cycle.push_back(u);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
    }
    dist.resize(static_cast<std::size_t>(k));
    for (Index i = 0; i < k; ++i) dist[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(i)].value_or(Scalar(0));
    return std::nullopt;
}

template <typename Scalar>
CycleCertificate<Scalar> certificate_from_cycle(const PairSet& original, const PairSet& unique,
                                                const std::vector<Index>& cycle,
                                                const FiniteMetricSpace<Scalar>& space) {
    CycleCertificate<Scalar> cert;
    cert.monotone = false;
    for (Index u : cycle) {
        const Pair& p = unique[static_cast<std::size_t>(u)];
        const auto it = std::find(original.pairs().begin(), original.pairs().end(), p);
        cert.cycle.push_back(static_cast<std::size_t>(it - original.pairs().begin()));
    }
    cert.slack = cycle_slack(original, cert.cycle, space);
    return cert;
}

}  // namespace detail

/// Decides cyclical monotonicity by negative-cycle detection on pair_graph.
/// On failure the certificate carries an explicit cycle and its slack.
template <typename Scalar>
CycleCertificate<Scalar> check_cyclically_monotone(const PairSet& pairs, const FiniteMetricSpace<Scalar>& space,
                                                   const Comparator<Scalar>& strict = cycle_comparator<Scalar>()) {
    const PairSet unique = pairs.unique();
    std::vector<Scalar> dist;
    const auto cycle = detail::bellman_ford(pair_graph(unique, space), dist, std::nullopt, strict);
    if (!cycle) return {};
    return detail::certificate_from_cycle(pairs, unique, *cycle, space);
}

/// Exhaustive oracle: tries every permutation of the (at most 8) pairs.
/// Permutations fixing some pairs cover every sub-collection.
template <typename Scalar>
bool brute_force_monotone(const PairSet& pairs, const FiniteMetricSpace<Scalar>& space,
                          const Comparator<Scalar>& strict = cycle_comparator<Scalar>()) {
    const std::size_t k = pairs.size();
    if (k > 8) throw Error(Errc::TooLarge, "brute-force monotonicity is limited to 8 pairs");
    Scalar base(0);
    for (const Pair& p : pairs.pairs()) base += space.d(p.x, p.y);
    std::vector<std::size_t> sigma(k);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
        Scalar permuted(0);
        for (std::size_t t = 0; t < k; ++t) permuted += space.d(pairs[t].x, pairs[sigma[t]].y);
        if (strict.lt(permuted, base)) return false;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return true;
}

/// Builds a function extremal on a cyclically monotone set: the supremum over
/// chains from the lexicographically least pair, evaluated as a negated
/// shortest path through pair_graph plus the terminal step into each point.
template <typename Scalar>
LipschitzPotential<Scalar> build_extremal_potential(const PairSet& pairs, const FiniteMetricSpace<Scalar>& space,
                                                    const Comparator<Scalar>& strict = cycle_comparator<Scalar>()) {
    if (pairs.empty()) throw Error(Errc::EmptySet, "extremal potential needs a nonempty pair set");
    const PairSet unique = pairs.unique();
    const Matrix<Scalar> w = pair_graph(unique, space);
    std::vector<Scalar> dist;
    if (const auto cycle = detail::bellman_ford(w, dist, std::nullopt, strict)) {
        throw NotMonotoneError<Scalar>(detail::certificate_from_cycle(pairs, unique, *cycle, space));
    }
    dist.clear();
    detail::bellman_ford(w, dist, Index{0}, strict);

    const Index n = space.size();
    Vector<Scalar> f(n);
    for (Index z = 0; z < n; ++z) {
        std::optional<Scalar> shortest;
        for (std::size_t i = 0; i < unique.size(); ++i) {
            const Pair& p = unique[i];
            const Scalar path = dist[i] + space.d(p.x, z) - space.d(p.x, p.y);
            if (!shortest || path < *shortest) shortest = path;
        }
        f(z) = -*shortest;
    }
    return LipschitzPotential<Scalar>(std::move(f), space);
}

/// lip(f) <= 1 and f(x) - f(y) = d(x,y) on every pair.
template <typename Scalar>
bool verify_extremal(const LipschitzPotential<Scalar>& f, const PairSet& pairs, const FiniteMetricSpace<Scalar>& space,
                     const Comparator<Scalar>& cmp = {}) {
    if (!cmp.le(f.lip(), Scalar(1))) return false;
    return std::all_of(pairs.pairs().begin(), pairs.pairs().end(), [&](const Pair& p) {
        return cmp.eq(Scalar(f(p.x) - f(p.y)), space.d(p.x, p.y));
    });
}

}  // namespace lipfree

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lipfree/metric.hpp"

namespace lipfree::exotic {

/// The choices made when level m+1 was built: m+1 lies in I(k0,n0) with k0
/// maximal, I(k1,n1) is the deepest earlier set inside I(k0,n0), and the
/// sets I(m+1, .) partition what is left of I(k1,n1) above m+1.
struct LevelTrace {
    int level = 0;
    int k0 = 0;
    int n0 = 0;
    int k1 = 0;
    int n1 = 0;
};

/// The nested family of sets I(k,n), k,n >= 1, truncated to elements
/// 1..horizon. Level 1 splits {2,3,...} by the binary ruler: p lies in
/// I(1, v2(p-1) + 1). Each later level splits its parent set the same way,
/// indexing the surviving elements t = 1, 2, ...
class IFamily {
public:
    explicit IFamily(int horizon);

    int horizon() const { return horizon_; }

    /// n with p in I(k,n), or 0 when p lies in no set of level k.
    int index_of(int k, int p) const;
    bool member(int k, int n, int p) const { return n >= 1 && index_of(k, p) == n; }

    /// Elements of I(k,n) up to the horizon, increasing.
    std::vector<int> elements(int k, int n) const;

    /// Largest n with I(k,n) nonempty on the horizon (0 if none).
    int max_index(int k) const;

    /// Parent set of every level-k set; (0,0) stands for {2,3,...}.
    std::pair<int, int> parent(int k) const;

    /// Structural inclusion I(k,n) within I(k2,n2), read off the parent tree.
    bool nested_in(int k, int n, int k2, int n2) const;

    const std::vector<LevelTrace>& trace() const { return trace_; }

private:
    int horizon_;
    std::vector<std::uint16_t> table_;
    std::vector<std::pair<int, int>> parent_;
    std::vector<LevelTrace> trace_;
};

IFamily build_i_family(int horizon);

/// Gamma_n = {(k,p) : p in I(k,n)} restricted to k < p <= N.
std::vector<std::pair<int, int>> gamma_pairs(const IFamily& family, int n, int N);

/// n-th element (n >= 1) of the Calkin-Wilf sequence restricted to [1/2, 1].
Rational rational_enumeration(std::int64_t n);

/// The first `count` elements of the same enumeration.
std::vector<Rational> rational_prefix(std::int64_t count);

/// Distance on {1..N}: q_n on (2p, 2q+1) and (2q+1, 2p) for (p,q) in Gamma_n,
/// 1/2 on every other pair of distinct points. Point 1 (index 0) is the base.
/// The family's horizon must be at least N/2.
Matrix<Rational> exotic_distances(int N, const IFamily& family);

FiniteMetricSpace<Rational> exotic_metric(int N, const IFamily& family);

}  // namespace lipfree::exotic

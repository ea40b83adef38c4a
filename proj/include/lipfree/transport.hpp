#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lipfree/metric.hpp"

namespace lipfree {

/// Weighted set of ordered pairs (x,y), x != y. Used both for De Leeuw
/// representations and, with the d-reweighting undone, for couplings.
template <typename Scalar>
class PairMeasure {
public:
    using Map = std::map<Pair, Scalar>;

    void add(Index x, Index y, const Scalar& m) {
        if (x == y) throw Error(Errc::InvalidPair, "pair measures live off the diagonal");
        if (m == Scalar(0)) return;
        auto [it, inserted] = mass_.try_emplace(Pair{x, y}, m);
        if (!inserted) {
            it->second += m;
            if (it->second == Scalar(0)) mass_.erase(it);
        }
    }

    Scalar mass(Index x, Index y) const {
        auto it = mass_.find(Pair{x, y});
        return it == mass_.end() ? Scalar(0) : it->second;
    }

    const Map& masses() const { return mass_; }
    bool empty() const { return mass_.empty(); }
    std::size_t size() const { return mass_.size(); }

    bool is_signed() const {
        for (const auto& [p, m] : mass_) {
            if (m < Scalar(0)) return true;
        }
        return false;
    }

    Scalar total_variation() const {
        Scalar s(0);
        for (const auto& [p, m] : mass_) s += absolute(m);
        return s;
    }

    std::vector<Pair> support() const {
        std::vector<Pair> out;
        out.reserve(mass_.size());
        for (const auto& [p, m] : mass_) out.push_back(p);
        return out;
    }

    PairMeasure& operator+=(const PairMeasure& other) {
        for (const auto& [p, m] : other.mass_) add(p.x, p.y, m);
        return *this;
    }
    PairMeasure& operator*=(const Scalar& s) {
        if (s == Scalar(0)) {
            mass_.clear();
            return *this;
        }
        for (auto& [p, m] : mass_) m *= s;
        return *this;
    }

    friend PairMeasure operator+(PairMeasure a, const PairMeasure& b) { return a += b; }
    friend PairMeasure operator*(const Scalar& s, PairMeasure a) { return a *= s; }
    friend bool operator==(const PairMeasure& a, const PairMeasure& b) { return a.mass_ == b.mass_; }

private:
    Map mass_;
};

template <typename Scalar>
struct TransportResult {
    Scalar value{0};
    PairMeasure<Scalar> coupling;
    PairMeasure<Scalar> representation;
    LipschitzPotential<Scalar> potential;
};

template <typename Scalar>
struct WeightedMolecule {
    Scalar coefficient;
    Molecule molecule;
};

namespace detail {

/// Balanced transportation problem between weighted point sets, solved by
/// successive shortest paths with node potentials (Dijkstra on reduced costs).
template <typename Scalar>
class TransportSolver {
public:
    TransportSolver(std::vector<Index> sources, std::vector<Scalar> supply, std::vector<Index> sinks,
                    std::vector<Scalar> demand, const FiniteMetricSpace<Scalar>& space,
                    const Comparator<Scalar>& cmp)
        : sources_(std::move(sources)),
          sinks_(std::move(sinks)),
          supply_(std::move(supply)),
          demand_(std::move(demand)),
          space_(space),
          cmp_(cmp) {
        ns_ = static_cast<Index>(sources_.size());
        nt_ = static_cast<Index>(sinks_.size());
        cost_.resize(ns_, nt_);
        for (Index i = 0; i < ns_; ++i) {
            for (Index j = 0; j < nt_; ++j) cost_(i, j) = space_.d(src(i), snk(j));
        }
        flow_ = Matrix<Scalar>::Zero(ns_, nt_);
        pot_ = Vector<Scalar>::Zero(ns_ + nt_);
        for (Index j = 0; j < nt_; ++j) pot_(ns_ + j) = cost_.col(j).minCoeff();
    }

    void solve() {
        // Each augmentation exhausts a supply, a demand, or a backward arc, so
        // the count is bounded; the cap only guards against float drift.
        const std::size_t cap = 4 * static_cast<std::size_t>((ns_ + 1) * (nt_ + 1) * (ns_ + nt_ + 1));
        for (std::size_t iter = 0; iter < cap; ++iter) {
            if (!augment_once()) return;
        }
        throw std::logic_error("transport solver failed to converge");
    }

    const Matrix<Scalar>& flow() const { return flow_; }
    const std::vector<Index>& sources() const { return sources_; }
    const std::vector<Index>& sinks() const { return sinks_; }

    /// Dual values g with g(s) - g(t) <= d(s,t), equality on flow arcs.
    Scalar dual(Index node) const { return Scalar(-pot_(node)); }

private:
    Index src(Index i) const { return sources_[static_cast<std::size_t>(i)]; }
    Index snk(Index j) const { return sinks_[static_cast<std::size_t>(j)]; }

    bool active(const Scalar& remaining) const { return cmp_.is_positive(remaining); }

    Scalar reduced_forward(Index i, Index j) const {
        Scalar r = cost_(i, j) + pot_(i) - pot_(ns_ + j);
        return r < Scalar(0) ? Scalar(0) : r;
    }
    Scalar reduced_backward(Index i, Index j) const {
        Scalar r = pot_(ns_ + j) - pot_(i) - cost_(i, j);
        return r < Scalar(0) ? Scalar(0) : r;
    }

    bool augment_once() {
        const Index n = ns_ + nt_;
        std::vector<std::optional<Scalar>> dist(static_cast<std::size_t>(n));
        std::vector<Index> pred(static_cast<std::size_t>(n), -1);
        std::vector<bool> done(static_cast<std::size_t>(n), false);
        bool any_source = false;
        for (Index i = 0; i < ns_; ++i) {
            if (active(supply_[static_cast<std::size_t>(i)])) {
                dist[static_cast<std::size_t>(i)] = Scalar(0);
                any_source = true;
            }
        }
        if (!any_source) return false;

        // Dense Dijkstra; ties resolve to the lowest node index, sources first.
        for (;;) {
            Index u = -1;
            for (Index v = 0; v < n; ++v) {
                const auto& dv = dist[static_cast<std::size_t>(v)];
                if (done[static_cast<std::size_t>(v)] || !dv) continue;
                if (u < 0 || *dv < *dist[static_cast<std::size_t>(u)]) u = v;
            }
            if (u < 0) break;
            done[static_cast<std::size_t>(u)] = true;
            const Scalar du = *dist[static_cast<std::size_t>(u)];
            auto relax = [&](Index v, const Scalar& w) {
                auto& dv = dist[static_cast<std::size_t>(v)];
                const Scalar cand = du + w;
                if (!done[static_cast<std::size_t>(v)] && (!dv || cand < *dv)) {
                    dv = cand;
                    pred[static_cast<std::size_t>(v)] = u;
                }
            };
            if (u < ns_) {
                for (Index j = 0; j < nt_; ++j) relax(ns_ + j, reduced_forward(u, j));
            } else {
                const Index j = u - ns_;
                for (Index i = 0; i < ns_; ++i) {
                    if (flow_(i, j) > Scalar(0)) relax(i, reduced_backward(i, j));
                }
            }
        }

        Index target = -1;
        for (Index j = 0; j < nt_; ++j) {
            const auto& dj = dist[static_cast<std::size_t>(ns_ + j)];
            if (!dj || !active(demand_[static_cast<std::size_t>(j)])) continue;
            if (target < 0 || *dj < *dist[static_cast<std::size_t>(ns_ + target)]) target = j;
        }
        if (target < 0) {
            // Remaining supply with no reachable demand only happens through
            // float round-off in the balance.
            return false;
        }

        const Scalar reach = *dist[static_cast<std::size_t>(ns_ + target)];
        for (Index v = 0; v < n; ++v) {
            const auto& dv = dist[static_cast<std::size_t>(v)];
            pot_(v) += (dv && *dv < reach) ? *dv : reach;
        }

        // Walk the path back to its root source and find the bottleneck.
        Scalar amount = demand_[static_cast<std::size_t>(target)];
        Index v = ns_ + target;
        while (pred[static_cast<std::size_t>(v)] >= 0) {
            const Index u = pred[static_cast<std::size_t>(v)];
            if (u >= ns_) {
                const Scalar back = flow_(v, u - ns_);
                if (back < amount) amount = back;
            }
            v = u;
        }
        const Index root = v;
        if (supply_[static_cast<std::size_t>(root)] < amount) amount = supply_[static_cast<std::size_t>(root)];

        v = ns_ + target;
        while (pred[static_cast<std::size_t>(v)] >= 0) {
            const Index u = pred[static_cast<std::size_t>(v)];
            if (u < ns_) {
                flow_(u, v - ns_) += amount;
            } else {
                flow_(v, u - ns_) -= amount;
                if (!is_exact_v<Scalar> && flow_(v, u - ns_) < Scalar(0)) flow_(v, u - ns_) = Scalar(0);
            }
            v = u;
        }
        supply_[static_cast<std::size_t>(root)] -= amount;
        demand_[static_cast<std::size_t>(target)] -= amount;
        return true;
    }

    std::vector<Index> sources_;
    std::vector<Index> sinks_;
    std::vector<Scalar> supply_;
    std::vector<Scalar> demand_;
    const FiniteMetricSpace<Scalar>& space_;
    Comparator<Scalar> cmp_;
    Index ns_ = 0;
    Index nt_ = 0;
    Matrix<Scalar> cost_;
    Matrix<Scalar> flow_;
    Vector<Scalar> pot_;
};

}  // namespace detail

/// Optimal coupling of phi+ and phi-, with the base point supplying or
/// absorbing the imbalance, together with the induced De Leeuw representation
/// and a 1-Lipschitz dual potential attaining the same value.
template <typename Scalar>
TransportResult<Scalar> optimal_coupling(const Functional<Scalar>& phi, const FiniteMetricSpace<Scalar>& space,
                                         const Comparator<Scalar>& cmp = {}) {
    TransportResult<Scalar> result;
    if (phi.empty()) {
        result.potential = LipschitzPotential<Scalar>(Vector<Scalar>::Zero(space.size()), space);
        return result;
    }
    std::vector<Index> sources, sinks;
    std::vector<Scalar> supply, demand;
    for (const auto& [x, c] : phi.coeffs()) {
        if (x >= space.size()) throw Error(Errc::DimensionMismatch, "functional refers to a point outside the space");
        if (c > Scalar(0)) {
            sources.push_back(x);
            supply.push_back(c);
        } else {
            sinks.push_back(x);
            demand.push_back(Scalar(-c));
        }
    }
    const Scalar imbalance = phi.total();
    if (imbalance > Scalar(0)) {
        sinks.insert(sinks.begin(), 0);
        demand.insert(demand.begin(), imbalance);
    } else if (imbalance < Scalar(0)) {
        sources.insert(sources.begin(), 0);
        supply.insert(supply.begin(), Scalar(-imbalance));
    }

    detail::TransportSolver<Scalar> solver(sources, supply, sinks, demand, space, cmp);
    solver.solve();

    const auto& flow = solver.flow();
    const Index ns = static_cast<Index>(sources.size());
    for (Index i = 0; i < flow.rows(); ++i) {
        for (Index j = 0; j < flow.cols(); ++j) {
            const Scalar& m = flow(i, j);
            if (m == Scalar(0)) continue;
            const Index x = sources[static_cast<std::size_t>(i)];
            const Index y = sinks[static_cast<std::size_t>(j)];
            result.coupling.add(x, y, m);
            const Scalar weighted = m * space.d(x, y);
            result.representation.add(x, y, weighted);
            result.value += weighted;
        }
    }

    // Extend the source duals to all of M by the largest 1-Lipschitz minorant.
    Vector<Scalar> f(space.size());
    for (Index z = 0; z < space.size(); ++z) {
        std::optional<Scalar> best;
        for (Index i = 0; i < ns; ++i) {
            const Scalar cand = solver.dual(i) - space.d(sources[static_cast<std::size_t>(i)], z);
            if (!best || cand > *best) best = cand;
        }
        f(z) = *best;
    }
    result.potential = LipschitzPotential<Scalar>(std::move(f), space);
    return result;
}

template <typename Scalar>
Scalar free_norm(const Functional<Scalar>& phi, const FiniteMetricSpace<Scalar>& space,
                 const Comparator<Scalar>& cmp = {}) {
    return optimal_coupling(phi, space, cmp).value;
}

/// Integral of the De Leeuw transform of f against mu.
template <typename Scalar>
Scalar apply_representation(const PairMeasure<Scalar>& mu, const LipschitzPotential<Scalar>& f,
                            const FiniteMetricSpace<Scalar>& space) {
    Scalar s(0);
    for (const auto& [p, m] : mu.masses()) s += m * (f(p.x) - f(p.y)) / space.d(p.x, p.y);
    return s;
}

/// Adjoint of the De Leeuw transform: sum of mass(x,y) * m_xy.
template <typename Scalar>
Functional<Scalar> functional_of(const PairMeasure<Scalar>& mu, const FiniteMetricSpace<Scalar>& space) {
    Functional<Scalar> out;
    for (const auto& [p, m] : mu.masses()) {
        const Scalar w = m / space.d(p.x, p.y);
        out.add(p.x, w);
        out.add(p.y, Scalar(-w));
    }
    return out;
}

/// mu >= 0 and ||mu|| equals the free norm of the functional it represents.
template <typename Scalar>
bool is_optimal(const PairMeasure<Scalar>& mu, const FiniteMetricSpace<Scalar>& space,
                const Comparator<Scalar>& cmp = {}) {
    if (mu.is_signed()) throw Error(Errc::SignedMeasure, "optimality is defined for positive measures only");
    return cmp.eq(mu.total_variation(), free_norm(functional_of(mu, space), space, cmp));
}

template <typename Scalar, typename Predicate>
PairMeasure<Scalar> restrict(const PairMeasure<Scalar>& mu, Predicate&& keep) {
    PairMeasure<Scalar> out;
    for (const auto& [p, m] : mu.masses()) {
        if (keep(p.x, p.y)) out.add(p.x, p.y, m);
    }
    return out;
}

/// Push-forward under (x,y) -> (y,x).
template <typename Scalar>
PairMeasure<Scalar> reflect(const PairMeasure<Scalar>& mu) {
    PairMeasure<Scalar> out;
    for (const auto& [p, m] : mu.masses()) out.add(p.y, p.x, m);
    return out;
}

/// phi as a convex series of molecules: coefficients are the masses of the
/// optimal representation, so they sum to the free norm.
template <typename Scalar>
std::vector<WeightedMolecule<Scalar>> molecule_decomposition(const Functional<Scalar>& phi,
                                                             const FiniteMetricSpace<Scalar>& space,
                                                             const Comparator<Scalar>& cmp = {}) {
    const auto result = optimal_coupling(phi, space, cmp);
    std::vector<WeightedMolecule<Scalar>> out;
    out.reserve(result.representation.size());
    for (const auto& [p, m] : result.representation.masses()) out.push_back({m, Molecule{p.x, p.y}});
    return out;
}

/// True iff lip(f) <= 1 and the De Leeuw transform of f equals 1 on the
/// support of mu. A true answer certifies that f norms phi and mu is optimal.
template <typename Scalar>
bool norming_functions_check(const Functional<Scalar>& phi, const LipschitzPotential<Scalar>& f,
                             const PairMeasure<Scalar>& mu, const FiniteMetricSpace<Scalar>& space,
                             const Comparator<Scalar>& cmp = {}) {
    if (mu.is_signed()) throw Error(Errc::SignedMeasure, "norming check needs a positive representation");
    if (!approx_equal(functional_of(mu, space), phi, cmp)) {
        throw Error(Errc::NotARepresentation, "measure does not represent the functional");
    }
    if (!cmp.le(f.lip(), Scalar(1))) return false;
    for (const auto& [p, m] : mu.masses()) {
        const Scalar slope = (f(p.x) - f(p.y)) / space.d(p.x, p.y);
        if (!cmp.eq(slope, Scalar(1))) return false;
    }
    return true;
}

}  // namespace lipfree

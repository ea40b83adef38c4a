#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/errors.hpp"
#include "lipfree/numeric.hpp"

namespace lipfree {

template <typename Scalar>
class FiniteMetricSpace;

template <typename Scalar>
FiniteMetricSpace<Scalar> validate_metric(Matrix<Scalar> dist, std::vector<std::string> labels,
                                          const Comparator<Scalar>& cmp = {});

/// A finite metric space with base point at index 0. Only obtainable through
/// validate_metric, so every instance satisfies the metric axioms.
template <typename Scalar>
class FiniteMetricSpace {
public:
    Index size() const { return dist_.rows(); }
    const Matrix<Scalar>& dist() const { return dist_; }
    const Scalar& d(Index i, Index j) const { return dist_(i, j); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }

    /// Index of a label; throws Error(UnknownLabel).
    Index index_of(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) throw Error(Errc::UnknownLabel, "unknown point label '" + label + "'");
        return static_cast<Index>(it - labels_.begin());
    }

    /// Largest distance to the base point.
    Scalar radius() const { return dist_.col(0).maxCoeff(); }

private:
    FiniteMetricSpace(Matrix<Scalar> dist, std::vector<std::string> labels)
        : dist_(std::move(dist)), labels_(std::move(labels)) {}

    friend FiniteMetricSpace validate_metric<Scalar>(Matrix<Scalar>, std::vector<std::string>,
                                                     const Comparator<Scalar>&);

    Matrix<Scalar> dist_;
    std::vector<std::string> labels_;
};

namespace detail {

inline std::string triple_text(Index i, Index j, Index k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

template <typename Scalar>
void check_triangles(const Matrix<Scalar>& dist, const Comparator<Scalar>& cmp) {
    const Index n = dist.rows();
    auto fail = [](Index i, Index j, Index k) {
        throw MetricError(Errc::TriangleViolation,
                          "triangle inequality fails: d(i,k) > d(i,j) + d(j,k) at " + triple_text(i, j, k),
                          {i, j, k});
    };
    if constexpr (is_exact_v<Scalar>) {
        // Floating-point filter: decide in doubles when the margin is far from
        // rounding error, fall back to exact arithmetic otherwise.
        const Matrix<double> approx = dist.unaryExpr([](const Scalar& v) { return to_double(v); });
        const double scale = std::max(1.0, approx.cwiseAbs().maxCoeff());
        const double guard = 1e-9 * scale;
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                if (j == i) continue;
                for (Index k = i + 1; k < n; ++k) {
                    if (k == j) continue;
                    const double margin = approx(i, j) + approx(j, k) - approx(i, k);
                    if (margin > guard) continue;
                    if (!cmp.le(dist(i, k), dist(i, j) + dist(j, k))) fail(i, j, k);
                }
            }
        }
    } else {
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                if (j == i) continue;
                for (Index k = i + 1; k < n; ++k) {
                    if (k == j) continue;
                    if (!cmp.le(dist(i, k), dist(i, j) + dist(j, k))) fail(i, j, k);
                }
            }
        }
    }
}

}  // namespace detail

/// Checks the metric axioms and builds the space. Index 0 is the base point.
/// Symmetry, sign and the diagonal are checked exactly; the triangle
/// inequality goes through the comparator.
template <typename Scalar>
FiniteMetricSpace<Scalar> validate_metric(Matrix<Scalar> dist, std::vector<std::string> labels,
                                          const Comparator<Scalar>& cmp) {
    const Index n = dist.rows();
    if (dist.cols() != n) {
        throw MetricError(Errc::DimensionMismatch, "distance matrix is not square", {-1, -1, -1});
    }
    if (static_cast<Index>(labels.size()) != n) {
        throw MetricError(Errc::DimensionMismatch, "label count does not match the distance matrix",
                          {-1, -1, -1});
    }
    if (n == 0) throw MetricError(Errc::DimensionMismatch, "metric space needs a base point", {-1, -1, -1});
    for (Index i = 0; i < n; ++i) {
        if (dist(i, i) != Scalar(0)) {
            throw MetricError(Errc::NonzeroDiagonal, "nonzero diagonal entry at " + std::to_string(i),
                              {i, i, -1});
        }
        for (Index j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dist(i, j) != dist(j, i)) {
                throw MetricError(Errc::AsymmetricMatrix,
                                  "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" +
                                      std::to_string(j) + "," + std::to_string(i) + ")",
                                  {i, j, -1});
            }
            if (dist(i, j) < Scalar(0)) {
                throw MetricError(Errc::NegativeDistance,
                                  "negative distance at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                                  {i, j, -1});
            }
            if (dist(i, j) == Scalar(0)) {
                throw MetricError(Errc::ZeroOffDiagonal,
                                  "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide",
                                  {i, j, -1});
            }
        }
    }
    detail::check_triangles(dist, cmp);
    return FiniteMetricSpace<Scalar>(std::move(dist), std::move(labels));
}

/// Labels "0", "1", ... for quick construction in code and tests.
inline std::vector<std::string> default_labels(Index n) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

template <typename Scalar>
FiniteMetricSpace<Scalar> validate_metric(Matrix<Scalar> dist) {
    const Index n = dist.rows();
    return validate_metric(std::move(dist), default_labels(n));
}

/// max over x != y of |f(x) - f(y)| / d(x,y); zero for constant f.
template <typename Scalar>
Scalar lip_constant(const Vector<Scalar>& f, const FiniteMetricSpace<Scalar>& space) {
    Scalar best(0);
    for (Index i = 0; i < space.size(); ++i) {
        for (Index j = i + 1; j < space.size(); ++j) {
            const Scalar slope = absolute(Scalar(f(i) - f(j))) / space.d(i, j);
            if (slope > best) best = slope;
        }
    }
    return best;
}

/// A Lipschitz function vanishing at the base point, with its cached constant.
template <typename Scalar>
class LipschitzPotential {
public:
    LipschitzPotential() = default;

    /// Shifts the values so the base point carries 0, then caches lip.
    LipschitzPotential(Vector<Scalar> values, const FiniteMetricSpace<Scalar>& space)
        : values_(std::move(values)) {
        if (values_.size() != space.size()) {
            throw Error(Errc::DimensionMismatch, "potential length does not match the space");
        }
        const Scalar base = values_(0);
        if (base != Scalar(0)) {
            for (Index i = 0; i < values_.size(); ++i) values_(i) -= base;
        }
        lip_ = lip_constant(values_, space);
    }

    const Vector<Scalar>& values() const { return values_; }
    const Scalar& operator()(Index i) const { return values_(i); }
    const Scalar& lip() const { return lip_; }
    Index size() const { return values_.size(); }

private:
    Vector<Scalar> values_;
    Scalar lip_{0};
};

/// Distance to the base point, rho(x) = d(x,0).
template <typename Scalar>
LipschitzPotential<Scalar> rho(const FiniteMetricSpace<Scalar>& space) {
    return LipschitzPotential<Scalar>(space.dist().col(0), space);
}

/// De Leeuw transform: entry (x,y) is (f(x) - f(y)) / d(x,y). The diagonal is
/// not part of the pair space and is left at zero.
template <typename Scalar>
Matrix<Scalar> de_leeuw_transform(const LipschitzPotential<Scalar>& f, const FiniteMetricSpace<Scalar>& space) {
    const Index n = space.size();
    Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (i != j) out(i, j) = (f(i) - f(j)) / space.d(i, j);
        }
    }
    return out;
}

/// Finitely supported combination of point evaluations. The base point
/// evaluates every Lip0 function to zero, so its coefficient is dropped.
template <typename Scalar>
class Functional {
public:
    using Map = std::map<Index, Scalar>;

    Functional() = default;

    static Functional delta(Index x) {
        Functional out;
        out.add(x, Scalar(1));
        return out;
    }

    void add(Index x, const Scalar& c) {
        if (x == 0 || c == Scalar(0)) return;
        auto [it, inserted] = coeffs_.try_emplace(x, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Scalar(0)) coeffs_.erase(it);
        }
    }

    Scalar coeff(Index x) const {
        auto it = coeffs_.find(x);
        return it == coeffs_.end() ? Scalar(0) : it->second;
    }

    const Map& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    /// Sum of all coefficients; the mass the base point must absorb.
    Scalar total() const {
        Scalar s(0);
        for (const auto& [x, c] : coeffs_) s += c;
        return s;
    }

    Vector<Scalar> dense(Index n) const {
        Vector<Scalar> out = Vector<Scalar>::Zero(n);
        for (const auto& [x, c] : coeffs_) out(x) = c;
        return out;
    }

    Functional& operator+=(const Functional& other) {
        for (const auto& [x, c] : other.coeffs_) add(x, c);
        return *this;
    }
    Functional& operator-=(const Functional& other) {
        for (const auto& [x, c] : other.coeffs_) add(x, Scalar(-c));
        return *this;
    }
    Functional& operator*=(const Scalar& s) {
        if (s == Scalar(0)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [x, c] : coeffs_) c *= s;
        return *this;
    }

    friend Functional operator+(Functional a, const Functional& b) { return a += b; }
    friend Functional operator-(Functional a, const Functional& b) { return a -= b; }
    friend Functional operator*(const Scalar& s, Functional a) { return a *= s; }
    friend bool operator==(const Functional& a, const Functional& b) { return a.coeffs_ == b.coeffs_; }

private:
    Map coeffs_;
};

template <typename Scalar>
bool approx_equal(const Functional<Scalar>& a, const Functional<Scalar>& b, const Comparator<Scalar>& cmp) {
    const Functional<Scalar> diff = a - b;
    return std::all_of(diff.coeffs().begin(), diff.coeffs().end(),
                       [&](const auto& kv) { return cmp.is_zero(kv.second); });
}

struct Molecule {
    Index x;
    Index y;

    friend auto operator<=>(const Molecule&, const Molecule&) = default;
};

/// An ordered pair of distinct points, i.e. a point of the pair space.
struct Pair {
    Index x;
    Index y;

    friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// m_xy = (delta(x) - delta(y)) / d(x,y).
template <typename Scalar>
Functional<Scalar> molecule(Index x, Index y, const FiniteMetricSpace<Scalar>& space) {
    if (x == y) throw Error(Errc::InvalidPair, "a molecule needs two distinct points");
    Functional<Scalar> out;
    const Scalar inv = Scalar(1) / space.d(x, y);
    out.add(x, inv);
    out.add(y, Scalar(-inv));
    return out;
}

template <typename Scalar>
Functional<Scalar> molecule(const Molecule& m, const FiniteMetricSpace<Scalar>& space) {
    return molecule(m.x, m.y, space);
}

template <typename Scalar>
Scalar evaluate(const Functional<Scalar>& phi, const Vector<Scalar>& f) {
    Scalar s(0);
    for (const auto& [x, c] : phi.coeffs()) s += c * f(x);
    return s;
}

template <typename Scalar>
Scalar evaluate(const Functional<Scalar>& phi, const LipschitzPotential<Scalar>& f) {
    return evaluate(phi, f.values());
}

}  // namespace lipfree

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lipfree/metric.hpp"

namespace lipfree {

/// Coordinates of a map h: M -> l_inf^n together with its distortion data.
template <typename Scalar>
struct EmbeddingReport {
    std::vector<LipschitzPotential<Scalar>> functions;
    Scalar lip_h{0};
    /// Empty when h is not injective.
    std::optional<Scalar> lip_hinv;
    std::optional<Scalar> distortion;
    Scalar objective{0};
};

/// min over pairs (x,y) of max over f in F of |f(x) - f(y)| / d(x,y).
/// Functions with lip > 1 are rescaled to lip 1 first.
template <typename Scalar>
Scalar alpha_objective(const std::vector<LipschitzPotential<Scalar>>& family, const FiniteMetricSpace<Scalar>& space) {
    if (family.empty()) throw Error(Errc::EmptyFamily, "alpha_objective needs at least one function");
    std::vector<Scalar> scale;
    scale.reserve(family.size());
    for (const auto& f : family) scale.push_back(f.lip() > Scalar(1) ? Scalar(Scalar(1) / f.lip()) : Scalar(1));
    std::optional<Scalar> worst;
    for (Index x = 0; x < space.size(); ++x) {
        for (Index y = x + 1; y < space.size(); ++y) {
            Scalar best(0);
            for (std::size_t i = 0; i < family.size(); ++i) {
                const Scalar slope = scale[i] * absolute(Scalar(family[i](x) - family[i](y))) / space.d(x, y);
                if (slope > best) best = slope;
            }
            if (!worst || best < *worst) worst = best;
        }
    }
    return worst.value_or(Scalar(0));
}

/// Recomputes every report field from the coordinate functions.
template <typename Scalar>
EmbeddingReport<Scalar> embedding_report(std::vector<LipschitzPotential<Scalar>> family,
                                         const FiniteMetricSpace<Scalar>& space) {
    EmbeddingReport<Scalar> report;
    report.functions = std::move(family);
    bool injective = true;
    Scalar inv(0);
    for (Index x = 0; x < space.size(); ++x) {
        for (Index y = x + 1; y < space.size(); ++y) {
            Scalar sup(0);
            for (const auto& f : report.functions) {
                const Scalar gap = absolute(Scalar(f(x) - f(y)));
                if (gap > sup) sup = gap;
            }
            const Scalar& dxy = space.d(x, y);
            if (sup / dxy > report.lip_h) report.lip_h = sup / dxy;
            if (sup == Scalar(0)) {
                injective = false;
            } else if (dxy / sup > inv) {
                inv = dxy / sup;
            }
        }
    }
    if (injective) {
        report.lip_hinv = inv;
        report.distortion = report.lip_h * inv;
    }
    report.objective = report.functions.empty() ? Scalar(0) : alpha_objective(report.functions, space);
    return report;
}

/// Coordinates f_j(x) = d(x, p_j) - d(0, p_j), one per point: an isometric
/// embedding into l_inf^|M|.
template <typename Scalar>
EmbeddingReport<Scalar> frechet_embedding(const FiniteMetricSpace<Scalar>& space) {
    if (space.size() < 2) throw Error(Errc::InvalidArgument, "Frechet embedding needs at least two points");
    std::vector<LipschitzPotential<Scalar>> family;
    family.reserve(static_cast<std::size_t>(space.size()));
    for (Index j = 0; j < space.size(); ++j) family.emplace_back(space.dist().col(j), space);
    return embedding_report(std::move(family), space);
}

/// Midpoint of the upper and lower McShane envelopes of f, re-anchored at the
/// base point. The result is 1-Lipschitz and equals f when f already is.
Vector<double> lipschitz_projection(const Vector<double>& f, const FiniteMetricSpace<double>& space);

/// Local search for n coordinate functions maximising alpha_objective.
/// Restarts from a greedy Frechet subset and from seeded random starts;
/// returns the best family found. Deterministic for a fixed seed.
EmbeddingReport<double> best_embedding_search(int n, const FiniteMetricSpace<double>& space, int iterations,
                                              std::uint64_t seed);

}  // namespace lipfree

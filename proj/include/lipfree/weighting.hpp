#pragma once

#include "lipfree/metric.hpp"

namespace lipfree {

enum class WeightKind { Daleth, Pi, Custom };

template <typename Scalar>
struct WeightFunction {
    Vector<Scalar> values;
    WeightKind kind = WeightKind::Custom;
    int n = 0;
};

/// Custom weight; throws Error(InvalidArgument) unless all values lie in [0,1].
template <typename Scalar>
WeightFunction<Scalar> make_weight(Vector<Scalar> values, const FiniteMetricSpace<Scalar>& space) {
    if (values.size() != space.size()) throw Error(Errc::DimensionMismatch, "weight length does not match the space");
    for (Index i = 0; i < values.size(); ++i) {
        if (values(i) < Scalar(0) || values(i) > Scalar(1)) {
            throw Error(Errc::InvalidArgument, "weights must lie in [0,1]");
        }
    }
    return {std::move(values), WeightKind::Custom, 0};
}

/// Radial cutoff: 1 up to radius 2^n, linear down to 0 at radius 2^(n+1).
template <typename Scalar>
WeightFunction<Scalar> daleth(int n, const FiniteMetricSpace<Scalar>& space) {
    const Scalar inner = pow2<Scalar>(n);
    const Scalar outer = pow2<Scalar>(n + 1);
    const Scalar inv = pow2<Scalar>(-n);
    Vector<Scalar> values(space.size());
    for (Index x = 0; x < space.size(); ++x) {
        const Scalar& r = space.d(x, 0);
        if (r <= inner) {
            values(x) = Scalar(1);
        } else if (r >= outer) {
            values(x) = Scalar(0);
        } else {
            values(x) = Scalar(2) - inv * r;
        }
    }
    return {std::move(values), WeightKind::Daleth, n};
}

/// Annular window daleth(n) - daleth(-n); n >= 1.
template <typename Scalar>
WeightFunction<Scalar> pi_window(int n, const FiniteMetricSpace<Scalar>& space) {
    if (n < 1) throw Error(Errc::InvalidArgument, "pi_window needs n >= 1");
    Vector<Scalar> values = daleth(n, space).values - daleth(-n, space).values;
    return {std::move(values), WeightKind::Pi, n};
}

/// W_h(f) = f * h, pointwise.
template <typename Scalar>
LipschitzPotential<Scalar> weight_function(const LipschitzPotential<Scalar>& f, const WeightFunction<Scalar>& h,
                                           const FiniteMetricSpace<Scalar>& space) {
    return LipschitzPotential<Scalar>(f.values().cwiseProduct(h.values), space);
}

/// Adjoint of W_h on finitely supported functionals: coefficients times h.
template <typename Scalar>
Functional<Scalar> weighted_adjoint(const Functional<Scalar>& phi, const WeightFunction<Scalar>& h) {
    Functional<Scalar> out;
    for (const auto& [x, c] : phi.coeffs()) out.add(x, c * h.values(x));
    return out;
}

}  // namespace lipfree

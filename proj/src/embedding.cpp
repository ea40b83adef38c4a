#include "lipfree/embedding.hpp"

#include <algorithm>
#include <random>

namespace lipfree {

namespace {

constexpr int kRandomRestarts = 4;
constexpr double kProjectionSlack = 1e-12;

double objective_of(const std::vector<Vector<double>>& coords, const FiniteMetricSpace<double>& space) {
    double worst = 1.0;
    for (Index x = 0; x < space.size(); ++x) {
        for (Index y = x + 1; y < space.size(); ++y) {
            double best = 0.0;
            for (const auto& f : coords) best = std::max(best, std::abs(f(x) - f(y)) / space.d(x, y));
            worst = std::min(worst, best);
        }
    }
    return worst;
}

std::vector<Vector<double>> greedy_frechet(int n, const FiniteMetricSpace<double>& space) {
    const Index m = space.size();
    std::vector<Vector<double>> pool;
    for (Index j = 0; j < m; ++j) pool.emplace_back(space.dist().col(j) - Vector<double>::Constant(m, space.d(0, j)));
    std::vector<Vector<double>> chosen;
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    while (static_cast<int>(chosen.size()) < n) {
        Index pick = -1;
        double best = -1.0;
        for (Index j = 0; j < m; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            chosen.push_back(pool[static_cast<std::size_t>(j)]);
            const double val = objective_of(chosen, space);
            chosen.pop_back();
            if (val > best) {
                best = val;
                pick = j;
            }
        }
        if (pick < 0) {
            // More coordinates than points: pad with rho.
            chosen.push_back(pool[0]);
            continue;
        }
        used[static_cast<std::size_t>(pick)] = true;
        chosen.push_back(pool[static_cast<std::size_t>(pick)]);
    }
    return chosen;
}

struct SearchState {
    std::vector<Vector<double>> coords;
    double value = 0.0;
};

SearchState local_search(std::vector<Vector<double>> coords, const FiniteMetricSpace<double>& space, int iterations,
                         std::mt19937_64& rng) {
    const Index m = space.size();
    SearchState state{std::move(coords), 0.0};
    state.value = objective_of(state.coords, space);
    if (m < 2) return state;
    const double radius = space.radius();
    double step = 0.25 * radius;
    std::uniform_int_distribution<std::size_t> pick_coord(0, state.coords.size() - 1);
    std::uniform_int_distribution<Index> pick_point(1, m - 1);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int it = 0; it < iterations; ++it) {
        const std::size_t c = pick_coord(rng);
        const Index p = pick_point(rng);
        Vector<double> trial = state.coords[c];
        trial(p) += step * noise(rng);
        trial = lipschitz_projection(trial, space);
        std::swap(trial, state.coords[c]);
        const double value = objective_of(state.coords, space);
        if (value > state.value) {
            state.value = value;
            step = std::min(step * 1.5, radius);
        } else {
            std::swap(trial, state.coords[c]);
            step = std::max(step * 0.97, 1e-9 * radius);
        }
    }
    return state;
}

}  // namespace

Vector<double> lipschitz_projection(const Vector<double>& f, const FiniteMetricSpace<double>& space) {
    const Index m = space.size();
    Vector<double> g = f;
    for (int pass = 0; pass < 8; ++pass) {
        Vector<double> mid(m);
        for (Index x = 0; x < m; ++x) {
            double upper = g(x);
            double lower = g(x);
            for (Index y = 0; y < m; ++y) {
                upper = std::min(upper, g(y) + space.d(x, y));
                lower = std::max(lower, g(y) - space.d(x, y));
            }
            mid(x) = 0.5 * (upper + lower);
        }
        g = mid.array() - mid(0);
        if (lip_constant(g, space) <= 1.0 + kProjectionSlack) break;
    }
    return g;
}

EmbeddingReport<double> best_embedding_search(int n, const FiniteMetricSpace<double>& space, int iterations,
                                              std::uint64_t seed) {
    if (n < 1) throw Error(Errc::InvalidArgument, "embedding dimension must be at least 1");
    std::mt19937_64 rng(seed);
    const Index m = space.size();

    SearchState best = local_search(greedy_frechet(n, space), space, iterations, rng);
    for (int r = 0; r < kRandomRestarts; ++r) {
        std::vector<Vector<double>> coords;
        for (int i = 0; i < n; ++i) {
            Vector<double> f(m);
            for (Index x = 0; x < m; ++x) {
                std::uniform_real_distribution<double> u(-space.d(x, 0), space.d(x, 0));
                f(x) = u(rng);
            }
            coords.push_back(lipschitz_projection(f, space));
        }
        SearchState candidate = local_search(std::move(coords), space, iterations, rng);
        if (candidate.value > best.value) best = std::move(candidate);
    }

    std::vector<LipschitzPotential<double>> family;
    for (auto& f : best.coords) family.emplace_back(std::move(f), space);
    return embedding_report(std::move(family), space);
}

}  // namespace lipfree

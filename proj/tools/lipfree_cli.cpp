#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "criteria.hpp"
#include "lipfree/embedding.hpp"
#include "lipfree/exotic.hpp"
#include "lipfree/io.hpp"
#include "lipfree/monotonicity.hpp"
#include "lipfree/transport.hpp"

namespace {

using namespace lipfree;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;

struct RunConfig {
    std::string command;
    std::string input;
    std::string functional;
    std::string pairs;
    double tolerance = kDefaultTolerance;
    bool exact = false;
    std::uint64_t seed = 0;
    std::string out;
    int N = 64;
    int dim = 0;
    int iters = 2000;
    std::string gamma_out;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        io::write_file(cfg.out, text);
    }
}

void emit(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

void require_flag(const std::string& value, const char* flag) {
    if (value.empty()) throw Error(Errc::InvalidArgument, std::string("missing ") + flag);
}

template <typename Scalar>
struct Loaded {
    FiniteMetricSpace<Scalar> space;
    Comparator<Scalar> cmp;
};

template <typename Scalar>
Loaded<Scalar> load_space(const RunConfig& cfg) {
    require_flag(cfg.input, "--input");
    Comparator<Scalar> cmp(cfg.tolerance);
    auto space = io::load_metric<Scalar>(cfg.input, cmp);
    spdlog::debug("loaded {} points from {}", space.size(), cfg.input);
    return {std::move(space), cmp};
}

template <typename Scalar>
Functional<Scalar> load_functional(const RunConfig& cfg, const FiniteMetricSpace<Scalar>& space) {
    require_flag(cfg.functional, "--functional");
    return io::functional_from_json(io::parse_json(io::read_file(cfg.functional)), space);
}

template <typename Scalar>
int run_transport(const RunConfig& cfg) {
    const auto [space, cmp] = load_space<Scalar>(cfg);
    const auto phi = load_functional(cfg, space);
    const auto result = optimal_coupling(phi, space, cmp);
    spdlog::info("{}: value {}", cfg.command, format12(to_double(result.value)));

    Json out;
    if (cfg.command == "norm") {
        out["value"] = io::scalar_to_json(result.value);
    } else if (cfg.command == "coupling") {
        out = io::transport_to_json(result, space);
    } else if (cfg.command == "potential") {
        out["value"] = io::scalar_to_json(result.value);
        out["dual_value"] = io::scalar_to_json(evaluate(phi, result.potential));
        out["lip"] = io::scalar_to_json(result.potential.lip());
        out["potential"] = io::potential_to_json(result.potential, space);
    } else {
        const auto parts = molecule_decomposition(phi, space, cmp);
        Functional<Scalar> rebuilt;
        Scalar total(0);
        Json molecules = Json::array();
        for (const auto& [c, m] : parts) {
            rebuilt += c * molecule(m, space);
            total += c;
            Json item;
            item["coefficient"] = io::scalar_to_json(c);
            item["x"] = space.label(m.x);
            item["y"] = space.label(m.y);
            molecules.push_back(std::move(item));
        }
        Scalar residual(0);
        const Functional<Scalar> diff = rebuilt - phi;
        for (const auto& [x, c] : diff.coeffs()) residual += absolute(c);
        out["norm"] = io::scalar_to_json(result.value);
        out["coefficient_sum"] = io::scalar_to_json(total);
        out["residual"] = io::scalar_to_json(residual);
        out["molecules"] = std::move(molecules);
    }
    emit(cfg, out);
    return kExitOk;
}

template <typename Scalar>
int run_check_monotone(const RunConfig& cfg) {
    const auto [space, cmp] = load_space<Scalar>(cfg);
    require_flag(cfg.pairs, "--pairs");
    const PairSet pairs = io::pair_set_from_json(io::parse_json(io::read_file(cfg.pairs)), space);
    const auto cert = check_cyclically_monotone(pairs, space);
    Json out = io::certificate_to_json(cert, pairs, space);
    if (cert.monotone && !pairs.empty()) {
        out["potential"] = io::potential_to_json(build_extremal_potential(pairs, space), space);
    }
    emit(cfg, out);
    return cert.monotone ? kExitOk : kExitNegative;
}

template <typename Scalar>
int run_embed(const RunConfig& cfg) {
    const auto [space, cmp] = load_space<Scalar>(cfg);
    if (cfg.dim <= 0) {
        emit(cfg, io::embedding_to_json(frechet_embedding(space), space));
        return kExitOk;
    }
    if constexpr (is_exact_v<Scalar>) {
        throw Error(Errc::InvalidArgument, "--dim search runs in float mode only");
    } else {
        if (cfg.iters < 0) throw Error(Errc::InvalidArgument, "--iters must be nonnegative");
        const auto report = best_embedding_search(cfg.dim, space, cfg.iters, cfg.seed);
        emit(cfg, io::embedding_to_json(report, space));
        return kExitOk;
    }
}

int run_gen_exotic(const RunConfig& cfg) {
    if (cfg.N < 2) throw Error(Errc::InvalidArgument, "--N must be at least 2");
    const auto family = exotic::build_i_family(cfg.N);
    const auto space = exotic::exotic_metric(cfg.N, family);
    if (!cfg.out.empty() && cfg.out.size() >= 4 && cfg.out.substr(cfg.out.size() - 4) == ".csv") {
        emit(cfg, io::metric_to_csv(space));
    } else {
        emit(cfg, io::metric_to_json(space));
    }
    if (!cfg.gamma_out.empty()) io::write_file(cfg.gamma_out, io::gamma_to_json(family, cfg.N).dump(2) + "\n");
    return kExitOk;
}

int run_selftest(const char* argv0) {
    acceptance::Options options;
    options.cli_path = argv0;
    options.on_result = [](const acceptance::CriterionResult& r) {
        std::cout << acceptance::format_line(r) << std::endl;
    };
    const auto results = acceptance::run_all(options);
    for (const auto& r : results) {
        if (!r.passed) return kExitNegative;
    }
    return kExitOk;
}

template <typename Scalar>
int dispatch(const RunConfig& cfg) {
    if (cfg.command == "check-monotone") return run_check_monotone<Scalar>(cfg);
    if (cfg.command == "embed") return run_embed<Scalar>(cfg);
    return run_transport<Scalar>(cfg);
}

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("lipfree");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::off);
    if (const char* level = std::getenv("LIPFREE_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

void print_error(std::string_view name, const std::string& message) {
    Json body;
    body["error"] = std::string(name);
    body["message"] = message;
    std::cerr << body.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    configure_logging();
    RunConfig cfg;

    CLI::App app{"Free-space norms, optimal representations and monotonicity certificates on finite metric spaces"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "Metric space (JSON or .csv)");
        sub->add_option("--tolerance", cfg.tolerance, "Absolute tolerance in float mode")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--exact", cfg.exact, "Exact rational arithmetic");
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
        sub->add_option("--seed", cfg.seed, "Random seed");
    };

    const std::pair<const char*, const char*> functional_commands[] = {
        {"norm", "Free-space norm of a functional"},
        {"coupling", "Optimal representation as a measure on pairs"},
        {"potential", "Norming 1-Lipschitz potential"},
        {"decompose", "Decomposition into weighted molecules"},
    };
    for (const auto& [name, help] : functional_commands) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub);
        sub->add_option("--functional", cfg.functional, "Functional JSON {\"coeffs\": {...}}");
    }
    {
        auto* sub = app.add_subcommand("check-monotone", "Cyclical monotonicity of a pair set");
        add_common(sub);
        sub->add_option("--pairs", cfg.pairs, "Pair set JSON {\"pairs\": [[x,y], ...]}");
    }
    {
        auto* sub = app.add_subcommand("embed", "Frechet embedding, or a search in dimension --dim");
        add_common(sub);
        sub->add_option("--dim", cfg.dim, "Target dimension for the search");
        sub->add_option("--iters", cfg.iters, "Search iterations per restart");
    }
    {
        auto* sub = app.add_subcommand("gen-exotic", "Exotic metric on {1..N}");
        sub->add_option("--N", cfg.N, "Number of points");
        sub->add_option("--out", cfg.out, "Output file (.csv for CSV)");
        sub->add_option("--gamma-out", cfg.gamma_out, "Write the Gamma tables as JSON");
    }
    app.add_subcommand("selftest", "Run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("ParseError", e.what());
        return kExitInput;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    spdlog::debug("command {}", cfg.command);

    try {
        if (cfg.command == "selftest") return run_selftest(argv[0]);
        if (cfg.command == "gen-exotic") return run_gen_exotic(cfg);
        return cfg.exact ? dispatch<Rational>(cfg) : dispatch<double>(cfg);
    } catch (const MetricError& e) {
        Json body;
        body["error"] = std::string(e.name());
        body["message"] = e.what();
        Json witness = Json::array();
        for (Index i : e.witness()) {
            if (i >= 0) witness.push_back(i);
        }
        body["witness"] = std::move(witness);
        std::cerr << body.dump() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        print_error(e.name(), e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return kExitInput;
    }
}

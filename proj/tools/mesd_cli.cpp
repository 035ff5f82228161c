// mesd: evaluate discrimination success probabilities, run the brute-force oracles and the
// ontic-model property batch, and export (theta, p) advantage maps.
//
// Exit codes: 0 ok, 2 invalid arguments, 3 I/O failure, 4 oracle tolerance exceeded.

#include "mesd/advantage_map.hpp"
#include "mesd/analytic.hpp"
#include "mesd/ontic.hpp"
#include "mesd/oracle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitTolerance = 4;

constexpr double kDeg = std::numbers::pi / 180.0;

struct UsageError {
    std::string message;
};

struct IoError {
    std::string message;
};

enum class Format { text, csv, json };

// Ordered key/value record printed as text, a one-row CSV, or a JSON object.
class Record {
public:
    void add(std::string key, double v) { fields_.emplace_back(std::move(key), v); }
    void add(std::string key, bool v) { fields_.emplace_back(std::move(key), v); }
    void add(std::string key, std::string v) { fields_.emplace_back(std::move(key), std::move(v)); }
    void add(std::string key, std::size_t v) { fields_.emplace_back(std::move(key), v); }

    std::string render(Format f) const {
        std::string out;
        switch (f) {
            case Format::text:
                for (const auto& [k, v] : fields_) out += fmt::format("{} {}\n", k, text(v));
                break;
            case Format::csv: {
                std::string head, row;
                for (const auto& [k, v] : fields_) {
                    head += (head.empty() ? "" : ",") + k;
                    row += (row.empty() ? "" : ",") + text(v);
                }
                out = head + "\n" + row + "\n";
                break;
            }
            case Format::json: {
                nlohmann::ordered_json j;
                for (const auto& [k, v] : fields_) j[k] = v;
                out = j.dump(2) + "\n";
                break;
            }
        }
        return out;
    }

private:
    static std::string text(const nlohmann::ordered_json& v) {
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_float()) return mesd::format_number(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }

    std::vector<std::pair<std::string, nlohmann::ordered_json>> fields_;
};

void require_range(double v, double lo, double hi, const std::string& flag) {
    if (!(v >= lo && v <= hi))
        throw UsageError{fmt::format("{}: value {} outside [{}, {}]", flag, v, lo, hi)};
}

// Exactly one of --<name> (radians) / --<name>-deg may be given; falls back to `fallback`.
double resolve_angle(const std::optional<double>& rad, const std::optional<double>& deg,
                     const std::string& name, double max_rad, double fallback) {
    if (rad && deg) throw UsageError{fmt::format("--{} and --{}-deg are mutually exclusive", name, name)};
    if (rad) {
        require_range(*rad, 0.0, max_rad, "--" + name);
        return *rad;
    }
    if (deg) {
        require_range(*deg, 0.0, max_rad / kDeg, "--" + name + "-deg");
        return std::min(*deg * kDeg, max_rad);
    }
    return fallback;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError{"cannot open " + out_path + " for writing"};
    f << text;
    f.close();
    if (!f) throw IoError{"failed writing " + out_path};
}

const char* branch_name(mesd::QuantumBranch b) {
    return b == mesd::QuantumBranch::high_prior ? "high_prior" : "low_prior";
}

struct CommonFlags {
    std::string out;
    Format format = Format::text;
};

void add_common(CLI::App* cmd, CommonFlags& c) {
    cmd->add_option("--out,-o", c.out, "Write output to this file instead of stdout");
    cmd->add_option("--format", c.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}},
            CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-error discrimination: quantum optima vs noncontextual bounds"};
    app.require_subcommand(1);

    // two
    CommonFlags two_io;
    double two_prior = 0.5, two_overlap = 0.5;
    auto* two = app.add_subcommand("two", "Helstrom optimum and noncontextual bound for two states");
    two->add_option("--prior", two_prior, "Prior of the first state, in [0, 1]");
    two->add_option("--overlap", two_overlap, "Confusability |<psi1|psi2>|^2, in [0, 1]");
    add_common(two, two_io);

    // three
    CommonFlags three_io;
    std::optional<double> three_theta, three_theta_deg;
    double three_prior = 1.0 / 3.0;
    auto* three = app.add_subcommand("three", "Mirror-symmetric three-state optimum and noncontextual bound");
    three->add_option("--theta", three_theta, "Half-angle theta in radians, [0, pi/2]");
    three->add_option("--theta-deg", three_theta_deg, "Half-angle theta in degrees, [0, 90]");
    three->add_option("--prior", three_prior, "Prior p of psi1 and psi2, in [0, 1/2]");
    add_common(three, three_io);

    // map
    mesd::MapConfig map_cfg;
    std::string map_out;
    std::string map_format = "csv";
    auto* map = app.add_subcommand("map", "Scan the (theta, p) grid and export advantage cells");
    map->add_option("--theta-steps", map_cfg.theta_steps, "Grid points in theta (>= 2)");
    map->add_option("--prior-steps", map_cfg.prior_steps, "Grid points in p (>= 2)");
    map->add_option("--out,-o", map_out, "Output file")->required();
    map->add_option("--format", map_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // oracle-two
    CommonFlags o2_io;
    std::optional<double> o2_sep, o2_sep_deg;
    double o2_prior = 0.5, o2_tol = 1e-4;
    std::size_t o2_grid = 1024, o2_refine = 100;
    auto* o2 = app.add_subcommand("oracle-two", "Brute-force two-state optimum vs Helstrom");
    o2->add_option("--sep", o2_sep, "Angle between the states in radians, [0, pi]");
    o2->add_option("--sep-deg", o2_sep_deg, "Angle between the states in degrees, [0, 180]");
    o2->add_option("--prior", o2_prior, "Prior of the first state, in [0, 1]");
    o2->add_option("--grid", o2_grid, "Measurement angle grid size (>= 64)");
    o2->add_option("--refine", o2_refine, "Golden-section iterations");
    o2->add_option("--tol", o2_tol, "Maximum accepted |oracle - analytic|");
    add_common(o2, o2_io);

    // oracle-three
    CommonFlags o3_io;
    std::optional<double> o3_theta, o3_theta_deg;
    double o3_prior = 1.0 / 3.0, o3_tol = 1e-3;
    mesd::oracle::ThreeOptions o3_opts;
    auto* o3 = app.add_subcommand("oracle-three", "Brute-force three-state optimum vs the closed form");
    o3->add_option("--theta", o3_theta, "Half-angle theta in radians, [0, pi/2]");
    o3->add_option("--theta-deg", o3_theta_deg, "Half-angle theta in degrees, [0, 90]");
    o3->add_option("--prior", o3_prior, "Prior p of psi1 and psi2, in [0, 1/2]");
    o3->add_option("--grid", o3_opts.grid_n, "Grid points per angle (>= 16)");
    o3->add_option("--refine", o3_opts.refine_iters, "Pattern-search sweeps per start");
    o3->add_option("--restarts", o3_opts.restarts, "Random restarts");
    o3->add_option("--seed", o3_opts.seed, "Restart seed");
    o3->add_option("--tol", o3_tol, "Maximum accepted |oracle - analytic|");
    add_common(o3, o3_io);

    // ontic-check
    std::size_t num_models = 10000, max_lambdas = 32;
    std::uint64_t ontic_seed = 7;
    auto* ontic = app.add_subcommand("ontic-check", "Check the noncontextual bound inequalities on random ontic models");
    ontic->add_option("--num-models", num_models, "Models per preparation count (>= 1)");
    ontic->add_option("--seed", ontic_seed, "Batch seed");
    ontic->add_option("--max-lambdas", max_lambdas, "Largest ontic space size (>= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*two) {
            require_range(two_prior, 0.0, 1.0, "--prior");
            require_range(two_overlap, 0.0, 1.0, "--overlap");
            const auto b = mesd::advantage_two(mesd::TwoStateScenario::make(two_prior, two_overlap));
            Record r;
            r.add("helstrom", b.quantum);
            r.add("nc_bound", b.noncontextual);
            r.add("gap", b.gap);
            r.add("advantage", b.advantage());
            emit(r.render(two_io.format), two_io.out);
            return kExitOk;
        }

        if (*three) {
            const double theta = resolve_angle(three_theta, three_theta_deg, "theta", std::numbers::pi / 2.0,
                                               std::numbers::pi / 3.0);
            require_range(three_prior, 0.0, 0.5, "--prior");
            const mesd::MirrorEnsemble e(theta, three_prior);
            const auto b = mesd::advantage_three(e);
            Record r;
            r.add("theta", theta);
            r.add("prior", three_prior);
            r.add("threshold_prior", mesd::threshold_prior(theta));
            r.add("branch", std::string(branch_name(mesd::quantum_three_branch(e))));
            r.add("s_quantum", b.quantum);
            r.add("s_nc_bound", b.noncontextual);
            r.add("gap", b.gap);
            r.add("advantage", b.advantage());
            emit(r.render(three_io.format), three_io.out);
            return kExitOk;
        }

        if (*map) {
            if (map_cfg.theta_steps < 2) throw UsageError{"--theta-steps: must be at least 2"};
            if (map_cfg.prior_steps < 2) throw UsageError{"--prior-steps: must be at least 2"};
            std::size_t threads = 0;
            try {
                threads = mesd::threads_from_env();
            } catch (const mesd::DomainError& e) {
                throw UsageError{e.what()};
            }
            const auto cells = mesd::scan_advantage(map_cfg, threads);
            emit(map_format == "json" ? mesd::to_json(cells, map_cfg) : mesd::to_csv(cells), map_out);
            return kExitOk;
        }

        if (*o2) {
            const double sep = resolve_angle(o2_sep, o2_sep_deg, "sep", std::numbers::pi, std::numbers::pi / 3.0);
            require_range(o2_prior, 0.0, 1.0, "--prior");
            if (o2_grid < 64) throw UsageError{"--grid: must be at least 64"};
            if (!(o2_tol >= 0.0)) throw UsageError{"--tol: must be non-negative"};
            const auto s1 = mesd::make_state(0.0);
            const auto s2 = mesd::make_state(sep);
            const double analytic =
                mesd::helstrom_two(mesd::TwoStateScenario::make(o2_prior, mesd::confusability(s1, s2)));
            const auto res = mesd::oracle::optimize_two(s1, s2, o2_prior, o2_grid, o2_refine);
            const double diff = std::abs(res.success - analytic);
            Record r;
            r.add("analytic", analytic);
            r.add("oracle", res.success);
            r.add("difference", diff);
            r.add("evaluations", res.evaluations);
            r.add("measurement_angle", std::get<mesd::oracle::MeasurementParams2>(res.params).angle);
            emit(r.render(o2_io.format), o2_io.out);
            return diff <= o2_tol ? kExitOk : kExitTolerance;
        }

        if (*o3) {
            const double theta = resolve_angle(o3_theta, o3_theta_deg, "theta", std::numbers::pi / 2.0,
                                               std::numbers::pi / 3.0);
            require_range(o3_prior, 0.0, 0.5, "--prior");
            if (o3_opts.grid_n < 16) throw UsageError{"--grid: must be at least 16"};
            if (!(o3_tol >= 0.0)) throw UsageError{"--tol: must be non-negative"};
            const mesd::MirrorEnsemble e(theta, o3_prior);
            const double analytic = mesd::quantum_three(e);
            const auto res = mesd::oracle::optimize_three(e, o3_opts);
            const auto& m = std::get<mesd::oracle::MeasurementParams3>(res.params);
            const double diff = std::abs(res.success - analytic);
            Record r;
            r.add("analytic", analytic);
            r.add("oracle", res.success);
            r.add("difference", diff);
            r.add("evaluations", res.evaluations);
            for (std::size_t i = 0; i < 3; ++i) {
                r.add(fmt::format("weight{}", i + 1), m.weights[i]);
                r.add(fmt::format("angle{}", i + 1), m.angles[i]);
                r.add(fmt::format("bloch_length{}", i + 1), m.bloch_lengths[i]);
            }
            emit(r.render(o3_io.format), o3_io.out);
            return diff <= o3_tol ? kExitOk : kExitTolerance;
        }

        if (*ontic) {
            if (num_models < 1) throw UsageError{"--num-models: must be at least 1"};
            if (max_lambdas < 2) throw UsageError{"--max-lambdas: must be at least 2"};
            if (num_models == 1) {
                std::mt19937_64 rng(ontic_seed);
                const auto two_model = mesd::ontic::random_model(rng, 2, max_lambdas);
                const auto three_model = mesd::ontic::random_model(rng, 3, max_lambdas);
                const auto r2 = mesd::ontic::check_two_state_bound(two_model);
                const auto r3 = mesd::ontic::check_three_state_bound(three_model);
                fmt::print("two-state   |Lambda|={} success={} overlap={} bound={} {}\n", two_model.num_lambdas(),
                           mesd::format_number(r2.success), mesd::format_number(r2.overlap),
                           mesd::format_number(r2.bound), r2.pass ? "pass" : "FAIL");
                fmt::print("three-state |Lambda|={} success={} overlap12={} overlap13={} bound={} "
                           "decomposition={} {}\n",
                           three_model.num_lambdas(), mesd::format_number(r3.success),
                           mesd::format_number(r3.overlap12), mesd::format_number(r3.overlap13),
                           mesd::format_number(r3.bound), mesd::format_number(r3.decomposition),
                           r3.pass && r3.identity_holds ? "pass" : "FAIL");
                return r2.pass && r3.pass && r3.identity_holds ? kExitOk : 1;
            }
            const auto s = mesd::ontic::run_bound_batch(num_models, ontic_seed, max_lambdas);
            fmt::print("two-state bound      {}/{} pass (worst slack {})\n", s.two_state_pass, s.models,
                       mesd::format_number(s.worst_two_slack));
            fmt::print("three-state bound    {}/{} pass (worst slack {})\n", s.three_state_pass, s.models,
                       mesd::format_number(s.worst_three_slack));
            fmt::print("max/min identity     {}/{} pass (worst error {})\n", s.identity_pass, s.models,
                       mesd::format_number(s.worst_identity_error));
            fmt::print("posterior form       {}/{} pass\n", s.posterior_pass, 2 * s.models);
            return s.all_pass() ? kExitOk : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitIo;
    } catch (const mesd::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

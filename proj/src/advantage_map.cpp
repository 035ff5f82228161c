#include "mesd/advantage_map.hpp"

#include "mesd/analytic.hpp"

#include <fmt/format.h>
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace mesd {

namespace {

AdvantageCell evaluate_cell(double theta, double p) {
    const BoundPair b = advantage_three(MirrorEnsemble(theta, p));
    return {theta, p, b.quantum, b.noncontextual, b.gap, b.advantage()};
}

double grid_point(double hi, std::size_t k, std::size_t steps) {
    if (k + 1 == steps) return hi;
    return hi * static_cast<double>(k) / static_cast<double>(steps - 1);
}

// Round-trip through the printed form so JSON carries exactly the CSV digits.
double printed_value(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

}  // namespace

std::vector<AdvantageCell> scan_advantage(const MapConfig& cfg, std::size_t threads) {
    if (cfg.theta_steps < 2 || cfg.prior_steps < 2) throw DomainError("scan_advantage: steps must be >= 2");
    const std::size_t total = cfg.theta_steps * cfg.prior_steps;
    std::vector<AdvantageCell> cells(total);

    auto work = [&](std::size_t idx) {
        const std::size_t ti = idx / cfg.prior_steps;
        const std::size_t pj = idx % cfg.prior_steps;
        cells[idx] = evaluate_cell(grid_point(std::numbers::pi / 2.0, ti, cfg.theta_steps),
                                   grid_point(0.5, pj, cfg.prior_steps));
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, total);
    if (threads <= 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
        return cells;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++) work(i);
        });
    pool.clear();  // joins
    return cells;
}

std::size_t threads_from_env() {
    const char* v = std::getenv("MESD_THREADS");
    if (v == nullptr) return 0;
    const std::string s(v);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc{} || ptr != s.data() + s.size() || n == 0)
        throw DomainError("MESD_THREADS must be a positive integer");
    return n;
}

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // drops the sign of -0
    return fmt::format("{:.9g}", x);
}

std::string to_csv(const std::vector<AdvantageCell>& cells) {
    std::string out = "theta,prior,s_quantum,s_nc_bound,gap,advantage\n";
    for (const auto& c : cells) {
        out += fmt::format("{},{},{},{},{},{}\n", format_number(c.theta), format_number(c.prior_p),
                           format_number(c.s_quantum), format_number(c.s_nc_bound), format_number(c.gap),
                           c.advantage ? "true" : "false");
    }
    return out;
}

std::string to_json(const std::vector<AdvantageCell>& cells, const MapConfig& cfg) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
        nlohmann::ordered_json o;
        o["theta"] = printed_value(c.theta);
        o["prior"] = printed_value(c.prior_p);
        o["s_quantum"] = printed_value(c.s_quantum);
        o["s_nc_bound"] = printed_value(c.s_nc_bound);
        o["gap"] = printed_value(c.gap);
        o["advantage"] = c.advantage;
        arr.push_back(std::move(o));
    }
    nlohmann::ordered_json doc;
    doc["config"] = {{"command", "map"}, {"theta_steps", cfg.theta_steps}, {"prior_steps", cfg.prior_steps}};
    doc["cells"] = std::move(arr);
    return doc.dump(2) + "\n";
}

}  // namespace mesd

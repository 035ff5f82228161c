// advantage_map.hpp: (theta, p) scan of the three-state quantum optimum against the
// noncontextual bound, with deterministic CSV / JSON serialization.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mesd {

struct AdvantageCell {
    double theta;
    double prior_p;
    double s_quantum;
    double s_nc_bound;
    double gap;
    bool advantage;
};

struct MapConfig {
    std::size_t theta_steps = 91;
    std::size_t prior_steps = 51;
};

/// Inclusive uniform grid theta in [0, pi/2], p in [0, 1/2]; theta-major, both ascending.
/// Cells are computed on `threads` workers (0 = hardware concurrency); the result does not
/// depend on the thread count.
std::vector<AdvantageCell> scan_advantage(const MapConfig& cfg, std::size_t threads = 1);

/// Worker count from MESD_THREADS, or 0 when unset. Throws DomainError on a malformed value.
std::size_t threads_from_env();

/// %.9g, with -0 printed as 0.
std::string format_number(double x);

std::string to_csv(const std::vector<AdvantageCell>& cells);
std::string to_json(const std::vector<AdvantageCell>& cells, const MapConfig& cfg);

}  // namespace mesd

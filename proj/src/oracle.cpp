#include "mesd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace mesd::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio

double wrap_pi(double a) {
    double r = std::fmod(a, kPi);
    if (r < 0.0) r += kPi;
    if (r >= kPi) r = 0.0;
    return r;
}

double sq(double x) { return x * x; }

// Golden-section maximization of f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, std::size_t iters, std::size_t& evals) {
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    evals += 2;
    for (std::size_t i = 0; i < iters; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        }
        ++evals;
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// Grid over [0, pi) followed by golden refinement around the best cell.
template <class F>
std::pair<double, double> maximize_periodic(F&& f, std::size_t grid_n, std::size_t iters, std::size_t& evals) {
    const double h = kPi / static_cast<double>(grid_n);
    double best_x = 0.0;
    double best_f = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid_n; ++j) {
        const double x = h * static_cast<double>(j);
        const double v = f(x);
        ++evals;
        if (v > best_f) {
            best_f = v;
            best_x = x;
        }
    }
    if (iters > 0) {
        auto [x, v] = golden_max(f, best_x - h, best_x + h, iters, evals);
        if (v > best_f) {
            best_f = v;
            best_x = wrap_pi(x);
        }
    }
    return {best_x, best_f};
}

// Fast objective for the rank-one family: <psi_i| a_i P(alpha_i) |psi_i> = a_i cos^2(alpha_i - theta_i).
class ThreeObjective {
public:
    explicit ThreeObjective(const MirrorEnsemble& e)
        : priors_(e.priors()), state_angles_{e.theta(), -e.theta(), 0.0} {}

    double value(const MeasurementParams3& m) const {
        double s = 0.0;
        for (std::size_t i = 0; i < 3; ++i) s += priors_[i] * m.weights[i] * sq(std::cos(m.angles[i] - state_angles_[i]));
        return s;
    }

    // -inf where the angles admit no valid weights.
    double at(const std::array<double, 3>& angles, MeasurementParams3* out = nullptr) const {
        auto m = params_from_angles(angles);
        if (!m) return -std::numeric_limits<double>::infinity();
        if (out) *out = *m;
        return value(*m);
    }

    const std::array<double, 3>& priors() const { return priors_; }
    const std::array<double, 3>& state_angles() const { return state_angles_; }

private:
    std::array<double, 3> priors_;
    std::array<double, 3> state_angles_;
};

struct Candidate {
    double success = -std::numeric_limits<double>::infinity();
    MeasurementParams3 params;
};

// Higher success wins; exact ties go to the lexicographically smaller angle triple.
bool better(const Candidate& a, const Candidate& b) {
    if (a.success != b.success) return a.success > b.success;
    return a.params.angles < b.params.angles;
}

Candidate pattern_search(const ThreeObjective& obj, std::array<double, 3> x, double step,
                         std::size_t sweeps, std::size_t& evals) {
    Candidate cur;
    cur.success = obj.at(x, &cur.params);
    ++evals;
    for (std::size_t s = 0; s < sweeps && step > 1e-13; ++s) {
        bool improved = false;
        for (std::size_t d = 0; d < 3; ++d) {
            for (double sign : {1.0, -1.0}) {
                auto y = x;
                y[d] = wrap_pi(y[d] + sign * step);
                MeasurementParams3 m;
                const double v = obj.at(y, &m);
                ++evals;
                if (v > cur.success) {
                    cur = {v, m};
                    x = y;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return cur;
}

}  // namespace

std::array<Effect, 3> MeasurementParams3::effects() const {
    std::array<Effect, 3> out;
    for (std::size_t i = 0; i < 3; ++i) {
        const double a = std::max(weights[i], 0.0);
        const double r = std::clamp(bloch_lengths[i], 0.0, 1.0);
        const double z = r * std::cos(2.0 * angles[i]);
        const double x = r * std::sin(2.0 * angles[i]);
        Matrix2 m;
        m << 1.0 + z, x, x, 1.0 - z;
        out[i].matrix = 0.5 * a * m;
    }
    return out;
}

std::optional<std::string> check_params(const MeasurementParams3& m, double tol) {
    double sum_a = 0.0, sum_z = 0.0, sum_x = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double a = m.weights[i];
        const double r = m.bloch_lengths[i];
        if (!std::isfinite(a) || !std::isfinite(r) || !std::isfinite(m.angles[i])) return "non-finite parameter";
        if (a < -tol) return "negative effect weight";
        if (r < 0.0 || r > 1.0 + tol) return "Bloch length outside [0, 1]";
        sum_a += a;
        sum_z += a * r * std::cos(2.0 * m.angles[i]);
        sum_x += a * r * std::sin(2.0 * m.angles[i]);
    }
    if (std::abs(sum_a - 2.0) > tol || std::abs(sum_z) > tol || std::abs(sum_x) > tol) return "incomplete POVM";
    return std::nullopt;
}

std::optional<MeasurementParams3> params_from_angles(const std::array<double, 3>& angles) {
    // Columns (1, cos 2a_i, sin 2a_i); right-hand side (2, 0, 0).
    std::array<double, 3> c{}, s{};
    for (std::size_t i = 0; i < 3; ++i) {
        c[i] = std::cos(2.0 * angles[i]);
        s[i] = std::sin(2.0 * angles[i]);
    }
    // Cramer's rule; each minor is sin(2(a_k - a_j)).
    const double m0 = c[1] * s[2] - c[2] * s[1];
    const double m1 = c[2] * s[0] - c[0] * s[2];
    const double m2 = c[0] * s[1] - c[1] * s[0];
    const double det = m0 + m1 + m2;
    if (std::abs(det) < 1e-12) return std::nullopt;

    MeasurementParams3 m;
    m.angles = angles;
    m.weights = {2.0 * m0 / det, 2.0 * m1 / det, 2.0 * m2 / det};
    for (double& a : m.weights) {
        if (a < -1e-12) return std::nullopt;
        a = std::max(a, 0.0);
    }
    return m;
}

double success_two(const PureState& s1, const PureState& s2, double p, const MeasurementParams2& m) {
    const Effect e1 = Effect::projector(make_state(m.angle));
    const Effect e2{Matrix2::Identity() - e1.matrix};
    return p * born_probability(s1, e1) + (1.0 - p) * born_probability(s2, e2);
}

OracleResult optimize_two(const PureState& s1, const PureState& s2, double p,
                          std::size_t grid_n, std::size_t refine_iters) {
    if (grid_n < 64) throw DomainError("optimize_two: grid_n must be at least 64");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("optimize_two: prior must lie in [0, 1]");
    OracleResult r;
    auto f = [&](double a) { return success_two(s1, s2, p, MeasurementParams2{a}); };
    auto [angle, value] = maximize_periodic(f, grid_n, refine_iters, r.evaluations);
    r.success = std::clamp(value, 0.0, 1.0);
    r.params = MeasurementParams2{angle};
    return r;
}

double success_three(const MirrorEnsemble& ensemble, const MeasurementParams3& m) {
    if (auto err = check_params(m)) throw DomainError("success_three: " + *err);
    const auto states = ensemble.states();
    const auto priors = ensemble.priors();
    const auto effects = m.effects();
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += priors[i] * born_probability(states[i], effects[i]);
    return std::clamp(s, 0.0, 1.0);
}

OracleResult optimize_three(const MirrorEnsemble& ensemble, const ThreeOptions& opts) {
    if (opts.grid_n < 16) throw DomainError("optimize_three: grid_n must be at least 16");
    const ThreeObjective obj(ensemble);
    OracleResult result;
    std::size_t& evals = result.evaluations;
    Candidate best;

    auto offer = [&best](const Candidate& c) {
        if (better(c, best)) best = c;
    };

    // Guess psi_i always.
    for (std::size_t i = 0; i < 3; ++i) {
        Candidate c;
        c.params.weights = {0.0, 0.0, 0.0};
        c.params.weights[i] = 2.0;
        c.params.bloch_lengths[i] = 0.0;
        c.success = obj.priors()[i];
        ++evals;
        offer(c);
    }

    // Two-outcome projective measurements that never guess psi_k.
    constexpr std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{1, 2}, {0, 2}, {0, 1}}};
    for (const auto& [i, j] : pairs) {
        const double pi_ = obj.priors()[i], pj = obj.priors()[j];
        const double ti = obj.state_angles()[i], tj = obj.state_angles()[j];
        auto f = [&](double a) { return pi_ * sq(std::cos(a - ti)) + pj * sq(std::sin(a - tj)); };
        const double a = maximize_periodic(f, 1024, 100, evals).first;
        Candidate c;
        c.params.weights = {0.0, 0.0, 0.0};
        c.params.angles = {0.0, 0.0, 0.0};
        c.params.weights[i] = 1.0;
        c.params.weights[j] = 1.0;
        c.params.angles[i] = wrap_pi(a);
        c.params.angles[j] = wrap_pi(a + kPi / 2.0);
        c.success = obj.value(c.params);
        offer(c);
    }

    // Full three-outcome family on an angle grid.
    const std::size_t n = opts.grid_n;
    const double h = kPi / static_cast<double>(n);
    Candidate grid_best;
    for (std::size_t i0 = 0; i0 < n; ++i0)
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                const std::array<double, 3> x{h * static_cast<double>(i0), h * static_cast<double>(i1),
                                              h * static_cast<double>(i2)};
                Candidate c;
                c.success = obj.at(x, &c.params);
                ++evals;
                if (c.success > grid_best.success) grid_best = c;
            }

    if (std::isfinite(grid_best.success)) {
        offer(pattern_search(obj, grid_best.params.angles, h, opts.refine_iters, evals));
        offer(grid_best);
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(0.0, kPi);
    for (std::size_t r = 0; r < opts.restarts; ++r) {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            const std::array<double, 3> x{unif(rng), unif(rng), unif(rng)};
            ++evals;
            if (!params_from_angles(x)) continue;
            offer(pattern_search(obj, x, 4.0 * h, opts.refine_iters, evals));
            break;
        }
    }

    result.success = std::clamp(best.success, 0.0, 1.0);
    result.params = best.params;
    return result;
}

}  // namespace mesd::oracle

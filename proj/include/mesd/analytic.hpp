// analytic.hpp: closed-form success probabilities for two-state and mirror-symmetric
// three-state minimum-error discrimination, in quantum theory and under
// preparation noncontextuality.

#pragma once

#include "mesd/qcore.hpp"

#include <array>
#include <stdexcept>

namespace mesd {

/// Raised when a formula is evaluated at a point where its denominator vanishes.
class DegenerateEvaluation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// gap > kAdvantageThreshold counts as a contextual advantage.
inline constexpr double kAdvantageThreshold = 1e-12;

/// States cos(t)|0> + sin(t)|1>, cos(t)|0> - sin(t)|1>, |0> with priors p, p, 1 - 2p.
class MirrorEnsemble {
public:
    /// Requires 0 <= theta <= pi/2 and 0 <= prior_p <= 1/2.
    MirrorEnsemble(double theta, double prior_p);

    double theta() const noexcept { return theta_; }
    double prior_p() const noexcept { return prior_p_; }

    std::array<PureState, 3> states() const;
    std::array<double, 3> priors() const noexcept { return {prior_p_, prior_p_, 1.0 - 2.0 * prior_p_}; }

    double c12() const;  // cos^2(2 theta)
    double c13() const;  // cos^2(theta)

private:
    double theta_;
    double prior_p_;
};

/// Two hypotheses with priors p(psi1) = p, p(psi2) = 1 - p and confusability c.
struct TwoStateScenario {
    double prior_p;
    double confusability;

    /// Throws DomainError unless both fields are in [0, 1].
    static TwoStateScenario make(double prior_p, double confusability);
};

struct BoundPair {
    double quantum;
    double noncontextual;
    double gap;

    bool advantage() const noexcept { return gap > kAdvantageThreshold; }
};

BoundPair make_bound_pair(double quantum, double noncontextual);

double helstrom_two(const TwoStateScenario& s);
double nc_two_bound(const TwoStateScenario& s);

/// p*(theta) = 1 / (2 + cos(theta)(cos(theta) + sin(theta))). Domain [0, pi/2].
double threshold_prior(double theta);

enum class QuantumBranch { high_prior, low_prior };

/// high_prior iff p >= p*(theta).
QuantumBranch quantum_three_branch(const MirrorEnsemble& e);

/// p (1 + sin 2theta), the optimum when p >= p*(theta).
double quantum_three_high(double theta, double p);

/// (1-2p)(p sin^2 + 1 - 2p - p cos^2) / (1 - 2p - p cos^2), the optimum when p <= p*(theta).
/// Throws DegenerateEvaluation if the denominator is <= 1e-12.
double quantum_three_low(double theta, double p);

double quantum_three(const MirrorEnsemble& e);

/// 1 - p c12 - p c13
double nc_three_low(double theta, double p);
/// 1 - p c12 - (1 - 2p) c13
double nc_three_high(double theta, double p);

/// low branch for p <= 1/3, high branch above.
double nc_three_bound(const MirrorEnsemble& e);

BoundPair advantage_two(const TwoStateScenario& s);
BoundPair advantage_three(const MirrorEnsemble& e);

}  // namespace mesd

#include "mesd/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mesd {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_theta(double theta, const char* who) {
    if (!(theta >= 0.0 && theta <= kHalfPi))
        throw DomainError(std::string(who) + ": theta must lie in [0, pi/2]");
}

void require_mirror_prior(double p, const char* who) {
    if (!(p >= 0.0 && p <= 0.5))
        throw DomainError(std::string(who) + ": prior must lie in [0, 1/2]");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double sq(double x) { return x * x; }

}  // namespace

MirrorEnsemble::MirrorEnsemble(double theta, double prior_p) : theta_(theta), prior_p_(prior_p) {
    require_theta(theta, "MirrorEnsemble");
    require_mirror_prior(prior_p, "MirrorEnsemble");
}

std::array<PureState, 3> MirrorEnsemble::states() const {
    return {make_state(theta_), make_state(-theta_), make_state(0.0)};
}

double MirrorEnsemble::c12() const { return sq(std::cos(2.0 * theta_)); }
double MirrorEnsemble::c13() const { return sq(std::cos(theta_)); }

TwoStateScenario TwoStateScenario::make(double prior_p, double confusability) {
    if (!(prior_p >= 0.0 && prior_p <= 1.0)) throw DomainError("prior must lie in [0, 1]");
    if (!(confusability >= 0.0 && confusability <= 1.0))
        throw DomainError("confusability must lie in [0, 1]");
    return {prior_p, confusability};
}

BoundPair make_bound_pair(double quantum, double noncontextual) {
    return {quantum, noncontextual, quantum - noncontextual};
}

double helstrom_two(const TwoStateScenario& s) {
    const double p = s.prior_p;
    const double radicand = std::max(0.0, 1.0 - 4.0 * p * (1.0 - p) * s.confusability);
    return clamp01(0.5 * (1.0 + std::sqrt(radicand)));
}

double nc_two_bound(const TwoStateScenario& s) {
    const double pmin = s.prior_p <= 0.5 ? s.prior_p : 1.0 - s.prior_p;
    return clamp01(1.0 - pmin * s.confusability);
}

double threshold_prior(double theta) {
    require_theta(theta, "threshold_prior");
    const double c = std::cos(theta);
    return 1.0 / (2.0 + c * (c + std::sin(theta)));
}

QuantumBranch quantum_three_branch(const MirrorEnsemble& e) {
    return e.prior_p() >= threshold_prior(e.theta()) ? QuantumBranch::high_prior
                                                     : QuantumBranch::low_prior;
}

double quantum_three_high(double theta, double p) {
    return p * (1.0 + std::sin(2.0 * theta));
}

double quantum_three_low(double theta, double p) {
    const double c2 = sq(std::cos(theta));
    const double s2 = sq(std::sin(theta));
    const double q = 1.0 - 2.0 * p;
    const double denom = q - p * c2;
    if (denom <= 1e-12)
        throw DegenerateEvaluation("quantum_three: low-prior branch denominator vanishes");
    return q * (p * s2 + q - p * c2) / denom;
}

double quantum_three(const MirrorEnsemble& e) {
    const double v = quantum_three_branch(e) == QuantumBranch::high_prior
                         ? quantum_three_high(e.theta(), e.prior_p())
                         : quantum_three_low(e.theta(), e.prior_p());
    return clamp01(v);
}

double nc_three_low(double theta, double p) {
    return 1.0 - p * sq(std::cos(2.0 * theta)) - p * sq(std::cos(theta));
}

double nc_three_high(double theta, double p) {
    return 1.0 - p * sq(std::cos(2.0 * theta)) - (1.0 - 2.0 * p) * sq(std::cos(theta));
}

double nc_three_bound(const MirrorEnsemble& e) {
    const double v = e.prior_p() <= 1.0 / 3.0 ? nc_three_low(e.theta(), e.prior_p())
                                              : nc_three_high(e.theta(), e.prior_p());
    return clamp01(v);
}

BoundPair advantage_two(const TwoStateScenario& s) {
    return make_bound_pair(helstrom_two(s), nc_two_bound(s));
}

BoundPair advantage_three(const MirrorEnsemble& e) {
    return make_bound_pair(quantum_three(e), nc_three_bound(e));
}

}  // namespace mesd

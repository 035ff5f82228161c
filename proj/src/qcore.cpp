#include "mesd/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mesd {

namespace {

double normalize_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;  // fmod rounding at the upper edge
    return r;
}

}  // namespace

PureState make_state(double angle) {
    if (!std::isfinite(angle)) throw DomainError("make_state: angle must be finite");
    // Amplitudes come from the raw angle so that e.g. -x and x stay exact mirrors.
    return PureState(normalize_angle(angle), Eigen::Vector2d(std::cos(angle), std::sin(angle)));
}

Matrix2 PureState::projector() const {
    const Eigen::Vector2cd k = ket();
    return k * k.adjoint();
}

PureState orthogonal(const PureState& s) {
    return make_state(s.angle() + std::numbers::pi / 2.0);
}

double confusability(const PureState& a, const PureState& b) {
    const double ip = a.amplitudes().dot(b.amplitudes());
    return std::clamp(ip * ip, 0.0, 1.0);
}

PureState mirror_reflect(const PureState& s) {
    return make_state(-s.angle());
}

std::optional<std::string> check_effect(const Effect& e, double tol) {
    const Matrix2& m = e.matrix;
    if (!m.allFinite()) return "non-finite effect";
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return "non-Hermitian effect";
    Eigen::SelfAdjointEigenSolver<Matrix2> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) return "non-positive effect";
    return std::nullopt;
}

double born_probability(const PureState& state, const Effect& effect) {
    if (auto err = check_effect(effect)) throw DomainError("born_probability: " + *err);
    const Eigen::Vector2cd k = state.ket();
    const double p = (k.adjoint() * effect.matrix * k)(0, 0).real();
    if (p < -kExactTol || p > 1.0 + kExactTol)
        throw DomainError("born_probability: effect exceeds identity");
    return std::clamp(p, 0.0, 1.0);
}

Povm validate_povm(std::vector<Effect> effects, std::vector<std::string> labels) {
    if (effects.empty()) throw DomainError("validate_povm: empty effect list");
    if (labels.empty()) {
        for (std::size_t k = 0; k < effects.size(); ++k) labels.push_back(std::to_string(k));
    }
    if (labels.size() != effects.size())
        throw DomainError("validate_povm: one label per effect required");

    Matrix2 sum = Matrix2::Zero();
    for (const auto& e : effects) {
        if (auto err = check_effect(e)) throw DomainError(*err);
        sum += e.matrix;
    }
    if ((sum - Matrix2::Identity()).cwiseAbs().maxCoeff() > kNumericTol)
        throw DomainError("incomplete POVM");

    Povm povm;
    povm.effects_ = std::move(effects);
    povm.labels_ = std::move(labels);
    return povm;
}

PriorDistribution::PriorDistribution(std::vector<double> probabilities)
    : probs_(std::move(probabilities)) {
    if (probs_.empty()) throw DomainError("prior distribution: empty");
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("prior distribution: entry outside [0, 1]");
        total += p;
    }
    if (std::abs(total - 1.0) > kExactTol) throw DomainError("prior distribution: entries must sum to 1");
}

}  // namespace mesd

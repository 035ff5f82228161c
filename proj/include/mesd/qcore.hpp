// qcore.hpp: qubit states on the real great circle, effects, POVMs and the Born rule

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mesd {

using Matrix2 = Eigen::Matrix2cd;

/// Raised when an input lies outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kExactTol = 1e-12;     // analytic constructions
inline constexpr double kNumericTol = 1e-9;    // sums produced by optimization

/// Qubit pure state cos(a)|0> + sin(a)|1>, angle normalized into [0, 2pi).
class PureState {
public:
    double angle() const noexcept { return angle_; }
    Eigen::Vector2d amplitudes() const noexcept { return amps_; }
    Eigen::Vector2cd ket() const { return amps_.cast<std::complex<double>>(); }
    Matrix2 projector() const;

private:
    friend PureState make_state(double angle);
    PureState(double angle, Eigen::Vector2d amps) : angle_(angle), amps_(amps) {}

    double angle_;
    Eigen::Vector2d amps_;
};

PureState make_state(double angle);

/// The state orthogonal to `s` in the plane (angle + pi/2).
PureState orthogonal(const PureState& s);

/// |<a|b>|^2
double confusability(const PureState& a, const PureState& b);

/// T|0> = |0>, T|1> = -|1>.
PureState mirror_reflect(const PureState& s);

/// A 2x2 measurement effect. Holds any matrix; `check_effect` reports whether it is
/// Hermitian and positive semidefinite.
struct Effect {
    Matrix2 matrix = Matrix2::Zero();

    static Effect projector(const PureState& s) { return {s.projector()}; }
    static Effect scaled_identity(double w) { return {w * Matrix2::Identity()}; }
};

/// Empty when `e` is a valid effect; otherwise a short reason.
std::optional<std::string> check_effect(const Effect& e, double tol = kExactTol);

/// Tr[|psi><psi| E], clamped to [0, 1]. Throws DomainError for an invalid effect.
double born_probability(const PureState& state, const Effect& effect);

class Povm {
public:
    std::span<const Effect> effects() const noexcept { return effects_; }
    std::span<const std::string> labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return effects_.size(); }
    const Effect& operator[](std::size_t k) const { return effects_.at(k); }

private:
    friend Povm validate_povm(std::vector<Effect>, std::vector<std::string>);
    std::vector<Effect> effects_;
    std::vector<std::string> labels_;
};

/// Checks every effect ("non-positive effect") and then completeness ("incomplete POVM").
/// Labels default to "0", "1", ... when not given.
Povm validate_povm(std::vector<Effect> effects, std::vector<std::string> labels = {});

class PriorDistribution {
public:
    explicit PriorDistribution(std::vector<double> probabilities);

    std::span<const double> probabilities() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_.at(i); }

private:
    std::vector<double> probs_;
};

}  // namespace mesd

// ontic.hpp: finite ontological models. Preparations induce distributions mu(lambda|psi_i)
// over a discrete ontic space; the best guess of the preparation given lambda defines the
// model's discrimination success, which is checked against the noncontextual bounds.

#pragma once

#include "mesd/qcore.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace mesd::ontic {

/// Row i of `distributions()` is mu(.|psi_i).
class FiniteOnticModel {
public:
    FiniteOnticModel(Eigen::MatrixXd distributions, PriorDistribution priors);

    std::size_t num_lambdas() const noexcept { return static_cast<std::size_t>(mu_.cols()); }
    std::size_t num_preparations() const noexcept { return static_cast<std::size_t>(mu_.rows()); }
    const Eigen::MatrixXd& distributions() const noexcept { return mu_; }
    const PriorDistribution& priors() const noexcept { return priors_; }

    /// p_i mu(lambda|psi_i), one row per preparation.
    Eigen::MatrixXd weighted() const;

private:
    Eigen::MatrixXd mu_;
    PriorDistribution priors_;
};

/// Entry (k, lambda) is xi(k|lambda); each column sums to 1.
class ResponseFunction {
public:
    explicit ResponseFunction(Eigen::MatrixXd values);

    std::size_t num_outcomes() const noexcept { return static_cast<std::size_t>(xi_.rows()); }
    std::size_t num_lambdas() const noexcept { return static_cast<std::size_t>(xi_.cols()); }
    const Eigen::MatrixXd& values() const noexcept { return xi_; }

private:
    Eigen::MatrixXd xi_;
};

/// sum_lambda mu(lambda|psi_i) xi(k|lambda)
double operational_probability(const FiniteOnticModel& model, std::size_t prep_index,
                               const ResponseFunction& response, std::size_t outcome);

/// sum_lambda max_i p_i mu(lambda|psi_i)
double ontic_success(const FiniteOnticModel& model);

/// The same quantity through Bayesian inversion: sum_lambda p(lambda) max_i p(psi_i|lambda).
double ontic_success_posterior(const FiniteOnticModel& model);

/// sum_lambda min(mu(lambda|psi_i), mu(lambda|psi_j))
double min_overlap(const FiniteOnticModel& model, std::size_t i, std::size_t j);

struct TwoStateBoundReport {
    double success;
    double overlap;
    double bound;  // 1 - min(p1, p2) * overlap
    bool pass;
};

TwoStateBoundReport check_two_state_bound(const FiniteOnticModel& model);

struct ThreeStateBoundReport {
    double success;
    double overlap12;
    double overlap13;
    double bound;          // 1 - min(p1,p2) overlap12 - min(p1,p3) overlap13
    double decomposition;  // 1 - sum_{i<j} sum min(w_i, w_j) + sum min(w_1, w_2, w_3)
    bool pass;
    bool identity_holds;  // |success - decomposition| <= 1e-12
};

ThreeStateBoundReport check_three_state_bound(const FiniteOnticModel& model);

/// True iff (mu1 + mu1bar)/2 and (mu2 + mu2bar)/2 agree entrywise within tol.
bool check_mixing_constraint(std::span<const double> mu1, std::span<const double> mu1bar,
                             std::span<const double> mu2, std::span<const double> mu2bar,
                             double tol = 1e-9);

/// Random model for property testing. Rows and priors are normalized Gamma(1) draws; with
/// probability `sparsity` an entry is zeroed first so supports vary.
FiniteOnticModel random_model(std::mt19937_64& rng, std::size_t num_preparations,
                              std::size_t num_lambdas, double sparsity = 0.25);

/// Priors (p, p, 1 - 2p) with p drawn uniformly from [0, 1/2].
FiniteOnticModel random_mirror_prior_model(std::mt19937_64& rng, std::size_t num_lambdas,
                                           double sparsity = 0.25);

struct BatchSummary {
    std::size_t models = 0;  // per preparation count
    std::size_t two_state_pass = 0;
    std::size_t three_state_pass = 0;
    std::size_t identity_pass = 0;   // max/min decomposition
    std::size_t posterior_pass = 0;  // joint and posterior forms agree (both model sizes)
    double worst_two_slack = 0.0;    // max(success - bound), <= 0 when all pass
    double worst_three_slack = 0.0;
    double worst_identity_error = 0.0;

    bool all_pass() const noexcept {
        return two_state_pass == models && three_state_pass == models && identity_pass == models &&
               posterior_pass == 2 * models;
    }
};

/// Draws `num_models` two-preparation and `num_models` three-preparation models with |Lambda|
/// uniform in [2, max_lambdas]. Model k uses its own generator seeded from (seed, k); odd k
/// three-preparation models use priors (p, p, 1 - 2p).
BatchSummary run_bound_batch(std::size_t num_models, std::uint64_t seed, std::size_t max_lambdas = 32);

}  // namespace mesd::ontic

#include "mesd/ontic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mesd::ontic {

namespace {

void require_distribution_rows(const Eigen::MatrixXd& m, const char* who) {
    if (m.rows() == 0 || m.cols() == 0) throw DomainError(std::string(who) + ": empty matrix");
    if (!m.allFinite()) throw DomainError(std::string(who) + ": non-finite entry");
    if (m.minCoeff() < 0.0) throw DomainError(std::string(who) + ": negative entry");
}

std::vector<double> normalized_draw(std::mt19937_64& rng, std::size_t n, double sparsity) {
    std::gamma_distribution<double> gamma(1.0, 1.0);
    std::bernoulli_distribution drop(sparsity);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> v(n);
    double total = 0.0;
    for (auto& x : v) {
        x = drop(rng) ? 0.0 : gamma(rng);
        total += x;
    }
    if (total <= 0.0) {
        v[pick(rng)] = 1.0;
        return v;
    }
    for (auto& x : v) x /= total;
    return v;
}

}  // namespace

FiniteOnticModel::FiniteOnticModel(Eigen::MatrixXd distributions, PriorDistribution priors)
    : mu_(std::move(distributions)), priors_(std::move(priors)) {
    require_distribution_rows(mu_, "FiniteOnticModel");
    if (priors_.size() != num_preparations())
        throw DomainError("FiniteOnticModel: one prior per preparation required");
    for (Eigen::Index i = 0; i < mu_.rows(); ++i)
        if (std::abs(mu_.row(i).sum() - 1.0) > kExactTol)
            throw DomainError("FiniteOnticModel: distribution row does not sum to 1");
}

Eigen::MatrixXd FiniteOnticModel::weighted() const {
    Eigen::MatrixXd w = mu_;
    for (Eigen::Index i = 0; i < w.rows(); ++i) w.row(i) *= priors_[static_cast<std::size_t>(i)];
    return w;
}

ResponseFunction::ResponseFunction(Eigen::MatrixXd values) : xi_(std::move(values)) {
    require_distribution_rows(xi_, "ResponseFunction");
    if (xi_.maxCoeff() > 1.0) throw DomainError("ResponseFunction: entry above 1");
    for (Eigen::Index l = 0; l < xi_.cols(); ++l)
        if (std::abs(xi_.col(l).sum() - 1.0) > kExactTol)
            throw DomainError("ResponseFunction: outcome probabilities do not sum to 1");
}

double operational_probability(const FiniteOnticModel& model, std::size_t prep_index,
                               const ResponseFunction& response, std::size_t outcome) {
    if (response.num_lambdas() != model.num_lambdas())
        throw DomainError("operational_probability: ontic space dimensions differ");
    if (prep_index >= model.num_preparations() || outcome >= response.num_outcomes())
        throw DomainError("operational_probability: index out of range");
    const auto i = static_cast<Eigen::Index>(prep_index);
    const auto k = static_cast<Eigen::Index>(outcome);
    return std::clamp(model.distributions().row(i).dot(response.values().row(k)), 0.0, 1.0);
}

double ontic_success(const FiniteOnticModel& model) {
    return model.weighted().colwise().maxCoeff().sum();
}

double ontic_success_posterior(const FiniteOnticModel& model) {
    const Eigen::MatrixXd w = model.weighted();
    double s = 0.0;
    for (Eigen::Index l = 0; l < w.cols(); ++l) {
        const double p_lambda = w.col(l).sum();
        if (p_lambda <= 0.0) continue;
        s += p_lambda * (w.col(l) / p_lambda).maxCoeff();
    }
    return s;
}

double min_overlap(const FiniteOnticModel& model, std::size_t i, std::size_t j) {
    const std::size_t n = model.num_preparations();
    if (i >= n || j >= n) throw DomainError("min_overlap: index out of range");
    if (i == j) throw DomainError("min_overlap: indices must differ");
    const auto& mu = model.distributions();
    return mu.row(static_cast<Eigen::Index>(i)).cwiseMin(mu.row(static_cast<Eigen::Index>(j))).sum();
}

TwoStateBoundReport check_two_state_bound(const FiniteOnticModel& model) {
    if (model.num_preparations() != 2)
        throw DomainError("check_two_state_bound: exactly two preparations required");
    TwoStateBoundReport r{};
    r.success = ontic_success(model);
    r.overlap = min_overlap(model, 0, 1);
    r.bound = 1.0 - std::min(model.priors()[0], model.priors()[1]) * r.overlap;
    r.pass = r.success <= r.bound + kExactTol;
    return r;
}

ThreeStateBoundReport check_three_state_bound(const FiniteOnticModel& model) {
    if (model.num_preparations() != 3)
        throw DomainError("check_three_state_bound: exactly three preparations required");
    const auto& p = model.priors();
    const Eigen::MatrixXd w = model.weighted();

    ThreeStateBoundReport r{};
    r.success = ontic_success(model);
    r.overlap12 = min_overlap(model, 0, 1);
    r.overlap13 = min_overlap(model, 0, 2);
    r.bound = 1.0 - std::min(p[0], p[1]) * r.overlap12 - std::min(p[0], p[2]) * r.overlap13;

    const double m12 = w.row(0).cwiseMin(w.row(1)).sum();
    const double m13 = w.row(0).cwiseMin(w.row(2)).sum();
    const double m23 = w.row(1).cwiseMin(w.row(2)).sum();
    const double m123 = w.colwise().minCoeff().sum();
    r.decomposition = 1.0 - m12 - m13 - m23 + m123;

    r.pass = r.success <= r.bound + kExactTol;
    r.identity_holds = std::abs(r.success - r.decomposition) <= kExactTol;
    return r;
}

bool check_mixing_constraint(std::span<const double> mu1, std::span<const double> mu1bar,
                             std::span<const double> mu2, std::span<const double> mu2bar, double tol) {
    const std::size_t n = mu1.size();
    if (mu1bar.size() != n || mu2.size() != n || mu2bar.size() != n)
        throw DomainError("check_mixing_constraint: rows differ in length");
    for (std::size_t l = 0; l < n; ++l)
        if (std::abs(0.5 * (mu1[l] + mu1bar[l]) - 0.5 * (mu2[l] + mu2bar[l])) > tol) return false;
    return true;
}

FiniteOnticModel random_model(std::mt19937_64& rng, std::size_t num_preparations,
                              std::size_t num_lambdas, double sparsity) {
    if (num_preparations == 0 || num_lambdas == 0) throw DomainError("random_model: empty model");
    Eigen::MatrixXd mu(static_cast<Eigen::Index>(num_preparations), static_cast<Eigen::Index>(num_lambdas));
    for (Eigen::Index i = 0; i < mu.rows(); ++i) {
        const auto row = normalized_draw(rng, num_lambdas, sparsity);
        mu.row(i) = Eigen::Map<const Eigen::RowVectorXd>(row.data(), mu.cols());
    }
    return {std::move(mu), PriorDistribution(normalized_draw(rng, num_preparations, 0.0))};
}

FiniteOnticModel random_mirror_prior_model(std::mt19937_64& rng, std::size_t num_lambdas, double sparsity) {
    FiniteOnticModel base = random_model(rng, 3, num_lambdas, sparsity);
    std::uniform_real_distribution<double> unif(0.0, 0.5);
    const double p = unif(rng);
    return {base.distributions(), PriorDistribution({p, p, 1.0 - 2.0 * p})};
}

BatchSummary run_bound_batch(std::size_t num_models, std::uint64_t seed, std::size_t max_lambdas) {
    if (max_lambdas < 2) throw DomainError("run_bound_batch: max_lambdas must be >= 2");
    BatchSummary s;
    s.models = num_models;
    s.worst_two_slack = -std::numeric_limits<double>::infinity();
    s.worst_three_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < num_models; ++k) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<std::size_t> lambdas(2, max_lambdas);

        const FiniteOnticModel two = random_model(rng, 2, lambdas(rng));
        const auto r2 = check_two_state_bound(two);
        s.two_state_pass += r2.pass;
        s.worst_two_slack = std::max(s.worst_two_slack, r2.success - r2.bound);

        const FiniteOnticModel three =
            k % 2 == 1 ? random_mirror_prior_model(rng, lambdas(rng)) : random_model(rng, 3, lambdas(rng));
        const auto r3 = check_three_state_bound(three);
        s.three_state_pass += r3.pass;
        s.identity_pass += r3.identity_holds;
        s.worst_three_slack = std::max(s.worst_three_slack, r3.success - r3.bound);
        s.worst_identity_error = std::max(s.worst_identity_error, std::abs(r3.success - r3.decomposition));

        for (const auto* m : {&two, &three})
            s.posterior_pass += std::abs(ontic_success(*m) - ontic_success_posterior(*m)) <= kExactTol;
    }
    return s;
}

}  // namespace mesd::ontic

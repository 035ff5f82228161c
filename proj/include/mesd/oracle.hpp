// oracle.hpp: brute-force maximization of the discrimination success functional over
// in-plane measurements. Independent of the closed forms in analytic.hpp; used to
// check them.

#pragma once

#include "mesd/analytic.hpp"
#include "mesd/qcore.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <variant>

namespace mesd::oracle {

/// Projective two-outcome measurement {P(angle), I - P(angle)}; the first outcome guesses psi1.
struct MeasurementParams2 {
    double angle = 0.0;  // [0, 2pi)
};

/// Three-outcome in-plane POVM, effect i = (a_i / 2)(I + r_i (cos 2alpha_i Z + sin 2alpha_i X)).
/// With r_i = 1 this is a_i |phi(alpha_i)><phi(alpha_i)|; r_i = 0 gives a multiple of identity.
/// Outcome i guesses psi_i.
struct MeasurementParams3 {
    std::array<double, 3> weights{};
    std::array<double, 3> angles{};
    std::array<double, 3> bloch_lengths{1.0, 1.0, 1.0};

    std::array<Effect, 3> effects() const;
};

/// Empty when `m` satisfies completeness and positivity within `tol`.
std::optional<std::string> check_params(const MeasurementParams3& m, double tol = kNumericTol);

/// Solves the completeness equations for the weights of rank-one effects at `angles`.
/// Empty if the system is singular or any weight is negative.
std::optional<MeasurementParams3> params_from_angles(const std::array<double, 3>& angles);

struct OracleResult {
    double success = 0.0;
    std::variant<MeasurementParams2, MeasurementParams3> params;
    std::size_t evaluations = 0;
};

/// p <psi1|E1|psi1> + (1 - p) <psi2|E2|psi2>, E1 the projector at m.angle.
double success_two(const PureState& s1, const PureState& s2, double p, const MeasurementParams2& m);

/// Grid of grid_n projector angles over [0, pi), then golden-section refinement.
OracleResult optimize_two(const PureState& s1, const PureState& s2, double p,
                          std::size_t grid_n = 1024, std::size_t refine_iters = 100);

/// sum_i p_i <psi_i|pi_i|psi_i>. Throws DomainError if `m` is not a valid POVM.
double success_three(const MirrorEnsemble& ensemble, const MeasurementParams3& m);

struct ThreeOptions {
    std::size_t grid_n = 64;         // per angle
    std::size_t refine_iters = 200;  // pattern-search sweeps per start
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
};

/// Maximizes success_three over MeasurementParams3: an angle grid, pattern-search polish from
/// the best grid point and seeded random starts, plus explicit enumeration of the two-outcome
/// projective and single-outcome (identity) measurements.
OracleResult optimize_three(const MirrorEnsemble& ensemble, const ThreeOptions& opts = {});

}  // namespace mesd::oracle

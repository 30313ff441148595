#pragma once

#include "prem/complex.hpp"
#include "prem/lift.hpp"
#include "prem/rational.hpp"
#include "prem/subdivision.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prem {

/// Squared Lipschitz bound of g in the standard metric on K (vertex v at e_v):
/// max over simplices of K* of dim^2 * spread^2 / h_min^2.
Rational lipschitz_bound_sq(const Lift& g);

/// r^2 = d^2 / (4 Lambda^2); nullopt stands for an infinite radius (Lambda = 0).
std::optional<Rational> stage_radius_sq(const Rational& lipschitz_sq, const Rational& d_sq);

/// Identified-pair distances of g at one stage.
/// Stage 0: distinct vertices of K with equal image.
/// Stage 1: pairs of points at equal parameter t in [margin, 1 - margin] on two
/// edges of K over the same edge of L (parameter along the target edge).
struct StageGap {
    bool skip = true;          // no identified pairs
    Rational max_sq = 0;       // sup of ||g(x) - g(y)||^2
    Rational min_sq = 0;       // separation: min of ||g(x) - g(y)||^2
    std::optional<std::pair<BaryPoint, BaryPoint>> argmin;
};
StageGap stage_gap(const SimplicialMap& f, const Lift& g, int stage, const Rational& margin = 0);

struct StageTrace {
    int stage = 0;
    bool skipped = false;
    Rational d_sq = 0;
    Rational separation_sq = 0;
    Rational lipschitz_sq = 0;
    std::optional<Rational> radius_sq;
    long refinement = 1;  // stage 0: 2^t bisection factor, stage 1: grid factor M
    std::size_t vertices = 0;
    std::size_t cells = 0;
};

struct PlifyResult {
    Lift lift;  // linear on K_n'
    EmbeddingCertificate certificate;
    std::vector<StageTrace> stages;
    std::size_t hull_pairs_checked = 0;
    bool hulls_disjoint = false;
    bool stars_preserved = false;
    bool vertex_agreement = false;
};

/// Linearizes an injective lift along a subdivision cascade. Supported for
/// dim K <= 1 (PreconditionError "UnsupportedDimension" otherwise).
/// Errors: PreconditionError "InputNotInjective"; ContractViolation when the
/// final certificate fails.
PlifyResult plify_lift(const SimplicialMap& f, const Lift& g, int jobs = 1);

/// g at a point of |K| given in barycentric coordinates over K vertices.
QVec evaluate_lift(const Lift& g, const BaryPoint& x);

}  // namespace prem

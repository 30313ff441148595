#pragma once

#include "prem/rational.hpp"

#include <optional>
#include <vector>

namespace prem {

/// Dense matrix over Q, row-major as a vector of rows.
using QMatrix = std::vector<QVec>;

/// Rank by exact Gaussian elimination.
int rank(QMatrix m);

/// Some solution of A x = b, or nullopt if the system is inconsistent.
std::optional<QVec> solve(const QMatrix& a, const QVec& b);

bool affinely_independent(const std::vector<QVec>& points);
bool linearly_independent(const std::vector<QVec>& vectors);

/// Squared Euclidean distance from p to the affine hull of pts (pts non-empty).
Rational dist_sq_to_affine_hull(const QVec& p, const std::vector<QVec>& pts);

/// Feasibility of { x >= 0 : A x = b } by phase-one simplex with Bland's rule.
/// Returns a feasible point or nullopt.
std::optional<QVec> lp_feasible_point(const QMatrix& a, const QVec& b);

/// Convex combination weights (lambda, mu) with sum lambda_i P_i = sum mu_j Q_j,
/// or nullopt when conv(P) and conv(Q) are disjoint.
struct HullIntersection {
    QVec lambda;
    QVec mu;
    QVec point;
};
std::optional<HullIntersection> hulls_intersect(const std::vector<QVec>& p, const std::vector<QVec>& q);

/// True iff the origin lies in conv(points).
bool origin_in_hull(const std::vector<QVec>& points);

}  // namespace prem

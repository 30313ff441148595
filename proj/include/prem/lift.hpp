#pragma once

#include "prem/complex.hpp"
#include "prem/double_point.hpp"
#include "prem/obstruction.hpp"
#include "prem/rational.hpp"
#include "prem/subdivision.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prem {

/// g: |K| -> Q^k, linear on the simplices of a subdivision K* of K.
struct Lift {
    SubdivisionRecord record;  // K -> K*
    int k = 1;
    std::vector<QVec> values;  // per K* vertex
};

struct EmbeddingCertificate {
    bool verdict = false;
    std::size_t simplices_checked = 0;
    std::size_t pairs_total = 0;   // unordered pairs of distinct maximal simplices
    std::size_t pairs_pruned = 0;  // image carriers share no target vertex
    std::size_t pairs_solved = 0;  // decided by exact LP
    std::vector<std::pair<int, int>> solved_pairs;  // indices into K* maximal simplices
    std::optional<Simplex> degenerate_simplex;      // f x g not injective on one simplex
    std::optional<std::pair<Simplex, Simplex>> counterexample;
};

/// Exact decision of injectivity of f x g on |K|. jobs <= 0 uses the hardware count.
EmbeddingCertificate verify_embedding(const SimplicialMap& f, const Lift& g, int jobs = 1);

/// Vertex-level evaluator on a complex: image of a point given in barycentric
/// coordinates over the original vertices.
using PointEvaluator = std::function<QVec(const BaryPoint&)>;

struct IsovariantMap {
    std::shared_ptr<const SimplicialComplex> complex;  // A'
    SubdivisionRecord record;                          // A -> A'
    std::vector<int> involution;
    std::vector<bool> fixed;  // vertices in the fixed set
    std::vector<QVec> values;
    int starrings = 0;
    std::size_t certified_simplices = 0;
};

/// Linear map on an equivariant subdivision of A whose zero set is the fixed
/// subcomplex. Simplices missing the fixed set are starred equivariantly at
/// barycenters (values from beta) until every join simplex S*T has 0 outside
/// the hull of the values on T. Q vertices and their values are never changed.
/// Throws PreconditionError "IsovariantPrecondition" or "IsovariantFailure".
IsovariantMap isovariant_pl_approximation(std::shared_ptr<const SimplicialComplex> a, const std::vector<int>& involution,
                                          const std::vector<bool>& fixed, const std::vector<QVec>& beta_at_vertices,
                                          const std::vector<bool>& q_vertices, const PointEvaluator& beta = {},
                                          int max_depth = 6);

/// Optional boundary data: N* (a vertex mask of K), e* on N*.
struct BoundaryData {
    std::vector<bool> in_star;
    std::vector<QVec> values;  // per K vertex; only N* entries are read
};

enum class HomotopyStatus { Certified, Inconclusive };

struct LiftResult {
    Lift lift;
    EmbeddingCertificate certificate;
    HomotopyStatus homotopy = HomotopyStatus::Inconclusive;
    std::size_t homotopy_cells = 0;
    IsovariantMap isovariant;
    int model_subdivisions = 0;
    int retries = 0;
};

/// Closure of the double-point complex, including diagonal vertices (w, w)
/// over fold points. Vertex i is pairs[i].
struct ClosedDoublePoint {
    std::vector<std::pair<int, int>> pairs;
    std::shared_ptr<const SimplicialComplex> complex;
    std::vector<int> involution;
    std::vector<bool> diagonal;
};
ClosedDoublePoint closed_double_point(const SimplicialMap& f);

/// Lift of a simple fold map without triple points. alpha gives a vector in
/// Q^k on each vertex of the double-point model d (pair index order).
/// Errors: PreconditionError "TriplePointsPresent", "NotSimpleFold",
/// "AlphaNotEquivariant", "AlphaBoundaryMismatch", "BoundaryMismatch",
/// "BoundaryNotInjective"; ContractViolation if the retry still fails.
LiftResult construct_lift_3ptfree(const DoublePointComplex& d, const std::vector<QVec>& alpha, int k,
                                  const BoundaryData* boundary = nullptr, int jobs = 1);

/// Model and witness built internally (the witness needs dim of the model < k).
LiftResult construct_lift_3ptfree(const SimplicialMap& f, int k, int jobs = 1);

/// Witness vectors on the model's own vertices (the first vertices of the witness cover).
std::vector<QVec> alpha_on_pairs(const DoublePointComplex& d, const EquivariantSphereWitness& w);

}  // namespace prem

#pragma once

#include "prem/complex.hpp"
#include "prem/double_point.hpp"
#include "prem/rational.hpp"
#include "prem/z2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prem {

enum class Verdict { Exists, NotExists, NecessaryHolds };
enum class Justification { DimensionBelowK, CupPowerNonzero, ManifoldCompleteObstruction, Mod2Only };

std::string to_string(Verdict v);
std::string to_string(Justification j);

/// Equivariant map from the double-point locus to S^{k-1}.
struct ObstructionVerdict {
    Verdict verdict = Verdict::NecessaryHolds;
    Justification justification = Justification::Mod2Only;
    int k = 1;
    int yang_index = 0;
    int quotient_dim = -1;
};

/// Pure, every codimension-one face in exactly two top simplices. The empty complex is not one.
bool is_closed_pseudomanifold(const SimplicialComplex& c);
/// Closed pseudomanifold whose vertex links have the mod-2 homology of S^{dim-1}.
bool has_manifold_certificate(const SimplicialComplex& c);

/// Throws std::invalid_argument when k < 1.
ObstructionVerdict equivariant_map_exists(const QuotientData& q, int k);
ObstructionVerdict equivariant_map_exists(const DoublePointComplex& d, int k);

/// Vertex vectors in Q^k on a (possibly subdivided) copy of the double-point
/// complex, antipodal under the involution and nonvanishing on every simplex.
struct EquivariantSphereWitness {
    int k = 1;
    std::shared_ptr<const SimplicialComplex> cover;
    std::vector<int> involution;
    int subdivisions = 0;
    std::vector<QVec> vectors;  // per cover vertex
    std::size_t certified_simplices = 0;
};

/// Requires dim(cover) < k (PreconditionError "WitnessPrecondition"). Throws
/// ContractViolation naming the simplex if certification keeps failing.
EquivariantSphereWitness construct_equivariant_witness(const DoublePointComplex& d, int k);
/// Antipodality at vertices and 0 outside the hull of every simplex.
bool verify_witness(const EquivariantSphereWitness& w);

struct ParityResult {
    bool well_defined = false;
    int parity = 0;
    std::optional<Simplex> witness_even;  // top simplices of K with differing counts
    std::optional<Simplex> witness_odd;
};

/// Parity of the number of top cells of a component lying over each top
/// simplex of the modelled source complex (side 0: first factor, 1: second).
ParityResult projection_degree_parity(const DoublePointComplex& d, int component, int side);

struct ComponentParity {
    int label = 0;
    bool invariant = false;
    ParityResult first;
    ParityResult second;
};

struct Theorem3Report {
    int n = 0;
    int target_dim = 0;
    bool source_pseudomanifold = false;
    std::vector<int> source_betti;
    int model_subdivisions = 0;
    std::size_t delta_vertices = 0;
    std::size_t delta_cells = 0;
    int num_components = 0;
    std::vector<ComponentParity> components;
    int yang_index = 0;
    ObstructionVerdict verdict;
    bool dimension_hypothesis = false;  // 2(m + k) >= 3(n + 1) with m = dim L, k = n
    bool prem_conclusion = false;
    std::optional<bool> odd_reading_predicts_exists;   // all invariant components odd
    std::optional<bool> even_reading_predicts_exists;  // all invariant components even
    bool odd_reading_consistent = false;
    bool even_reading_consistent = false;
    std::vector<std::string> notes;
};

Theorem3Report theorem3_report(const SimplicialMap& f, int n);

}  // namespace prem

#pragma once

#include "prem/complex.hpp"
#include "prem/subdivision.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace prem {

/// Simplicial model of the double-point locus of f: K -> L.
/// Vertex i is the ordered pair pairs[i] = (u, v), u != v, f(u) = f(v); pairs
/// are sorted lexicographically. A simplex is a set of pairs whose first and
/// second coordinates form disjoint simplices of K with equal image.
struct DoublePointComplex {
    std::shared_ptr<const SimplicialMap> base;  // map actually modelled (after subdivision)
    SubdivisionRecord source_record;            // original K -> base source
    int subdivisions = 0;
    std::vector<std::pair<int, int>> pairs;
    SimplicialComplex complex;
    std::vector<int> involution;  // vertex permutation (u,v) -> (v,u)
    std::vector<int> component;   // vertex -> component label, labels ordered by smallest vertex
    int num_components = 0;

    /// (first-coordinate simplex, second-coordinate simplex) of a cell.
    std::pair<Simplex, Simplex> sides(const Simplex& cell) const;
    std::optional<int> pair_index(int u, int v) const;
};

/// Builds the model for f directly (no star test). Throws PreconditionError
/// "DegenerateMap" when f collapses an edge.
DoublePointComplex double_point_complex(const SimplicialMap& f);

/// Closed stars of every pair of distinct identified vertices are disjoint.
bool check_star_condition(const SimplicialMap& f);

/// double_point_complex on f, or on Sd^j(f) for the least j <= max_subdivisions
/// passing the star condition, where stars may meet at fold-locus vertices. Throws PreconditionError "ModelInvalid" otherwise.
DoublePointComplex double_point_model(const SimplicialMap& f, int max_subdivisions = 2);

struct TriplePointWitness {
    Simplex a, b, c;
};
/// Three pairwise disjoint simplices with one image, highest dimension first.
std::optional<TriplePointWitness> triple_point_witness(const SimplicialMap& f);
inline bool has_triple_points(const SimplicialMap& f) { return triple_point_witness(f).has_value(); }

/// Common faces of two distinct simplices with equal image, sorted by dimension then lexicographically.
std::vector<Simplex> sigma_set(const SimplicialMap& f);

/// No pair (u, v) of the model has v on the fold locus.
bool is_simple_fold(const SimplicialMap& f);

struct DeltaComponent {
    int label = 0;
    std::vector<int> vertices;
    bool invariant = false;
    int partner = -1;  // label of the image component
};
std::vector<DeltaComponent> invariant_components(const DoublePointComplex& d);

}  // namespace prem

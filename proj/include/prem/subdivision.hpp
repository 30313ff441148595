#pragma once

#include "prem/complex.hpp"
#include "prem/rational.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace prem {

/// Sparse barycentric point: (parent vertex, weight) sorted by vertex,
/// weights positive and summing to 1.
using BaryPoint = std::vector<std::pair<int, Rational>>;

Simplex bary_support(const BaryPoint& p);
BaryPoint bary_vertex(int v);
/// Affine combination sum w_i p_i of sparse points (weights need not be positive).
BaryPoint bary_combine(const std::vector<std::pair<Rational, const BaryPoint*>>& terms);

/// A subdivision of `parent` with the position of each child vertex in the
/// parent. The carrier of a child simplex is the union of its vertex supports.
struct SubdivisionRecord {
    std::shared_ptr<const SimplicialComplex> parent;
    std::shared_ptr<const SimplicialComplex> child;
    std::vector<BaryPoint> vertex_coords;

    Simplex carrier(const Simplex& child_simplex) const;
    /// Weights nonnegative, sum 1, every carrier a parent simplex.
    bool sound() const;
    /// Child vertex realized through a parent realization.
    QVec realize(int child_vertex, const GeometricComplex& parent_geom) const;
    GeometricComplex realize(const GeometricComplex& parent_geom) const;
    /// Child simplex containing a parent point, with barycentric weights on its vertices.
    std::optional<std::pair<Simplex, QVec>> locate(const BaryPoint& p) const;
};

SubdivisionRecord identity_subdivision(std::shared_ptr<const SimplicialComplex> c);

/// first: parent -> mid, second: mid -> child. Result: parent -> child.
SubdivisionRecord compose(const SubdivisionRecord& first, const SubdivisionRecord& second);

/// First barycentric subdivision. Child vertex i is the barycenter of the
/// parent simplex at position i in (dimension, lexicographic) order.
SubdivisionRecord barycentric_subdivide(std::shared_ptr<const SimplicialComplex> c);

/// Parent simplex whose barycenter is child vertex i of a barycentric subdivision.
std::vector<Simplex> barycentric_vertex_simplices(const SimplicialComplex& c);

/// Refines every simplex having no vertex in `keep_vertices` until its squared
/// diameter is at most r^2, by repeated longest-edge bisection. Vertices of the
/// full subcomplex spanned by keep_vertices are untouched and retain their
/// indices; new vertices are appended after the original ones.
SubdivisionRecord relative_derived_subdivide(const GeometricComplex& g, const std::vector<bool>& keep_vertices,
                                             const Rational& r);

/// Sd(f): Sd(K) -> Sd(L) for a non-degenerate simplicial f.
/// Vertex permutation induced on barycentric_subdivide(c) by an automorphism t of c.
std::vector<int> subdivide_automorphism(const SimplicialComplex& c, const std::vector<int>& t);

struct SubdividedMap {
    SimplicialMap map;
    SubdivisionRecord source_record;
    SubdivisionRecord target_record;
};
SubdividedMap subdivide_map(const SimplicialMap& f);

/// Semi-linear map K -> L: each source vertex goes to a point of |L|, and the
/// map is affine on every simplex.
struct SemiLinearMap {
    std::shared_ptr<const SimplicialComplex> source;
    std::shared_ptr<const SimplicialComplex> target;
    std::vector<BaryPoint> vertex_images;

    static SemiLinearMap from_simplicial(const SimplicialMap& f);
};

/// Smallest target simplex containing the image of s. Throws std::invalid_argument
/// when the image is not inside a single target simplex.
Simplex carrier_of(const SemiLinearMap& f, const Simplex& s);
/// Carrier of every source simplex, in SimplicialComplex::all_simplices order.
std::vector<Simplex> carrier_map(const SemiLinearMap& f);
/// Equality of carrier maps. Throws std::invalid_argument on mismatched complexes.
bool combinatorially_equivalent(const SemiLinearMap& f, const SemiLinearMap& g);

}  // namespace prem

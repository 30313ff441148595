#pragma once

#include "prem/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace prem {

/// Vertex indices in ascending order. Indices refer to the owning complex's
/// vertex order, which is total and fixed at construction.
using Simplex = std::vector<int>;

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
};

Simplex make_simplex(std::vector<int> vertices);  // sorts, rejects duplicates
bool is_face(const Simplex& face, const Simplex& s);
Simplex simplex_union(const Simplex& a, const Simplex& b);
Simplex simplex_intersection(const Simplex& a, const Simplex& b);
Simplex simplex_difference(const Simplex& a, const Simplex& b);
bool disjoint(const Simplex& a, const Simplex& b);

/// Finite abstract simplicial complex. Immutable after construction.
/// Simplices of each dimension are stored in lexicographic order of their
/// (sorted) vertex indices; that order is the canonical cell basis.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closure of the given simplices. Every named vertex becomes a 0-simplex.
    static SimplicialComplex from_simplices(std::vector<std::string> names, const std::vector<Simplex>& simplices);

    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    int num_vertices() const { return static_cast<int>(names_.size()); }
    std::size_t size() const;
    std::size_t count(int d) const { return d >= 0 && d <= dim() ? by_dim_[d].size() : 0; }

    const std::vector<Simplex>& simplices(int d) const;
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_.at(v); }
    std::optional<int> vertex_index(const std::string& name) const;

    bool contains(const Simplex& s) const;
    /// Position of s within simplices(s.size() - 1), if present.
    std::optional<int> index_of(const Simplex& s) const;

    std::vector<Simplex> maximal_simplices() const;
    /// Every simplex, by dimension then lexicographically.
    std::vector<Simplex> all_simplices() const;

    /// Full subcomplex spanned by the vertices with keep[v] true; vertex
    /// indices are renumbered in order. Returns the old index of each new vertex.
    std::pair<SimplicialComplex, std::vector<int>> induced(const std::vector<bool>& keep) const;

    /// Vertices adjacent to v (sharing an edge), ascending.
    std::vector<int> neighbours(int v) const;
    /// Simplices containing v.
    std::vector<Simplex> star(int v) const;
    /// Link of a simplex as a list of simplices (not closed under the complex numbering).
    std::vector<Simplex> link(const Simplex& s) const;

    /// Euler characteristic.
    long euler_characteristic() const;

    bool operator==(const SimplicialComplex& o) const { return names_ == o.names_ && by_dim_ == o.by_dim_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> name_index_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index_;

    void rebuild_index();
};

/// Explicit (unclosed) simplex list used for validation of raw input.
struct RawComplex {
    std::vector<std::string> names;
    std::vector<Simplex> simplices;
};

struct ValidationReport {
    std::vector<Simplex> missing_faces;   // closure violations
    std::vector<Simplex> duplicates;
    std::vector<int> orphan_vertices;     // named but in no simplex
    std::vector<int> bad_simplices;       // empty or out-of-range entries (by position)
    int dim = -1;
    bool ok() const { return missing_faces.empty() && duplicates.empty() && orphan_vertices.empty() && bad_simplices.empty(); }
};

ValidationReport validate_complex(const RawComplex& raw);

/// Vertex map between complexes carrying simplices to simplices.
class SimplicialMap {
public:
    SimplicialMap(std::shared_ptr<const SimplicialComplex> source, std::shared_ptr<const SimplicialComplex> target,
                  std::vector<int> vertex_map);

    const SimplicialComplex& source() const { return *source_; }
    const SimplicialComplex& target() const { return *target_; }
    std::shared_ptr<const SimplicialComplex> source_ptr() const { return source_; }
    std::shared_ptr<const SimplicialComplex> target_ptr() const { return target_; }
    int operator()(int v) const { return vmap_[v]; }
    const std::vector<int>& vertex_map() const { return vmap_; }

    Simplex image(const Simplex& s) const;
    /// Injective on every simplex.
    bool is_non_degenerate() const;
    /// First simplex on which the map is not injective, if any.
    std::optional<Simplex> degenerate_witness() const;

private:
    std::shared_ptr<const SimplicialComplex> source_;
    std::shared_ptr<const SimplicialComplex> target_;
    std::vector<int> vmap_;
};

/// Realization of a complex in Q^d; every simplex affinely embedded.
class GeometricComplex {
public:
    GeometricComplex(std::shared_ptr<const SimplicialComplex> complex, std::vector<QVec> coords);

    const SimplicialComplex& complex() const { return *complex_; }
    std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }
    const QVec& coord(int v) const { return coords_.at(v); }
    const std::vector<QVec>& coords() const { return coords_; }
    int ambient_dim() const { return ambient_; }

    std::vector<QVec> points(const Simplex& s) const;

    /// Standard realization: vertex i at the i-th unit vector of Q^n.
    static GeometricComplex standard(std::shared_ptr<const SimplicialComplex> complex);

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    std::vector<QVec> coords_;
    int ambient_ = 0;
};

/// Max squared Euclidean distance between vertices of s. Throws if s is not in G.
Rational simplex_diameter_sq(const GeometricComplex& g, const Simplex& s);

/// Quotient of a complex by the cyclic group generated by a vertex permutation
/// acting simplicially. Orbits are numbered by their smallest member.
struct OrbitQuotient {
    SimplicialComplex complex;
    std::vector<int> orbit_of;           // vertex -> orbit index
    std::vector<int> representative;     // orbit -> smallest vertex
    bool regular = false;                // orbit map is a simplicial covering onto `complex`
};

OrbitQuotient orbit_quotient(const SimplicialComplex& c, const std::vector<int>& generator);

/// True iff the permutation maps simplices to simplices.
bool is_simplicial_automorphism(const SimplicialComplex& c, const std::vector<int>& perm);

}  // namespace prem

#pragma once

#include "prem/complex.hpp"
#include "prem/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prem {

/// Every subset of at most m + 1 points is affinely independent (m = ambient dimension).
bool is_general_position_config(const std::vector<QVec>& points);

/// Linear map K -> R^m given by vertex values.
struct LinearMapToRm {
    std::shared_ptr<const SimplicialComplex> source;
    int m = 1;
    std::vector<QVec> values;
};

struct GPhiReport {
    bool in_g_phi = false;
    bool auto_target = false;           // target triangulated by one enclosing simplex
    std::optional<Simplex> failing;     // target simplex whose fibre configuration is degenerate
    std::size_t target_simplices_checked = 0;
};

/// Membership of f in G(phi): for each simplex s of the target triangulation,
/// the vertices of f^{-1}(s) are in general position in aff(s). Without a
/// target, one m-simplex enclosing all values is used. Throws
/// PreconditionError "CarrierInconsistent" when some simplex of K does not map
/// into a single target simplex, "OutsideTarget" when a value is not covered.
GPhiReport in_G_phi(const LinearMapToRm& f, const GeometricComplex* target = nullptr);

struct StableToRReport {
    bool embeds_all_edges = false;
    bool critical_values_injective = false;
    std::vector<int> critical_vertices;
    std::optional<Simplex> collapsed_edge;
    std::string verdict;  // "stable", "condition (2)/(3) tension", "not stable (degenerate)"
    bool regularity_decided = true;  // false above dimension 2
};

/// Throws std::invalid_argument when m != 1.
StableToRReport stable_to_R_report(const LinearMapToRm& f);

}  // namespace prem

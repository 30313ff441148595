#pragma once

#include "prem/complex.hpp"
#include "prem/lift.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prem {

struct GeneratedExample {
    std::string stem;
    std::shared_ptr<const SimplicialMap> map;
    std::optional<std::vector<QVec>> realization;  // of the map target
    std::map<std::string, std::string> meta;
    // Complex carrying the free action before subdivision, with its generator.
    std::shared_ptr<const SimplicialComplex> base;
    std::vector<int> action;
    std::vector<int> deck;  // generator lifted to the map source
    int subdivisions = 0;
};

/// C_{pq} -> C_q, i -> i mod q. Requires p >= 1, q >= 3.
GeneratedExample gen_cycle_cover(int p, int q);
/// Antipodal quotient of the boundary of the (m+1)-dimensional cross-polytope. Requires m >= 1.
GeneratedExample gen_cross_polytope(int m);
/// C_p * C_p with Z/p acting by rotations (1, q); p = 2 gives the antipodal 3-sphere.
GeneratedExample gen_join_lens(int p, int q);
/// Eight-cycle immersed in the plane with one transverse double point.
GeneratedExample gen_figure_eight();
/// Path x0 - x1 - x2 folded onto one edge.
GeneratedExample gen_fold_path();

/// Dispatches on a generator name; throws PreconditionError "InvalidParameters".
GeneratedExample generate(const std::string& name, const std::vector<int>& params);

/// Writes the example's files into `dir`; returns their paths, map file first.
std::vector<std::filesystem::path> write_example(const GeneratedExample& ex, const std::filesystem::path& dir);

/// Barycentric refinement of g with small alternating offsets at the new vertices,
/// shrunk until verify_embedding accepts. Throws ContractViolation if it never does.
Lift wiggly_refinement(const SimplicialMap& f, const Lift& g, int jobs = 1);

}  // namespace prem

#include "fixtures.hpp"

#include "prem/double_point.hpp"
#include "prem/errors.hpp"
#include "prem/generators.hpp"

#include <doctest.h>

using namespace prem;
using namespace fixtures;

namespace {
SimplicialMap cover(int p, int q) { return *gen_cycle_cover(p, q).map; }
}  // namespace

TEST_CASE("odd cycle cover: two exchanged 9-cycles")
{
    auto d = double_point_complex(cover(3, 3));
    CHECK(d.complex.count(0) == 18);
    CHECK(d.complex.count(1) == 18);
    CHECK(d.num_components == 2);
    auto comps = invariant_components(d);
    REQUIRE(comps.size() == 2);
    CHECK_FALSE(comps[0].invariant);
    CHECK(comps[0].partner == 1);
    CHECK(comps[1].partner == 0);
}

TEST_CASE("even cycle cover: one invariant circle")
{
    auto d = double_point_complex(cover(2, 4));
    CHECK(d.complex.count(0) == 8);
    CHECK(d.complex.count(1) == 8);
    CHECK(d.num_components == 1);
    auto comps = invariant_components(d);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].invariant);
}

TEST_CASE("involution swaps pair coordinates and is free")
{
    auto d = double_point_complex(cover(3, 4));
    for (int v = 0; v < d.complex.num_vertices(); ++v) {
        CHECK(d.involution[v] != v);
        CHECK(d.involution[d.involution[v]] == v);
        CHECK(d.pairs[d.involution[v]] == std::make_pair(d.pairs[v].second, d.pairs[v].first));
        CHECK(d.pair_index(d.pairs[v].first, d.pairs[v].second) == v);
    }
    CHECK(is_simplicial_automorphism(d.complex, d.involution));
    auto [a, b] = d.sides({0, 1});
    CHECK(a.size() == 2);
    CHECK(b.size() == 2);
    CHECK(d.complex.name(0).find('~') != std::string::npos);
}

TEST_CASE("star condition and the double-point model")
{
    CHECK(check_star_condition(cover(3, 3)));
    auto fold = *gen_fold_path().map;
    CHECK_FALSE(check_star_condition(fold));
    auto d = double_point_model(fold);
    CHECK(d.subdivisions == 0);
    CHECK(d.pairs.size() == 2);
    CHECK(d.source_record.sound());
}

TEST_CASE("a degenerate map is rejected")
{
    SimplicialMap g(cycle(4), full_simplex(3), {0, 1, 1, 2});
    try {
        double_point_complex(g);
        FAIL("expected DegenerateMap");
    } catch (const PreconditionError& e) {
        CHECK(e.code() == "DegenerateMap");
    }
}

TEST_CASE("triple points")
{
    auto w = triple_point_witness(cover(3, 3));
    REQUIRE(w);
    CHECK(w->a.size() == 2);
    CHECK_FALSE(has_triple_points(cover(2, 4)));
    CHECK_FALSE(has_triple_points(*gen_figure_eight().map));
}

TEST_CASE("fold locus and simple folds")
{
    auto fold = *gen_fold_path().map;
    auto sigma = sigma_set(fold);
    REQUIRE(sigma.size() == 1);
    CHECK(sigma[0] == Simplex{1});
    CHECK(is_simple_fold(fold));
    CHECK(sigma_set(cover(2, 4)).empty());
    // Folding x1 and x3 onto one vertex whose partner set meets the fold locus.
    auto k = complex_of({"x0", "x1", "x2", "x3"}, {{"x0", "x1"}, {"x1", "x2"}, {"x2", "x3"}});
    auto l = complex_of({"A", "B"}, {{"A", "B"}});
    SimplicialMap zig(k, l, {0, 1, 0, 1});
    CHECK_FALSE(is_simple_fold(zig));
}

TEST_CASE("figure eight has one exchanged pair of points")
{
    auto d = double_point_model(*gen_figure_eight().map);
    CHECK(d.complex.count(0) == 2);
    CHECK(d.complex.dim() == 0);
    CHECK(d.num_components == 2);
}

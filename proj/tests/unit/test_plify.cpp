#include "fixtures.hpp"

#include "prem/errors.hpp"
#include "prem/generators.hpp"
#include "prem/lift.hpp"
#include "prem/plify.hpp"
#include "prem/subdivision.hpp"

#include <doctest.h>

using namespace prem;
using namespace fixtures;

namespace {

Lift vertex_lift(const SimplicialMap& f, std::vector<long> values)
{
    Lift g;
    g.record = identity_subdivision(f.source_ptr());
    for (long x : values) g.values.push_back(QVec{Rational(x)});
    return g;
}

}  // namespace

TEST_CASE("Lipschitz bound and stage radius")
{
    auto f = *gen_figure_eight().map;
    // Spread 2 across k0 with standard edge length sqrt 2: dim^2 * 4 / 2.
    CHECK(lipschitz_bound_sq(vertex_lift(f, {2, 0, 0, 0, 0, 0, 0, 0})) == 2);
    CHECK(lipschitz_bound_sq(vertex_lift(f, {0, 0, 0, 0, 0, 0, 0, 0})) == 0);
    CHECK(stage_radius_sq(Rational(2), Rational(4)) == Rational(1, 2));
    CHECK_FALSE(stage_radius_sq(Rational(0), Rational(4)));
}

TEST_CASE("stage gaps on the figure eight")
{
    auto f = *gen_figure_eight().map;
    auto g = vertex_lift(f, {-1, 0, 0, 0, 1, 0, 0, 0});
    auto s0 = stage_gap(f, g, 0);
    CHECK_FALSE(s0.skip);
    CHECK(s0.min_sq == 4);
    CHECK(s0.max_sq == 4);
    CHECK(stage_gap(f, g, 1).skip);
}

TEST_CASE("evaluating a lift at barycentric points")
{
    auto f = *gen_figure_eight().map;
    auto g = vertex_lift(f, {-1, 0, 0, 0, 1, 0, 0, 0});
    CHECK(evaluate_lift(g, bary_vertex(4)) == QVec{Rational(1)});
    BaryPoint mid{{0, Rational(1, 2)}, {1, Rational(1, 2)}};
    CHECK(evaluate_lift(g, mid) == QVec{Rational(-1, 2)});
}

TEST_CASE("plify keeps vertex values and certifies the result")
{
    auto f = *gen_figure_eight().map;
    auto base = construct_lift_3ptfree(f, 1).lift;
    auto wiggly = wiggly_refinement(f, base);
    auto r = plify_lift(f, wiggly);
    CHECK(r.vertex_agreement);
    CHECK(r.hulls_disjoint);
    CHECK(r.stars_preserved);
    CHECK(r.certificate.verdict);
    REQUIRE(r.stages.size() == 2);
    CHECK(r.stages[0].radius_sq);
    CHECK(r.lift.record.sound());
    for (int v = 0; v < r.lift.record.child->num_vertices(); ++v)
        CHECK(evaluate_lift(wiggly, r.lift.record.vertex_coords[v]) == r.lift.values[v]);
}

TEST_CASE("plify on a fold with two sheets over one edge")
{
    auto k = complex_of({"x0", "x1", "x2"}, {{"x0", "x1"}, {"x1", "x2"}});
    SimplicialMap f(k, complex_of({"A", "B"}, {{"A", "B"}}), {0, 1, 0});
    auto g = vertex_lift(f, {0, 1, 2});
    REQUIRE(verify_embedding(f, g).verdict);
    auto r = plify_lift(f, wiggly_refinement(f, g));
    CHECK(r.certificate.verdict);
    CHECK(r.hulls_disjoint);
    CHECK_FALSE(r.stages[1].skipped);
}

TEST_CASE("plify preconditions")
{
    auto f = *gen_figure_eight().map;
    try {
        plify_lift(f, vertex_lift(f, {0, 0, 0, 0, 0, 0, 0, 0}));
        FAIL("expected InputNotInjective");
    } catch (const PreconditionError& e) {
        CHECK(e.code() == "InputNotInjective");
    }
    auto s = sphere2();
    SimplicialMap id(s, s, {0, 1, 2, 3});
    Lift g;
    g.record = identity_subdivision(s);
    g.values.assign(4, QVec{Rational(0)});
    try {
        plify_lift(id, g);
        FAIL("expected UnsupportedDimension");
    } catch (const PreconditionError& e) {
        CHECK(e.code() == "UnsupportedDimension");
    }
}

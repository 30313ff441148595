#include "fixtures.hpp"

#include "prem/double_point.hpp"
#include "prem/errors.hpp"
#include "prem/generators.hpp"
#include "prem/obstruction.hpp"
#include "prem/z2.hpp"

#include <doctest.h>

using namespace prem;
using namespace fixtures;

TEST_CASE("verdict names")
{
    CHECK(to_string(Verdict::Exists) == "Exists");
    CHECK(to_string(Verdict::NotExists) == "NotExists");
    CHECK(to_string(Verdict::NecessaryHolds) == "NecessaryHolds");
    CHECK(to_string(Justification::CupPowerNonzero) == "cup-power-nonzero");
}

TEST_CASE("pseudomanifold and manifold certificates")
{
    CHECK(is_closed_pseudomanifold(*sphere2()));
    CHECK(is_closed_pseudomanifold(*rp2()));
    CHECK_FALSE(is_closed_pseudomanifold(*full_simplex(3)));
    CHECK(has_manifold_certificate(*sphere2()));
    CHECK(has_manifold_certificate(*cycle(5)));
    // Two triangles glued at a vertex: a pseudomanifold surface point fails the link test.
    auto pinched = complex_of(numbered("p", 7), {{"p0", "p1", "p2"}, {"p0", "p2", "p3"}, {"p0", "p3", "p1"},
                                                 {"p1", "p2", "p3"}, {"p0", "p4", "p5"}, {"p0", "p5", "p6"},
                                                 {"p0", "p6", "p4"}, {"p4", "p5", "p6"}});
    CHECK(is_closed_pseudomanifold(*pinched));
    CHECK_FALSE(has_manifold_certificate(*pinched));
}

TEST_CASE("equivariant map verdicts on coverings")
{
    auto odd = double_point_complex(*gen_cycle_cover(3, 3).map);
    auto v = equivariant_map_exists(odd, 1);
    CHECK(v.verdict == Verdict::Exists);
    CHECK(v.yang_index == 0);
    auto even = double_point_complex(*gen_cycle_cover(2, 4).map);
    auto w = equivariant_map_exists(even, 1);
    CHECK(w.verdict == Verdict::NotExists);
    CHECK(w.justification == Justification::CupPowerNonzero);
    CHECK(equivariant_map_exists(even, 2).verdict == Verdict::Exists);
    CHECK(equivariant_map_exists(even, 2).justification == Justification::DimensionBelowK);
}

TEST_CASE("non-manifold quotients only get the necessary condition")
{
    // Two free circles joined into a theta-like graph quotient: Yang 0 < k but no manifold certificate.
    auto k = complex_of(numbered("g", 8), {{"g0", "g1"}, {"g1", "g2"}, {"g2", "g3"}, {"g3", "g0"},
                                           {"g4", "g5"}, {"g5", "g6"}, {"g6", "g7"}, {"g7", "g4"},
                                           {"g0", "g2"}, {"g4", "g6"}});
    auto q = quotient_by_involution(k, {4, 5, 6, 7, 0, 1, 2, 3});
    auto v = equivariant_map_exists(q, 1);
    CHECK(v.yang_index == 0);
    CHECK(v.verdict == Verdict::NecessaryHolds);
    CHECK(v.justification == Justification::Mod2Only);
}

TEST_CASE("equivariant witnesses are antipodal and avoid zero")
{
    auto d = double_point_complex(*gen_cycle_cover(3, 3).map);
    auto w = construct_equivariant_witness(d, 2);
    CHECK(verify_witness(w));
    for (int v = 0; v < w.cover->num_vertices(); ++v) CHECK(w.vectors[w.involution[v]] == -1 * w.vectors[v]);
    try {
        construct_equivariant_witness(d, 1);
        FAIL("expected WitnessPrecondition");
    } catch (const PreconditionError& e) {
        CHECK(e.code() == "WitnessPrecondition");
    }
    auto bad = w;
    bad.vectors[0] = -1 * bad.vectors[1];
    CHECK_FALSE(verify_witness(bad));
}

TEST_CASE("projection degree parity")
{
    auto even = double_point_complex(*gen_cycle_cover(2, 4).map);
    auto p = projection_degree_parity(even, 0, 0);
    CHECK(p.well_defined);
    CHECK(p.parity == 1);
    auto odd = double_point_complex(*gen_cycle_cover(3, 3).map);
    CHECK(projection_degree_parity(odd, 0, 0).parity == 1);
}

TEST_CASE("branched covering report for the antipodal 3-sphere")
{
    auto ex = gen_join_lens(2, 1);
    auto r = theorem3_report(*ex.map, 3);
    CHECK(r.source_pseudomanifold);
    CHECK(r.source_betti == std::vector<int>{1, 0, 0, 1});
    CHECK(r.num_components == 1);
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].first.parity == 1);
    CHECK(r.yang_index == 3);
    CHECK(r.verdict.verdict == Verdict::NotExists);
    CHECK_FALSE(r.prem_conclusion);
    CHECK(r.dimension_hypothesis);
    CHECK(r.even_reading_consistent);
    CHECK_FALSE(r.odd_reading_consistent);
}

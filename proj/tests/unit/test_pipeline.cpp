#include "prem/errors.hpp"
#include "prem/generators.hpp"
#include "prem/pipeline.hpp"

#include <doctest.h>

using namespace prem;

namespace {

MapBundle bundle(const GeneratedExample& ex)
{
    MapBundle b;
    b.map = ex.map;
    b.meta = ex.meta;
    return b;
}

}  // namespace

TEST_CASE("reports carry the schema version")
{
    auto r = run_delta(bundle(gen_cycle_cover(3, 3)));
    CHECK(r.json["schema"] == 1);
    CHECK(r.json["cells"] == nlohmann::ordered_json::array({18, 18}));
    CHECK(r.json["invariant_components"] == 0);
    CHECK(r.exit_code == 0);
}

TEST_CASE("obstruct exit codes follow the verdict")
{
    auto odd = run_obstruct(bundle(gen_cycle_cover(3, 3)), 1);
    CHECK(odd.exit_code == 0);
    CHECK(odd.json["verdict"] == "Exists");
    CHECK(odd.json["dimension_hypothesis"] == false);
    auto even = run_obstruct(bundle(gen_cycle_cover(2, 4)), 1);
    CHECK(even.exit_code == 1);
    CHECK(even.json["verdict"] == "NotExists");
}

TEST_CASE("report-thm3 on the antipodal 3-sphere")
{
    auto r = run_report_thm3(bundle(gen_join_lens(2, 1)), std::nullopt);
    CHECK(r.exit_code == 1);
    CHECK(r.json["yang_index"] == 3);
    CHECK(r.json["n"] == 3);
}

TEST_CASE("reports are deterministic")
{
    auto a = run_yang(bundle(gen_cross_polytope(2)));
    auto b = run_yang(bundle(gen_cross_polytope(2)));
    CHECK(a.text == b.text);
    CHECK(a.json.dump() == b.json.dump());
    CHECK(a.json["yang_index"] == 2);
}

TEST_CASE("error reports map exception kinds to exit codes")
{
    CHECK(error_report(ParseError("x")).exit_code == 64);
    auto p = error_report(PreconditionError("TriplePointsPresent", "y"));
    CHECK(p.exit_code == 65);
    CHECK(p.json["code"] == "TriplePointsPresent");
    CHECK(error_report(ContractViolation("z")).exit_code == 70);
}

TEST_CASE("generator parameters are validated")
{
    CHECK_THROWS_AS(generate("join-lens", {4, 2}), PreconditionError);
    CHECK_THROWS_AS(generate("cycle-cover", {2, 2}), PreconditionError);
    CHECK_THROWS_AS(generate("cross-polytope", {}), PreconditionError);
    CHECK_THROWS_AS(generate("klein-bottle", {}), PreconditionError);
    auto lens = generate("join-lens", {3, 1});
    CHECK(lens.base->count(0) == 6);
    CHECK(lens.base->count(3) == 9);
    CHECK(lens.subdivisions == 2);
    CHECK(lens.map->source().count(3) == 5184);
    auto cross = generate("cross-polytope", {3});
    CHECK(cross.base->count(0) == 8);
    CHECK(cross.base->count(3) == 16);
    CHECK(cross.map->source().count(3) == 384);
    CHECK(cross.map->target().count(3) == 192);
}

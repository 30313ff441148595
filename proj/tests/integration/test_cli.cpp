#include "doctest.h"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI inside the scratch directory; stderr is discarded.
Run prem(const std::string& args, const std::string& env = "")
{
    fs::create_directories(PREM_SCRATCH);
    const std::string cmd =
        "cd \"" PREM_SCRATCH "\" && " + env + (env.empty() ? "" : " ") + "\"" PREM_BINARY "\" " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void generate_all()
{
    static bool done = false;
    if (done) return;
    REQUIRE(prem("gen cycle-cover 3 3").code == 0);
    REQUIRE(prem("gen cycle-cover 2 4").code == 0);
    REQUIRE(prem("gen join-lens 2 1").code == 0);
    REQUIRE(prem("gen figure-eight").code == 0);
    REQUIRE(prem("gen fold-path").code == 0);
    done = true;
}

}  // namespace

TEST_CASE("gen writes the map bundle")
{
    generate_all();
    for (const char* f : {"cover9to3.map", "cover9to3.src", "cover9to3.tgt", "cover8to4.map", "lens_2_1.map",
                          "figure8.map", "fold.map"})
        CHECK_MESSAGE(fs::exists(fs::path(PREM_SCRATCH) / f), f);
    CHECK(prem("gen cycle-cover 1 2").code == 65);
    CHECK(prem("gen no-such-example").code == 65);
}

TEST_CASE("obstruct exit codes follow the verdict")
{
    generate_all();
    CHECK(prem("obstruct -k 1 cover9to3.map").code == 0);
    CHECK(prem("obstruct -k 1 cover8to4.map").code == 1);
    CHECK(prem("report-thm3 lens_2_1.map").code == 1);
}

TEST_CASE("delta and yang report the double point complex")
{
    generate_all();
    auto d = prem("--json delta cover9to3.map");
    REQUIRE(d.code == 0);
    auto j = nlohmann::json::parse(d.out);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "delta");
    auto y = prem("--json yang cover8to4.map");
    REQUIRE(y.code == 0);
    CHECK(nlohmann::json::parse(y.out)["yang_index"] == 1);
}

TEST_CASE("lift refuses maps with triple points")
{
    generate_all();
    CHECK(prem("lift -k 1 cover9to3.map").code == 65);
    auto j = prem("--json lift -k 1 cover9to3.map");
    CHECK(j.code == 65);
    auto e = nlohmann::json::parse(j.out);
    CHECK(e["schema"] == 1);
    CHECK(e["code"] == "TriplePointsPresent");
}

TEST_CASE("malformed input exits with the parse error code")
{
    {
        std::ofstream out(fs::path(PREM_SCRATCH) / "broken.src");
        out << "v a\ns a b\n";
    }
    {
        std::ofstream out(fs::path(PREM_SCRATCH) / "broken.map");
        out << "source broken.src\ntarget broken.src\nm a a\n";
    }
    CHECK(prem("delta broken.map").code == 64);
    CHECK(prem("delta missing.map").code != 0);
    CHECK(prem("obstruct cover9to3.map").code == 64);
}

TEST_CASE("lift then verify then plify on the figure eight")
{
    generate_all();
    REQUIRE(prem("lift -k 1 figure8.map -o fig8.lift").code == 0);
    REQUIRE(fs::exists(fs::path(PREM_SCRATCH) / "fig8.lift"));
    CHECK(prem("verify figure8.map fig8.lift").code == 0);
    auto p = prem("--json plify figure8.map fig8.lift --trace -o fig8.pl.lift");
    CHECK(p.code == 0);
    auto j = nlohmann::json::parse(p.out);
    CHECK(j["schema"] == 1);
    CHECK(prem("verify figure8.map fig8.pl.lift").code == 0);
}

TEST_CASE("verify rejects a lift that does not embed")
{
    generate_all();
    {
        std::ofstream out(fs::path(PREM_SCRATCH) / "flat.lift");
        out << "k 1\n";
        for (int i = 0; i < 3; ++i) out << "g x" << i << " 0\n";
    }
    CHECK(prem("verify fold.map flat.lift").code == 1);
}

TEST_CASE("output is byte-identical across runs and job counts")
{
    generate_all();
    const std::string cmd = "--json report-thm3 lens_2_1.map";
    auto a = prem(cmd);
    auto b = prem(cmd);
    auto c = prem(cmd, "PREM_JOBS=4");
    auto d = prem("--jobs 3 " + cmd);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out == d.out);
    CHECK(a.code == c.code);
    auto l1 = prem("--json lift -k 1 figure8.map");
    auto l2 = prem("--json lift -k 1 figure8.map", "PREM_JOBS=2");
    CHECK(l1.out == l2.out);
}

TEST_CASE("stability classifies a height function on a path")
{
    {
        std::ofstream out(fs::path(PREM_SCRATCH) / "path.cx");
        out << "v a\nv b\nv c\ns a b\ns b c\n";
    }
    {
        std::ofstream out(fs::path(PREM_SCRATCH) / "path.vals");
        out << "c a 0\nc b 1\nc c 3\n";
    }
    auto r = prem("--json stability path.cx path.vals");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["in_G_phi"] == true);
    CHECK(j["maps_to_R"]["verdict"] == "stable");
    CHECK(j["maps_to_R"]["critical_vertices"].size() == 2);
}

#pragma once

#include "prem/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace prem {

struct Report {
    int exit_code = 0;
    nlohmann::ordered_json json;
    std::string text;
};

struct LiftOptions {
    int k = 1;
    std::optional<std::filesystem::path> alpha;
    std::optional<std::filesystem::path> star;
    int jobs = 1;
};

Report run_delta(const MapBundle& b);
Report run_yang(const MapBundle& b);
/// Exit 0 Exists, 1 NotExists, 2 inconclusive.
Report run_obstruct(const MapBundle& b, int k);
Report run_lift(const MapBundle& b, const LiftOptions& opt);
/// Exit 0 when the embedding certificate holds, 1 otherwise.
Report run_verify(const MapBundle& b, const Lift& g, int jobs);
Report run_plify(const MapBundle& b, const Lift& g, bool trace, int jobs);
Report run_stability(const SimplicialComplex& k, const std::vector<QVec>& values,
                     const std::optional<GeometricComplex>& target);
/// n defaults to the `n` meta entry, else the source dimension.
Report run_report_thm3(const MapBundle& b, std::optional<int> n);
Report run_gen(const std::string& name, const std::vector<int>& params, const std::filesystem::path& dir);

/// Exit code and report for an exception escaping a command: 64 parse, 65 precondition, 70 contract.
Report error_report(const std::exception& e);

}  // namespace prem

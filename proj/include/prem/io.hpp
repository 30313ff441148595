#pragma once

#include "prem/complex.hpp"
#include "prem/double_point.hpp"
#include "prem/lift.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace prem {

// Text formats. One item per line, '#' starts a comment line, tokens are
// whitespace separated, every number is written as num/den.
//
//   complex       v <id> | s <id> <id> ...
//   realization   c <id> <num/den> ...
//   map           source <file> | target <file> | realization <file> | meta <key> <value> | m <src-id> <dst-id>
//   involution    t <id> <id>
//   witness       w <pair-id> <num/den> ...
//   lift          k <k> | v/s lines of K* | b <child> <parent> <num/den> ... | g <vertex> <num/den> ...
//   boundary      e <vertex> <num/den> ...

/// Throws ParseError (with line number) on malformed text or a complex that fails validation.
SimplicialComplex parse_complex(std::istream& in, const std::string& origin = "<input>");
std::string write_complex(const SimplicialComplex& c);

std::vector<QVec> parse_realization(std::istream& in, const SimplicialComplex& c, const std::string& origin = "<input>");
std::string write_realization(const SimplicialComplex& c, const std::vector<QVec>& coords);

std::vector<int> parse_involution(std::istream& in, const SimplicialComplex& c, const std::string& origin = "<input>");
std::string write_involution(const SimplicialComplex& c, const std::vector<int>& involution);

/// Per Delta_f vertex (pair) vector; pair ids are Delta_f vertex names.
std::vector<QVec> parse_witness(std::istream& in, const DoublePointComplex& d, const std::string& origin = "<input>");
std::string write_witness(const DoublePointComplex& d, const std::vector<QVec>& alpha);

/// K* defaults to K when the file declares no vertices.
Lift parse_lift(std::istream& in, std::shared_ptr<const SimplicialComplex> k, const std::string& origin = "<input>");
std::string write_lift(const Lift& g);

BoundaryData parse_boundary(std::istream& in, const SimplicialComplex& k, int dim, const std::string& origin = "<input>");

struct MapBundle {
    std::shared_ptr<const SimplicialMap> map;
    std::optional<GeometricComplex> realization;  // of the target
    std::map<std::string, std::string> meta;
};

/// Referenced files resolve relative to the map file's directory.
MapBundle load_map(const std::filesystem::path& path);
std::string write_map(const SimplicialMap& f, const std::string& source_file, const std::string& target_file,
                      const std::optional<std::string>& realization_file, const std::map<std::string, std::string>& meta);

SimplicialComplex load_complex(const std::filesystem::path& path);
Lift load_lift(const std::filesystem::path& path, std::shared_ptr<const SimplicialComplex> k);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace prem

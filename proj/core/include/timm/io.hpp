#pragma once

#include <iosfwd>
#include <string>

#include "timm/immersion.hpp"
#include "timm/tournament.hpp"

namespace timm {

// Tournament text format:
//   line 1: n
//   lines 2..n+1: n characters from {0,1}; line for u, column for v, a '1'
//   meaning edge u -> v. Zero diagonal, exactly one direction per pair.
// Violations raise ParseError with a line/column diagnostic.
Tournament read_tournament(std::istream& in);
Tournament read_tournament_file(const std::string& path);
void write_tournament(std::ostream& out, const Tournament& t);
void write_tournament_file(const std::string& path, const Tournament& t);

// Certificate text format:
//   line 1: pattern tag ("tt" or "kd") and k
//   line 2: the k branch vertices in pattern order
//   then one line per pattern edge: "u w : v0 v1 ... vl" with v0 = u, vl = w.
Immersion read_certificate(std::istream& in);
Immersion read_certificate_file(const std::string& path);
void write_certificate(std::ostream& out, const Immersion& im);
void write_certificate_file(const std::string& path, const Immersion& im);

}  // namespace timm

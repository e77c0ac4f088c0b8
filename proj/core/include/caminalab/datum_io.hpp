// Line-oriented text format for group data, shared by the CLI, the test
// fixtures, and the classification reports.
//
//   caminalab 1
//   p 3
//   r 2
//   n 1
//   B 2 1 1          # commutator [g_2, g_1], n trailing coordinates
//   mu 1 0           # central value of g_1^p, n coordinates
//
// Generator indices are 1-based in the format. Unspecified B and mu lines
// mean zero; canonical emission writes every B pair in lexicographic (i, j)
// order and every mu column, so round-trips are bit-exact.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "caminalab/group.hpp"

namespace caminalab {

std::string serialize_datum(const GroupDatum& g);

struct ParseResult {
    std::optional<GroupDatum> datum;
    std::string error; // includes the 1-based line number on failure
    explicit operator bool() const { return datum.has_value(); }
};

ParseResult parse_datum(std::istream& in);
ParseResult parse_datum_string(const std::string& text);
ParseResult parse_datum_file(const std::string& path);

// Row-major matrix rendering used in witness reports: "r x c: a b c ...".
std::string format_matrix(const FpMat& m);

} // namespace caminalab

// Self-certification suites. The quick level covers the algebraic laws,
// orthogonality at small orders, and oracle agreement samples; the full
// level runs the complete acceptance battery (classification counts,
// cross-validation of all three pair-deciding methods, character-theory
// certification, and the seeded property sweeps).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace caminalab::selftest {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

// inject_fault perturbs one character value before the orthogonality check;
// the suite must then fail and name orthogonality.
std::vector<CheckLine> run_quick(bool inject_fault = false);

std::vector<CheckLine> run_full(unsigned jobs = 1);

// Prints one PASS/FAIL line per check; returns 0 if all passed, 1 otherwise.
int report(const std::vector<CheckLine>& lines, std::ostream& out);

} // namespace caminalab::selftest

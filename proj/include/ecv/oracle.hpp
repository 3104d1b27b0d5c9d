#pragma once

#include <filesystem>
#include <string>

namespace ecv {

// Oracle-equivalence suites shared by the verify command, the unit tests and
// the acceptance harness.  Each suite compares production code against
// independent exhaustive computation and reports its worst deviation.
struct suite_result {
    std::string name;
    bool pass = false;
    double max_deviation = 0.0;
    std::string detail;  // one-line description of what was covered / what failed
};

// Counting formulas vs brute-force enumeration, exact integer equality,
// all feasible edge counts, orders up to n_max (<= 7).
suite_result verify_counting(int n_max);

// Stratified approximation vs exhaustive partition function over a 5x5 theta
// grid in [-4,0]x[-6,0]: approximate log Z <= exact per stratum and in total,
// and the all-sparse stratum matches exactly (<= 1e-9).  Orders 2..n_max (<= 6).
suite_result verify_undercount(int n_max);

// conditional/stratum entropy vs direct -sum p log p over the enumerated
// constructed family, orders 2..n_max (<= 5); also cross-checks that the
// family's total mass reproduces the stratum partition mass.
suite_result verify_entropy_identity(int n_max);

// Table cache round-trip, checksum rejection of a corrupted byte, and magic
// rejection of a foreign file; scratch files are written under dir.
suite_result verify_cache(const std::filesystem::path& dir);

}  // namespace ecv

#ifndef FAILSEC_TESTS_NAIVE_ORACLE_HPP
#define FAILSEC_TESTS_NAIVE_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "failsec/arch.hpp"

namespace failsec::testing {

// Independent brute-force enumerator: walks every fault subset (bitmask over
// instances in declaration order) and every routing assignment recursively,
// evaluating nets by plain recursion. Shares no code with the analyzer's
// staged search or the dataflow-ordered evaluator.

// True iff no fault subset of size <= n (with any routing) leaks a product
// input verbatim to a product output.
bool naiveFailSecure(const Architecture& arch, int n);

// Smallest breaching fault count <= bound, if any.
std::optional<int> naiveMinFaults(const Architecture& arch, int bound);

// Number of (subset of size k, routing) combinations.
std::uint64_t naiveScenarioCount(const Architecture& arch, int k);

}  // namespace failsec::testing

#endif

#ifndef FAILSEC_ANALYZER_HPP
#define FAILSEC_ANALYZER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "failsec/arch.hpp"
#include "failsec/eval.hpp"
#include "failsec/value.hpp"

namespace failsec {

// A product output carrying, verbatim, the value of a product input.
struct Leak {
  std::string output;        // product output port
  Value value = Value::null();
  std::string matchedInput;  // product input port, value == Atom(matchedInput)

  bool operator==(const Leak& other) const {
    return output == other.output && value == other.value &&
           matchedInput == other.matchedInput;
  }
};

struct Breach {
  FaultScenario scenario;
  Valuation valuation;
  std::vector<Leak> leaks;  // non-empty, product-output declaration order
};

struct Verdict {
  enum class Kind { FailSecureUpTo, Breach };

  Kind kind = Kind::FailSecureUpTo;
  int maxFaults = 0;               // the queried (clamped) n
  std::uint64_t scenariosChecked = 0;
  std::optional<failsec::Breach> breach;  // set iff kind == Breach

  bool secure() const { return kind == Kind::FailSecureUpTo; }
};

// Security predicate: no product-output net value equals any product-input
// value. Leaks are listed in product-output declaration order.
std::pair<bool, std::vector<Leak>> isSecure(const Architecture& arch,
                                            const Valuation& val);

// Every scenario with exactly k faulty instances in canonical order: fault
// sets lexicographic over sorted instance names, then routing combinations
// lexicographic by instance name (enumerateRoutings order per instance).
// The visitor returns false to stop early.
void forEachScenario(const Architecture& arch, int k,
                     const std::function<bool(const FaultScenario&)>& visit);

std::vector<FaultScenario> scenarios(const Architecture& arch, int k);

std::uint64_t scenarioCount(const Architecture& arch, int k);

// Exhaustive staged search over fault counts 0..n. Returns the canonically
// first insecure scenario, or a fail-secure verdict after checking every
// scenario. n beyond the instance count is clamped. jobs > 1 parallelizes
// evaluation; the verdict is identical for any job count.
Verdict checkFailSecure(const Architecture& arch, int n, int jobs = 1);

// Every insecure scenario at the minimal breaching fault count <= n, in
// canonical order. Empty when fail-secure up to n.
std::vector<Breach> allBreachesAtMinimalK(const Architecture& arch, int n,
                                          int jobs = 1);

// Smallest k <= bound with an insecure k-fault scenario, or nullopt.
std::optional<int> minFaultCount(const Architecture& arch, int bound,
                                 int jobs = 1);

// Re-evaluates the breach scenario and checks valuation and leaks match.
bool verifyCounterexample(const Architecture& arch, const Breach& breach);

}  // namespace failsec

#endif

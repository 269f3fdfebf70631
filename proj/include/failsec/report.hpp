#ifndef FAILSEC_REPORT_HPP
#define FAILSEC_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "failsec/analyzer.hpp"
#include "failsec/arch.hpp"

namespace failsec {

inline constexpr const char* kToolName = "failsec";
inline constexpr const char* kToolVersion = "0.1.0";

struct Report {
  std::string file;
  Verdict verdict;
  std::int64_t elapsedMs = 0;
  // Set by `check --all`: every breach at the minimal breaching k.
  std::optional<std::vector<Breach>> allBreaches;
};

// Fixed-key-order JSON object for a check run. Parsing the output and
// dumping it again reproduces the same bytes.
std::string emitJson(const Report& report, const Architecture& arch);

// JSON for a min-faults run.
std::string emitMinFaultsJson(const std::string& file, int bound,
                              const std::optional<int>& minFaults,
                              std::int64_t elapsedMs);

// Human-readable report. ANSI styling only when color is true.
std::string emitText(const Report& report, const Architecture& arch,
                     bool color);

// DOT digraph of the architecture; with a Breach verdict, faulty instances
// are filled and edges carry `netName = value` labels. Byte-deterministic.
std::string emitDot(const Architecture& arch, const Verdict* verdict);

// Parse the render() syntax back into a Value. Empty optional on malformed
// input.
std::optional<Value> parseValueText(const std::string& text);

// Reconstruct a Breach from the JSON emitted for it (the `faults`,
// `routing`, `valuation` and `leaks` keys). Empty optional if the JSON does
// not describe a breach for this architecture.
std::optional<Breach> parseBreachJson(const std::string& json,
                                      const Architecture& arch);

}  // namespace failsec

#endif

#ifndef FAILSEC_EVAL_HPP
#define FAILSEC_EVAL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "failsec/arch.hpp"
#include "failsec/value.hpp"

namespace failsec {

// Output port -> input port pass-through choice for one failed instance.
using Routing = std::map<std::string, std::string>;

// Nominal/Failure assignment plus the pass-through routing of every failed
// instance. Routed instances and faulty instances coincide.
struct FaultScenario {
  std::set<std::string> faulty;
  std::map<std::string, Routing> routing;

  bool operator==(const FaultScenario& other) const {
    return faulty == other.faulty && routing == other.routing;
  }
};

// Net id -> the unique symbolic value carried by that net.
using Valuation = std::map<int, Value>;

// Evaluate one behavior expression under a total input environment.
Value evalExpr(const Expr& expr, const std::map<std::string, Value>& env);

// Compute the value on every net for one fault scenario. Product-input nets
// carry their atoms; nominal instances run their behaviors in dataflow
// order; failed instances pass the routed input through to each output.
// Throws std::invalid_argument on a scenario that does not fit the
// architecture.
Valuation evaluate(const Architecture& arch, const FaultScenario& scenario);

// All |inputs|^|outputs| pass-through routings of a kind, lexicographic:
// outputs in declaration order, inputs in declaration order per output.
std::vector<Routing> enumerateRoutings(const ComponentKind& kind);

std::size_t routingCount(const ComponentKind& kind);

}  // namespace failsec

#endif

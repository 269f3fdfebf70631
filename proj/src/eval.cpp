#include "failsec/eval.hpp"

#include <stdexcept>

namespace failsec {

Value evalExpr(const Expr& expr, const std::map<std::string, Value>& env) {
  switch (expr.kind) {
    case Expr::Kind::PortRef: {
      auto it = env.find(expr.name);
      if (it == env.end())
        throw std::invalid_argument("unbound port '" + expr.name + "'");
      return it->second;
    }
    case Expr::Kind::NullLit:
      return Value::null();
    case Expr::Kind::Ctor: {
      std::vector<Value> args;
      args.reserve(expr.args.size());
      for (const Expr& a : expr.args) args.push_back(evalExpr(a, env));
      return Value::term(expr.name, std::move(args));
    }
    case Expr::Kind::IfEq: {
      Value left = evalExpr(expr.args[0], env);
      Value right = evalExpr(expr.args[1], env);
      return left == right ? evalExpr(expr.args[2], env)
                           : evalExpr(expr.args[3], env);
    }
  }
  throw std::logic_error("unreachable expr kind");
}

namespace {

void checkScenario(const Architecture& arch, const FaultScenario& s) {
  if (s.faulty.size() != s.routing.size())
    throw std::invalid_argument("routing entries must match faulty instances");
  for (const std::string& name : s.faulty) {
    const Instance* inst = arch.findInstance(name);
    if (!inst)
      throw std::invalid_argument("unknown faulty instance '" + name + "'");
    auto rit = s.routing.find(name);
    if (rit == s.routing.end())
      throw std::invalid_argument("missing routing for '" + name + "'");
    const ComponentKind* kind = arch.kindOf(*inst);
    if (rit->second.size() != kind->outputs.size())
      throw std::invalid_argument("routing of '" + name +
                                  "' must cover every output port");
    for (const auto& [out, in] : rit->second) {
      if (!kind->hasOutput(out))
        throw std::invalid_argument("'" + out + "' is not an output of '" +
                                    name + "'");
      if (!kind->hasInput(in))
        throw std::invalid_argument("'" + in + "' is not an input of '" +
                                    name + "'");
    }
  }
}

}  // namespace

Valuation evaluate(const Architecture& arch, const FaultScenario& scenario) {
  checkScenario(arch, scenario);

  // Reader and driver endpoint -> net id lookup.
  std::map<Endpoint, int> netOfReader;
  std::map<Endpoint, int> netOfDriver;
  for (const Net& net : arch.nets) {
    netOfDriver.emplace(net.driver, net.id);
    for (const Endpoint& r : net.readers) netOfReader.emplace(r, net.id);
  }

  Valuation val;
  for (const Net& net : arch.nets)
    if (net.driver.kind == Endpoint::Kind::ProductInput)
      val.emplace(net.id, Value::atom(net.driver.port));

  for (const Instance* inst : dataflowOrder(arch)) {
    const ComponentKind& kind = *arch.kindOf(*inst);
    std::map<std::string, Value> env;
    for (const std::string& in : kind.inputs) {
      auto it = netOfReader.find(Endpoint::compIn(inst->name, in));
      if (it == netOfReader.end())
        throw std::invalid_argument("input '" + inst->name + "." + in +
                                    "' is not connected");
      env.emplace(in, val.at(it->second));
    }
    bool faulty = scenario.faulty.count(inst->name) > 0;
    const Routing* routing =
        faulty ? &scenario.routing.at(inst->name) : nullptr;
    for (const std::string& out : kind.outputs) {
      auto drv = netOfDriver.find(Endpoint::compOut(inst->name, out));
      if (drv == netOfDriver.end()) continue;  // dangling output
      Value v = faulty ? env.at(routing->at(out))
                       : evalExpr(kind.behavior.at(out), env);
      val.emplace(drv->second, std::move(v));
    }
  }
  return val;
}

std::vector<Routing> enumerateRoutings(const ComponentKind& kind) {
  std::vector<Routing> out;
  std::vector<std::size_t> choice(kind.outputs.size(), 0);
  for (;;) {
    Routing r;
    for (std::size_t i = 0; i < kind.outputs.size(); ++i)
      r.emplace(kind.outputs[i], kind.inputs[choice[i]]);
    out.push_back(std::move(r));
    // Odometer increment, last output varies fastest.
    std::size_t i = choice.size();
    while (i > 0) {
      --i;
      if (++choice[i] < kind.inputs.size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
  }
}

std::size_t routingCount(const ComponentKind& kind) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < kind.outputs.size(); ++i) n *= kind.inputs.size();
  return n;
}

}  // namespace failsec

#include "failsec/arch.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace failsec {

Expr Expr::portRef(std::string port) {
  Expr e;
  e.kind = Kind::PortRef;
  e.name = std::move(port);
  return e;
}

Expr Expr::nullLit() {
  Expr e;
  e.kind = Kind::NullLit;
  return e;
}

Expr Expr::ctor(std::string constructor, std::vector<Expr> args) {
  Expr e;
  e.kind = Kind::Ctor;
  e.name = std::move(constructor);
  e.args = std::move(args);
  return e;
}

Expr Expr::ifEq(Expr left, Expr right, Expr thenBranch, Expr elseBranch) {
  Expr e;
  e.kind = Kind::IfEq;
  e.args.reserve(4);
  e.args.push_back(std::move(left));
  e.args.push_back(std::move(right));
  e.args.push_back(std::move(thenBranch));
  e.args.push_back(std::move(elseBranch));
  return e;
}

bool Expr::operator==(const Expr& other) const {
  return kind == other.kind && name == other.name && args == other.args;
}

bool ComponentKind::hasInput(const std::string& port) const {
  return std::find(inputs.begin(), inputs.end(), port) != inputs.end();
}

bool ComponentKind::hasOutput(const std::string& port) const {
  return std::find(outputs.begin(), outputs.end(), port) != outputs.end();
}

Endpoint Endpoint::productInput(std::string port) {
  return Endpoint{Kind::ProductInput, {}, std::move(port)};
}
Endpoint Endpoint::productOutput(std::string port) {
  return Endpoint{Kind::ProductOutput, {}, std::move(port)};
}
Endpoint Endpoint::compIn(std::string instance, std::string port) {
  return Endpoint{Kind::CompIn, std::move(instance), std::move(port)};
}
Endpoint Endpoint::compOut(std::string instance, std::string port) {
  return Endpoint{Kind::CompOut, std::move(instance), std::move(port)};
}

std::string Endpoint::spelling() const {
  if (instance.empty()) return port;
  return instance + "." + port;
}

bool Endpoint::operator==(const Endpoint& other) const {
  return kind == other.kind && instance == other.instance && port == other.port;
}

bool Endpoint::operator<(const Endpoint& other) const {
  if (kind != other.kind) return kind < other.kind;
  if (instance != other.instance) return instance < other.instance;
  return port < other.port;
}

const ComponentKind* Architecture::findKind(const std::string& n) const {
  for (const ComponentKind& k : kinds)
    if (k.name == n) return &k;
  return nullptr;
}

const Instance* Architecture::findInstance(const std::string& n) const {
  for (const Instance& i : instances)
    if (i.name == n) return &i;
  return nullptr;
}

const ComponentKind* Architecture::kindOf(const Instance& inst) const {
  return findKind(inst.kind);
}

static std::vector<Endpoint> sortedReaders(const Net& net) {
  std::vector<Endpoint> r = net.readers;
  std::sort(r.begin(), r.end());
  return r;
}

bool Architecture::structurallyEquals(const Architecture& other) const {
  if (name != other.name || productInputs != other.productInputs ||
      productOutputs != other.productOutputs)
    return false;
  if (kinds.size() != other.kinds.size()) return false;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const ComponentKind& a = kinds[i];
    const ComponentKind& b = other.kinds[i];
    if (a.name != b.name || a.inputs != b.inputs || a.outputs != b.outputs ||
        a.behavior != b.behavior)
      return false;
  }
  if (instances.size() != other.instances.size()) return false;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].name != other.instances[i].name ||
        instances[i].kind != other.instances[i].kind)
      return false;
  }
  if (nets.size() != other.nets.size()) return false;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    if (nets[i].id != other.nets[i].id ||
        nets[i].driver != other.nets[i].driver ||
        sortedReaders(nets[i]) != sortedReaders(other.nets[i]))
      return false;
  }
  return true;
}

const char* diagCodeName(DiagCode code) {
  switch (code) {
    case DiagCode::E_MULTI_DRIVER: return "E_MULTI_DRIVER";
    case DiagCode::E_UNCONNECTED_INPUT: return "E_UNCONNECTED_INPUT";
    case DiagCode::E_CYCLE: return "E_CYCLE";
    case DiagCode::E_ZERO_PORT_KIND: return "E_ZERO_PORT_KIND";
    case DiagCode::E_BAD_PORT_REF: return "E_BAD_PORT_REF";
    case DiagCode::E_DUP_NAME: return "E_DUP_NAME";
    case DiagCode::W_DANGLING_INPUT: return "W_DANGLING_INPUT";
  }
  return "?";
}

bool isError(DiagCode code) { return code != DiagCode::W_DANGLING_INPUT; }

bool hasErrors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return isError(d.code); });
}

namespace {

class Validator {
public:
  explicit Validator(const Architecture& arch) : arch_(arch) {}

  std::vector<Diagnostic> run() {
    checkKinds();
    checkInstances();
    checkProductPorts();
    checkEndpoints();
    checkWiring();
    checkCycles();
    return std::move(diags_);
  }

private:
  void report(DiagCode code, const std::string& msg,
              std::optional<SourceSpan> span = std::nullopt) {
    diags_.push_back(Diagnostic{code, msg, span});
  }

  void checkExprRefs(const ComponentKind& kind, const Expr& e,
                     const std::string& outPort) {
    if (e.kind == Expr::Kind::PortRef && !kind.hasInput(e.name)) {
      report(DiagCode::E_BAD_PORT_REF,
             "behavior of " + kind.name + "." + outPort +
                 " references unknown input port '" + e.name + "'",
             kind.span);
    }
    for (const Expr& a : e.args) checkExprRefs(kind, a, outPort);
  }

  void checkKinds() {
    std::set<std::string> seen;
    for (const ComponentKind& kind : arch_.kinds) {
      if (!seen.insert(kind.name).second)
        report(DiagCode::E_DUP_NAME,
               "duplicate component kind '" + kind.name + "'", kind.span);
      if (kind.inputs.empty() || kind.outputs.empty())
        report(DiagCode::E_ZERO_PORT_KIND,
               "kind '" + kind.name + "' must have at least one input and one output",
               kind.span);
      std::set<std::string> ports;
      for (const std::string& p : kind.inputs)
        if (!ports.insert(p).second)
          report(DiagCode::E_DUP_NAME,
                 "duplicate port '" + p + "' in kind '" + kind.name + "'",
                 kind.span);
      for (const std::string& p : kind.outputs)
        if (!ports.insert(p).second)
          report(DiagCode::E_DUP_NAME,
                 "duplicate port '" + p + "' in kind '" + kind.name + "'",
                 kind.span);
      for (const std::string& out : kind.outputs)
        if (kind.behavior.find(out) == kind.behavior.end())
          report(DiagCode::E_BAD_PORT_REF,
                 "kind '" + kind.name + "' has no behavior for output '" + out + "'",
                 kind.span);
      for (const auto& [port, expr] : kind.behavior) {
        if (!kind.hasOutput(port))
          report(DiagCode::E_BAD_PORT_REF,
                 "kind '" + kind.name + "' assigns behavior to non-output '" +
                     port + "'",
                 kind.span);
        checkExprRefs(kind, expr, port);
      }
    }
  }

  void checkInstances() {
    std::set<std::string> seen;
    for (const Instance& inst : arch_.instances) {
      if (!seen.insert(inst.name).second)
        report(DiagCode::E_DUP_NAME, "duplicate instance '" + inst.name + "'",
               inst.span);
      if (!arch_.findKind(inst.kind))
        report(DiagCode::E_BAD_PORT_REF,
               "instance '" + inst.name + "' uses unknown kind '" + inst.kind + "'",
               inst.span);
    }
  }

  void checkProductPorts() {
    std::set<std::string> ports;
    for (const std::string& p : arch_.productInputs)
      if (!ports.insert(p).second)
        report(DiagCode::E_DUP_NAME, "duplicate product port '" + p + "'");
    for (const std::string& p : arch_.productOutputs)
      if (!ports.insert(p).second)
        report(DiagCode::E_DUP_NAME, "duplicate product port '" + p + "'");
    if (arch_.productInputs.empty())
      report(DiagCode::E_ZERO_PORT_KIND, "product has no inputs");
    if (arch_.productOutputs.empty())
      report(DiagCode::E_ZERO_PORT_KIND, "product has no outputs");
  }

  bool hasProductPort(const std::vector<std::string>& ports,
                      const std::string& p) const {
    return std::find(ports.begin(), ports.end(), p) != ports.end();
  }

  // Returns false if the endpoint cannot be resolved (already reported).
  bool checkEndpoint(const Endpoint& ep, const Net& net) {
    switch (ep.kind) {
      case Endpoint::Kind::ProductInput:
        if (!hasProductPort(arch_.productInputs, ep.port)) {
          report(DiagCode::E_BAD_PORT_REF,
                 "unknown product input '" + ep.port + "'", net.span);
          return false;
        }
        return true;
      case Endpoint::Kind::ProductOutput:
        if (!hasProductPort(arch_.productOutputs, ep.port)) {
          report(DiagCode::E_BAD_PORT_REF,
                 "unknown product output '" + ep.port + "'", net.span);
          return false;
        }
        return true;
      case Endpoint::Kind::CompIn:
      case Endpoint::Kind::CompOut: {
        const Instance* inst = arch_.findInstance(ep.instance);
        if (!inst) {
          report(DiagCode::E_BAD_PORT_REF,
                 "unknown instance '" + ep.instance + "'", net.span);
          return false;
        }
        const ComponentKind* kind = arch_.kindOf(*inst);
        if (!kind) return false;  // unknown kind already reported
        bool ok = ep.kind == Endpoint::Kind::CompIn ? kind->hasInput(ep.port)
                                                    : kind->hasOutput(ep.port);
        if (!ok) {
          report(DiagCode::E_BAD_PORT_REF,
                 "'" + ep.spelling() + "' is not " +
                     (ep.kind == Endpoint::Kind::CompIn ? "an input"
                                                        : "an output") +
                     " port of kind '" + kind->name + "'",
                 net.span);
          return false;
        }
        return true;
      }
    }
    return false;
  }

  void checkEndpoints() {
    for (const Net& net : arch_.nets) {
      if (net.driver.kind != Endpoint::Kind::ProductInput &&
          net.driver.kind != Endpoint::Kind::CompOut) {
        report(DiagCode::E_BAD_PORT_REF,
               "net driver '" + net.driver.spelling() +
                   "' must be a product input or a component output",
               net.span);
        continue;
      }
      checkEndpoint(net.driver, net);
      for (const Endpoint& r : net.readers) {
        if (r.kind != Endpoint::Kind::CompIn &&
            r.kind != Endpoint::Kind::ProductOutput) {
          report(DiagCode::E_BAD_PORT_REF,
                 "net reader '" + r.spelling() +
                     "' must be a component input or a product output",
                 net.span);
          continue;
        }
        checkEndpoint(r, net);
      }
    }
  }

  void checkWiring() {
    std::map<Endpoint, int> driverCount;
    std::map<Endpoint, int> readerCount;
    for (const Net& net : arch_.nets) {
      driverCount[net.driver]++;
      for (const Endpoint& r : net.readers) readerCount[r]++;
    }

    for (const std::string& p : arch_.productInputs) {
      Endpoint ep = Endpoint::productInput(p);
      auto it = driverCount.find(ep);
      if (it == driverCount.end()) {
        report(DiagCode::W_DANGLING_INPUT,
               "product input '" + p + "' drives no net");
      } else if (it->second > 1) {
        report(DiagCode::E_MULTI_DRIVER,
               "product input '" + p + "' drives more than one net");
      }
    }
    for (const std::string& p : arch_.productOutputs) {
      Endpoint ep = Endpoint::productOutput(p);
      auto it = readerCount.find(ep);
      if (it == readerCount.end()) {
        report(DiagCode::E_UNCONNECTED_INPUT,
               "product output '" + p + "' is not connected");
      } else if (it->second > 1) {
        report(DiagCode::E_MULTI_DRIVER,
               "product output '" + p + "' is read from more than one net");
      }
    }
    for (const Instance& inst : arch_.instances) {
      const ComponentKind* kind = arch_.kindOf(inst);
      if (!kind) continue;
      for (const std::string& p : kind->inputs) {
        Endpoint ep = Endpoint::compIn(inst.name, p);
        auto it = readerCount.find(ep);
        if (it == readerCount.end()) {
          report(DiagCode::E_UNCONNECTED_INPUT,
                 "input '" + ep.spelling() + "' is not connected");
        } else if (it->second > 1) {
          report(DiagCode::E_MULTI_DRIVER,
                 "input '" + ep.spelling() + "' is read from more than one net");
        }
      }
      for (const std::string& p : kind->outputs) {
        Endpoint ep = Endpoint::compOut(inst.name, p);
        auto it = driverCount.find(ep);
        if (it != driverCount.end() && it->second > 1)
          report(DiagCode::E_MULTI_DRIVER,
                 "output '" + ep.spelling() + "' drives more than one net");
        // driving no net is legal (dangling component output)
      }
    }

    // Product-input nets with no readers.
    for (const Net& net : arch_.nets) {
      if (net.readers.empty() &&
          net.driver.kind == Endpoint::Kind::ProductInput)
        report(DiagCode::W_DANGLING_INPUT,
               "product input '" + net.driver.port + "' has no readers",
               net.span);
    }
  }

  void checkCycles() {
    // Instance-level dataflow edges: u -> v iff a net driven by a CompOut of
    // u is read by a CompIn of v.
    std::map<std::string, std::set<std::string>> succ;
    for (const Net& net : arch_.nets) {
      if (net.driver.kind != Endpoint::Kind::CompOut) continue;
      for (const Endpoint& r : net.readers)
        if (r.kind == Endpoint::Kind::CompIn)
          succ[net.driver.instance].insert(r.instance);
    }
    std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
    bool cyclic = false;
    std::function<void(const std::string&)> dfs = [&](const std::string& u) {
      state[u] = 1;
      for (const std::string& v : succ[u]) {
        if (state[v] == 1) cyclic = true;
        else if (state[v] == 0) dfs(v);
      }
      state[u] = 2;
    };
    for (const Instance& inst : arch_.instances)
      if (state[inst.name] == 0) dfs(inst.name);
    if (cyclic)
      report(DiagCode::E_CYCLE, "instance dataflow graph contains a cycle");
  }

  const Architecture& arch_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate(const Architecture& arch) {
  return Validator(arch).run();
}

std::vector<const Instance*> dataflowOrder(const Architecture& arch) {
  // Predecessor counts over the instance dataflow graph.
  std::map<std::string, std::set<std::string>> preds;
  for (const Instance& inst : arch.instances) preds[inst.name];
  for (const Net& net : arch.nets) {
    if (net.driver.kind != Endpoint::Kind::CompOut) continue;
    for (const Endpoint& r : net.readers)
      if (r.kind == Endpoint::Kind::CompIn && r.instance != net.driver.instance)
        preds[r.instance].insert(net.driver.instance);
  }

  std::vector<const Instance*> order;
  std::set<std::string> placed;
  while (order.size() < arch.instances.size()) {
    const Instance* next = nullptr;
    for (const Instance& inst : arch.instances) {
      if (placed.count(inst.name)) continue;
      bool ready = true;
      for (const std::string& p : preds[inst.name])
        if (!placed.count(p)) { ready = false; break; }
      if (ready) { next = &inst; break; }
    }
    if (!next) throw std::logic_error("E_CYCLE: dataflow graph is cyclic");
    placed.insert(next->name);
    order.push_back(next);
  }
  return order;
}

}  // namespace failsec

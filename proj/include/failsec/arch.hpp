#ifndef FAILSEC_ARCH_HPP
#define FAILSEC_ARCH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace failsec {

struct SourceSpan {
  std::size_t start = 0;  // byte offsets, start <= end
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

// Behavior expression attached to an output port of a component kind.
struct Expr {
  enum class Kind { PortRef, NullLit, Ctor, IfEq };

  Kind kind = Kind::NullLit;
  std::string name;        // input port (PortRef) or constructor (Ctor)
  std::vector<Expr> args;  // Ctor args; IfEq stores [left, right, then, else]

  static Expr portRef(std::string port);
  static Expr nullLit();
  static Expr ctor(std::string constructor, std::vector<Expr> args);
  static Expr ifEq(Expr left, Expr right, Expr thenBranch, Expr elseBranch);

  bool operator==(const Expr& other) const;
  bool operator!=(const Expr& other) const { return !(*this == other); }
};

// Reusable component type: named ports plus one behavior per output.
struct ComponentKind {
  std::string name;
  std::vector<std::string> inputs;   // declaration order
  std::vector<std::string> outputs;  // declaration order
  std::map<std::string, Expr> behavior;  // output port -> expression
  std::optional<SourceSpan> span;

  bool hasInput(const std::string& port) const;
  bool hasOutput(const std::string& port) const;
};

struct Instance {
  std::string name;
  std::string kind;
  std::optional<SourceSpan> span;
};

struct Endpoint {
  enum class Kind { ProductInput, ProductOutput, CompIn, CompOut };

  Kind kind = Kind::ProductInput;
  std::string instance;  // empty for product ports
  std::string port;

  static Endpoint productInput(std::string port);
  static Endpoint productOutput(std::string port);
  static Endpoint compIn(std::string instance, std::string port);
  static Endpoint compOut(std::string instance, std::string port);

  // Report spelling: `key` for product ports, `enc1.out` for instance ports.
  std::string spelling() const;

  bool operator==(const Endpoint& other) const;
  bool operator!=(const Endpoint& other) const { return !(*this == other); }
  bool operator<(const Endpoint& other) const;
};

// Single-driver wiring point. Readers are CompIn or ProductOutput endpoints.
struct Net {
  int id = 0;
  Endpoint driver;
  std::vector<Endpoint> readers;
  std::optional<SourceSpan> span;

  // Net name used in reports: the driver endpoint's spelling.
  std::string name() const { return driver.spelling(); }
};

struct Architecture {
  std::string name;
  std::vector<std::string> productInputs;
  std::vector<std::string> productOutputs;
  std::vector<ComponentKind> kinds;  // declaration order
  std::vector<Instance> instances;   // declaration order
  std::vector<Net> nets;

  const ComponentKind* findKind(const std::string& name) const;
  const Instance* findInstance(const std::string& name) const;
  const ComponentKind* kindOf(const Instance& inst) const;

  // Structural equality ignoring spans; net readers compared as sets.
  bool structurallyEquals(const Architecture& other) const;
};

enum class DiagCode {
  E_MULTI_DRIVER,
  E_UNCONNECTED_INPUT,
  E_CYCLE,
  E_ZERO_PORT_KIND,
  E_BAD_PORT_REF,
  E_DUP_NAME,
  W_DANGLING_INPUT,
};

const char* diagCodeName(DiagCode code);
bool isError(DiagCode code);

struct Diagnostic {
  DiagCode code;
  std::string message;
  std::optional<SourceSpan> span;
};

// Full well-formedness check. Empty result iff every invariant holds;
// warnings (W_*) do not make an architecture invalid.
std::vector<Diagnostic> validate(const Architecture& arch);

bool hasErrors(const std::vector<Diagnostic>& diags);

// Deterministic topological order of instances: among ready instances the
// earliest-declared comes first. Requires an error-free architecture.
// Throws std::logic_error on a cycle.
std::vector<const Instance*> dataflowOrder(const Architecture& arch);

}  // namespace failsec

#endif

#ifndef FAILSEC_VALUE_HPP
#define FAILSEC_VALUE_HPP

#include <set>
#include <string>
#include <vector>

namespace failsec {

// Symbolic datum carried on a net: a free term over uninterpreted
// constructors, a product-input atom, or the distinguished null value.
// Immutable after construction; equality is structural.
class Value {
public:
  enum class Kind { Atom, Null, Term };

  static Value atom(std::string source);
  static Value null();
  static Value term(std::string constructor, std::vector<Value> args);

  Kind kind() const { return kind_; }
  bool isAtom() const { return kind_ == Kind::Atom; }
  bool isNull() const { return kind_ == Kind::Null; }
  bool isTerm() const { return kind_ == Kind::Term; }

  // Atom source name, or Term constructor name.
  const std::string& name() const { return name_; }
  const std::vector<Value>& args() const { return args_; }

  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }
  // Total order, used only for deterministic containers.
  bool operator<(const Value& other) const;

private:
  Value(Kind k, std::string name, std::vector<Value> args)
      : kind_(k), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_;
  std::string name_;
  std::vector<Value> args_;
};

// Canonical textual form: `key`, `null`, `enc(key, msg)`.
std::string render(const Value& v);

// All atom sources occurring anywhere inside v.
std::set<std::string> atomsOf(const Value& v);

}  // namespace failsec

#endif

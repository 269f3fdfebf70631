#include "failsec/value.hpp"

#include <cassert>
#include <sstream>

namespace failsec {

Value Value::atom(std::string source) {
  assert(!source.empty());
  return Value(Kind::Atom, std::move(source), {});
}

Value Value::null() { return Value(Kind::Null, {}, {}); }

Value Value::term(std::string constructor, std::vector<Value> args) {
  assert(!constructor.empty());
  assert(!args.empty());
  return Value(Kind::Term, std::move(constructor), std::move(args));
}

bool Value::operator==(const Value& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Null:
      return true;
    case Kind::Atom:
      return name_ == other.name_;
    case Kind::Term:
      return name_ == other.name_ && args_ == other.args_;
  }
  return false;
}

bool Value::operator<(const Value& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (name_ != other.name_) return name_ < other.name_;
  return args_ < other.args_;
}

std::string render(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Atom:
      return v.name();
    case Value::Kind::Null:
      return "null";
    case Value::Kind::Term: {
      std::ostringstream out;
      out << v.name() << '(';
      bool first = true;
      for (const Value& a : v.args()) {
        if (!first) out << ", ";
        first = false;
        out << render(a);
      }
      out << ')';
      return out.str();
    }
  }
  return {};
}

static void collectAtoms(const Value& v, std::set<std::string>& into) {
  if (v.isAtom()) {
    into.insert(v.name());
  } else if (v.isTerm()) {
    for (const Value& a : v.args()) collectAtoms(a, into);
  }
}

std::set<std::string> atomsOf(const Value& v) {
  std::set<std::string> result;
  collectAtoms(v, result);
  return result;
}

}  // namespace failsec

#include "doctest.h"

#include <random>

#include "failsec/value.hpp"

using failsec::Value;

namespace {

Value encKeyMsg() {
  return Value::term("enc", {Value::atom("key"), Value::atom("msg")});
}

Value randomValue(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> d(0, depth > 0 ? 2 : 1);
  switch (d(rng)) {
    case 0: {
      const char* atoms[] = {"key", "msg", "x"};
      return Value::atom(atoms[rng() % 3]);
    }
    case 1:
      return Value::null();
    default: {
      const char* ctors[] = {"enc", "f"};
      std::vector<Value> args;
      int n = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < n; ++i) args.push_back(randomValue(rng, depth - 1));
      return Value::term(ctors[rng() % 2], std::move(args));
    }
  }
}

}  // namespace

TEST_CASE("structural equality") {
  CHECK(Value::atom("key") == Value::atom("key"));
  CHECK(encKeyMsg() == encKeyMsg());
  CHECK(encKeyMsg() != Value::atom("key"));
  CHECK(Value::atom("key") != Value::null());
  CHECK(Value::null() == Value::null());
  // different constructor or arity
  CHECK(Value::term("enc", {Value::atom("key")}) !=
        Value::term("dec", {Value::atom("key")}));
  CHECK(Value::term("enc", {Value::atom("key")}) != encKeyMsg());
}

TEST_CASE("render") {
  CHECK(render(Value::atom("key")) == "key");
  CHECK(render(Value::null()) == "null");
  CHECK(render(encKeyMsg()) == "enc(key, msg)");
  CHECK(render(Value::term("f", {Value::null(), encKeyMsg()})) ==
        "f(null, enc(key, msg))");
}

TEST_CASE("atomsOf") {
  CHECK(atomsOf(Value::atom("key")) == std::set<std::string>{"key"});
  CHECK(atomsOf(Value::null()).empty());
  CHECK(atomsOf(encKeyMsg()) == std::set<std::string>{"key", "msg"});
  CHECK(atomsOf(Value::term("f", {Value::null(), Value::atom("x")})) ==
        std::set<std::string>{"x"});
}

TEST_CASE("equality is an equivalence and agrees with render") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Value a = randomValue(rng, 3);
    Value b = randomValue(rng, 3);
    Value c = randomValue(rng, 3);
    CHECK(a == a);
    CHECK((a == b) == (b == a));
    if (a == b && b == c) CHECK(a == c);
    // render is injective on the value domain
    CHECK((a == b) == (render(a) == render(b)));
  }
}

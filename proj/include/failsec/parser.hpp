#ifndef FAILSEC_PARSER_HPP
#define FAILSEC_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "failsec/arch.hpp"

namespace failsec {

struct ParseError {
  std::string message;
  SourceSpan span;
  std::vector<std::string> expected;  // token descriptions
};

struct ParseResult {
  std::optional<Architecture> arch;
  std::optional<ParseError> error;

  bool ok() const { return arch.has_value(); }
};

// Parse `.fsl` text. Stops at the first syntax error; semantic problems
// (unknown ports, bad wiring) are left for validate().
ParseResult parse(std::string_view text);

// Canonical formatting, one statement per line, declaration order preserved.
// parse(prettyPrint(a)) is structurally equal to a, and prettyPrint is a
// fixed point on its own output.
std::string prettyPrint(const Architecture& arch);

}  // namespace failsec

#endif

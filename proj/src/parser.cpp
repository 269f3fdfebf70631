#include "failsec/parser.hpp"

#include <cctype>
#include <sstream>

namespace failsec {

namespace {

enum class Tok {
  Ident,
  LBrace,
  RBrace,
  Colon,
  Semi,
  Comma,
  LParen,
  RParen,
  Dot,
  Assign,   // :=
  EqEq,     // ==
  Arrow,    // ->
  End,
};

struct Token {
  Tok type;
  std::string text;
  SourceSpan span;
};

const char* tokDesc(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Assign: return "':='";
    case Tok::EqEq: return "'=='";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct SyntaxError {
  ParseError error;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> lex() {
    std::vector<Token> out;
    for (;;) {
      skipTrivia();
      SourceSpan span = here();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", span});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_'))
          advance();
        span.end = pos_;
        out.push_back({Tok::Ident, std::string(text_.substr(start, pos_ - start)), span});
        continue;
      }
      if (c == ':' && peek(1) == '=') { emit(out, Tok::Assign, 2, span); continue; }
      if (c == '=' && peek(1) == '=') { emit(out, Tok::EqEq, 2, span); continue; }
      if (c == '-' && peek(1) == '>') { emit(out, Tok::Arrow, 2, span); continue; }
      switch (c) {
        case '{': emit(out, Tok::LBrace, 1, span); continue;
        case '}': emit(out, Tok::RBrace, 1, span); continue;
        case ':': emit(out, Tok::Colon, 1, span); continue;
        case ';': emit(out, Tok::Semi, 1, span); continue;
        case ',': emit(out, Tok::Comma, 1, span); continue;
        case '(': emit(out, Tok::LParen, 1, span); continue;
        case ')': emit(out, Tok::RParen, 1, span); continue;
        case '.': emit(out, Tok::Dot, 1, span); continue;
        default: {
          span.end = pos_ + 1;
          throw SyntaxError{ParseError{
              std::string("unexpected character '") + c + "'", span, {}}};
        }
      }
    }
  }

private:
  char peek(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }

  SourceSpan here() const { return SourceSpan{pos_, pos_, line_, col_}; }

  void emit(std::vector<Token>& out, Tok t, std::size_t len, SourceSpan span) {
    std::string text(text_.substr(pos_, len));
    for (std::size_t i = 0; i < len; ++i) advance();
    span.end = pos_;
    out.push_back({t, std::move(text), span});
  }

  void skipTrivia() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        advance();
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool isKeyword(const std::string& s) {
  return s == "component" || s == "product" || s == "inputs" ||
         s == "outputs" || s == "use" || s == "connect" || s == "null" ||
         s == "if" || s == "then" || s == "else";
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Architecture parseFile() {
    Architecture arch;
    while (atKeyword("component")) arch.kinds.push_back(parseKindDef());
    parseProduct(arch);
    expect(Tok::End);
    return arch;
  }

private:
  const Token& cur() const { return toks_[idx_]; }

  bool atKeyword(const char* kw) const {
    return cur().type == Tok::Ident && cur().text == kw;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::ostringstream msg;
    msg << "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg << (i + 1 == expected.size() ? " or " : ", ");
      msg << expected[i];
    }
    msg << ", found ";
    if (cur().type == Tok::Ident) msg << "'" << cur().text << "'";
    else msg << tokDesc(cur().type);
    throw SyntaxError{ParseError{msg.str(), cur().span, std::move(expected)}};
  }

  Token expect(Tok t) {
    if (cur().type != t) fail({tokDesc(t)});
    return toks_[idx_++];
  }

  Token expectKeyword(const char* kw) {
    if (!atKeyword(kw)) fail({std::string("'") + kw + "'"});
    return toks_[idx_++];
  }

  std::string expectName() {
    if (cur().type != Tok::Ident || isKeyword(cur().text)) fail({"identifier"});
    return toks_[idx_++].text;
  }

  std::vector<std::string> parsePorts() {
    std::vector<std::string> ports;
    ports.push_back(expectName());
    while (cur().type == Tok::Comma) {
      ++idx_;
      ports.push_back(expectName());
    }
    return ports;
  }

  Expr parseExpr() {
    if (atKeyword("null")) { ++idx_; return Expr::nullLit(); }
    if (atKeyword("if")) {
      ++idx_;
      Expr left = parseExpr();
      expect(Tok::EqEq);
      Expr right = parseExpr();
      expectKeyword("then");
      Expr thenBranch = parseExpr();
      expectKeyword("else");
      Expr elseBranch = parseExpr();
      return Expr::ifEq(std::move(left), std::move(right),
                        std::move(thenBranch), std::move(elseBranch));
    }
    std::string name = expectName();
    if (cur().type == Tok::LParen) {
      ++idx_;
      std::vector<Expr> args;
      args.push_back(parseExpr());
      while (cur().type == Tok::Comma) {
        ++idx_;
        args.push_back(parseExpr());
      }
      expect(Tok::RParen);
      return Expr::ctor(std::move(name), std::move(args));
    }
    return Expr::portRef(std::move(name));
  }

  ComponentKind parseKindDef() {
    ComponentKind kind;
    kind.span = cur().span;
    expectKeyword("component");
    kind.name = expectName();
    expect(Tok::LBrace);
    expectKeyword("inputs");
    expect(Tok::Colon);
    kind.inputs = parsePorts();
    expect(Tok::Semi);
    expectKeyword("outputs");
    expect(Tok::Colon);
    kind.outputs = parsePorts();
    expect(Tok::Semi);
    while (cur().type == Tok::Ident && !isKeyword(cur().text)) {
      std::string port = expectName();
      expect(Tok::Assign);
      Expr body = parseExpr();
      expect(Tok::Semi);
      kind.behavior.emplace(std::move(port), std::move(body));
    }
    expect(Tok::RBrace);
    return kind;
  }

  // A bare IDENT is a product port; `x.y` is instance x, port y. The role
  // (input vs output) comes from the endpoint's position in the connect.
  Endpoint parseEndpoint(bool driverPosition) {
    std::string first = expectName();
    if (cur().type == Tok::Dot) {
      ++idx_;
      std::string port = expectName();
      return driverPosition ? Endpoint::compOut(first, port)
                            : Endpoint::compIn(first, port);
    }
    return driverPosition ? Endpoint::productInput(first)
                          : Endpoint::productOutput(first);
  }

  void parseProduct(Architecture& arch) {
    if (!atKeyword("product")) fail({"'component'", "'product'"});
    ++idx_;
    arch.name = expectName();
    expect(Tok::LBrace);
    expectKeyword("inputs");
    expect(Tok::Colon);
    arch.productInputs = parsePorts();
    expect(Tok::Semi);
    expectKeyword("outputs");
    expect(Tok::Colon);
    arch.productOutputs = parsePorts();
    expect(Tok::Semi);
    while (atKeyword("use")) {
      Instance inst;
      inst.span = cur().span;
      ++idx_;
      inst.name = expectName();
      expect(Tok::Colon);
      inst.kind = expectName();
      expect(Tok::Semi);
      arch.instances.push_back(std::move(inst));
    }
    while (atKeyword("connect")) {
      Net net;
      net.span = cur().span;
      net.id = static_cast<int>(arch.nets.size());
      ++idx_;
      net.driver = parseEndpoint(true);
      expect(Tok::Arrow);
      net.readers.push_back(parseEndpoint(false));
      while (cur().type == Tok::Comma) {
        ++idx_;
        net.readers.push_back(parseEndpoint(false));
      }
      expect(Tok::Semi);
      arch.nets.push_back(std::move(net));
    }
    expect(Tok::RBrace);
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

void printExpr(std::ostream& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::PortRef:
      out << e.name;
      return;
    case Expr::Kind::NullLit:
      out << "null";
      return;
    case Expr::Kind::Ctor: {
      out << e.name << '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out << ", ";
        printExpr(out, e.args[i]);
      }
      out << ')';
      return;
    }
    case Expr::Kind::IfEq:
      out << "if ";
      printExpr(out, e.args[0]);
      out << " == ";
      printExpr(out, e.args[1]);
      out << " then ";
      printExpr(out, e.args[2]);
      out << " else ";
      printExpr(out, e.args[3]);
      return;
  }
}

void printPorts(std::ostream& out, const std::vector<std::string>& ports) {
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (i) out << ", ";
    out << ports[i];
  }
}

}  // namespace

ParseResult parse(std::string_view text) {
  try {
    std::vector<Token> tokens = Lexer(text).lex();
    Architecture arch = Parser(std::move(tokens)).parseFile();
    return ParseResult{std::move(arch), std::nullopt};
  } catch (const SyntaxError& e) {
    return ParseResult{std::nullopt, e.error};
  }
}

std::string prettyPrint(const Architecture& arch) {
  std::ostringstream out;
  for (const ComponentKind& kind : arch.kinds) {
    out << "component " << kind.name << " {\n";
    out << "  inputs: ";
    printPorts(out, kind.inputs);
    out << ";\n  outputs: ";
    printPorts(out, kind.outputs);
    out << ";\n";
    for (const std::string& port : kind.outputs) {
      auto it = kind.behavior.find(port);
      if (it == kind.behavior.end()) continue;
      out << "  " << port << " := ";
      printExpr(out, it->second);
      out << ";\n";
    }
    out << "}\n\n";
  }
  out << "product " << arch.name << " {\n";
  out << "  inputs: ";
  printPorts(out, arch.productInputs);
  out << ";\n  outputs: ";
  printPorts(out, arch.productOutputs);
  out << ";\n";
  for (const Instance& inst : arch.instances)
    out << "  use " << inst.name << ": " << inst.kind << ";\n";
  for (const Net& net : arch.nets) {
    out << "  connect " << net.driver.spelling() << " -> ";
    for (std::size_t i = 0; i < net.readers.size(); ++i) {
      if (i) out << ", ";
      out << net.readers[i].spelling();
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace failsec

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "failsec/analyzer.hpp"
#include "failsec/parser.hpp"
#include "failsec/report.hpp"

#ifdef _WIN32
#include <io.h>
#define FAILSEC_ISATTY(fd) _isatty(fd)
#else
#include <unistd.h>
#define FAILSEC_ISATTY(fd) isatty(fd)
#endif

namespace {

constexpr int kExitSecure = 0;
constexpr int kExitBreach = 1;
constexpr int kExitError = 2;

bool useColor() {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return FAILSEC_ISATTY(1);
}

bool readFile(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

void printDiagnostics(const std::vector<failsec::Diagnostic>& diags) {
  for (const failsec::Diagnostic& d : diags) {
    std::cerr << failsec::diagCodeName(d.code);
    if (d.span)
      std::cerr << " (line " << d.span->line << ", col " << d.span->column
                << ")";
    std::cerr << ": " << d.message << "\n";
  }
}

// Parses and validates FILE; returns nullopt after printing errors.
std::optional<failsec::Architecture> loadArchitecture(const std::string& path) {
  std::string text;
  if (!readFile(path, text)) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  failsec::ParseResult result = failsec::parse(text);
  if (!result.ok()) {
    std::cerr << "parse error (line " << result.error->span.line << ", col "
              << result.error->span.column << "): " << result.error->message
              << "\n";
    return std::nullopt;
  }
  std::vector<failsec::Diagnostic> diags = failsec::validate(*result.arch);
  printDiagnostics(diags);
  if (failsec::hasErrors(diags)) return std::nullopt;
  return std::move(result.arch);
}

std::int64_t elapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

int runValidate(const std::string& file) {
  return loadArchitecture(file) ? kExitSecure : kExitError;
}

int runCheck(const std::string& file, int maxFaults, const std::string& format,
             bool all, int jobs) {
  auto arch = loadArchitecture(file);
  if (!arch) return kExitError;
  auto start = std::chrono::steady_clock::now();
  failsec::Report report;
  report.file = file;
  report.verdict = failsec::checkFailSecure(*arch, maxFaults, jobs);
  if (all && !report.verdict.secure())
    report.allBreaches =
        failsec::allBreachesAtMinimalK(*arch, maxFaults, jobs);
  report.elapsedMs = elapsedMs(start);

  if (format == "json") {
    std::cout << failsec::emitJson(report, *arch) << "\n";
  } else if (format == "dot") {
    std::cout << failsec::emitDot(*arch, &report.verdict);
  } else {
    std::cout << failsec::emitText(report, *arch, useColor());
  }
  return report.verdict.secure() ? kExitSecure : kExitBreach;
}

int runMinFaults(const std::string& file, int bound,
                 const std::string& format) {
  auto arch = loadArchitecture(file);
  if (!arch) return kExitError;
  auto start = std::chrono::steady_clock::now();
  std::optional<int> k = failsec::minFaultCount(*arch, bound);
  std::int64_t ms = elapsedMs(start);
  if (format == "json") {
    std::cout << failsec::emitMinFaultsJson(file, bound, k, ms) << "\n";
  } else {
    if (k) std::cout << *k << "\n";
    else std::cout << "none\n";
  }
  return k ? kExitBreach : kExitSecure;
}

int runReplay(const std::string& file, const std::string& breachPath) {
  auto arch = loadArchitecture(file);
  if (!arch) return kExitError;
  std::string json;
  if (!readFile(breachPath, json)) {
    std::cerr << "error: cannot read '" << breachPath << "'\n";
    return kExitError;
  }
  auto breach = failsec::parseBreachJson(json, *arch);
  if (!breach) {
    std::cerr << "error: '" << breachPath << "' does not contain a breach for this architecture\n";
    return kExitError;
  }
  bool ok = failsec::verifyCounterexample(*arch, *breach);
  std::cout << (ok ? "counterexample verified\n"
                   : "counterexample does NOT reproduce\n");
  return ok ? kExitSecure : kExitBreach;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fail-secure architecture analyzer"};
  app.set_version_flag("--version", failsec::kToolVersion);
  app.require_subcommand(1);

  std::string file;
  std::string breachFile;
  std::string format = "text";
  int maxFaults = 1;
  int bound = 1;
  int jobs = 1;
  bool all = false;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate an architecture file");
  validate->add_option("FILE", file)->required();

  CLI::App* check = app.add_subcommand("check", "Exhaustively check fail-secure up to N faults");
  check->add_option("FILE", file)->required();
  check->add_option("--max-faults", maxFaults, "Fault budget N")->required();
  check->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json", "dot"}));
  check->add_flag("--all", all, "List every breach at the minimal breaching fault count");
  check->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  CLI::App* minf = app.add_subcommand("min-faults", "Minimum fault count to a breach");
  minf->add_option("FILE", file)->required();
  minf->add_option("--bound", bound, "Search bound")->required();
  minf->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* replay = app.add_subcommand("replay", "Re-verify a previously reported breach");
  replay->add_option("FILE", file)->required();
  replay->add_option("--breach", breachFile, "Breach JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    // CLI11 uses 0 for --help/--version; anything else is a usage error.
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (validate->parsed()) return runValidate(file);
    if (check->parsed()) return runCheck(file, maxFaults, format, all, jobs);
    if (minf->parsed()) return runMinFaults(file, bound, format);
    if (replay->parsed()) return runReplay(file, breachFile);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

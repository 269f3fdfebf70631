// Acceptance suite. Usage: acceptance <failsec-binary> <redundant_enc.fsl>
// Runs every acceptance criterion, prints one PASS/FAIL line each, and
// exits non-zero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "failsec/analyzer.hpp"
#include "failsec/parser.hpp"
#include "support/arch_gen.hpp"
#include "support/corpus.hpp"
#include "support/naive_oracle.hpp"

using namespace failsec;
using Json = nlohmann::ordered_json;

namespace {

struct CommandResult {
  int exitCode = -1;
  std::string output;
  std::int64_t elapsedMs = 0;
};

CommandResult runCommand(const std::string& cmd) {
  CommandResult result;
  auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe))
    result.output.append(buf, n);
  int status = pclose(pipe);
  result.elapsedMs = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string stripTiming(const std::string& json) {
  return std::regex_replace(json, std::regex("\"elapsed_ms\":[0-9]+"),
                            "\"elapsed_ms\":0");
}

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << criterion << ": "
            << name;
  if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++failures;
}

// 12 instances, 2 inputs / 1 output each, deterministic DAG wiring.
Architecture deskScaleDag() {
  Architecture arch;
  arch.name = "Desk";
  arch.productInputs = {"x", "y"};
  arch.productOutputs = {"q"};
  ComponentKind kind;
  kind.name = "Mix";
  kind.inputs = {"a", "b"};
  kind.outputs = {"o"};
  kind.behavior.emplace(
      "o", Expr::ctor("mix", {Expr::portRef("a"), Expr::portRef("b")}));
  arch.kinds.push_back(kind);

  std::vector<Endpoint> drivers = {Endpoint::productInput("x"),
                                   Endpoint::productInput("y")};
  auto netFor = [&](const Endpoint& driver) -> Net& {
    for (Net& net : arch.nets)
      if (net.driver == driver) return net;
    Net net;
    net.id = static_cast<int>(arch.nets.size());
    net.driver = driver;
    arch.nets.push_back(net);
    return arch.nets.back();
  };
  // ci reads the two previous stages, so any input atom needs a long chain
  // of simultaneous faults to reach the output.
  for (int i = 0; i < 12; ++i) {
    std::string name = "c" + std::to_string(i);
    arch.instances.push_back({name, "Mix", {}});
    std::size_t aIdx = drivers.size() >= 3 ? drivers.size() - 1 : 0;
    std::size_t bIdx = drivers.size() >= 4 ? drivers.size() - 2 : 1;
    netFor(drivers[aIdx]).readers.push_back(Endpoint::compIn(name, "a"));
    netFor(drivers[bIdx]).readers.push_back(Endpoint::compIn(name, "b"));
    drivers.push_back(Endpoint::compOut(name, "o"));
  }
  netFor(Endpoint::compOut("c11", "o"))
      .readers.push_back(Endpoint::productOutput("q"));
  return arch;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <failsec-binary> <redundant_enc.fsl>\n";
    return 2;
  }
  std::string bin = argv[1];
  std::string corpusFile = argv[2];
  std::string base = "\"" + bin + "\" check \"" + corpusFile + "\"";

  // 1. fail-secure to one fault, all 7 scenarios, exit 0, < 1 s
  {
    CommandResult r = runCommand(base + " --max-faults 1 --format json");
    bool ok = r.exitCode == 0 && r.elapsedMs < 1000;
    std::string detail;
    if (ok) {
      Json obj = Json::parse(r.output, nullptr, false);
      ok = !obj.is_discarded() && obj["verdict"] == "fail-secure" &&
           obj["max_faults"] == 1 && obj["scenarios_checked"] == 7;
      // the scenario count itself, against the naive oracle
      Architecture arch = testing::redundantEnc();
      ok = ok && testing::naiveScenarioCount(arch, 0) +
                         testing::naiveScenarioCount(arch, 1) ==
                     7;
    } else {
      detail = "exit=" + std::to_string(r.exitCode);
    }
    report(1, "fail-secure to 1 fault over 7 scenarios", ok, detail);
  }

  // 2. breach at two faults: comparator + encryptor, key leak, exit 1, < 1 s
  {
    CommandResult r =
        runCommand(base + " --max-faults 2 --format json --all");
    bool ok = r.exitCode == 1 && r.elapsedMs < 1000;
    std::string detail = "exit=" + std::to_string(r.exitCode);
    if (ok) {
      Json obj = Json::parse(r.output, nullptr, false);
      ok = !obj.is_discarded() && obj["verdict"] == "breach" &&
           obj["faults"].size() == 2;
      if (ok) {
        bool hasCmp = false, hasEnc = false;
        std::string enc;
        for (const auto& f : obj["faults"]) {
          std::string name = f.get<std::string>();
          if (name == "cmp") hasCmp = true;
          if (name == "enc1" || name == "enc2") {
            hasEnc = true;
            enc = name;
          }
        }
        ok = hasCmp && hasEnc;
        // comparator pulls from the failed encryptor's side
        if (ok) {
          std::string side = enc == "enc1" ? "a" : "b";
          ok = obj["routing"]["cmp"]["out"] == side;
        }
        if (ok) {
          std::string leak = obj["leaks"][0]["value"].get<std::string>();
          ok = leak == "key" || leak == "msg";
        }
        if (ok) {
          bool keyLeak = false;
          for (const auto& b : obj["breaches"])
            for (const auto& l : b["leaks"])
              if (l["value"] == "key") keyLeak = true;
          ok = keyLeak;
        }
        if (!ok) detail = "unexpected counterexample shape";
      }
    }
    report(2, "two-fault breach leaks the key", ok, detail);
  }

  // 3. min-faults --bound 3 prints 2
  {
    CommandResult r =
        runCommand("\"" + bin + "\" min-faults \"" + corpusFile + "\" --bound 3");
    bool ok = r.output == "2\n";
    report(3, "minimum fault count is 2", ok, "got '" + r.output + "'");
  }

  // 4. oracle equivalence on the small corpus, < 30 s
  {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    auto corpus = testing::smallCorpus();
    ok = corpus.size() >= 10;
    for (const auto& [name, text] : corpus) {
      Architecture arch = testing::mustParse(text);
      int m = static_cast<int>(arch.instances.size());
      if (m > 4) ok = false;
      for (int n = 0; n <= m; ++n)
        if (checkFailSecure(arch, n).secure() != testing::naiveFailSecure(arch, n))
          ok = false;
      if (minFaultCount(arch, m) != testing::naiveMinFaults(arch, m)) ok = false;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    report(4, "oracle equivalence on " + std::to_string(corpus.size()) +
                  " small architectures",
           ok && ms < 30000);
  }

  // 5. every breach self-validates (corpus + 500 random architectures)
  {
    bool ok = true;
    int breaches = 0;
    for (const auto& [name, text] : testing::smallCorpus()) {
      Architecture arch = testing::mustParse(text);
      Verdict v = checkFailSecure(arch, (int)arch.instances.size());
      if (!v.secure()) {
        ++breaches;
        if (!verifyCounterexample(arch, *v.breach)) ok = false;
      }
    }
    std::mt19937 rng(987654);
    for (int i = 0; i < 500; ++i) {
      Architecture arch = testing::randomArchitecture(rng);
      Verdict v = checkFailSecure(arch, 2);
      if (!v.secure()) {
        ++breaches;
        if (!verifyCounterexample(arch, *v.breach)) ok = false;
      }
    }
    report(5, "counterexample self-validation (" + std::to_string(breaches) +
                  " breaches)",
           ok && breaches > 0);
  }

  // 6. parser round trip over 500 random architectures
  {
    bool ok = true;
    std::mt19937 rng(31337);
    for (int i = 0; i < 500 && ok; ++i) {
      Architecture a = testing::randomArchitecture(rng);
      std::string printed = prettyPrint(a);
      ParseResult r = parse(printed);
      if (!r.ok() || !r.arch->structurallyEquals(a) ||
          prettyPrint(*r.arch) != printed)
        ok = false;
    }
    report(6, "parse/prettyPrint round trip and fixed point", ok);
  }

  // 7. failure semantics: faulty outputs carry one of the instance's inputs
  {
    bool ok = true;
    std::mt19937 rng(5150);
    for (int iter = 0; iter < 120 && ok; ++iter) {
      Architecture arch = testing::randomArchitecture(rng);
      int m = static_cast<int>(arch.instances.size());
      for (int k = 0; k <= std::min(m, 2) && ok; ++k) {
        for (const FaultScenario& s : scenarios(arch, k)) {
          Valuation val = evaluate(arch, s);
          for (const std::string& name : s.faulty) {
            std::vector<Value> inputs;
            for (const Net& net : arch.nets)
              for (const Endpoint& rd : net.readers)
                if (rd.kind == Endpoint::Kind::CompIn && rd.instance == name)
                  inputs.push_back(val.at(net.id));
            for (const Net& net : arch.nets) {
              if (net.driver.kind != Endpoint::Kind::CompOut ||
                  net.driver.instance != name)
                continue;
              bool member = false;
              for (const Value& v : inputs)
                if (v == val.at(net.id)) member = true;
              if (!member) ok = false;
            }
          }
        }
      }
    }
    report(7, "faulty outputs are members of the inputs", ok);
  }

  // 8. identical JSON for 1 worker and 4 workers (timing excluded)
  {
    CommandResult r1 =
        runCommand(base + " --max-faults 2 --format json --jobs 1");
    CommandResult r4 =
        runCommand(base + " --max-faults 2 --format json --jobs 4");
    bool ok = r1.exitCode == 1 && r4.exitCode == 1 &&
              stripTiming(r1.output) == stripTiming(r4.output);
    report(8, "byte-identical reports across worker counts", ok);
  }

  // 9. 12-instance DAG at 3 faults in < 10 s
  {
    Architecture arch = deskScaleDag();
    bool valid = !hasErrors(validate(arch));
    auto start = std::chrono::steady_clock::now();
    Verdict v = checkFailSecure(arch, 3);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    bool ok = valid && ms < 10000 && v.maxFaults == 3 && v.secure() &&
              v.scenariosChecked == 2049;  // sum of C(12,k) * 2^k, k <= 3
    report(9, "desk-scale search (" + std::to_string(v.scenariosChecked) +
                  " scenarios, " + std::to_string(ms) + " ms)",
           ok);
  }

  std::cout << (failures == 0 ? "all criteria passed\n"
                              : std::to_string(failures) + " criteria failed\n");
  return failures == 0 ? 0 : 1;
}

#include "failsec/analyzer.hpp"

#include <algorithm>
#include <thread>

namespace failsec {

std::pair<bool, std::vector<Leak>> isSecure(const Architecture& arch,
                                            const Valuation& val) {
  std::vector<Leak> leaks;
  for (const std::string& out : arch.productOutputs) {
    const Net* net = nullptr;
    for (const Net& n : arch.nets) {
      for (const Endpoint& r : n.readers)
        if (r.kind == Endpoint::Kind::ProductOutput && r.port == out) {
          net = &n;
          break;
        }
      if (net) break;
    }
    if (!net) continue;
    const Value& v = val.at(net->id);
    if (!v.isAtom()) continue;
    for (const std::string& in : arch.productInputs)
      if (v.name() == in) {
        leaks.push_back(Leak{out, v, in});
        break;
      }
  }
  return {leaks.empty(), std::move(leaks)};
}

namespace {

struct FaultChoice {
  std::string name;                   // instance name
  std::vector<Routing> routings;      // enumerateRoutings of its kind
};

// Sorted instance names with their routing tables.
std::vector<FaultChoice> faultChoices(const Architecture& arch) {
  std::vector<FaultChoice> out;
  for (const Instance& inst : arch.instances)
    out.push_back(FaultChoice{inst.name, enumerateRoutings(*arch.kindOf(inst))});
  std::sort(out.begin(), out.end(),
            [](const FaultChoice& a, const FaultChoice& b) {
              return a.name < b.name;
            });
  return out;
}

// Visits k-subsets of indices in lexicographic order.
bool forEachCombination(std::size_t n, std::size_t k,
                        const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!visit(idx)) return false;
    // Next combination.
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] + 1 <= n - (k - i)) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

}  // namespace

void forEachScenario(const Architecture& arch, int k,
                     const std::function<bool(const FaultScenario&)>& visit) {
  std::vector<FaultChoice> choices = faultChoices(arch);
  forEachCombination(
      choices.size(), static_cast<std::size_t>(k),
      [&](const std::vector<std::size_t>& combo) {
        // Routing odometer over the combination, last instance fastest.
        std::vector<std::size_t> pick(combo.size(), 0);
        for (;;) {
          FaultScenario s;
          for (std::size_t i = 0; i < combo.size(); ++i) {
            const FaultChoice& fc = choices[combo[i]];
            s.faulty.insert(fc.name);
            s.routing.emplace(fc.name, fc.routings[pick[i]]);
          }
          if (!visit(s)) return false;
          std::size_t i = pick.size();
          bool advanced = false;
          while (i > 0) {
            --i;
            if (++pick[i] < choices[combo[i]].routings.size()) {
              advanced = true;
              break;
            }
            pick[i] = 0;
          }
          if (!advanced) return true;
        }
      });
}

std::vector<FaultScenario> scenarios(const Architecture& arch, int k) {
  std::vector<FaultScenario> out;
  forEachScenario(arch, k, [&](const FaultScenario& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

std::uint64_t scenarioCount(const Architecture& arch, int k) {
  std::uint64_t count = 0;
  std::vector<FaultChoice> choices = faultChoices(arch);
  forEachCombination(choices.size(), static_cast<std::size_t>(k),
                     [&](const std::vector<std::size_t>& combo) {
                       std::uint64_t prod = 1;
                       for (std::size_t i : combo)
                         prod *= choices[i].routings.size();
                       count += prod;
                       return true;
                     });
  return count;
}

namespace {

constexpr std::size_t kBlockSize = 256;

// Searches fault count k; on a breach reports its canonical index within k.
// When collectAll is non-null, gathers every breach at k instead of the
// first. jobs parallelizes evaluation within canonical-prefix blocks so the
// result never depends on the worker count.
std::optional<std::pair<std::uint64_t, Breach>> searchStage(
    const Architecture& arch, int k, int jobs,
    std::uint64_t* evaluated, std::vector<Breach>* collectAll) {
  std::optional<std::pair<std::uint64_t, Breach>> found;
  std::vector<FaultScenario> block;
  std::uint64_t blockStart = 0;

  auto flush = [&]() -> bool {  // returns false to stop the scan
    if (block.empty()) return true;
    std::vector<std::optional<Breach>> results(block.size());
    auto evalRange = [&](std::size_t begin, std::size_t step) {
      for (std::size_t i = begin; i < block.size(); i += step) {
        Valuation val = evaluate(arch, block[i]);
        auto [secure, leaks] = isSecure(arch, val);
        if (!secure)
          results[i] = Breach{block[i], std::move(val), std::move(leaks)};
      }
    };
    int workers = std::max(1, jobs);
    if (workers == 1 || block.size() == 1) {
      evalRange(0, 1);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w)
        threads.emplace_back(evalRange, static_cast<std::size_t>(w), workers);
      for (std::thread& t : threads) t.join();
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i]) continue;
      if (collectAll) {
        collectAll->push_back(*results[i]);
        if (!found) found = {blockStart + i, *results[i]};
      } else {
        found = {blockStart + i, std::move(*results[i])};
        *evaluated += i + 1;  // canonical prefix up to the breach
        return false;
      }
    }
    *evaluated += block.size();
    blockStart += block.size();
    block.clear();
    return true;
  };

  bool stopped = false;
  forEachScenario(arch, k, [&](const FaultScenario& s) {
    block.push_back(s);
    if (block.size() < kBlockSize) return true;
    if (!flush()) {
      stopped = true;
      return false;
    }
    return true;
  });
  if (!stopped) flush();
  return found;
}

int clampFaults(const Architecture& arch, int n) {
  int m = static_cast<int>(arch.instances.size());
  return std::min(std::max(n, 0), m);
}

}  // namespace

Verdict checkFailSecure(const Architecture& arch, int n, int jobs) {
  int bound = clampFaults(arch, n);
  Verdict verdict;
  verdict.maxFaults = bound;
  for (int k = 0; k <= bound; ++k) {
    auto hit = searchStage(arch, k, jobs, &verdict.scenariosChecked, nullptr);
    if (hit) {
      verdict.kind = Verdict::Kind::Breach;
      verdict.breach = std::move(hit->second);
      return verdict;
    }
  }
  verdict.kind = Verdict::Kind::FailSecureUpTo;
  return verdict;
}

std::vector<Breach> allBreachesAtMinimalK(const Architecture& arch, int n,
                                          int jobs) {
  int bound = clampFaults(arch, n);
  std::uint64_t evaluated = 0;
  for (int k = 0; k <= bound; ++k) {
    std::vector<Breach> all;
    auto hit = searchStage(arch, k, jobs, &evaluated, &all);
    if (hit) return all;
  }
  return {};
}

std::optional<int> minFaultCount(const Architecture& arch, int bound,
                                 int jobs) {
  int limit = clampFaults(arch, bound);
  std::uint64_t evaluated = 0;
  for (int k = 0; k <= limit; ++k)
    if (searchStage(arch, k, jobs, &evaluated, nullptr)) return k;
  return std::nullopt;
}

bool verifyCounterexample(const Architecture& arch, const Breach& breach) {
  Valuation val;
  try {
    val = evaluate(arch, breach.scenario);
  } catch (const std::exception&) {
    return false;
  }
  if (val != breach.valuation) return false;
  auto [secure, leaks] = isSecure(arch, val);
  return !secure && leaks == breach.leaks;
}

}  // namespace failsec

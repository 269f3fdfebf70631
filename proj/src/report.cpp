#include "failsec/report.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "json.hpp"

namespace failsec {

namespace {

using Json = nlohmann::ordered_json;

std::map<int, std::string> netNames(const Architecture& arch) {
  std::map<int, std::string> names;
  for (const Net& net : arch.nets) names.emplace(net.id, net.name());
  return names;
}

Json breachFields(const Architecture& arch, const Breach& breach) {
  Json obj = Json::object();
  Json faults = Json::array();
  for (const std::string& name : breach.scenario.faulty) faults.push_back(name);
  obj["faults"] = std::move(faults);

  Json routing = Json::object();
  for (const auto& [inst, route] : breach.scenario.routing) {
    Json r = Json::object();
    for (const auto& [out, in] : route) r[out] = in;
    routing[inst] = std::move(r);
  }
  obj["routing"] = std::move(routing);

  std::map<int, std::string> names = netNames(arch);
  Json valuation = Json::object();
  for (const Net& net : arch.nets) {
    auto it = breach.valuation.find(net.id);
    if (it != breach.valuation.end())
      valuation[names.at(net.id)] = render(it->second);
  }
  obj["valuation"] = std::move(valuation);

  Json leaks = Json::array();
  for (const Leak& leak : breach.leaks) {
    Json l = Json::object();
    l["output"] = leak.output;
    l["value"] = render(leak.value);
    l["matches_input"] = leak.matchedInput;
    leaks.push_back(std::move(l));
  }
  obj["leaks"] = std::move(leaks);
  return obj;
}

}  // namespace

std::string emitJson(const Report& report, const Architecture& arch) {
  Json obj = Json::object();
  obj["tool"] = kToolName;
  obj["version"] = kToolVersion;
  obj["file"] = report.file;
  obj["verdict"] = report.verdict.secure() ? "fail-secure" : "breach";
  obj["max_faults"] = report.verdict.maxFaults;
  obj["scenarios_checked"] = report.verdict.scenariosChecked;
  obj["elapsed_ms"] = report.elapsedMs;
  if (!report.verdict.secure()) {
    Json fields = breachFields(arch, *report.verdict.breach);
    for (auto& [key, value] : fields.items()) obj[key] = std::move(value);
    if (report.allBreaches) {
      Json all = Json::array();
      for (const Breach& b : *report.allBreaches)
        all.push_back(breachFields(arch, b));
      obj["breaches"] = std::move(all);
    }
  }
  return obj.dump();
}

std::string emitMinFaultsJson(const std::string& file, int bound,
                              const std::optional<int>& minFaults,
                              std::int64_t elapsedMs) {
  Json obj = Json::object();
  obj["tool"] = kToolName;
  obj["version"] = kToolVersion;
  obj["file"] = file;
  obj["bound"] = bound;
  if (minFaults) obj["min_faults"] = *minFaults;
  else obj["min_faults"] = nullptr;
  obj["elapsed_ms"] = elapsedMs;
  return obj.dump();
}

namespace {

const char* kReset = "\033[0m";
const char* kGreen = "\033[32m";
const char* kRed = "\033[31m";

void appendBreachText(std::ostream& out, const Architecture& arch,
                      const Breach& breach) {
  out << "  faults:";
  for (const std::string& name : breach.scenario.faulty) out << ' ' << name;
  out << '\n';
  for (const auto& [inst, route] : breach.scenario.routing)
    for (const auto& [o, i] : route)
      out << "  routing: " << inst << '.' << o << " <- " << inst << '.' << i
          << '\n';
  for (const Leak& leak : breach.leaks)
    out << "  leak: " << leak.output << " = " << render(leak.value)
        << " (matches input " << leak.matchedInput << ")\n";
  std::map<int, std::string> names = netNames(arch);
  for (const Net& net : arch.nets) {
    auto it = breach.valuation.find(net.id);
    if (it != breach.valuation.end())
      out << "  net " << names.at(net.id) << " = " << render(it->second)
          << '\n';
  }
}

}  // namespace

std::string emitText(const Report& report, const Architecture& arch,
                     bool color) {
  std::ostringstream out;
  if (report.verdict.secure()) {
    if (color) out << kGreen;
    out << "FAIL-SECURE up to " << report.verdict.maxFaults << " fault(s)";
    if (color) out << kReset;
    out << '\n';
  } else {
    const Breach& breach = *report.verdict.breach;
    if (color) out << kRed;
    out << "BREACH with " << breach.scenario.faulty.size() << " fault(s)";
    if (color) out << kReset;
    out << '\n';
    appendBreachText(out, arch, breach);
    if (report.allBreaches) {
      out << "all breaches at this fault count: " << report.allBreaches->size()
          << '\n';
      for (std::size_t i = 0; i < report.allBreaches->size(); ++i) {
        out << "breach " << (i + 1) << ":\n";
        appendBreachText(out, arch, (*report.allBreaches)[i]);
      }
    }
  }
  out << "scenarios checked: " << report.verdict.scenariosChecked << '\n';
  out << "elapsed: " << report.elapsedMs << " ms\n";
  return out.str();
}

namespace {

std::string dotQuote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string nodeId(const Endpoint& ep) {
  switch (ep.kind) {
    case Endpoint::Kind::ProductInput: return "in:" + ep.port;
    case Endpoint::Kind::ProductOutput: return "out:" + ep.port;
    default: return ep.instance;
  }
}

}  // namespace

std::string emitDot(const Architecture& arch, const Verdict* verdict) {
  const Breach* breach =
      verdict && !verdict->secure() ? &*verdict->breach : nullptr;
  std::ostringstream out;
  out << "digraph " << dotQuote(arch.name) << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, style=rounded];\n";
  for (const std::string& p : arch.productInputs)
    out << "  " << dotQuote("in:" + p) << " [label=" << dotQuote(p)
        << ", shape=ellipse, style=solid];\n";
  for (const std::string& p : arch.productOutputs)
    out << "  " << dotQuote("out:" + p) << " [label=" << dotQuote(p)
        << ", shape=ellipse, style=solid];\n";
  for (const Instance& inst : arch.instances) {
    bool faulty = breach && breach->scenario.faulty.count(inst.name) > 0;
    out << "  " << dotQuote(inst.name) << " [label="
        << dotQuote(inst.name + "\\n" + inst.kind);
    if (faulty) out << ", style=\"rounded,filled\", fillcolor=lightcoral";
    out << "];\n";
  }
  for (const Net& net : arch.nets) {
    std::string label;
    if (breach) {
      auto it = breach->valuation.find(net.id);
      if (it != breach->valuation.end())
        label = net.name() + " = " + render(it->second);
    }
    for (const Endpoint& reader : net.readers) {
      out << "  " << dotQuote(nodeId(net.driver)) << " -> "
          << dotQuote(nodeId(reader));
      if (!label.empty()) out << " [label=" << dotQuote(label) << "]";
      out << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

namespace {

// Recursive descent over the render() syntax: IDENT | "null" | IDENT(args).
std::optional<Value> parseValueAt(const std::string& s, std::size_t& pos) {
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  };
  skip();
  std::size_t start = pos;
  while (pos < s.size() &&
         (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
    ++pos;
  if (pos == start) return std::nullopt;
  std::string name = s.substr(start, pos - start);
  skip();
  if (pos < s.size() && s[pos] == '(') {
    ++pos;
    std::vector<Value> args;
    for (;;) {
      auto arg = parseValueAt(s, pos);
      if (!arg) return std::nullopt;
      args.push_back(std::move(*arg));
      skip();
      if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
      if (pos < s.size() && s[pos] == ')') { ++pos; break; }
      return std::nullopt;
    }
    return Value::term(std::move(name), std::move(args));
  }
  if (name == "null") return Value::null();
  return Value::atom(std::move(name));
}

}  // namespace

std::optional<Value> parseValueText(const std::string& text) {
  std::size_t pos = 0;
  auto v = parseValueAt(text, pos);
  if (!v) return std::nullopt;
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos])))
    ++pos;
  if (pos != text.size()) return std::nullopt;
  return v;
}

std::optional<Breach> parseBreachJson(const std::string& json,
                                      const Architecture& arch) {
  Json obj = Json::parse(json, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) return std::nullopt;
  if (!obj.contains("faults") || !obj.contains("routing") ||
      !obj.contains("valuation") || !obj.contains("leaks"))
    return std::nullopt;

  Breach breach;
  for (const auto& f : obj["faults"]) {
    if (!f.is_string()) return std::nullopt;
    breach.scenario.faulty.insert(f.get<std::string>());
  }
  for (const auto& [inst, route] : obj["routing"].items()) {
    Routing r;
    for (const auto& [o, i] : route.items()) {
      if (!i.is_string()) return std::nullopt;
      r.emplace(o, i.get<std::string>());
    }
    breach.scenario.routing.emplace(inst, std::move(r));
  }

  std::map<std::string, int> idOfName;
  for (const Net& net : arch.nets) idOfName.emplace(net.name(), net.id);
  for (const auto& [name, text] : obj["valuation"].items()) {
    auto it = idOfName.find(name);
    if (it == idOfName.end() || !text.is_string()) return std::nullopt;
    auto v = parseValueText(text.get<std::string>());
    if (!v) return std::nullopt;
    breach.valuation.emplace(it->second, std::move(*v));
  }

  for (const auto& l : obj["leaks"]) {
    if (!l.is_object() || !l.contains("output") || !l.contains("value") ||
        !l.contains("matches_input"))
      return std::nullopt;
    auto v = parseValueText(l["value"].get<std::string>());
    if (!v) return std::nullopt;
    breach.leaks.push_back(Leak{l["output"].get<std::string>(), *v,
                                l["matches_input"].get<std::string>()});
  }
  if (breach.leaks.empty()) return std::nullopt;
  return breach;
}

}  // namespace failsec

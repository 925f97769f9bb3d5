#include "cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lambdamu/harness.hpp"
#include "lambdamu/parse.hpp"
#include "lambdamu/reduction.hpp"
#include "lambdamu/typing.hpp"

namespace lambdamu::cli {

namespace {

using nlohmann::json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string file;
  std::string format = "text";
  std::string rules = "bmMrte";
  std::string strategy = "lo";
  std::size_t fuel = 0;
  std::uint64_t seed = 0;
  bool seedSet = false;
};

std::string readInput(const Common& c) {
  if (!c.input.empty() && !c.file.empty()) throw Usage("give either a term or --file, not both");
  if (!c.file.empty()) {
    std::ifstream in(c.file);
    if (!in) throw Usage("cannot read " + c.file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  if (c.input.empty()) throw Usage("no input term");
  return c.input;
}

TermPath parsePath(const std::string& s) {
  TermPath p;
  if (s == "-" || s.empty()) return p;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part != "0" && part != "1") throw Usage("bad path component '" + part + "' in " + s);
    p.push_back(static_cast<std::uint8_t>(part[0] - '0'));
  }
  return p;
}

// "rule@path", e.g. "mu'@0.1" or "beta@-".
Redex parseStep(const std::string& s) {
  auto at = s.find('@');
  std::string rn = s.substr(0, at);
  auto r = ruleFromName(rn);
  if (!r) throw Usage("unknown rule '" + rn + "'");
  return {at == std::string::npos ? TermPath{} : parsePath(s.substr(at + 1)), *r};
}

json derivationJson(const Derivation& d) {
  json j{{"rule", ruleName(d.rule)}, {"judgment", printJudgment(d.conclusion)}};
  j["premises"] = json::array();
  for (const auto& p : d.premises) j["premises"].push_back(derivationJson(p));
  return j;
}

json contextJson(const Context& ctx) {
  json g = json::object(), t = json::object();
  for (const auto& [x, ty] : ctx.gamma) g[x.name] = print(ty);
  for (const auto& [a, ty] : ctx.theta) t[a.name] = print(ty);
  return {{"gamma", g}, {"theta", t}};
}

int statusCode(Status s) {
  switch (s) {
    case Status::Normal:
    case Status::Stopped:
      return kOk;
    case Status::CycleFound:
      return kCycleOrFail;
    case Status::FuelExceeded:
      return kFuel;
  }
  return kOk;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  bool asJson() const { return c.format == "json"; }

  int check() {
    ParsedJudgment pj = parseJudgment(readInput(c));
    if (!pj.type) throw Usage("check needs a type: \"ctx |- M : T\"");
    Context ctx;
    for (auto& [x, t] : pj.gamma) ctx.gamma.insert_or_assign(x, t);
    for (auto& [a, t] : pj.theta) ctx.theta.insert_or_assign(a, t);
    auto r = checkJudgment(ctx, pj.term, *pj.type);
    if (auto* d = std::get_if<Derivation>(&r)) {
      if (asJson()) {
        out_ << json::object({{"ok", true}, {"derivation", derivationJson(*d)}}).dump(2) << "\n";
      } else {
        out_ << printDerivation(*d);
      }
      return kOk;
    }
    const auto& e = std::get<TypeError>(r);
    report(e.path, e.reason, pj.term);
    return kTypeError;
  }

  int infer() {
    Term m = parseTerm(readInput(c));
    auto r = inferPrincipal(m);
    if (auto* p = std::get_if<Principal>(&r)) {
      if (asJson()) {
        json j = contextJson(p->ctx);
        j["type"] = print(p->type);
        j["atoms"] = p->atoms;
        out_ << j.dump(2) << "\n";
      } else {
        out_ << print(p->type) << "\n";
        if (!p->ctx.gamma.empty() || !p->ctx.theta.empty()) {
          out_ << "judgment: " << printJudgment({p->ctx, m, p->type}) << "\n";
        }
      }
      return kOk;
    }
    const auto& u = std::get<Untypable>(r);
    report(u.path, "untypable: " + u.reason, m);
    return kTypeError;
  }

  int redexes() {
    Term m = parseTerm(readInput(c));
    auto rs = findRedexes(m, RuleSet::parse(c.rules));
    if (asJson()) {
      json a = json::array();
      for (const auto& r : rs) a.push_back({{"path", pathString(r.path)}, {"rule", ruleName(r.rule)}});
      out_ << a.dump(2) << "\n";
    } else {
      for (const auto& r : rs) out_ << pathString(r.path) << " " << ruleName(r.rule) << "\n";
    }
    return kOk;
  }

  int reduceCmd() {
    Term m = parseTerm(readInput(c));
    ReduceOptions opt;
    auto st = strategyFromName(c.strategy);
    if (!st) throw Usage("unknown strategy '" + c.strategy + "'");
    opt.strategy = *st;
    if (c.fuel) opt.fuel = c.fuel;
    opt.preferMu = !preferMuPrime;
    for (const auto& s : script) opt.script.push_back(parseStep(s));
    // --step alone implies the interactive strategy.
    if (!opt.script.empty()) {
      if (opt.strategy != Strategy::LeftmostOutermost && opt.strategy != Strategy::Interactive)
        throw Usage("--step only works with --strategy interactive");
      opt.strategy = Strategy::Interactive;
    }
    return emit(reduce(m, RuleSet::parse(c.rules), opt));
  }

  int normalize() {
    Term m = parseTerm(readInput(c));
    return emit(normalizeWN(m, c.fuel ? c.fuel : kDefaultStepFuel));
  }

  int etaCmd() {
    Term m = parseTerm(readInput(c));
    EtaResult e = eta(m, RuleSet::parse(c.rules), c.fuel ? c.fuel : kDefaultNodeFuel);
    if (asJson()) {
      json j{{"explored", e.explored}};
      switch (e.verdict) {
        case SNVerdict::SN:
          j["verdict"] = "sn";
          j["eta"] = e.value;
          break;
        case SNVerdict::NotSN:
          j["verdict"] = "not-sn";
          j["cycle"] = json::parse(traceToJson(*e.cycle));
          break;
        case SNVerdict::FuelExceeded:
          j["verdict"] = "fuel-exceeded";
          break;
      }
      out_ << j.dump(2) << "\n";
    } else {
      switch (e.verdict) {
        case SNVerdict::SN:
          out_ << e.value << "\n";
          break;
        case SNVerdict::NotSN:
          out_ << "not SN; cycle:\n" << traceToText(*e.cycle);
          break;
        case SNVerdict::FuelExceeded:
          out_ << "fuel exceeded after " << e.explored << " nodes\n";
          break;
      }
    }
    if (e.verdict == SNVerdict::NotSN) return kCycleOrFail;
    return e.verdict == SNVerdict::FuelExceeded ? kFuel : kOk;
  }

  int enumerate() {
    checkBounds(bounds);
    if (countOnly) {
      std::size_t n = countTerms(bounds);
      out_ << (asJson() ? json{{"count", n}}.dump() : std::to_string(n)) << "\n";
      return kOk;
    }
    json a = json::array();
    forEachTerm(bounds, [&](const Term& t) {
      if (asJson()) {
        a.push_back(print(t));
      } else {
        out_ << print(t) << "\n";
      }
      return true;
    });
    if (asJson()) out_ << a.dump(2) << "\n";
    return kOk;
  }

  int suite() {
    checkBounds(bounds);
    ConditionReport r = runLemmaSuite(suiteName, bounds);
    out_ << (asJson() ? r.toJson() + "\n" : r.toText());
    if (!reportFile.empty()) {
      std::ofstream f(reportFile);
      if (!f) throw Usage("cannot write " + reportFile);
      f << r.toJson() << "\n";
    }
    return r.passed() ? kOk : kCycleOrFail;
  }

  Common c;
  EnumBounds bounds;
  bool countOnly = false;
  bool preferMuPrime = false;
  std::vector<std::string> script;
  std::string suiteName;
  std::string reportFile;

 private:
  static void checkBounds(const EnumBounds& b) {
    if (b.maxCxty < 1) throw Usage("--max-cxty must be at least 1");
    if (b.lamVarPool < 1 || b.muVarPool < 1) throw Usage("pools must be at least 1");
  }

  int emit(const Trace& t) {
    out_ << (asJson() ? traceToJson(t) + "\n" : traceToText(t));
    return statusCode(t.status);
  }

  void report(const TermPath& p, const std::string& reason, const Term& m) {
    if (asJson()) {
      out_ << json{{"ok", false}, {"path", pathString(p)}, {"reason", reason}}.dump(2) << "\n";
      return;
    }
    std::string sub;
    try {
      sub = print(subtermAt(m, p));
    } catch (const PathError&) {
      sub = "?";
    }
    err_ << "type error at " << pathString(p) << " (" << sub << "): " << reason << "\n";
  }

  std::ostream& out_;
  std::ostream& err_;
};

void termOptions(CLI::App* s, Common& c) {
  s->add_option("term", c.input, "term in concrete syntax");
  s->add_option("-f,--file", c.file, "read the input from a file");
}

void boundOptions(CLI::App* s, EnumBounds& b) {
  s->add_option("--max-cxty", b.maxCxty, "largest term size")->capture_default_str();
  s->add_option("--lam-pool", b.lamVarPool, "free lambda-variable pool size")->capture_default_str();
  s->add_option("--mu-pool", b.muVarPool, "free mu-variable pool size")->capture_default_str();
  s->add_flag("--typable", b.typableOnly, "only typable terms");
  s->add_option("--seq-len", b.seqMaxLen, "orthogonal sequence length bound")->capture_default_str();
  s->add_option("--seq-cxty", b.seqElemCxty, "orthogonal element size bound (0: half of --max-cxty)");
  s->add_option("--node-fuel", b.fuel, "per-term node fuel for SN/WN tests")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  CLI::App app{"lambda-mu calculus toolkit"};
  app.require_subcommand(1);
  app.add_option("--format", r.c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", r.c.seed, "fresh-name counter seed");
  app.add_option("--rules", r.c.rules, "rule letters from bmMrte (M is mu')")->capture_default_str();
  app.add_option("--fuel", r.c.fuel, "step fuel (reduce/normalize) or node fuel (eta)");
  app.fallthrough();

  auto* check = app.add_subcommand("check", "check a judgment \"ctx |- M : T ; theta\"");
  termOptions(check, r.c);
  auto* infer = app.add_subcommand("infer", "principal typing");
  termOptions(infer, r.c);
  auto* redexes = app.add_subcommand("redexes", "list redexes");
  termOptions(redexes, r.c);
  auto* reduce = app.add_subcommand("reduce", "reduce under a strategy");
  termOptions(reduce, r.c);
  reduce->add_option("--strategy", r.c.strategy, "lo | li | search | interactive | cycle-demo")->capture_default_str();
  reduce->add_option("--step", r.script, "interactive step rule@path (repeatable)")->allow_extra_args(false);
  reduce->add_flag("--prefer-mu-prime", r.preferMuPrime, "break mu/mu' ties toward mu'");
  auto* normalize = app.add_subcommand("normalize", "reach a FULL-normal form");
  termOptions(normalize, r.c);
  auto* etaCmd = app.add_subcommand("eta", "longest reduction length");
  termOptions(etaCmd, r.c);
  auto* enumerate = app.add_subcommand("enumerate", "list terms up to a size");
  boundOptions(enumerate, r.bounds);
  enumerate->add_flag("--count", r.countOnly, "print only the count");
  auto* suite = app.add_subcommand("suite", "run a property suite");
  suite->add_option("name", r.suiteName, "suite id")->required()->check(CLI::IsMember(suiteNames()));
  suite->add_option("--report", r.reportFile, "also write the JSON report here");
  boundOptions(suite, r.bounds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (app.count("--seed")) setFreshSeed(r.c.seed);

  try {
    if (*check) return r.check();
    if (*infer) return r.infer();
    if (*redexes) return r.redexes();
    if (*reduce) return r.reduceCmd();
    if (*normalize) return r.normalize();
    if (*etaCmd) return r.etaCmd();
    if (*enumerate) return r.enumerate();
    if (*suite) return r.suite();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotARedex& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PathError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const StrategyFailed& e) {
    err << "strategy failed: " << e.what() << "\n";
    return kCycleOrFail;
  }
  return kUsage;
}

}  // namespace lambdamu::cli

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out run(std::vector<std::string> args) {
  args.insert(args.begin(), "lambdamu");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = lambdamu::cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  return {code, o.str(), e.str()};
}

const char* kCycle = "(#b.#a.[a][a]x)(#a.[a][a]x)";

}  // namespace

TEST_CASE("check") {
  auto r = run({"check", std::string("x:_|_ |- ") + kCycle + " : _|_"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(->e)") != std::string::npos);
  CHECK(run({"check", "|- \\x.x : A -> A"}).code == 0);
  r = run({"check", "|- ([a]x)y : A"});
  CHECK(r.code == 1);
  CHECK(r.err.find("type error at") != std::string::npos);
  CHECK(run({"check", "|- (x : A"}).code == 2);
  auto j = nlohmann::json::parse(run({"--format", "json", "check", "|- \\x.x : A -> A"}).out);
  CHECK(j["ok"] == true);
  CHECK(j["derivation"]["rule"] == "->i");
}

TEST_CASE("infer") {
  CHECK(run({"infer", "\\x.x"}).out == "T0 -> T0\n");
  CHECK(run({"infer", "\\x.#a.(x)\\y.[a]y"}).out == "((T0 -> _|_) -> _|_) -> T0\n");
  auto r = run({"infer", "\\x.(x)x"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("redexes") {
  auto r = run({"--rules", "bmMre", "redexes", "(#a.[a]x)#b.[b]y"});
  CHECK(r.code == 0);
  CHECK(r.out == "- mu\n- mu'\n");
}

TEST_CASE("reduce: cycle demo golden") {
  auto r = run({"--rules", "bmMrte", "reduce", "--strategy", "cycle-demo", kCycle});
  CHECK(r.code == 3);
  CHECK(r.out ==
        "0 - - (#b. #a. [a][a]x)#a. [a][a]x\n"
        "1 mu' - #a. [a](#b. #a. [a][a]x)[a](#b. #a. [a][a]x)x\n"
        "2 mu 0.0.1.0 #a. [a](#b. #a. [a][a]x)[a]#b. #a. [a][a]x\n"
        "3 rho 0.0.1 #a. [a](#b. #a. [a][a]x)#a. [a][a]x\n"
        "4 theta - (#b. #a. [a][a]x)#a. [a][a]x\n"
        "status cycle\n");
}

TEST_CASE("reduce, normalize, eta exit codes") {
  CHECK(run({"reduce", "(\\x.x)y"}).out == "0 - - (\\x. x)y\n1 beta - y\nstatus normal\n");
  auto n = run({"normalize", kCycle});
  CHECK(n.code == 0);
  CHECK(n.out.find("status normal") != std::string::npos);
  CHECK(run({"--rules", "bmrte", "eta", "(\\x.x)y"}).out == "1\n");
  CHECK(run({"--fuel", "1", "reduce", "(\\x.x)((\\y.y)z)"}).code == 4);
  auto om = run({"--rules", "b", "eta", "(\\x.(x)x)\\x.(x)x"});
  CHECK(om.code == 3);
  CHECK(run({"reduce", "--step", "beta@0", "(x)y"}).code == 2);
  auto st = run({"reduce", "--step", "beta@1", "(\\x.x)((\\y.y)z)"});
  CHECK(st.code == 0);
  CHECK(st.out.find("status stopped") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"reduce", "--nope", "x"}).code == 2);
  CHECK(run({"--rules", "q", "reduce", "x"}).code == 2);
  auto p = run({"reduce", "(x"});
  CHECK(p.code == 2);
  CHECK(p.err.find("1:3") != std::string::npos);
  CHECK(run({"reduce", "x", "-f", "/nonexistent"}).code == 2);
  CHECK(run({"suite", "no-such"}).code == 2);
}

TEST_CASE("file input and reports") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "lambdamu_cli_test";
  fs::create_directories(dir);
  fs::path term = dir / "t.lm", rep = dir / "r.json";
  std::ofstream(term) << "(\\x.x)\n  y\n";
  CHECK(run({"reduce", "-f", term.string()}).out.find("1 beta - y") != std::string::npos);
  auto s = run({"suite", "cycle-witness", "--report", rep.string()});
  CHECK(s.code == 0);
  std::ifstream in(rep);
  auto j = nlohmann::json::parse(in);
  CHECK(j["verdict"] == "pass-at-bound");
  fs::remove_all(dir);
}

TEST_CASE("enumerate") {
  CHECK(run({"enumerate", "--max-cxty", "2"}).out == "x\n\\x1. x1\n\\x1. x\n#a1. x\n[a]x\n");
  CHECK(run({"enumerate", "--max-cxty", "5", "--count"}).out == "528\n");
}

TEST_CASE("text and json traces agree") {
  auto t = run({"reduce", "--strategy", "cycle-demo", kCycle});
  auto j = nlohmann::json::parse(run({"--format", "json", "reduce", "--strategy", "cycle-demo", kCycle}).out);
  std::istringstream lines(t.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "0 - - " + j["initial"].get<std::string>());
  for (const auto& s : j["steps"]) {
    std::getline(lines, line);
    std::string path;
    for (const auto& i : s["path"]) path += (path.empty() ? "" : ".") + std::to_string(i.get<int>());
    if (path.empty()) path = "-";
    CHECK(line == std::to_string(s["index"].get<int>()) + " " + s["rule"].get<std::string>() + " " + path + " " +
                      s["after"].get<std::string>());
  }
  std::getline(lines, line);
  CHECK(line == "status " + j["status"].get<std::string>());
}

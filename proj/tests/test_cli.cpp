#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "tfg/cli.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = tfg::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tfg_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("entropy: row carries count and bound") {
  const auto o = call({"entropy", "--n", "3"});
  CHECK(o.code == 0);
  CHECK(o.out.find("n,h_lo,h_hi,count,bound") == 0);
  CHECK(o.out.find(",25165824,true,") != std::string::npos);
}

TEST_CASE("lef: minimal level reported") {
  const auto o = call({"--json", "lef", "--ball", "1", "--max-n", "8"});
  CHECK(o.code == 0);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j.contains("minimal_n"));
  CHECK(!j["minimal_n"].is_null());
}

TEST_CASE("rationals must be p/q") {
  CHECK(call({"folner-bound", "--eps", "0.5"}).code == 2);
  CHECK(call({"folner-bound", "--eps", "1/0"}).code == 2);
  CHECK(call({"folner-bound", "--eps", "1/2"}).code == 0);
}

TEST_CASE("argument and configuration errors exit 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({"entropy", "--bogus", "1"}).code == 2);
  const auto bad = write_file("bad.json", R"({"command": "entropy", "n": 2, "colour": 3})");
  const auto o = call({"--config", bad});
  CHECK(o.code == 2);
  CHECK(o.err.find("colour") != std::string::npos);
  CHECK(call({"--config", write_file("broken.json", "{")}).code == 2);
  CHECK(call({"--config", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("config supplies options and the command line overrides them") {
  const auto cfg = write_file("phi.json", R"({"command": "psi-table", "eps": "1/2", "steps": 2})");
  const auto a = call({"--config", cfg});
  CHECK(a.code == 0);
  const auto b = call({"psi-table", "--eps", "1/2", "--steps", "2"});
  CHECK(a.out == b.out);
  const auto c = call({"--config", cfg, "psi-table", "--steps", "1"});
  CHECK(c.code == 0);
  CHECK(c.out != a.out);
}

TEST_CASE("same arguments give byte-identical artifacts") {
  const auto p1 = scratch("a.json").string(), p2 = scratch("b.json").string();
  const std::vector<std::string> base = {"--json", "--seed", "7", "sofic-check", "--n", "6", "--radius", "2"};
  auto args1 = base, args2 = base;
  args1.insert(args1.begin(), {"--out", p1});
  args2.insert(args2.begin(), {"--out", p2});
  CHECK(call(args1).code == call(args2).code);
  const auto t1 = read_file(p1);
  CHECK(!t1.empty());
  CHECK(t1 == read_file(p2));
  CHECK(call({"freewords", "--max-len", "2", "--radius", "8"}).out ==
        call({"freewords", "--max-len", "2", "--radius", "8"}).out);
}

TEST_CASE("every subcommand runs on small inputs") {
  CHECK(call({"folner-extract"}).code == 0);
  CHECK(call({"phi-table", "--eps", "1/2", "--steps", "2"}).code == 0);
  // 4x4 tiles leave 7/8 of the vertices on a crossing edge: a failed check, not an error.
  const auto small = call({"quasitile", "--side", "32", "--eps", "1/4", "--tiles", "1..4"});
  CHECK(small.code == 1);
  CHECK(small.err.find("check failed") != std::string::npos);
  CHECK(call({"quasitile", "--side", "64", "--eps", "1/4", "--tiles", "1..32"}).code == 0);
  const auto s = call({"--json", "sofic-check", "--n", "12", "--radius", "2", "--eps", "1/128", "--displacement", "1/4"});
  CHECK(s.code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["pass"] == true);
}

TEST_CASE("installed binary honours the exit-code contract") {
  const char* bin = std::getenv("TFG_CLI");
  if (!bin) return;
  auto status = [&](const std::string& args) {
    const std::string cmd = std::string(bin) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("entropy --n 2") == 0);
  CHECK(status("folner-bound --eps 0.5") == 2);
  CHECK(status("lef --ball 1 --max-n 8") == 0);
  std::array<char, 256> buf{};
  std::string text;
  FILE* pipe = popen((std::string(bin) + " entropy --n 3").c_str(), "r");
  REQUIRE(pipe);
  while (fgets(buf.data(), buf.size(), pipe)) text += buf.data();
  CHECK(pclose(pipe) == 0);
  CHECK(text.find("25165824") != std::string::npos);
}

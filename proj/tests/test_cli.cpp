#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace concc::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> const& args) {
  std::ostringstream out, err;
  int const code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(std::string const& name) {
  auto const dir = fs::temp_directory_path() / "concc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(fs::path const& p, Json const& j) { std::ofstream(p) << j.dump(1); }

Json read(fs::path const& p) { return Json::parse(std::ifstream(p)); }

}  // namespace

TEST_CASE("reports are structured") {
  auto const r = invoke({"check", "klein-bottle"});
  CHECK(r.code == exit_pass);
  auto const j = Json::parse(r.out);
  CHECK(j["format"] == "concc-report");
  CHECK(j["version"] == 1);
  CHECK(j["status"] == "pass");
  CHECK(j["checks"].size() == 2);
  CHECK(j.contains("timings"));
  CHECK(exit_code(j) == exit_pass);

  auto bad = j;
  bad["status"] = "unknown";
  CHECK(exit_code(bad) == exit_unknown);
  bad["status"] = "fail";
  CHECK(exit_code(bad) == exit_fail);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == exit_usage);
  CHECK(invoke({"frobnicate"}).code == exit_usage);
  CHECK(invoke({"check", "klein-bottle", "--nope"}).code == exit_usage);
  CHECK(invoke({"tower", "build", "--stages", "many"}).code == exit_usage);
  CHECK(invoke({"smallcanc", "pieces", "--presentation", "< a |"}).code ==
        exit_usage);
  CHECK(invoke({"reverify", scratch("missing.json").string()}).code ==
        exit_fail);
}

TEST_CASE("every command passes") {
  CHECK(invoke({"check", "bs12"}).code == exit_pass);
  CHECK(invoke({"verify", "hyp-spec-gen", "--scale", "20"}).code == exit_pass);
  CHECK(invoke({"smallcanc", "pieces", "--scale", "5"}).code == exit_pass);
  CHECK(invoke({"smallcanc", "pieces", "--presentation",
                "< a, b | a b a^-1 b^-1 >"})
            .code == exit_pass);
  CHECK(invoke({"relpaths", "audit", "--seed", "7", "--instances", "500"})
            .code == exit_pass);
  CHECK(invoke({"tower", "build", "--mode", "coset", "--stages", "20"}).code ==
        exit_pass);
}

TEST_CASE("hyp-spec-gen below the threshold fails honestly") {
  auto const r = invoke({"verify", "hyp-spec-gen", "--scale", "10"});
  CHECK(r.code == exit_fail);
  CHECK(Json::parse(r.out)["status"] == "fail");
}

TEST_CASE("reports are deterministic apart from timings") {
  for (auto const& args : std::vector<std::vector<std::string>>{
           {"tower", "build", "--classes", "3", "--stages", "40", "--seedless"},
           {"relpaths", "audit", "--seed", "3", "--instances", "300"}}) {
    auto const a = Json::parse(invoke(args).out);
    auto const b = Json::parse(invoke(args).out);
    CHECK(without_timings(a) == without_timings(b));
    CHECK_FALSE(without_timings(a).contains("timings"));
  }
  auto const audit =
      Json::parse(invoke({"relpaths", "audit", "--seed", "3", "--instances",
                          "300"})
                      .out);
  CHECK(audit["seed"] == 3);
}

TEST_CASE("--out, tower verify and reverify") {
  auto const file = scratch("tower.json");
  auto const r = invoke({"tower", "build", "--classes", "3", "--stages", "50",
                         "--seedless", "--out", file.string()});
  REQUIRE(r.code == exit_pass);
  CHECK(r.out == "pass: " + file.string() + "\n");
  auto const report = read(file);
  CHECK(report["status"] == "pass");

  CHECK(invoke({"tower", "verify", file.string()}).code == exit_pass);
  CHECK(invoke({"reverify", file.string()}).code == exit_pass);

  auto const raw = scratch("raw_tower.json");
  write(raw, report["certificate"]);
  CHECK(invoke({"tower", "verify", raw.string()}).code == exit_pass);

  auto tampered = report;
  for (auto& s : tampered["certificate"]["stages"]) {
    if (s["index"] == 10) {
      s["witness"] = "x2";
    }
  }
  auto const tf = scratch("tampered.json");
  write(tf, tampered);
  auto const t = invoke({"reverify", tf.string()});
  CHECK(t.code == exit_fail);
  CHECK(t.out.find("stage 10") != std::string::npos);

  auto truncated = report;
  auto& steps = truncated["certificate"]["independence"]["steps"];
  steps.erase(steps.begin() + 2);
  auto const uf = scratch("truncated.json");
  write(uf, truncated);
  auto const u = invoke({"reverify", uf.string()});
  CHECK(u.code == exit_fail);
  CHECK(u.out.find("missing step") != std::string::npos);

  auto const junk = scratch("junk.json");
  std::ofstream(junk) << "{ not json";
  CHECK(invoke({"reverify", junk.string()}).code == exit_fail);
}

TEST_CASE("reverify replays every report type") {
  std::vector<std::vector<std::string>> const commands{
      {"check", "klein-bottle"},
      {"check", "bs12"},
      {"verify", "hyp-spec-gen", "--scale", "20"},
      {"smallcanc", "pieces", "--scale", "4"},
      {"relpaths", "audit", "--seed", "5", "--instances", "200"},
      {"tower", "build", "--mode", "coset", "--stages", "15"},
      {"tower", "build", "--classes", "3", "--stages", "20", "--gadget"}};
  int n = 0;
  for (auto const& cmd : commands) {
    auto const f = scratch("replay" + std::to_string(n++) + ".json");
    auto args = cmd;
    args.push_back("--out");
    args.push_back(f.string());
    REQUIRE(invoke(args).code == exit_pass);
    auto const rv = invoke({"reverify", f.string()});
    CHECK(rv.code == exit_pass);
  }

  auto const f = scratch("klein.json");
  REQUIRE(invoke({"check", "klein-bottle", "--out", f.string()}).code ==
          exit_pass);
  auto j = read(f);
  j["certificate"]["certificates"][0]["images"][1] = "t";
  write(f, j);
  CHECK(invoke({"reverify", f.string()}).code != exit_pass);
}

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "record.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = arrowlab::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(const std::vector<std::string>& args, int expected = 0) {
  auto r = run(args);
  CHECK(r.code == expected);
  return json::parse(r.out);
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("arrowlab_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("cli: arrow verdicts and records") {
  auto k6 = run_json({"arrow", "--host", "K6", "--target", "K3", "-q", "2"});
  CHECK(k6["command"] == "arrow");
  CHECK(k6["output"]["verdict"] == "arrow");
  CHECK(k6["output"]["witness"].is_null());
  CHECK(k6["inputs"]["host"]["graph6"] == "E~~w");
  CHECK(k6["inputs"]["host"]["sha256"] == arrowlab::cli::sha256_hex("E~~w"));
  CHECK_FALSE(k6["params"].contains("workers"));
  CHECK_FALSE(k6["stats"].contains("wall_ms"));

  auto k5 = run_json({"arrow", "--host", "K5", "--target", "K3"});
  CHECK(k5["output"]["verdict"] == "not-arrow");
  CHECK(k5["output"]["witness_validated"] == true);
  CHECK(k5["output"]["witness"].size() == 10);

  auto empty = run_json({"arrow", "--host", "D??", "--target", "K3"});
  CHECK(empty["output"]["verdict"] == "not-arrow");
  CHECK(empty["stats"]["nodes"].get<int>() <= 1);
}

TEST_CASE("cli: sha256 of the empty string") {
  CHECK(arrowlab::cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("cli: errors and budgets") {
  auto bad = run({"arrow", "--host", "D~{x", "--target", "K3"});
  CHECK(bad.code == 1);
  const auto rec = json::parse(bad.out);
  CHECK(rec["error"].get<std::string>().find("at byte 3") != std::string::npos);

  CHECK(run({"arrow", "--target", "K3"}).code == 1);
  CHECK(run({"nosuch"}).code == 1);
  CHECK(run({"ramsey", "--sizes", "3,x"}).code == 1);

  auto budget = run_json({"--budget", "3", "arrow", "--host", "K6", "--target", "K3"}, 2);
  CHECK(budget["output"]["status"] == "budget-exceeded");
  CHECK(budget["params"]["budget"] == 3);
  auto after = run_json({"arrow", "--host", "K6", "--target", "K3", "--budget", "3"}, 2);
  CHECK(after == budget);
}

TEST_CASE("cli: records do not depend on worker count") {
  const std::vector<std::string> base = {"minimal", "--host", "K6", "--target", "K3"};
  auto with = [&](const char* w) {
    auto a = base;
    a.push_back("--workers");
    a.push_back(w);
    return run(a).out;
  };
  const auto one = with("1");
  CHECK(one == with("2"));
  CHECK(one == with("8"));
}

TEST_CASE("cli: cache round trip") {
  const auto dir = temp_dir("cache");
  const std::vector<std::string> args = {"--cache-dir", dir.string(), "arrow", "--host", "K5", "--target", "K3"};
  auto first = run(args);
  CHECK(first.code == 0);
  CHECK(first.err.find("stored") != std::string::npos);
  auto second = run(args);
  CHECK(second.code == 0);
  CHECK(second.err.find("hit") != std::string::npos);
  CHECK(second.out == first.out);

  auto audited = args;
  audited.push_back("--audit");
  auto third = run(audited);
  CHECK(third.err.find("audit passed") != std::string::npos);
  CHECK(third.out == first.out);

  // A tampered entry is caught by the audit and replaced.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    json j = json::parse(arrowlab::cli::read_file(entry.path()));
    j["output"]["verdict"] = "arrow";
    std::ofstream(entry.path()) << j.dump(2);
  }
  auto tampered = run(audited);
  CHECK(tampered.code == 1);
  CHECK(tampered.err.find("mismatch") != std::string::npos);
  CHECK(run(audited).out == first.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli: subcommands") {
  CHECK(run_json({"ramsey", "--sizes", "3,3", "--max", "8"})["output"]["value"] == 6);
  auto minimal = run_json({"minimal", "--host", "K6", "--target", "K3"});
  CHECK(minimal["output"]["minimal"] == true);
  CHECK(minimal["output"]["deletions"].size() == 15);
  for (const auto& d : minimal["output"]["deletions"]) CHECK(d["witness_validated"] == true);

  auto shrink = run_json({"shrink", "--host", "K7", "--target", "K3"});
  CHECK(shrink["output"]["graph"]["m"] == 15);

  auto builtin = run_json({"sender", "builtin"});
  CHECK(builtin["output"]["senders"].size() == 2);
  const auto s = builtin["output"]["senders"][0];
  auto verify = run_json({"sender", "verify", "--graph", s["graph6"].get<std::string>(), "--target", "K3", "-e",
                          std::to_string(s["e"].get<int>()), "-f", std::to_string(s["f"].get<int>()), "-d",
                          std::to_string(s["d"].get<int>()), "--polarity", s["polarity"].get<std::string>()});
  CHECK(verify["output"]["verdict"] == "verified");

  auto ind = run_json({"indicator", "--target", "K3", "--f", "P3", "-q", "3", "--provider", "mock"});
  CHECK(ind["output"]["structure_problems"].empty());
  CHECK(ind["output"]["concrete"] == false);

  auto thm12 = run_json({"construct", "thm12", "--target", "K3", "--f", "K2", "--provider", "mock",
                         "--no-criticality"});
  CHECK(thm12["output"]["parts"].size() > 0);

  auto gf = run_json({"colouring", "classical", "--name", "gf16-3", "-n", "16"});
  CHECK(gf["output"]["colouring"].size() == 120);
  CHECK(gf["output"]["q"] == 3);

  auto thm43 = run_json({"equiv", "thm43", "--host", "K6"});
  CHECK(thm43["output"]["consistent"] == true);
  CHECK(thm43["output"]["arrows_k3_k2"] == false);

  auto thm17 = run_json({"equiv", "thm17", "--host", "K7", "--s", "0,1,2,3,4,5", "--apex", "0"});
  CHECK(thm17["output"]["outside_triangle"] == false);
  CHECK(thm17["output"]["mono_triangle"].is_null());

  auto focus = run_json({"--seed", "5", "equiv", "focus", "--random", "3,60", "-q", "2"});
  CHECK(focus["output"]["size_bound_met"] == true);

  auto gen = run_json({"--seed", "7", "pattern", "gen", "--r", "2", "-k", "2", "-n", "5", "--trials", "2000"});
  REQUIRE(gen["output"]["pattern"].is_object());
  const auto dir = temp_dir("pattern");
  const auto file = dir / "pattern.json";
  std::ofstream(file) << gen["output"]["pattern"].dump();
  auto check = run_json({"pattern", "check", "--pattern", file.string()});
  CHECK(check["output"]["certified"] == true);
  std::filesystem::remove_all(dir);

  auto ok = run_json({"colouring", "check", "--host", "C5", "--target", "K3", "--colouring", "1,2,1,2,1"});
  CHECK(ok["output"]["valid"] == true);
  auto mono = run_json({"colouring", "check", "--host", "K3", "--target", "K3", "--colouring", "1,1,1"});
  CHECK(mono["output"]["valid"] == false);
  CHECK(mono["output"]["violation"]["kind"] == "monochromatic-copy");
}

TEST_CASE("cli: DOT output") {
  auto k3 = run({"export", "--graph", "K3"});
  CHECK(k3.code == 0);
  CHECK(k3.out.find("graph") == 0);
  CHECK(k3.out.find("0 -- 1") != std::string::npos);

  auto coloured = run({"export", "--graph", "K3", "--colouring", "1,2,2"});
  CHECK(coloured.out.find("red") != std::string::npos);

  auto witness = run({"--format", "dot", "arrow", "--host", "K5", "--target", "K3"});
  CHECK(witness.code == 0);
  CHECK(witness.out.find("color=") != std::string::npos);

  auto thm12 = run({"--format", "dot", "construct", "thm12", "--target", "K3", "--f", "K2", "--provider", "mock",
                    "--no-criticality"});
  CHECK(thm12.out.find("subgraph cluster_0") != std::string::npos);
}

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "record.hpp"

namespace arrowlab::cli {

struct Options {
  // global
  std::uint64_t budget = kNoBudget;
  unsigned workers = 0;
  std::uint64_t seed = 0;
  std::string cache_dir;
  std::string format = "json";
  bool audit = false;

  // inputs
  std::string host, target, other, f, f0, graph, colouring, gq, pattern_file, record_file, input_file;
  std::string corpus, provider = "corpus", inner = "default", polarity = "positive";
  std::string name, sizes, fam, s_list, random_spec;

  std::size_t q = 2, extra = 1, d = 0, k = 3, e = 0, f_edge = 1, n_max = 20, max_vertices = 5;
  std::size_t iterations = 2, trials = 1000, r = 3, n = 5, apex = 0;
  std::size_t r_override = 0;
  bool verify = false, check = false, no_criticality = false, check_host = false, matching = false;
};

struct Result {
  json output = json::object();
  json stats = json::object();
  int exit_code = 0;
};

struct Job {
  std::string command;
  json inputs = json::object();
  json params = json::object();
  std::function<Result()> compute;
};

/// command is the subcommand path, e.g. "arrow" or "equiv tower".
Job make_job(const std::string& command, const Options& o);

/// Graph, colouring and parts found in a record rendered as DOT.
std::string record_to_dot(const json& record);

}  // namespace arrowlab::cli

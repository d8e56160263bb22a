#pragma once

// Record plumbing shared by the CLI front end and its tests.

#include <filesystem>
#include <optional>
#include <string>

#include "arrowlab/equivalence.hpp"
#include "json.hpp"

namespace arrowlab::cli {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(const std::string& bytes);

struct GraphInput {
  Graph graph;
  std::string graph6;
};

/// Tries a graph6 file first, then a built-in name like "K3+K2", then graph6 text.
GraphInput load_graph(const std::string& arg);
/// Comma or whitespace separated colours, inline or in a file.
EdgeColouring load_colouring(const std::string& arg, std::size_t q, std::size_t m);
std::vector<std::size_t> parse_list(const std::string& text);
std::string read_file(const std::filesystem::path& p);

json input_json(const GraphInput& g);
json graph_json(const Graph& g);
json stats_json(const SearchStats& s);
json colouring_json(const EdgeColouring& c);
json parts_json(const std::vector<Part>& parts);
std::vector<Part> parts_from_json(const json& j);
const char* verdict_name(Verdict v);

json sender_json(const SenderSpec& s);
SenderSpec sender_from_json(const json& j);
std::vector<SenderSpec> load_corpus(const std::filesystem::path& p);

json pattern_json(const ColourPattern& p);
ColourPattern pattern_from_json(const json& j);

/// Records keyed by a hash of command, inputs and parameters. Readers take a
/// shared lock and writers an exclusive lock on <dir>/.lock.
class RecordCache {
 public:
  explicit RecordCache(std::filesystem::path dir);
  [[nodiscard]] static std::string key(const json& record_head);
  std::optional<json> load(const std::string& key) const;
  void store(const std::string& key, const json& record) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace arrowlab::cli

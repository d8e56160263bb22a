#include "record.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

namespace arrowlab::cli {

namespace {

class FileLock {
 public:
  FileLock(const std::filesystem::path& p, bool exclusive) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw Error("cache: cannot open lock file " + p.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw Error("cache: cannot lock " + p.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphInput load_graph(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    const std::string text = trim(read_file(arg));
    try {
      Graph g = from_graph6(text);
      return {g, to_graph6(g)};
    } catch (const Error& e) {
      throw Error(arg + ": " + e.what());
    }
  }
  if (auto g = named_graph(arg)) return {*g, to_graph6(*g)};
  try {
    Graph g = from_graph6(arg);
    return {g, to_graph6(g)};
  } catch (const Error& e) {
    throw Error("'" + arg + "' is not a file or a known graph name, and as graph6: " + e.what());
  }
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(cur, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != cur.size()) throw Error("not a number: '" + cur + "'");
    out.push_back(static_cast<std::size_t>(v));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '[' || c == ']') flush();
    else cur += c;
  }
  flush();
  return out;
}

EdgeColouring load_colouring(const std::string& arg, std::size_t q, std::size_t m) {
  std::error_code ec;
  const std::string text = std::filesystem::is_regular_file(arg, ec) ? read_file(arg) : arg;
  const auto values = parse_list(text);
  if (values.size() != m)
    throw Error("colouring has " + std::to_string(values.size()) + " entries, host has " + std::to_string(m) + " edges");
  std::vector<Colour> cs;
  for (auto v : values) {
    if (v < 1 || v > q) throw Error("colour " + std::to_string(v) + " outside 1.." + std::to_string(q));
    cs.push_back(static_cast<Colour>(v));
  }
  return EdgeColouring(q, std::move(cs));
}

json input_json(const GraphInput& g) { return {{"graph6", g.graph6}, {"sha256", sha256_hex(g.graph6)}}; }

json graph_json(const Graph& g) { return {{"graph6", to_graph6(g)}, {"n", g.n()}, {"m", g.m()}}; }

json stats_json(const SearchStats& s) {
  return {{"nodes", s.nodes}, {"propagations", s.propagations}, {"subproblems", s.subproblems}};
}

json colouring_json(const EdgeColouring& c) {
  json a = json::array();
  for (Colour x : c.colours()) a.push_back(static_cast<int>(x));
  return a;
}

json parts_json(const std::vector<Part>& parts) {
  json a = json::array();
  for (const Part& p : parts)
    a.push_back({{"role", p.role}, {"parent", p.parent}, {"leaf", p.leaf}, {"mock", p.mock},
                 {"vertices", p.vertices}, {"edges", p.edges}});
  return a;
}

std::vector<Part> parts_from_json(const json& j) {
  std::vector<Part> out;
  for (const auto& x : j) {
    Part p;
    p.role = x.at("role").get<std::string>();
    p.parent = x.at("parent").get<int>();
    p.leaf = x.at("leaf").get<bool>();
    p.mock = x.value("mock", false);
    p.vertices = x.at("vertices").get<std::vector<Vertex>>();
    p.edges = x.at("edges").get<std::vector<EdgeId>>();
    out.push_back(std::move(p));
  }
  return out;
}

const char* verdict_name(Verdict v) { return v == Verdict::Arrow ? "arrow" : "not-arrow"; }

json sender_json(const SenderSpec& s) {
  return {{"graph6", to_graph6(s.graph)}, {"e", s.e}, {"f", s.f}, {"polarity", to_string(s.polarity)},
          {"q", s.params.q}, {"h", to_graph6(s.params.h)}, {"d", s.params.d},
          {"provenance", to_string(s.provenance)}, {"verified", s.verified}};
}

SenderSpec sender_from_json(const json& j) {
  SenderSpec s;
  s.graph = from_graph6(j.at("graph6").get<std::string>());
  s.e = j.at("e").get<EdgeId>();
  s.f = j.at("f").get<EdgeId>();
  const auto pol = j.at("polarity").get<std::string>();
  if (pol != "positive" && pol != "negative") throw Error("sender polarity must be positive or negative");
  s.polarity = pol == "positive" ? Polarity::Positive : Polarity::Negative;
  s.params.q = j.at("q").get<std::size_t>();
  s.params.h = from_graph6(j.at("h").get<std::string>());
  s.params.d = j.at("d").get<std::size_t>();
  s.provenance = Provenance::Loaded;
  s.verified = j.value("verified", false);
  if (s.e >= s.graph.m() || s.f >= s.graph.m()) throw Error("sender signal edge out of range");
  return s;
}

std::vector<SenderSpec> load_corpus(const std::filesystem::path& p) {
  const json j = json::parse(read_file(p));
  std::vector<SenderSpec> out;
  for (const auto& x : j.at("senders")) out.push_back(sender_from_json(x));
  return out;
}

json pattern_json(const ColourPattern& p) {
  json members = json::array();
  for (const Graph& g : p.members) members.push_back(to_graph6(g));
  return {{"n", p.n}, {"r", p.r}, {"k", p.k}, {"members", members}};
}

ColourPattern pattern_from_json(const json& j) {
  ColourPattern p;
  p.n = j.at("n").get<std::size_t>();
  p.r = j.at("r").get<std::size_t>();
  p.k = j.at("k").get<std::size_t>();
  for (const auto& g : j.at("members")) p.members.push_back(from_graph6(g.get<std::string>()));
  return p;
}

RecordCache::RecordCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string RecordCache::key(const json& record_head) { return sha256_hex(record_head.dump()); }

std::optional<json> RecordCache::load(const std::string& key) const {
  FileLock lock(dir_ / ".lock", false);
  const auto path = dir_ / (key + ".json");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
  try {
    return json::parse(read_file(path));
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void RecordCache::store(const std::string& key, const json& record) const {
  FileLock lock(dir_ / ".lock", true);
  const auto path = dir_ / (key + ".json");
  const auto tmp = dir_ / (key + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    out << record.dump(2) << "\n";
    if (!out) throw Error("cache: cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace arrowlab::cli

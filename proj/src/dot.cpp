#include "arrowlab/dot.hpp"

#include <map>
#include <sstream>

namespace arrowlab {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* dot_colour_name(Colour c) {
  static const char* names[] = {"black",  "red",    "blue",   "gold",      "darkgreen", "purple",
                                "orange", "cyan",   "brown",  "magenta",   "gray",      "olive",
                                "navy",   "maroon", "teal",   "deeppink",  "lime"};
  return c <= kMaxColours ? names[c] : "black";
}

std::string export_dot(const Graph& g, const DotAnnotations& notes) {
  if (notes.colouring && notes.colouring->size() != g.m()) throw Error("export_dot: colouring size mismatch");
  std::ostringstream out;
  out << "graph " << quoted(notes.name) << " {\n";
  std::vector<char> placed(g.n(), 0);
  std::size_t cluster = 0;
  for (const Part& p : notes.parts) {
    if (p.parent != -1) continue;
    std::vector<Vertex> mine;
    for (Vertex v : p.vertices)
      if (v < g.n() && !placed[v]) {
        placed[v] = 1;
        mine.push_back(v);
      }
    out << "  subgraph cluster_" << cluster++ << " {\n    label=" << quoted(p.role) << ";\n";
    for (Vertex v : mine) out << "    " << v << ";\n";
    out << "  }\n";
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (!placed[v]) out << "  " << v << ";\n";
  std::map<EdgeId, std::string> labels;
  for (const auto& [e, text] : notes.edge_labels) {
    auto& slot = labels[e];
    slot += (slot.empty() ? "" : ",") + text;
  }
  for (EdgeId id = 0; id < g.m(); ++id) {
    const Edge& e = g.edge(id);
    out << "  " << e.u << " -- " << e.v;
    std::vector<std::string> attrs;
    if (notes.colouring && (*notes.colouring)[id] != 0)
      attrs.push_back("color=" + std::string(dot_colour_name((*notes.colouring)[id])));
    if (auto it = labels.find(id); it != labels.end()) attrs.push_back("label=" + quoted(it->second));
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace arrowlab

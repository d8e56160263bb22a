#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arrowlab/gadgets.hpp"

namespace arrowlab {

struct DotAnnotations {
  std::string name = "G";
  std::optional<EdgeColouring> colouring;
  /// Top-level parts become clusters; a vertex is drawn in the first one holding it.
  std::vector<Part> parts;
  std::vector<std::pair<EdgeId, std::string>> edge_labels;
};

/// Undirected DOT with vertices and edges in id order.
std::string export_dot(const Graph& g, const DotAnnotations& notes = {});

/// Colour name used for colour c in DOT output.
const char* dot_colour_name(Colour c);

}  // namespace arrowlab

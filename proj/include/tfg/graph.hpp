#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tfg {

struct LabeledEdge {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  std::uint32_t label = 0;
  auto operator<=>(const LabeledEdge&) const = default;
};

// Directed graph whose edges carry labels in [0, labels).
struct LabeledGraph {
  std::size_t vertices = 0;
  std::uint32_t labels = 0;
  std::vector<LabeledEdge> edges;

  // No vertex emits two edges with the same label, and |E| <= labels * |V|.
  bool is_proper() const;
  // Undirected degree (in + out, loops counted once per endpoint occurrence).
  std::size_t max_degree() const;
};

}  // namespace tfg

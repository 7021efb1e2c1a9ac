#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "tfg/graph.hpp"
#include "tfg/hyperfinite.hpp"

namespace tfg::testing {

// Properly labelled graph: each vertex emits at most one edge per label.
inline std::shared_ptr<LabeledGraph> random_graph(std::mt19937_64& rng, std::size_t vertices, std::uint32_t labels,
                                                  double density = 0.6) {
  auto G = std::make_shared<LabeledGraph>();
  G->vertices = vertices;
  G->labels = labels;
  std::uniform_real_distribution<double> coin(0, 1);
  for (std::uint32_t v = 0; v < vertices; ++v)
    for (std::uint32_t t = 0; t < labels; ++t)
      if (coin(rng) < density) G->edges.push_back({v, static_cast<std::uint32_t>(rng() % vertices), t});
  std::sort(G->edges.begin(), G->edges.end());
  return G;
}

// Random partition into blocks of size at most K.
inline std::vector<Block> random_blocks(std::mt19937_64& rng, std::size_t vertices, std::size_t K) {
  std::vector<std::uint32_t> order(vertices);
  for (std::uint32_t i = 0; i < vertices; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < vertices;) {
    const std::size_t len = 1 + rng() % K;
    Block b(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(std::min(vertices, i + len)));
    std::sort(b.begin(), b.end());
    blocks.push_back(std::move(b));
    i += len;
  }
  return blocks;
}

// Keeps each edge with probability 1/2.
inline std::shared_ptr<LabeledGraph> random_subgraph(std::mt19937_64& rng, const LabeledGraph& G) {
  auto H = std::make_shared<LabeledGraph>();
  H->vertices = G.vertices;
  H->labels = G.labels;
  for (const auto& e : G.edges)
    if (rng() % 2) H->edges.push_back(e);
  return H;
}

// Induced subgraph on a random vertex subset (at least one vertex), with its embedding.
inline std::pair<std::shared_ptr<LabeledGraph>, std::vector<std::uint32_t>> random_induced(std::mt19937_64& rng,
                                                                                           const LabeledGraph& G) {
  std::vector<std::uint32_t> embed;
  for (std::uint32_t v = 0; v < G.vertices; ++v)
    if (rng() % 3) embed.push_back(v);
  if (embed.empty()) embed.push_back(0);
  std::vector<std::int64_t> back(G.vertices, -1);
  for (std::uint32_t i = 0; i < embed.size(); ++i) back[embed[i]] = i;
  auto H = std::make_shared<LabeledGraph>();
  H->vertices = embed.size();
  H->labels = G.labels;
  for (const auto& e : G.edges)
    if (back[e.source] >= 0 && back[e.target] >= 0)
      H->edges.push_back({static_cast<std::uint32_t>(back[e.source]), static_cast<std::uint32_t>(back[e.target]), e.label});
  return {H, embed};
}

// G placed at the first vertices of a larger graph; new vertices emit edges anywhere.
inline std::pair<std::shared_ptr<LabeledGraph>, std::vector<std::uint32_t>> random_enlargement(std::mt19937_64& rng,
                                                                                               const LabeledGraph& G,
                                                                                               std::size_t extra) {
  auto H = std::make_shared<LabeledGraph>(G);
  H->vertices = G.vertices + extra;
  for (std::uint32_t v = static_cast<std::uint32_t>(G.vertices); v < H->vertices; ++v)
    for (std::uint32_t t = 0; t < G.labels; ++t)
      if (rng() % 2)
        H->edges.push_back({v, static_cast<std::uint32_t>(rng() % H->vertices), t});
  std::vector<std::uint32_t> embed(G.vertices);
  for (std::uint32_t i = 0; i < G.vertices; ++i) embed[i] = i;
  return {H, embed};
}

}  // namespace tfg::testing

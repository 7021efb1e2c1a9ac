#include "tfg/hyperfinite.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tfg {

namespace {

// Block id per vertex; throws CertificateFailure unless blocks partition V.
std::vector<std::uint32_t> block_of(const LabeledGraph& G, const std::vector<Block>& blocks) {
  constexpr auto none = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> id(G.vertices, none);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (auto v : blocks[b]) {
      if (v >= G.vertices) throw CertificateFailure(CertificateFailure::NotPartition, "block vertex out of range");
      if (id[v] != none) throw CertificateFailure(CertificateFailure::NotPartition, "vertex in two blocks");
      id[v] = static_cast<std::uint32_t>(b);
    }
  for (auto b : id)
    if (b == none) throw CertificateFailure(CertificateFailure::NotPartition, "blocks do not cover every vertex");
  return id;
}

void canonical(std::vector<Block>& blocks) {
  std::erase_if(blocks, [](const Block& b) { return b.empty(); });
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
}

std::vector<LabeledEdge> sorted_edges(const LabeledGraph& G) {
  auto e = G.edges;
  std::sort(e.begin(), e.end());
  return e;
}

bool edges_within(const LabeledGraph& sub, const LabeledGraph& G, const std::vector<std::uint32_t>& embed) {
  std::vector<LabeledEdge> mapped;
  for (const auto& e : sub.edges) mapped.push_back({embed.at(e.source), embed.at(e.target), e.label});
  std::sort(mapped.begin(), mapped.end());
  auto all = sorted_edges(G);
  return std::includes(all.begin(), all.end(), mapped.begin(), mapped.end());
}

void check_degree(const LabeledGraph& G, std::size_t d) {
  if (G.max_degree() > d) throw InvalidInput("degree bound violated");
}

}  // namespace

std::size_t count_crossing(const LabeledGraph& G, const std::vector<Block>& blocks) {
  auto id = block_of(G, blocks);
  std::size_t n = 0;
  for (const auto& e : G.edges) n += id[e.source] != id[e.target];
  return n;
}

PartitionCertificate make_certificate(std::shared_ptr<const LabeledGraph> G, std::vector<Block> blocks, std::size_t K,
                                      const Rational& eps) {
  PartitionCertificate c;
  canonical(blocks);
  c.crossing_edges = count_crossing(*G, blocks);
  c.fraction = G->vertices ? ratio(BigInt(c.crossing_edges), BigInt(G->vertices)) : Rational(0);
  c.blocks_ok = std::all_of(blocks.begin(), blocks.end(), [&](const Block& b) { return b.size() <= K; });
  c.fraction_ok = c.fraction < eps;
  c.graph = std::move(G);
  c.blocks = std::move(blocks);
  c.K = K;
  c.epsilon = eps;
  return c;
}

PartitionCertificate verify_certificate(std::shared_ptr<const LabeledGraph> G, std::vector<Block> blocks, std::size_t K,
                                        const Rational& eps) {
  auto c = make_certificate(std::move(G), std::move(blocks), K, eps);
  if (!c.blocks_ok) throw CertificateFailure(CertificateFailure::BlockTooLarge, "a block exceeds K");
  if (!c.fraction_ok)
    throw CertificateFailure(CertificateFailure::FractionTooLarge, "crossing fraction " + to_string(c.fraction) +
                                                                      " is not below " + to_string(eps));
  return c;
}

PartitionCertificate chunk_certificate(std::shared_ptr<const LabeledGraph> G, std::size_t block_size,
                                       const Rational& eps) {
  if (block_size == 0) throw InvalidInput("chunk_certificate: block size must be positive");
  std::vector<Block> blocks;
  for (std::uint32_t v = 0; v < G->vertices; ++v) {
    if (v % block_size == 0) blocks.emplace_back();
    blocks.back().push_back(v);
  }
  return make_certificate(std::move(G), std::move(blocks), block_size, eps);
}

bool recheck(const PartitionCertificate& c) {
  try {
    auto crossing = count_crossing(*c.graph, c.blocks);
    bool sizes = std::all_of(c.blocks.begin(), c.blocks.end(), [&](const Block& b) { return b.size() <= c.K; });
    return crossing == c.crossing_edges && sizes == c.blocks_ok &&
           c.fraction == (c.graph->vertices ? ratio(BigInt(crossing), BigInt(c.graph->vertices)) : Rational(0));
  } catch (const CertificateFailure&) {
    return false;
  }
}

PartitionCertificate split_connected(const PartitionCertificate& c) {
  const auto& G = *c.graph;
  auto id = block_of(G, c.blocks);
  // union-find over edges inside a block
  std::vector<std::uint32_t> parent(G.vertices);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : G.edges)
    if (id[e.source] == id[e.target]) parent[find(e.source)] = find(e.target);
  std::vector<Block> blocks;
  std::vector<std::int64_t> slot(G.vertices, -1);
  for (std::uint32_t v = 0; v < G.vertices; ++v) {
    auto r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::int64_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(v);
  }
  auto out = make_certificate(c.graph, std::move(blocks), c.K, c.epsilon);
  if (out.crossing_edges != c.crossing_edges) throw Error("split_connected changed the crossing count");
  return out;
}

PartitionCertificate restrict_certificate(const PartitionCertificate& c, std::shared_ptr<const LabeledGraph> sub) {
  if (sub->vertices != c.graph->vertices) throw InvalidInput("restrict: vertex sets differ");
  std::vector<std::uint32_t> embed(sub->vertices);
  std::iota(embed.begin(), embed.end(), 0u);
  if (!edges_within(*sub, *c.graph, embed)) throw InvalidInput("restrict: not a subgraph");
  auto out = make_certificate(std::move(sub), c.blocks, c.K, c.epsilon);
  out.stated_bound = c.fraction;
  return out;
}

PartitionCertificate union_certificate(const std::vector<PartitionCertificate>& certs) {
  if (certs.empty()) throw InvalidInput("union of no certificates");
  auto G = std::make_shared<LabeledGraph>();
  std::vector<Block> blocks;
  std::size_t K = 0;
  Rational eps = certs[0].epsilon, avg = 0;
  for (const auto& c : certs) {
    if (c.graph->vertices != certs[0].graph->vertices) throw InvalidInput("union: unequal vertex counts");
    auto off = static_cast<std::uint32_t>(G->vertices);
    G->labels = std::max(G->labels, c.graph->labels);
    for (const auto& e : c.graph->edges) G->edges.push_back({e.source + off, e.target + off, e.label});
    for (const auto& b : c.blocks) {
      Block nb;
      for (auto v : b) nb.push_back(v + off);
      blocks.push_back(std::move(nb));
    }
    G->vertices += c.graph->vertices;
    K = std::max(K, c.K);
    eps = std::max(eps, c.epsilon);
    avg += c.fraction;
  }
  avg /= static_cast<long>(certs.size());
  auto out = make_certificate(std::move(G), std::move(blocks), K, eps);
  out.stated_bound = avg;
  return out;
}

PartitionCertificate shrink_certificate(const PartitionCertificate& c, std::shared_ptr<const LabeledGraph> sub,
                                        const std::vector<std::uint32_t>& embed, std::size_t degree_bound) {
  if (embed.size() != sub->vertices) throw InvalidInput("shrink: embedding size differs from vertex count");
  if (sub->vertices == 0) throw InvalidInput("shrink: empty subgraph");
  check_degree(*c.graph, degree_bound);
  if (!edges_within(*sub, *c.graph, embed)) throw InvalidInput("shrink: not a subgraph");
  auto id = block_of(*c.graph, c.blocks);
  std::vector<Block> blocks(c.blocks.size());
  for (std::uint32_t i = 0; i < embed.size(); ++i) blocks[id[embed[i]]].push_back(i);
  auto out = make_certificate(std::move(sub), std::move(blocks), c.K, c.epsilon);
  out.stated_bound = c.fraction * static_cast<long>(c.graph->vertices) / static_cast<long>(out.graph->vertices);
  return out;
}

PartitionCertificate enlarge_certificate(const PartitionCertificate& c, std::shared_ptr<const LabeledGraph> super,
                                         const std::vector<std::uint32_t>& embed, std::size_t degree_bound) {
  if (embed.size() != c.graph->vertices) throw InvalidInput("enlarge: embedding size differs from vertex count");
  check_degree(*super, degree_bound);
  std::vector<std::int64_t> back(super->vertices, -1);
  for (std::uint32_t i = 0; i < embed.size(); ++i) back.at(embed[i]) = i;
  // edges of super among old vertices must be edges of the certified graph
  LabeledGraph old;
  old.vertices = c.graph->vertices;
  for (const auto& e : super->edges)
    if (back[e.source] >= 0 && back[e.target] >= 0)
      old.edges.push_back({static_cast<std::uint32_t>(back[e.source]), static_cast<std::uint32_t>(back[e.target]), e.label});
  std::vector<std::uint32_t> ident(old.vertices);
  std::iota(ident.begin(), ident.end(), 0u);
  if (!edges_within(old, *c.graph, ident)) throw InvalidInput("enlarge: old vertices gained edges");
  std::vector<Block> blocks;
  for (const auto& b : c.blocks) {
    Block nb;
    for (auto v : b) nb.push_back(embed[v]);
    blocks.push_back(std::move(nb));
  }
  for (std::uint32_t v = 0; v < super->vertices; ++v)
    if (back[v] < 0) blocks.push_back({v});
  auto added = static_cast<long>(super->vertices - c.graph->vertices);
  auto total = static_cast<long>(super->vertices);
  auto out = make_certificate(std::move(super), std::move(blocks), std::max<std::size_t>(c.K, 1), c.epsilon);
  out.stated_bound = c.fraction + Rational(static_cast<long>(degree_bound) * added) / total;
  return out;
}

LabeledGraph diagonal_power(const LabeledGraph& G, int l, std::size_t cap) {
  if (l < 1) throw InvalidInput("diagonal power needs l >= 1");
  std::size_t N = 1;
  for (int i = 0; i < l; ++i) {
    if (G.vertices && N > cap / G.vertices) throw BudgetExceeded("diagonal power exceeds vertex budget");
    N *= G.vertices;
  }
  // out[label][v] = target, or -1
  std::vector<std::vector<std::int64_t>> out(G.labels, std::vector<std::int64_t>(G.vertices, -1));
  for (const auto& e : G.edges) {
    if (out[e.label][e.source] >= 0) throw InvalidInput("diagonal power needs a properly labelled graph");
    out[e.label][e.source] = e.target;
  }
  LabeledGraph P;
  P.vertices = N;
  P.labels = G.labels;
  for (std::size_t t = 0; t < N; ++t)
    for (std::uint32_t lab = 0; lab < G.labels; ++lab) {
      std::size_t rest = t, img = 0, place = 1;
      bool ok = true;
      for (int i = 0; i < l && ok; ++i) {
        auto y = out[lab][rest % G.vertices];
        ok = y >= 0;
        img += static_cast<std::size_t>(y) * place;
        rest /= G.vertices;
        place *= G.vertices;
      }
      if (ok) P.edges.push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(img), lab});
    }
  return P;
}

Rational power_bound(const Rational& fraction, std::size_t labels, int l) {
  Rational s = 0;
  for (int m = 1; m <= l; ++m)
    s += Rational(binomial(static_cast<unsigned>(l), static_cast<unsigned>(m))) * static_cast<long>(labels) *
         pow(fraction, static_cast<unsigned>(m));
  return s;
}

PowerCertificate power_certificate(const PartitionCertificate& c, int l, bool bound_only, std::size_t cap) {
  if (!c.graph->is_proper()) throw InvalidInput("power certificate needs a properly labelled graph");
  PowerCertificate pc;
  pc.bound = power_bound(c.fraction, c.graph->labels, l);
  pc.K = 1;
  for (int i = 0; i < l; ++i) pc.K *= c.K;
  if (bound_only) return pc;
  auto P = std::make_shared<LabeledGraph>(diagonal_power(*c.graph, l, cap));
  auto id = block_of(*c.graph, c.blocks);
  std::map<std::vector<std::uint32_t>, std::size_t> slot;
  std::vector<Block> blocks;
  auto V = c.graph->vertices;
  for (std::size_t t = 0; t < P->vertices; ++t) {
    std::vector<std::uint32_t> key;
    std::size_t rest = t;
    for (int i = 0; i < l; ++i) {
      key.push_back(id[rest % V]);
      rest /= V;
    }
    auto [it, fresh] = slot.emplace(key, blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(static_cast<std::uint32_t>(t));
  }
  pc.explicit_cert = make_certificate(std::move(P), std::move(blocks), pc.K, c.epsilon);
  pc.explicit_cert->stated_bound = pc.bound;
  return pc;
}

nlohmann::json to_json(const PartitionCertificate& c) {
  nlohmann::json j = {{"K", c.K},
                      {"epsilon", to_string(c.epsilon)},
                      {"blocks", c.blocks},
                      {"crossing_edges", c.crossing_edges},
                      {"fraction", to_string(c.fraction)},
                      {"pass", c.pass()}};
  if (c.stated_bound) j["stated_bound"] = to_string(*c.stated_bound);
  return j;
}

Rational hyperfinite_delta(const Rational& eps, std::size_t S) {
  auto s = static_cast<long>(S);
  Rational b = eps / (2 * s);
  Rational a = b / (s + 2);
  if (b > 1) throw InvalidInput("delta schedule needs eps <= 2|S|");
  // a <= 1 - sqrt(1 - b)  <=>  1 - b <= (1 - a)^2
  if ((1 - a) * (1 - a) < 1 - b) throw Error("delta comparison failed");
  return a;
}

}  // namespace tfg

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfg/box.hpp"
#include "tfg/graph.hpp"
#include "tfg/groups.hpp"
#include "tfg/rational.hpp"

namespace tfg {

using Block = std::vector<std::uint32_t>;

struct PartitionCertificate {
  std::shared_ptr<const LabeledGraph> graph;
  std::vector<Block> blocks;  // each sorted; blocks sorted by first vertex
  std::size_t K = 0;
  Rational epsilon;
  std::size_t crossing_edges = 0;
  Rational fraction;  // crossing_edges / |V|
  bool blocks_ok = false;    // every block has size <= K
  bool fraction_ok = false;  // fraction < epsilon
  std::optional<Rational> stated_bound;  // set by transports: the formula the fraction must not exceed

  bool pass() const { return blocks_ok && fraction_ok; }
};

struct CertificateFailure : Error {
  enum Reason { NotPartition, BlockTooLarge, FractionTooLarge };
  Reason reason;
  CertificateFailure(Reason r, const std::string& what) : Error(what), reason(r) {}
};

std::size_t count_crossing(const LabeledGraph& G, const std::vector<Block>& blocks);
// Validates the partition and recounts; never throws on size or fraction.
PartitionCertificate make_certificate(std::shared_ptr<const LabeledGraph> G, std::vector<Block> blocks, std::size_t K,
                                      const Rational& eps);
// As make_certificate, but throws CertificateFailure unless all blocks fit in K and fraction < eps.
PartitionCertificate verify_certificate(std::shared_ptr<const LabeledGraph> G, std::vector<Block> blocks, std::size_t K,
                                        const Rational& eps);
// Blocks of consecutive vertex indices of the given size (the last may be shorter).
PartitionCertificate chunk_certificate(std::shared_ptr<const LabeledGraph> G, std::size_t block_size, const Rational& eps);
// Recount from scratch: partition, sizes, crossing count.
bool recheck(const PartitionCertificate& c);

PartitionCertificate split_connected(const PartitionCertificate& c);
PartitionCertificate restrict_certificate(const PartitionCertificate& c, std::shared_ptr<const LabeledGraph> sub);
PartitionCertificate union_certificate(const std::vector<PartitionCertificate>& certs);
// sub has vertices embed[i] of the certified graph and only edges of it.
PartitionCertificate shrink_certificate(const PartitionCertificate& c, std::shared_ptr<const LabeledGraph> sub,
                                        const std::vector<std::uint32_t>& embed, std::size_t degree_bound);
// super contains the certified graph at vertices embed[i]; new vertices become singletons.
PartitionCertificate enlarge_certificate(const PartitionCertificate& c, std::shared_ptr<const LabeledGraph> super,
                                         const std::vector<std::uint32_t>& embed, std::size_t degree_bound);

// Diagonal product G^l: tuples, with a t-edge when every coordinate has a t-edge.
LabeledGraph diagonal_power(const LabeledGraph& G, int l, std::size_t cap = std::size_t{1} << 22);
// sum_{m=1}^{l} C(l,m) |T| f^m
Rational power_bound(const Rational& fraction, std::size_t labels, int l);
struct PowerCertificate {
  std::optional<PartitionCertificate> explicit_cert;  // absent in bound-only mode
  Rational bound;
  std::size_t K = 0;  // K^l
};
PowerCertificate power_certificate(const PartitionCertificate& c, int l, bool bound_only,
                                   std::size_t cap = std::size_t{1} << 22);

nlohmann::json to_json(const PartitionCertificate& c);

// Quasi-tilings of finite subsets of Z^d.
struct QuasiTileHypotheses {
  bool eps_range = false;       // 0 < eps < 1/2
  bool n_condition = false;     // (1 - eps/2)^n < eps, n = number of tiles
  bool identity_in_first = false;
  bool nested = false;
  bool tower_boundary = false;  // |d_{T_{k-1}} T_k| <= (eps/8)|T_k|
  bool a_invariant = false;     // |interior boundary of A w.r.t. T_n| < eps |A|
  std::vector<Rational> tower_ratios;
  Rational a_defect;

  bool all() const { return eps_range && n_condition && identity_in_first && nested && tower_boundary && a_invariant; }
  std::vector<std::string> failed() const;
};

struct QuasiTiling {
  Region A;
  std::vector<Region> tiles;
  Rational epsilon;
  std::vector<std::vector<Offset>> centers;            // per tile
  std::vector<std::vector<std::vector<Offset>>> exact;  // per tile, per center: fresh points
  Rational coverage;  // |union T_k C_k| / |A|
  QuasiTileHypotheses hypotheses;
  bool condition1 = false;  // union inside A with coverage >= 1 - eps
  bool condition2 = false;  // exact tiles disjoint, inside their tiles, each >= (1 - eps)|T_k|
};

struct QuasiTileOptions {
  bool enforce_hypotheses = false;
  std::size_t point_cap = std::size_t{1} << 24;
};

struct HypothesisFailed : Error {
  using Error::Error;
};

QuasiTileHypotheses check_quasitile_hypotheses(const Region& A, const std::vector<Region>& tiles, const Rational& eps);
QuasiTiling quasitile(const GroupContext& ctx, const Region& A, const std::vector<Region>& tiles, const Rational& eps,
                      const QuasiTileOptions& opt = {});
// Re-derives conditions (1) and (2) from the tiles, centers and exact tiles alone.
std::pair<bool, bool> verify_quasitiling(const QuasiTiling& q, std::size_t point_cap = std::size_t{1} << 24);
nlohmann::json to_json(const QuasiTiling& q);

// |d_T K| (interior + exterior) for explicit or box regions.
BigInt region_boundary(const Region& K, const Region& T, BoundaryKind kind, std::size_t cap = std::size_t{1} << 22);

struct TileTower {
  Rational epsilon;
  int n = 0;                    // minimal with (1 - eps/2)^n < eps
  std::vector<Region> tiles;    // T_1 = S, T_{i+1} = T_i u K_i
  std::vector<Region> kernels;  // K_i
  std::vector<Rational> kernel_ratios;  // |d_{T_i} K_i| / |K_i|
  std::vector<Rational> tower_ratios;   // |d_{T_i} T_{i+1}| / |T_{i+1}|
  bool verified = false;        // all conclusions of the construction re-checked
};
// Centered cubes searched by side length; budget = max bits of the side length.
// Throws BudgetExceeded naming the level reached.
TileTower tile_tower(const GroupContext& ctx, const Region& S, const Rational& eps, unsigned side_bits_budget = 4096);

struct GraphPartitionReport {
  PartitionCertificate certificate;
  Rational delta;           // min{eps/(2|S|(|S|+2)), 1 - sqrt(1 - eps/(2|S|))}
  bool delta_schedule = false;  // tiling epsilon <= delta
  std::size_t tile_blocks = 0;
  std::size_t singletons = 0;
};
// Graph on F with edges (g, s + g) for s in S; blocks are exact tiles and leftover singletons.
GraphPartitionReport folner_graph_partition(const GroupContext& ctx, const Region& F, const std::vector<Offset>& S,
                                            const QuasiTiling& tiling, const Rational& eps,
                                            const QuasiTileOptions& opt = {});
// The graph alone (vertices in lexicographic order of F).
LabeledGraph folner_graph(const Region& F, const std::vector<Offset>& S, std::size_t cap = std::size_t{1} << 24);

// delta with exact comparison: a = eps/(2|S|(|S|+2)) is always the minimum.
Rational hyperfinite_delta(const Rational& eps, std::size_t S);

}  // namespace tfg

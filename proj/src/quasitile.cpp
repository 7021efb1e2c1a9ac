#include <algorithm>
#include <set>

#include "tfg/hyperfinite.hpp"

namespace tfg {

namespace {

std::int64_t to_i64(const BigInt& v) {
  if (v > BigInt(INT64_MAX / 4) || v < BigInt(-(INT64_MAX / 4))) throw BudgetExceeded("coordinate out of range");
  return v.convert_to<std::int64_t>();
}

bool region_contains(const Region& R, const Offset& p) {
  if (R.box) return R.box->contains(p);
  return std::binary_search(R.points.begin(), R.points.end(), p);
}

bool region_subset(const Region& a, const Region& b, std::size_t cap) {
  if (a.box && b.box) return b.box->contains(*a.box) || a.box->empty();
  for (const auto& p : a.enumerate(cap))
    if (!region_contains(b, p)) return false;
  return true;
}

// Dense grid over a bounding box.
struct Grid {
  Offset lo, ext;
  std::size_t cells = 1;

  Grid(const std::vector<BigInt>& mn, const std::vector<BigInt>& mx, std::size_t cap) {
    for (std::size_t i = 0; i < mn.size(); ++i) {
      lo.push_back(to_i64(mn[i]));
      ext.push_back(to_i64(mx[i] - mn[i] + 1));
      if (ext.back() <= 0) ext.back() = 0;
      if (ext.back() && cells > cap / static_cast<std::size_t>(ext.back())) throw BudgetExceeded("grid exceeds point budget");
      cells *= static_cast<std::size_t>(ext.back());
    }
  }
  bool inside(const Offset& p) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (p[i] < lo[i] || p[i] >= lo[i] + ext[i]) return false;
    return true;
  }
  std::size_t index(const Offset& p) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < lo.size(); ++i) k = k * static_cast<std::size_t>(ext[i]) + static_cast<std::size_t>(p[i] - lo[i]);
    return k;
  }
};

// 2D Fenwick tree of covered cells; 1D grids use a single column.
struct Fenwick2 {
  std::size_t n0, n1;
  std::vector<std::int64_t> t;
  Fenwick2(std::size_t a, std::size_t b) : n0(a), n1(b), t((a + 1) * (b + 1), 0) {}
  void add(std::size_t i, std::size_t j) {
    for (auto x = i + 1; x <= n0; x += x & (~x + 1))
      for (auto y = j + 1; y <= n1; y += y & (~y + 1)) ++t[x * (n1 + 1) + y];
  }
  std::int64_t prefix(std::size_t i, std::size_t j) const {  // cells [0,i) x [0,j)
    std::int64_t s = 0;
    for (auto x = i; x > 0; x -= x & (~x + 1))
      for (auto y = j; y > 0; y -= y & (~y + 1)) s += t[x * (n1 + 1) + y];
    return s;
  }
  std::int64_t rect(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const {  // [i0,i1) x [j0,j1)
    return prefix(i1, j1) - prefix(i0, j1) - prefix(i1, j0) + prefix(i0, j0);
  }
};

Offset add(const Offset& a, const Offset& b) {
  Offset r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Rational ratio_of(const BigInt& a, const BigInt& b) { return b == 0 ? Rational(0) : ratio(a, b); }

}  // namespace

BigInt region_boundary(const Region& K, const Region& T, BoundaryKind kind, std::size_t cap) {
  if (K.box) {
    switch (kind) {
      case BoundaryKind::Interior: return interior_boundary_size(*K.box, T);
      case BoundaryKind::Exterior: return exterior_boundary_size(*K.box, T);
      case BoundaryKind::Both: return boundary_size(*K.box, T);
    }
  }
  auto kp = K.enumerate(cap);
  auto tp = T.enumerate(cap);
  std::set<Offset> inK(kp.begin(), kp.end());
  BigInt n = 0;
  if (kind != BoundaryKind::Exterior)
    for (const auto& g : kp)
      for (const auto& t : tp)
        if (!inK.count(add(t, g))) {
          ++n;
          break;
        }
  if (kind != BoundaryKind::Interior) {
    std::set<Offset> ext;
    for (const auto& k : kp)
      for (const auto& t : tp) {
        Offset g(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) g[i] = k[i] - t[i];
        if (!inK.count(g)) ext.insert(std::move(g));
      }
    n += ext.size();
  }
  return n;
}

std::vector<std::string> QuasiTileHypotheses::failed() const {
  std::vector<std::string> out;
  if (!eps_range) out.push_back("eps_range");
  if (!n_condition) out.push_back("n_condition");
  if (!identity_in_first) out.push_back("identity_in_first");
  if (!nested) out.push_back("nested");
  if (!tower_boundary) out.push_back("tower_boundary");
  if (!a_invariant) out.push_back("a_invariant");
  return out;
}

QuasiTileHypotheses check_quasitile_hypotheses(const Region& A, const std::vector<Region>& tiles, const Rational& eps) {
  if (tiles.empty()) throw InvalidInput("quasitile: no tiles");
  QuasiTileHypotheses h;
  h.eps_range = eps > 0 && eps < Rational(1, 2);
  h.n_condition = eps > 0 && pow(1 - eps / 2, static_cast<unsigned>(tiles.size())) < eps;
  h.identity_in_first = tiles.front().contains_origin();
  h.nested = true;
  h.tower_boundary = true;
  for (std::size_t k = 1; k < tiles.size(); ++k) {
    h.nested = h.nested && region_subset(tiles[k - 1], tiles[k], std::size_t{1} << 24);
    auto r = ratio_of(region_boundary(tiles[k], tiles[k - 1], BoundaryKind::Both), tiles[k].size());
    h.tower_ratios.push_back(r);
    h.tower_boundary = h.tower_boundary && r <= eps / 8;
  }
  h.a_defect = ratio_of(region_boundary(A, tiles.back(), BoundaryKind::Interior), A.size());
  h.a_invariant = h.a_defect < eps;
  return h;
}

QuasiTiling quasitile(const GroupContext& ctx, const Region& A, const std::vector<Region>& tiles, const Rational& eps,
                      const QuasiTileOptions& opt) {
  if (ctx.kind != GroupKind::IntVector) throw KindMismatch("quasitile works on Z^d");
  if (A.dim() != ctx.dim) throw KindMismatch("quasitile: region dimension differs from the group");
  for (const auto& t : tiles)
    if (t.dim() != ctx.dim) throw KindMismatch("quasitile: tile dimension differs from the group");
  QuasiTiling q;
  q.A = A;
  q.tiles = tiles;
  q.epsilon = eps;
  q.hypotheses = check_quasitile_hypotheses(A, tiles, eps);
  if (opt.enforce_hypotheses && !q.hypotheses.all())
    throw HypothesisFailed("quasitile hypothesis failed: " + q.hypotheses.failed().front());

  int d = ctx.dim;
  Grid grid(A.coord_min(), A.coord_max(), opt.point_cap);
  std::vector<char> inA(grid.cells, 0), covered(grid.cells, 0);
  auto apts = A.enumerate(opt.point_cap);
  for (const auto& p : apts) inA[grid.index(p)] = 1;
  std::size_t n0 = static_cast<std::size_t>(grid.ext[0]), n1 = d >= 2 ? static_cast<std::size_t>(grid.ext[1]) : 1;
  bool fenwick_ok = d <= 2;
  Fenwick2 fw(fenwick_ok ? n0 : 0, fenwick_ok ? n1 : 0);
  std::size_t covered_count = 0;

  q.centers.assign(tiles.size(), {});
  q.exact.assign(tiles.size(), {});
  auto amin = A.coord_min(), amax = A.coord_max();
  BigInt num = numerator(eps), den = denominator(eps);
  for (std::size_t kk = tiles.size(); kk-- > 0;) {
    const auto& T = tiles[kk];
    auto tp = T.enumerate(opt.point_cap);
    if (tp.empty()) continue;
    auto tmin = T.coord_min(), tmax = T.coord_max();
    Offset clo(d), chi(d);
    bool any = true;
    for (int i = 0; i < d; ++i) {
      clo[i] = to_i64(amin[i] - tmin[i]);
      chi[i] = to_i64(amax[i] - tmax[i]);
      any = any && clo[i] <= chi[i];
    }
    if (!any) continue;
    BigInt tsize = tp.size();
    bool box_fast = fenwick_ok && T.box.has_value();
    bool a_box = A.box.has_value() && T.box.has_value();
    // First pass places disjoint translates only, the second allows eps-overlap.
    for (int pass = 0; pass < 2; ++pass) {
      Offset c = clo;
      for (;;) {
        bool inside = a_box;
        if (!inside) {
          inside = true;
          for (const auto& t : tp) {
            auto p = add(t, c);
            if (!grid.inside(p) || !inA[grid.index(p)]) {
              inside = false;
              break;
            }
          }
        }
        if (inside) {
          std::int64_t seen = 0;
          if (box_fast) {
            auto i0 = static_cast<std::size_t>(to_i64(tmin[0]) + c[0] - grid.lo[0]);
            auto i1 = static_cast<std::size_t>(to_i64(tmax[0]) + c[0] - grid.lo[0]) + 1;
            std::size_t j0 = 0, j1 = 1;
            if (d == 2) {
              j0 = static_cast<std::size_t>(to_i64(tmin[1]) + c[1] - grid.lo[1]);
              j1 = static_cast<std::size_t>(to_i64(tmax[1]) + c[1] - grid.lo[1]) + 1;
            }
            seen = fw.rect(i0, i1, j0, j1);
          } else {
            for (const auto& t : tp) seen += covered[grid.index(add(t, c))];
          }
          BigInt fresh = tsize - seen;
          if (pass == 0 ? seen == 0 : fresh * den >= (den - num) * tsize) {
            std::vector<Offset> ex;
            for (const auto& t : tp) {
              auto p = add(t, c);
              auto k = grid.index(p);
              if (covered[k]) continue;
              covered[k] = 1;
              ++covered_count;
              if (fenwick_ok) {
                std::size_t i = static_cast<std::size_t>(p[0] - grid.lo[0]);
                std::size_t j = d == 2 ? static_cast<std::size_t>(p[1] - grid.lo[1]) : 0;
                fw.add(i, j);
              }
              ex.push_back(std::move(p));
            }
            q.centers[kk].push_back(c);
            q.exact[kk].push_back(std::move(ex));
          }
        }
        int i = d - 1;
        while (i >= 0 && c[i] == chi[i]) c[i] = clo[i], --i;
        if (i < 0) break;
        ++c[i];
      }
    }
  }
  q.coverage = ratio_of(BigInt(covered_count), BigInt(apts.size()));
  auto [c1, c2] = verify_quasitiling(q, opt.point_cap);
  q.condition1 = c1;
  q.condition2 = c2;
  if (q.hypotheses.all() && !(c1 && c2))
    throw Error("greedy quasi-tiling missed its conditions under verified hypotheses; coverage " + to_string(q.coverage));
  return q;
}

std::pair<bool, bool> verify_quasitiling(const QuasiTiling& q, std::size_t point_cap) {
  Grid grid(q.A.coord_min(), q.A.coord_max(), point_cap);
  std::vector<char> inA(grid.cells, 0), uni(grid.cells, 0), ex(grid.cells, 0);
  auto apts = q.A.enumerate(point_cap);
  for (const auto& p : apts) inA[grid.index(p)] = 1;
  bool inside = true, disjoint = true, large = true;
  std::size_t union_count = 0;
  const Rational keep = 1 - q.epsilon;
  for (std::size_t k = 0; k < q.tiles.size(); ++k) {
    auto tp = q.tiles[k].enumerate(point_cap);
    for (std::size_t j = 0; j < q.centers[k].size(); ++j) {
      const auto& c = q.centers[k][j];
      for (const auto& t : tp) {
        auto p = add(t, c);
        if (!grid.inside(p) || !inA[grid.index(p)]) {
          inside = false;
          continue;
        }
        auto idx = grid.index(p);
        if (!uni[idx]) uni[idx] = 1, ++union_count;
      }
      const auto& e = q.exact.at(k).at(j);
      for (const auto& p : e) {
        Offset back(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) back[i] = p[i] - c[i];
        if (!region_contains(q.tiles[k], back) || !grid.inside(p)) {
          disjoint = false;
          continue;
        }
        auto idx = grid.index(p);
        if (ex[idx]) disjoint = false;
        ex[idx] = 1;
      }
      if (Rational(static_cast<long>(e.size())) < keep * static_cast<long>(tp.size())) large = false;
    }
  }
  bool c1 = inside && Rational(static_cast<long>(union_count)) >= keep * static_cast<long>(apts.size());
  return {c1, disjoint && large};
}

nlohmann::json to_json(const QuasiTiling& q) {
  auto tiles = nlohmann::json::array();
  for (const auto& t : q.tiles) {
    if (t.box) {
      std::vector<std::string> lo, hi;
      for (const auto& v : t.box->lo) lo.push_back(to_string(v));
      for (const auto& v : t.box->hi) hi.push_back(to_string(v));
      tiles.push_back({{"box", {{"lo", lo}, {"hi", hi}}}});
    } else {
      tiles.push_back({{"points", t.points}});
    }
  }
  std::size_t exact_tiles = 0;
  for (const auto& e : q.exact) exact_tiles += e.size();
  return {{"tiles", tiles},
          {"centers", q.centers},
          {"exact_tiles", exact_tiles},
          {"coverage", to_string(q.coverage)},
          {"epsilon", to_string(q.epsilon)},
          {"condition1", q.condition1},
          {"condition2", q.condition2},
          {"hypotheses_failed", q.hypotheses.failed()}};
}

TileTower tile_tower(const GroupContext& ctx, const Region& S, const Rational& eps, unsigned side_bits_budget) {
  if (ctx.kind != GroupKind::IntVector) throw KindMismatch("tile_tower searches boxes in Z^d");
  if (!(eps > 0 && eps < 1)) throw InvalidInput("tile_tower needs 0 < eps < 1");
  if (!S.contains_origin()) throw InvalidInput("tile_tower needs the identity in S");
  TileTower tw;
  tw.epsilon = eps;
  tw.n = static_cast<int>(min_power_below(1 - eps / 2, eps, true));
  tw.tiles.push_back(S);
  int d = ctx.dim;
  for (int i = 1; i < tw.n; ++i) {
    const Region& T = tw.tiles.back();
    BigInt tsize = T.size();
    Rational thr = eps / (16 * Rational(tsize * tsize));
    BigInt extent = 1;
    auto mn = T.coord_min(), mx = T.coord_max();
    for (int j = 0; j < d; ++j) extent = std::max({extent, BigInt(-mn[j]), BigInt(mx[j])});
    auto ok = [&](const BigInt& h) {
      Box K = centered_cube(d, h);
      return Rational(boundary_size(K, T)) <= thr * Rational(K.volume());
    };
    auto bits = [](const BigInt& h) { return static_cast<unsigned>(boost::multiprecision::msb(BigInt(2 * h + 1))) + 1; };
    BigInt hi = extent;
    while (!ok(hi)) {
      hi *= 2;
      if (bits(hi) > side_bits_budget)
        throw BudgetExceeded("tile_tower: side length exceeds " + std::to_string(side_bits_budget) + " bits at level " +
                             std::to_string(i + 1) + " of " + std::to_string(tw.n));
    }
    BigInt lo = std::max(extent, BigInt(hi / 2));
    while (lo < hi) {
      BigInt mid = (lo + hi) / 2;
      if (ok(mid)) hi = mid;
      else lo = mid + 1;
    }
    Region K = Region::of_box(centered_cube(d, hi));
    tw.kernel_ratios.push_back(ratio_of(boundary_size(*K.box, T), K.size()));
    tw.kernels.push_back(K);
    tw.tiles.push_back(K);  // T_i lies inside K, so T_i u K = K
  }
  tw.verified = tw.tiles.front().contains_origin();
  for (std::size_t i = 0; i + 1 < tw.tiles.size(); ++i) {
    const auto& T = tw.tiles[i];
    const auto& K = tw.kernels[i];
    BigInt ts = T.size();
    bool kernel = Rational(boundary_size(*K.box, T)) <= eps / (16 * Rational(ts * ts)) * Rational(K.size());
    auto r = ratio_of(region_boundary(tw.tiles[i + 1], T, BoundaryKind::Both), tw.tiles[i + 1].size());
    tw.tower_ratios.push_back(r);
    tw.verified = tw.verified && kernel && r <= eps / 8 && region_subset(T, tw.tiles[i + 1], std::size_t{1} << 22);
  }
  return tw;
}

LabeledGraph folner_graph(const Region& F, const std::vector<Offset>& S, std::size_t cap) {
  auto pts = F.enumerate(cap);
  LabeledGraph G;
  G.vertices = pts.size();
  G.labels = static_cast<std::uint32_t>(S.size());
  if (pts.empty()) return G;
  Grid grid(F.coord_min(), F.coord_max(), cap);
  constexpr auto none = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> id(grid.cells, none);
  for (std::uint32_t v = 0; v < pts.size(); ++v) id[grid.index(pts[v])] = v;
  for (std::uint32_t v = 0; v < pts.size(); ++v)
    for (std::uint32_t s = 0; s < S.size(); ++s) {
      auto p = add(S[s], pts[v]);
      if (!grid.inside(p)) continue;
      auto w = id[grid.index(p)];
      if (w != none) G.edges.push_back({v, w, s});
    }
  return G;
}

GraphPartitionReport folner_graph_partition(const GroupContext& ctx, const Region& F, const std::vector<Offset>& S,
                                            const QuasiTiling& tiling, const Rational& eps,
                                            const QuasiTileOptions& opt) {
  if (ctx.kind != GroupKind::IntVector) throw KindMismatch("folner_graph_partition works on Z^d");
  GraphPartitionReport r;
  r.delta = hyperfinite_delta(eps, S.size());
  r.delta_schedule = tiling.epsilon <= r.delta;
  if (opt.enforce_hypotheses && !r.delta_schedule) throw HypothesisFailed("delta schedule unsatisfied");
  auto G = std::make_shared<LabeledGraph>(folner_graph(F, S, opt.point_cap));
  auto pts = F.enumerate(opt.point_cap);
  Grid grid(F.coord_min(), F.coord_max(), opt.point_cap);
  constexpr auto none = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> id(grid.cells, none);
  for (std::uint32_t v = 0; v < pts.size(); ++v) id[grid.index(pts[v])] = v;
  std::vector<char> used(pts.size(), 0);
  std::vector<Block> blocks;
  std::size_t K = 1;
  for (const auto& t : tiling.tiles) K = std::max(K, static_cast<std::size_t>(t.size()));
  for (const auto& per_tile : tiling.exact)
    for (const auto& e : per_tile) {
      Block b;
      for (const auto& p : e) {
        auto v = grid.inside(p) ? id[grid.index(p)] : none;
        if (v == none) throw InvalidInput("exact tile leaves the Folner set");
        b.push_back(v);
        used[v] = 1;
      }
      if (!b.empty()) {
        blocks.push_back(std::move(b));
        ++r.tile_blocks;
      }
    }
  for (std::uint32_t v = 0; v < pts.size(); ++v)
    if (!used[v]) {
      blocks.push_back({v});
      ++r.singletons;
    }
  r.certificate = make_certificate(std::move(G), std::move(blocks), K, eps);
  return r;
}

}  // namespace tfg

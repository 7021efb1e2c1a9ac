#include "tfg/folner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tfg {

namespace {

using Key = std::vector<TablePart>;

BigInt binomial_big(const BigInt& r, int k) {
  if (k < 0 || r < k) return 0;
  BigInt c = 1;
  for (int i = 0; i < k; ++i) c = c * (r - i) / (i + 1);
  return c;
}

bool is_standard(const GroupContext& ctx) {
  if (ctx.kind != GroupKind::IntVector) return false;
  auto ref = GroupContext::standard_int_vector(ctx.dim).generators;
  auto a = ctx.generators;
  std::sort(a.begin(), a.end());
  std::sort(ref.begin(), ref.end());
  return a == ref;
}

Region standard_S(int d) {
  std::vector<Offset> pts{Offset(d, 0)};
  for (int i = 0; i < d; ++i)
    for (int s : {-1, 1}) {
      Offset e(d, 0);
      e[i] = s;
      pts.push_back(e);
    }
  return Region::of_points(pts);
}

// Connected sets (w.r.t. `next`) containing `start`, by size; `visit` returns true to stop after that size.
template <class Node, class Next, class Visit>
void connected_sets(const Node& start, std::size_t max_size, std::size_t max_sets, Next next, Visit visit) {
  std::set<std::vector<Node>> level{{start}};
  std::size_t total = 0;
  for (std::size_t s = 1; s <= max_size && !level.empty(); ++s) {
    if (visit(s, level)) return;
    if (s == max_size) break;
    std::set<std::vector<Node>> grown;
    for (const auto& set : level)
      for (const auto& x : set)
        for (const auto& y : next(x)) {
          if (std::binary_search(set.begin(), set.end(), y)) continue;
          auto g = set;
          g.insert(std::upper_bound(g.begin(), g.end(), y), y);
          grown.insert(std::move(g));
          if (++total > max_sets) throw BudgetExceeded("connected-set enumeration exceeds budget");
        }
    level = std::move(grown);
  }
}

Box recentred_box(const std::vector<BigInt>& sides) {
  Box b;
  for (const auto& a : sides) {
    BigInt lo = -((a - 1) / 2);
    b.lo.push_back(lo);
    b.hi.push_back(lo + a - 1);
  }
  return b;
}

BigInt box_l1_radius(const Box& b) {
  BigInt r = 0;
  for (int i = 0; i < b.dim(); ++i) r += std::max(abs(b.lo[i]), abs(b.hi[i]));
  return r;
}

// Interior boundary of an explicit point set w.r.t. standard S.
BigInt explicit_interior(const std::vector<Offset>& pts, int d) {
  return region_boundary(Region::of_points(pts), standard_S(d), BoundaryKind::Interior);
}

bool verify_witness(const Region& w, const Rational& eta, int d) {
  auto S = standard_S(d);
  BigInt b = region_boundary(w, S, BoundaryKind::Interior);
  bool ok = Rational(b) <= eta * Rational(w.size());
  if (w.box && w.size() <= 200'000) {
    auto pts = w.enumerate(200'000);
    ok = ok && explicit_interior(pts, d) == b;
  }
  return ok;
}

}  // namespace

Rational folner_defect(const std::vector<CocycleTable>& F, const std::vector<CocycleTable>& T,
                       const FullGroupBudget& budget) {
  if (F.empty()) throw InvalidInput("folner_defect: empty set");
  std::set<Key> keys;
  std::vector<CocycleTable> nf;
  for (const auto& f : F) {
    nf.push_back(normalize(f, budget));
    keys.insert(nf.back().parts);
  }
  std::size_t bd = 0;
  for (const auto& g : nf)
    for (const auto& t : T)
      if (!keys.count(compose(t, g, budget).parts)) {
        ++bd;
        break;
      }
  return ratio(BigInt(bd), BigInt(keys.size()));
}

nlohmann::json to_json(const FolnerReport& r) {
  auto F = nlohmann::json::array();
  for (const auto& f : r.F) F.push_back(to_json(f));
  nlohmann::json j = {{"size", r.F.size()},
                      {"defect", to_string(r.defect)},
                      {"epsilon", to_string(r.epsilon)},
                      {"meets", r.meets},
                      {"exact_minimum", r.exact_minimum},
                      {"provenance", r.provenance},
                      {"F", F}};
  if (r.K) {
    j["K"] = *r.K;
    j["within_K"] = r.within_K;
  }
  return j;
}

FolnerReport extract_folner_set(const PartitionCertificate& cert, AlmostAction& A, const std::vector<CocycleTable>& T,
                                int K_ball, const Rational& eps, const ExtractOptions& opt) {
  if (BigInt(cert.graph->vertices) != A.carrier_size()) throw KindMismatch("certificate graph is not on the carrier");
  auto ball = subgroup_ball(T, K_ball, A.budget);
  std::vector<const Map*> maps;
  for (const auto& g : ball) maps.push_back(&ensure_assigned(A, g));
  std::size_t V = cert.graph->vertices, N = A.base_size();

  // block order: size desc, boundary ratio asc, first vertex
  std::vector<std::uint32_t> owner(V);
  for (std::uint32_t b = 0; b < cert.blocks.size(); ++b)
    for (auto v : cert.blocks[b]) owner[v] = b;
  std::vector<std::size_t> touching(cert.blocks.size(), 0);
  for (const auto& e : cert.graph->edges)
    if (owner[e.source] != owner[e.target]) ++touching[owner[e.source]], ++touching[owner[e.target]];
  std::vector<std::uint32_t> order(cert.blocks.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto &A1 = cert.blocks[a], &B1 = cert.blocks[b];
    if (A1.size() != B1.size()) return A1.size() > B1.size();
    auto ra = ratio(BigInt(touching[a]), BigInt(A1.size())), rb = ratio(BigInt(touching[b]), BigInt(B1.size()));
    if (ra != rb) return ra < rb;
    return A1 < B1;
  });

  std::optional<FolnerReport> best;
  std::size_t tried = 0;
  for (auto b : order) {
    const auto& blk = cert.blocks[b];
    // anchors from the middle of the block outward
    std::vector<std::uint32_t> anchors;
    std::size_t mid = (blk.size() - 1) / 2;
    for (std::size_t k = 0; anchors.size() < std::min(opt.max_anchors_per_block, blk.size()); ++k) {
      if (mid + k < blk.size()) anchors.push_back(blk[mid + k]);
      if (k && k <= mid && anchors.size() < opt.max_anchors_per_block) anchors.push_back(blk[mid - k]);
    }
    for (auto v : anchors) {
      if (++tried > opt.max_candidates) break;
      std::vector<CocycleTable> F;
      for (std::size_t g = 0; g < ball.size(); ++g) {
        std::size_t rest = v, img = 0, place = 1;
        for (int i = 0; i < A.l; ++i) {
          img += (*maps[g])[rest % N] * place;
          rest /= N;
          place *= N;
        }
        if (owner[img] == b) F.push_back(ball[g]);
      }
      if (F.empty()) continue;
      FolnerReport r;
      r.F = F;
      r.T = T;
      r.defect = folner_defect(F, T, A.budget);
      r.epsilon = eps;
      r.meets = r.defect <= eps;
      r.K = cert.K;
      r.within_K = F.size() <= cert.K;
      std::ostringstream os;
      os << "certificate block " << b << " (size " << blk.size() << "), anchor " << v << ", ball radius " << K_ball;
      r.provenance = os.str();
      if (r.meets) return r;
      if (!best || r.defect < best->defect) best = std::move(r);
    }
    if (tried > opt.max_candidates) break;
  }
  throw Error("extract_folner_set: no candidate met eps; best defect " +
              (best ? to_string(best->defect) + " with |F| = " + std::to_string(best->F.size()) : std::string("none")));
}

BigInt ceil_over_root_gap(const BigInt& c, const Rational& q, int d) {
  if (c <= 0) throw InvalidInput("ceil_over_root_gap needs c > 0");
  if (q <= 0) return c;
  auto ok = [&](const BigInt& k) { return k >= c && pow(1 - Rational(c) / Rational(k), static_cast<unsigned>(d)) >= q; };
  BigInt hi = c;
  while (!ok(hi)) hi *= 2;
  BigInt lo = c;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (ok(mid)) hi = mid;
    else lo = mid + 1;
  }
  return hi;
}

ZdBound folner_bound_zd(int l, int d, const std::vector<Offset>& S, std::size_t T_size, const Rational& eps) {
  if (eps <= 0) throw InvalidInput("folner_bound_zd needs eps > 0");
  if (l < 1 || d < 1 || S.empty() || T_size == 0) throw InvalidInput("folner_bound_zd: bad parameters");
  ZdBound z;
  for (const auto& s : S) {
    if (static_cast<int>(s.size()) != d) throw KindMismatch("folner_bound_zd: S has wrong dimension");
    for (auto x : s) z.m = std::max<std::int64_t>(z.m, x < 0 ? -x : x);
  }
  if (z.m == 0) throw InvalidInput("folner_bound_zd: S must contain a nonzero vector");
  BigInt T = T_size;
  z.C = 2 * BigInt(S.size()) * (1 + 2 * T) * pow(BigInt(2), static_cast<unsigned>(l)) * T * T;
  Rational q = 1 - eps / Rational(z.C);
  if (q < 0) {
    q = 0;
    z.clamped = true;
  }
  z.k_statement = ceil_over_root_gap(z.m, q, d);
  z.k_proof = ceil_over_root_gap(2 * BigInt(z.m), q, d);
  auto e = static_cast<unsigned>(d * l);
  z.bound_statement = pow(z.k_statement, e);
  z.bound_proof = pow(z.k_proof, e);
  return z;
}

BigInt l1_ball_volume(int d, const BigInt& r) {
  if (r < 0) return 0;
  BigInt v = 0;
  for (int k = 0; k <= d; ++k) v += pow(BigInt(2), static_cast<unsigned>(k)) * binomial(d, k) * binomial_big(r, k);
  return v;
}

FolnerOracle standard_zd_oracle(int d) {
  if (d < 1) throw InvalidInput("dimension must be >= 1");
  FolnerOracle o;
  o.vol = [d](const BigInt& r) { return l1_ball_volume(d, r); };
  o.fol = [d](const Rational& eta) {
    OracleAnswer ans;
    if (eta <= 0) throw InvalidInput("Folner oracle needs eta > 0");
    auto S = standard_S(d);
    auto cube_ok = [&](const BigInt& a) {
      BigInt inner = a >= 2 ? pow(BigInt(a - 2), static_cast<unsigned>(d)) : BigInt(0);
      BigInt vol = pow(a, static_cast<unsigned>(d));
      return Rational(vol - inner) <= eta * Rational(vol);
    };
    BigInt hi = 1;
    while (!cube_ok(hi)) {
      hi *= 2;
      if (boost::multiprecision::msb(hi) > 4096) throw BudgetExceeded("Folner oracle: box side exceeds budget");
    }
    BigInt lo = hi / 2 + 1;
    if (hi == 1) lo = 1;
    while (lo < hi) {
      BigInt mid = (lo + hi) / 2;
      if (cube_ok(mid)) hi = mid;
      else lo = mid + 1;
    }
    // near-cubes: j sides shortened by one
    std::vector<BigInt> best_sides(d, hi);
    BigInt best_vol = pow(hi, static_cast<unsigned>(d));
    for (int j = 1; j <= d && hi > 1; ++j) {
      std::vector<BigInt> sides(d, hi);
      for (int i = 0; i < j; ++i) sides[i] = hi - 1;
      Box b = corner_box(sides);
      if (Rational(interior_boundary_size(b, S)) <= eta * Rational(b.volume()) && b.volume() < best_vol) {
        best_vol = b.volume();
        best_sides = sides;
      }
    }
    ans.value = best_vol;
    ans.witness = Region::of_box(corner_box(best_sides));
    ans.method = "box search";
    // exhaustive over connected sets smaller than the box
    std::size_t limit = best_vol <= 7 ? best_vol.convert_to<std::size_t>() - 1 : 6;
    bool found = false;
    connected_sets<Offset>(
        Offset(d, 0), limit, 4'000'000,
        [&](const Offset& p) {
          std::vector<Offset> nb;
          for (const auto& s : S.points) {
            Offset q = p;
            for (int i = 0; i < d; ++i) q[i] += s[i];
            if (q != p) nb.push_back(q);
          }
          return nb;
        },
        [&](std::size_t s, const std::set<std::vector<Offset>>& level) {
          for (const auto& set : level)
            if (Rational(explicit_interior(set, d)) <= eta * static_cast<long>(s)) {
              ans.value = s;
              ans.witness = Region::of_points(set);
              ans.method = "exhaustive connected sets";
              found = true;
              return true;
            }
          return false;
        });
    ans.exact = found || best_vol <= 7 || d == 1;
    if (d == 1 && !found) ans.method = "interval (exact in Z)";
    ans.verified = verify_witness(ans.witness, eta, d);
    return ans;
  };
  auto fol = o.fol;
  o.psi = [d, fol](const Rational& eta) {
    auto f = fol(eta);
    OracleAnswer ans;
    if (f.witness.box) {
      Box b = recentred_box(f.witness.box->sides());
      ans.value = box_l1_radius(b);
      ans.witness = Region::of_box(b);
    } else {
      // best translate of an explicit witness
      const auto& pts = f.witness.points;
      std::optional<BigInt> best;
      Offset shift_best;
      for (const auto& c : pts)
        for (const auto& c2 : pts) {
          Offset sh(d);
          for (int i = 0; i < d; ++i) sh[i] = -(c[i] + c2[i]) / 2;
          BigInt r = 0;
          for (const auto& p : pts) {
            std::int64_t n = 0;
            for (int i = 0; i < d; ++i) n += std::abs(p[i] + sh[i]);
            r = std::max(r, BigInt(n));
          }
          if (!best || r < *best) best = r, shift_best = sh;
        }
      std::vector<Offset> moved;
      for (auto p : pts) {
        for (int i = 0; i < d; ++i) p[i] += shift_best[i];
        moved.push_back(p);
      }
      ans.value = *best;
      ans.witness = Region::of_points(moved);
    }
    ans.exact = d == 1 && f.exact;
    ans.method = "recentred minimal witness";
    bool inside = true;
    if (ans.witness.box) {
      inside = box_l1_radius(*ans.witness.box) <= ans.value;
    } else {
      for (const auto& p : ans.witness.points) {
        std::int64_t n = 0;
        for (auto x : p) n += std::abs(x);
        inside = inside && BigInt(n) <= ans.value;
      }
    }
    ans.verified = inside && f.verified && ans.witness.size() == f.value && verify_witness(ans.witness, eta, d);
    return ans;
  };
  return o;
}

Rational a2_delta(const Rational& eps, std::size_t S_size, const A2Params& params) {
  BigInt T = params.T_size;
  BigInt factor = (1 + 2 * T) * pow(BigInt(2), static_cast<unsigned>(params.l)) * T * T;
  return hyperfinite_delta(eps / Rational(factor), S_size);
}

unsigned a2_n(const Rational& delta) { return min_power_below(1 - delta, delta, false); }

PhiTable phi_recursion(const GroupContext& ctx, const Rational& eps, int steps, const FolnerOracle& oracle,
                       const A2Params& params) {
  if (steps < 1) throw InvalidInput("phi_recursion needs steps >= 1");
  if (eps <= 0) throw InvalidInput("phi_recursion needs eps > 0");
  PhiTable t;
  auto S = static_cast<long>(ctx.generators.size());
  t.rows.push_back({1, BigInt(S), BigInt(S), Rational(0), std::nullopt, std::nullopt});
  BigInt sum = S;
  t.complete = true;
  for (int i = 2; i <= steps; ++i) {
    const auto& prev = t.rows.back();
    Rational eta = eps / (16 * Rational(prev.phi) * Rational(sum * sum) * (S + 1));
    try {
      auto f = oracle.fol(eta);
      auto p = oracle.psi(eta);
      PhiRow row{i, f.value, std::max(prev.phi, oracle.vol(p.value)), eta, f, p};
      sum += row.Phi;
      t.rows.push_back(std::move(row));
    } catch (const BudgetExceeded& e) {
      t.complete = false;
      t.stopped = e.what();
      break;
    }
  }
  t.delta = a2_delta(eps, ctx.generators.size(), params);
  t.n = a2_n(t.delta);
  return t;
}

BigInt folner_tilde(int d, const Rational& eta, unsigned radius_bits_budget) {
  if (eta <= 0) throw InvalidInput("folner_tilde needs eta > 0");
  auto ok = [&](const BigInt& r) {
    BigInt v = l1_ball_volume(d, r);
    return Rational(v - l1_ball_volume(d, r - 1)) <= eta * Rational(v);
  };
  BigInt hi = 1;
  while (!ok(hi)) {
    hi *= 2;
    if (boost::multiprecision::msb(hi) > radius_bits_budget) throw BudgetExceeded("folner_tilde: radius exceeds budget");
  }
  BigInt lo = hi == 1 ? BigInt(1) : BigInt(hi / 2 + 1);
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (ok(mid)) hi = mid;
    else lo = mid + 1;
  }
  return hi;
}

PsiTable psi_tilde_recursion(const GroupContext& ctx, const Rational& eps, int steps, unsigned radius_bits_budget) {
  if (!is_standard(ctx)) throw KindMismatch("psi_tilde_recursion needs Z^d with the standard generators");
  if (steps < 1) throw InvalidInput("psi_tilde_recursion needs steps >= 1");
  int d = ctx.dim;
  auto S = static_cast<long>(ctx.generators.size());
  PsiTable t;
  t.rows.push_back({1, l1_ball_volume(d, 1), Rational(0), BigInt(1), true});
  t.complete = true;
  for (int i = 2; i <= steps; ++i) {
    const BigInt& P = t.rows.back().Psi;
    Rational eta = eps / (16 * Rational(P * P * P) * (S + 1));
    try {
      BigInt r = folner_tilde(d, eta, radius_bits_budget);
      PsiRow row{i, l1_ball_volume(d, r), eta, r, false};
      // witness B(r): closed form for intervals, enumeration for small balls
      if (d == 1) {
        Box b{{-r}, {r}};
        BigInt bd = interior_boundary_size(b, standard_S(1));
        bool minimal = r == 1 || Rational(interior_boundary_size(Box{{-(r - 1)}, {r - 1}}, standard_S(1))) >
                                     eta * Rational(2 * r - 1);
        row.verified = b.volume() == row.Psi && Rational(bd) <= eta * Rational(b.volume()) && minimal;
      } else if (row.Psi <= 200'000) {
        auto R = r.convert_to<std::int64_t>();
        std::vector<Offset> pts;
        Box cube = centered_cube(d, r);
        for (auto& p : Region::of_box(cube).enumerate(std::size_t{1} << 24)) {
          std::int64_t n = 0;
          for (auto x : p) n += std::abs(x);
          if (n <= R) pts.push_back(p);
        }
        BigInt bd = explicit_interior(pts, d);
        row.verified = BigInt(pts.size()) == row.Psi && Rational(bd) <= eta * Rational(row.Psi);
      }
      t.rows.push_back(std::move(row));
    } catch (const BudgetExceeded& e) {
      t.complete = false;
      t.stopped = e.what();
      break;
    }
  }
  return t;
}

FolnerReport empirical_folner_function(const std::vector<CocycleTable>& T, const Rational& eps,
                                       const EmpiricalOptions& opt) {
  if (T.empty()) throw InvalidInput("empirical_folner_function: no generators");
  FullGroupBudget budget;
  auto ball = subgroup_ball(T, opt.ball_radius, budget);
  std::map<Key, std::int64_t> index;
  for (std::size_t i = 0; i < ball.size(); ++i) index[ball[i].parts] = static_cast<std::int64_t>(i);
  std::vector<std::vector<std::int64_t>> nb(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (const auto& t : T) {
      auto it = index.find(compose(t, ball[i], budget).parts);
      nb[i].push_back(it == index.end() ? -1 : it->second);
    }
  auto defect_of = [&](const std::vector<std::int64_t>& set) {
    std::size_t bd = 0;
    for (auto i : set)
      for (auto j : nb[i])
        if (j < 0 || !std::binary_search(set.begin(), set.end(), j)) {
          ++bd;
          break;
        }
    return ratio(BigInt(bd), BigInt(set.size()));
  };
  auto id = index.at(identity_table(T.front().system).parts);

  FolnerReport r;
  r.T = T;
  r.epsilon = eps;
  std::optional<std::vector<std::int64_t>> found;
  Rational found_defect;
  std::size_t max_exact = std::min<std::size_t>(opt.exhaustive_size, static_cast<std::size_t>(opt.ball_radius) + 1);
  connected_sets<std::int64_t>(
      id, max_exact, opt.max_sets,
      [&](std::int64_t i) {
        std::vector<std::int64_t> out;
        for (auto j : nb[i])
          if (j >= 0) out.push_back(j);
        return out;
      },
      [&](std::size_t, const std::set<std::vector<std::int64_t>>& level) {
        for (const auto& set : level) {
          auto d = defect_of(set);
          if (d <= eps && (!found || d < found_defect)) {
            found = set;
            found_defect = d;
          }
        }
        return found.has_value();
      });
  if (found) {
    for (auto i : *found) r.F.push_back(ball[i]);
    r.exact_minimum = true;
    r.provenance = "exhaustive over connected sets containing the identity";
  } else {
    // balls B(Gamma, k) by word length
    std::vector<int> dist(ball.size(), -1);
    std::vector<std::int64_t> queue{id};
    dist[id] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto j : nb[queue[q]])
        if (j >= 0 && dist[j] < 0) dist[j] = dist[queue[q]] + 1, queue.push_back(j);
    Rational best = 2;
    for (int k = 0; k <= opt.ball_radius; ++k) {
      std::vector<std::int64_t> set;
      for (std::size_t i = 0; i < ball.size(); ++i)
        if (dist[i] >= 0 && dist[i] <= k) set.push_back(static_cast<std::int64_t>(i));
      auto d = defect_of(set);
      best = std::min(best, d);
      if (d <= eps) {
        for (auto i : set) r.F.push_back(ball[i]);
        r.provenance = "ball of radius " + std::to_string(k) + " (upper bound)";
        break;
      }
    }
    if (r.F.empty())
      throw Error("empirical_folner_function: nothing met eps; best ball defect " + to_string(best));
  }
  r.defect = folner_defect(r.F, T, budget);
  r.meets = r.defect <= eps;
  if (found && r.defect != found_defect) throw Error("Folner defect recount disagrees");
  return r;
}

std::string phi_csv(const PhiTable& t) {
  std::ostringstream os;
  os << "i,Phi,phi\n";
  for (const auto& r : t.rows) os << r.i << ',' << r.Phi << ',' << r.phi << '\n';
  return os.str();
}

std::string psi_csv(const PsiTable& t) {
  std::ostringstream os;
  os << "i,Psi\n";
  for (const auto& r : t.rows) os << r.i << ',' << r.Psi << '\n';
  return os.str();
}

}  // namespace tfg

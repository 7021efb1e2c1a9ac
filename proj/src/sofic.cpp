#include "tfg/sofic.hpp"

#include <algorithm>
#include <numeric>

namespace tfg {

bool LabeledGraph::is_proper() const {
  if (edges.size() > static_cast<std::size_t>(labels) * vertices) return false;
  std::vector<LabeledEdge> e = edges;
  std::sort(e.begin(), e.end());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].source >= vertices || e[i].target >= vertices || e[i].label >= labels) return false;
    if (i && e[i].source == e[i - 1].source && e[i].label == e[i - 1].label) return false;
  }
  return true;
}

std::size_t LabeledGraph::max_degree() const {
  std::vector<std::size_t> deg(vertices, 0);
  for (const auto& e : edges) {
    ++deg[e.source];
    if (e.target != e.source) ++deg[e.target];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

Rational hamming(const Map& f, const Map& g) {
  if (f.size() != g.size()) throw KindMismatch("hamming: carrier mismatch");
  if (f.empty()) throw InvalidInput("hamming: empty carrier");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < f.size(); ++i) diff += f[i] != g[i];
  return ratio(BigInt(diff), BigInt(f.size()));
}

Map compose_maps(const Map& f, const Map& g) {
  if (f.size() != g.size()) throw KindMismatch("compose_maps: carrier mismatch");
  Map h(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = f.at(g[i]);
  return h;
}

bool is_permutation(const Map& f) {
  std::vector<char> seen(f.size(), 0);
  for (auto y : f) {
    if (y >= f.size() || seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

Map amplify_map(const Map& f, int l, std::size_t cap) {
  if (l < 1) throw InvalidInput("amplify: l must be >= 1");
  std::size_t N = 1;
  for (int i = 0; i < l; ++i) {
    if (f.size() && N > cap / f.size()) throw BudgetExceeded("amplify: tuple carrier exceeds budget");
    N *= f.size();
  }
  Map out(N);
  for (std::size_t t = 0; t < N; ++t) {
    std::size_t rest = t, img = 0, place = 1;
    for (int i = 0; i < l; ++i) {
      img += f[rest % f.size()] * place;
      rest /= f.size();
      place *= f.size();
    }
    out[t] = static_cast<std::uint32_t>(img);
  }
  return out;
}

BigInt AlmostAction::carrier_size() const { return pow(BigInt(points.size()), static_cast<unsigned>(l)); }

bool AlmostAction::assigned(const CocycleTable& t) const {
  return assignments.count(normalize(t, budget).parts) > 0;
}

const Map& AlmostAction::base_map(const CocycleTable& t) const {
  auto it = assignments.find(normalize(t, budget).parts);
  if (it == assignments.end()) throw Error("almost action: missing assignment");
  return it->second;
}

std::vector<std::uint32_t> AlmostAction::apply(const CocycleTable& t, std::span<const std::uint32_t> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(l)) throw KindMismatch("tuple length differs from the power");
  const auto& m = base_map(t);
  std::vector<std::uint32_t> out;
  for (auto z : tuple) out.push_back(m.at(z));
  return out;
}

namespace {

Map theta_map(const AlmostAction& A, const CocycleTable& t) {
  Map m(A.points.size());
  for (std::size_t b = 0; b < A.basepoints.size(); ++b) {
    std::size_t off = b * A.block_size;
    std::vector<char> hit(A.block_size, 0);
    std::vector<std::uint32_t> leftover;  // z with t(z) outside the block
    for (std::size_t i = 0; i < A.block_size; ++i) {
      auto y = evaluate(t, A.points[off + i]);
      auto it = A.index[b].find(y);
      if (it == A.index[b].end()) {
        leftover.push_back(static_cast<std::uint32_t>(i));
        continue;
      }
      auto j = it->second - off;
      if (hit[j]) throw Error("table is not injective on the Folner orbit");
      hit[j] = 1;
      m[off + i] = it->second;
    }
    // canonical matching of the defect sets, both sorted by carrier index
    std::size_t k = 0;
    for (std::size_t j = 0; j < A.block_size; ++j)
      if (!hit[j]) {
        if (k == leftover.size()) throw Error("unmatched leftover cardinalities");
        m[off + leftover[k++]] = static_cast<std::uint32_t>(off + j);
      }
    if (k != leftover.size()) throw Error("unmatched leftover cardinalities");
  }
  return m;
}

}  // namespace

const Map& ensure_assigned(AlmostAction& A, const CocycleTable& t) {
  auto nf = normalize(t, A.budget);
  auto it = A.assignments.find(nf.parts);
  if (it != A.assignments.end()) return it->second;
  auto m = theta_map(A, nf);
  if (!is_permutation(m)) throw Error("Theta is not a permutation");
  return A.assignments.emplace(nf.parts, std::move(m)).first->second;
}

AlmostAction build_theta_multi(const SystemPtr& sys, const std::vector<Point>& xs, int n,
                               const std::vector<CocycleTable>& gamma_set) {
  if (xs.empty()) throw InvalidInput("build_theta: no basepoints");
  if (!sys->declared_free) throw NotFree("build_theta: basepoints must be free points");
  AlmostAction A;
  A.system = sys;
  A.basepoints = xs;
  A.n = n;
  auto F = dyadic_folner_set(*sys, n);
  A.block_size = F.size();
  for (std::size_t b = 0; b < xs.size(); ++b) {
    auto pts = orbit_points(*sys, xs[b], F);
    std::map<Point, std::uint32_t> idx;
    for (auto& p : pts) {
      auto id = static_cast<std::uint32_t>(A.points.size());
      if (!idx.emplace(p, id).second) throw Error("orbit collision: F_n x is not injective at " + describe(p));
      A.points.push_back(std::move(p));
      A.block.push_back(static_cast<std::uint32_t>(b));
    }
    A.index.push_back(std::move(idx));
  }
  ensure_assigned(A, identity_table(sys));
  for (const auto& t : gamma_set) ensure_assigned(A, t);
  return A;
}

AlmostAction build_theta(const SystemPtr& sys, const Point& x, int n, const std::vector<CocycleTable>& gamma_set) {
  return build_theta_multi(sys, {x}, n, gamma_set);
}

AlmostAction amplify(const AlmostAction& A, int l, const BigInt& cap) {
  if (l < 1) throw InvalidInput("amplify: l must be >= 1");
  AlmostAction B = A;
  B.l = A.l * l;
  if (B.carrier_size() > cap) throw BudgetExceeded("amplify: tuple carrier exceeds budget");
  return B;
}

Rational action_hamming(const AlmostAction& A, const CocycleTable& f, const CocycleTable& g) {
  auto h = hamming(A.base_map(f), A.base_map(g));
  return 1 - pow(Rational(1) - h, static_cast<unsigned>(A.l));
}

Rational action_hamming_explicit(const AlmostAction& A, const CocycleTable& f, const CocycleTable& g, std::size_t cap) {
  return hamming(amplify_map(A.base_map(f), A.l, cap), amplify_map(A.base_map(g), A.l, cap));
}

AlmostActionReport check_injective_almost_action(AlmostAction& A, const std::vector<CocycleTable>& F, const Rational& eps) {
  AlmostActionReport r;
  r.epsilon = eps;
  r.min_displacement = 1;
  const auto& id = ensure_assigned(A, identity_table(A.system));
  Map idmap(A.points.size());
  std::iota(idmap.begin(), idmap.end(), 0u);
  r.identity_ok = id == idmap;
  auto power = [&](const Rational& h) { return 1 - pow(Rational(1) - h, static_cast<unsigned>(A.l)); };
  for (const auto& f : F) {
    const auto& mf = ensure_assigned(A, f);
    if (is_identity(f)) {
      r.identity_ok = r.identity_ok && mf == idmap;
      continue;
    }
    ++r.nontrivial;
    r.min_displacement = std::min(r.min_displacement, power(hamming(mf, idmap)));
  }
  for (const auto& f : F)
    for (const auto& g : F) {
      auto fg = compose(f, g, A.budget);
      Map mfg = ensure_assigned(A, fg);
      Map prod = compose_maps(ensure_assigned(A, f), ensure_assigned(A, g));
      r.mult_defect = std::max(r.mult_defect, power(hamming(mfg, prod)));
      ++r.pairs;
    }
  r.mult_ok = r.mult_defect <= eps;
  r.displacement_ok = r.nontrivial == 0 || r.min_displacement > 1 - eps;
  r.pass = r.identity_ok && r.mult_ok && r.displacement_ok;
  return r;
}

nlohmann::json to_json(const AlmostAction& A, const AlmostActionReport& r) {
  auto bps = nlohmann::json::array();
  for (const auto& x : A.basepoints) bps.push_back(to_json(x));
  return {{"n", A.n},
          {"l", A.l},
          {"basepoints", bps},
          {"conditions",
           {{"mult_defect", to_string(r.mult_defect)},
            {"min_displacement", to_string(r.min_displacement)},
            {"identity_ok", r.identity_ok}}},
          {"epsilon", to_string(r.epsilon)},
          {"pass", r.pass}};
}

GoodSets measure_good_sets(AlmostAction& A, const std::vector<CocycleTable>& ball) {
  GoodSets gs;
  gs.ball_size = ball.size();
  std::size_t N = A.points.size();
  std::vector<const Map*> maps;
  for (const auto& g : ball) maps.push_back(&ensure_assigned(A, g));
  std::vector<char> good(N, 1);
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = 0; j < ball.size(); ++j) {
      const auto& m12 = ensure_assigned(A, compose(ball[i], ball[j], A.budget));
      const auto& m1 = *maps[i];
      const auto& m2 = *maps[j];
      for (std::size_t z = 0; z < N; ++z)
        if (m1[m2[z]] != m12[z]) good[z] = 0;
    }
  gs.multiplicative_points = static_cast<std::size_t>(std::count(good.begin(), good.end(), 1));
  auto Nl = pow(BigInt(N), static_cast<unsigned>(A.l));
  gs.q1 = ratio(pow(BigInt(gs.multiplicative_points), static_cast<unsigned>(A.l)), Nl);

  // Q2: a tuple fails iff some nontrivial element fixes every coordinate,
  // i.e. the AND of the coordinates' fixed-element masks is nonzero.
  std::vector<std::size_t> nontrivial;
  for (std::size_t i = 0; i < ball.size(); ++i)
    if (!is_identity(ball[i])) nontrivial.push_back(i);
  std::map<std::vector<bool>, BigInt> single;
  for (std::size_t z = 0; z < N; ++z) {
    std::vector<bool> mask(nontrivial.size());
    for (std::size_t k = 0; k < nontrivial.size(); ++k) mask[k] = (*maps[nontrivial[k]])[z] == z;
    single[mask] += 1;
  }
  std::map<std::vector<bool>, BigInt> acc = single;
  for (int step = 1; step < A.l; ++step) {
    std::map<std::vector<bool>, BigInt> next;
    for (const auto& [ma, ca] : acc)
      for (const auto& [mb, cb] : single) {
        std::vector<bool> m(ma.size());
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] && mb[k];
        next[m] += ca * cb;
      }
    acc = std::move(next);
  }
  BigInt q2 = 0;
  for (const auto& [m, c] : acc)
    if (std::none_of(m.begin(), m.end(), [](bool b) { return b; })) q2 += c;
  gs.q2 = ratio(q2, Nl);
  return gs;
}

GoodSets measure_good_sets(AlmostAction& A, const std::vector<CocycleTable>& T, int K) {
  auto radius = pow(BigInt(K), static_cast<unsigned>(A.l));
  if (radius > 64) throw BudgetExceeded("measure_good_sets: ball radius K^l too large");
  return measure_good_sets(A, subgroup_ball(T, static_cast<int>(radius), A.budget));
}

LabeledGraph schreier_graph(AlmostAction& A, const std::vector<CocycleTable>& T, std::size_t cap) {
  LabeledGraph G;
  G.labels = static_cast<std::uint32_t>(T.size());
  std::vector<Map> maps;
  for (const auto& t : T) maps.push_back(amplify_map(ensure_assigned(A, t), A.l, cap));
  G.vertices = maps.empty() ? 0 : maps[0].size();
  for (std::size_t z = 0; z < G.vertices; ++z)
    for (std::size_t k = 0; k < maps.size(); ++k)
      G.edges.push_back({static_cast<std::uint32_t>(z), maps[k][z], static_cast<std::uint32_t>(k)});
  return G;
}

std::size_t locality_violations(AlmostAction& A, const CocycleTable& phi, const CocycleTable& psi) {
  const auto& mphi = ensure_assigned(A, phi);
  const auto& mpsi = ensure_assigned(A, psi);
  auto prod = compose(phi, psi, A.budget);
  const auto& mprod = ensure_assigned(A, prod);
  std::size_t bad = 0;
  for (std::size_t z = 0; z < A.points.size(); ++z) {
    const auto& idx = A.index[A.block[z]];
    auto pz = evaluate(psi, A.points[z]);
    if (!idx.count(pz) || !idx.count(evaluate(phi, A.points[z])) || !idx.count(evaluate(phi, pz))) continue;
    if (mphi[mpsi[z]] != mprod[z]) ++bad;
  }
  return bad;
}

}  // namespace tfg

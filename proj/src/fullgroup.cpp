#include "tfg/fullgroup.hpp"

#include <algorithm>
#include <map>

namespace tfg {

namespace {

bool is_odometer(const SystemContext& s) { return s.kind == SystemContext::Kind::Odometer; }

void same_system(const CocycleTable& a, const CocycleTable& b) {
  if (a.system != b.system) throw KindMismatch("tables live on different systems");
}

std::size_t depth(const CocycleTable& t) {
  std::size_t d = 0;
  for (const auto& p : t.parts)
    for (const auto& k : p.pattern.constraints) {
      if (k.cell.kind != Cell::Digit) throw KindMismatch("odometer table with a non-digit cell");
      d = std::max(d, static_cast<std::size_t>(k.cell.a) + 1);
    }
  return d;
}

// Digit prefixes of length D indexed by their value sum d_i M_i (digit 0 least significant).
struct PrefixSpace {
  std::size_t D = 0;
  std::vector<std::size_t> place;  // M_0 .. M_D
  std::vector<int> base;

  PrefixSpace(const OdometerBases& B, std::size_t depth_, std::size_t cap) : D(depth_) {
    place.push_back(1);
    for (std::size_t i = 0; i < D; ++i) {
      base.push_back(B.at(i));
      if (place.back() > cap / static_cast<std::size_t>(base.back()))
        throw BudgetExceeded("odometer refinement depth exceeds cylinder budget");
      place.push_back(place.back() * base.back());
    }
  }
  std::size_t size() const { return place.back(); }
  int digit(std::size_t index, std::size_t i) const { return static_cast<int>(index / place[i] % base[i]); }
  std::size_t add(std::size_t index, std::int64_t k) const {
    auto N = static_cast<std::int64_t>(size());
    auto r = (static_cast<std::int64_t>(index) + k) % N;
    return static_cast<std::size_t>(r < 0 ? r + N : r);
  }
};

bool match_prefix(const Pattern& p, const PrefixSpace& S, std::size_t index) {
  for (const auto& k : p.constraints)
    if (!((k.mask >> S.digit(index, static_cast<std::size_t>(k.cell.a))) & 1u)) return false;
  return true;
}

std::vector<std::int64_t> tabulate(const CocycleTable& t, const PrefixSpace& S) {
  std::vector<std::int64_t> out(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    int hits = 0;
    for (const auto& part : t.parts)
      if (match_prefix(part.pattern, S, i)) {
        out[i] = part.element.data.at(0);
        ++hits;
      }
    if (hits == 0) throw NoMatchingCylinder("odometer table does not cover a cylinder");
    if (hits > 1) throw AmbiguousMatch("odometer table has overlapping cylinders");
  }
  return out;
}

// Coarsest prefix tree on which `label` is constant; leaves in recursion order.
template <class Label>
void coarsen(const PrefixSpace& S, const std::vector<Label>& label, std::size_t k, std::size_t q,
             std::vector<std::pair<Pattern, std::size_t>>& leaves) {
  std::size_t stride = S.place[k];
  const auto& first = label[q];
  bool constant = true;
  for (std::size_t idx = q; idx < S.size() && constant; idx += stride) constant = label[idx] == first;
  if (constant) {
    std::vector<std::pair<Cell, int>> cells;
    for (std::size_t i = 0; i < k; ++i) cells.emplace_back(Cell::digit(static_cast<std::int64_t>(i)), S.digit(q, i));
    leaves.emplace_back(Pattern::exact(std::move(cells)), q);
    return;
  }
  for (int d = 0; d < S.base[k]; ++d) coarsen(S, label, k + 1, q + d * S.place[k], leaves);
}

CocycleTable from_tabulation(const SystemPtr& sys, const PrefixSpace& S, const std::vector<std::int64_t>& tab) {
  std::vector<std::pair<Pattern, std::size_t>> leaves;
  coarsen(S, tab, 0, 0, leaves);
  CocycleTable t{sys, {}};
  for (auto& [p, q] : leaves) t.parts.push_back({std::move(p), GroupElement::vec({tab[q]})});
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

Pattern drop_full(const SystemContext& sys, Pattern p) {
  std::erase_if(p.constraints, [&](const Constraint& k) { return k.mask == sys.full_mask(k.cell); });
  return p;
}

bool infeasible(const SystemContext& sys, const Pattern& p) {
  return sys.kind == SystemContext::Kind::Orbit && sys.orbit.infeasible && sys.orbit.infeasible(p);
}

// Two patterns on the same cells differing in exactly one mask: merged pattern.
std::optional<Pattern> merge_one(const Pattern& a, const Pattern& b) {
  if (a.constraints.size() != b.constraints.size()) return std::nullopt;
  int diff = -1;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    if (a.constraints[i].cell != b.constraints[i].cell) return std::nullopt;
    if (a.constraints[i].mask != b.constraints[i].mask) {
      if (diff >= 0) return std::nullopt;
      diff = static_cast<int>(i);
    }
  }
  if (diff < 0) return a;
  Pattern r = a;
  r.constraints[diff].mask |= b.constraints[diff].mask;
  return r;
}

CocycleTable normalize_generic(const CocycleTable& t) {
  const auto& sys = *t.system;
  std::vector<TablePart> parts;
  for (const auto& p : t.parts) {
    if (infeasible(sys, p.pattern)) continue;
    parts.push_back({drop_full(sys, p.pattern), p.element});
  }
  if (parts.empty()) throw NoMatchingCylinder("table has no feasible part");
  bool all_same = std::all_of(parts.begin(), parts.end(), [&](const TablePart& p) { return p.element == parts[0].element; });
  if (all_same) return {t.system, {{Pattern::full(), parts[0].element}}};
  for (bool changed = true; changed;) {
    changed = false;
    std::sort(parts.begin(), parts.end());
    for (std::size_t i = 0; i < parts.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < parts.size() && !changed; ++j) {
        if (parts[i].element != parts[j].element) continue;
        if (auto m = merge_one(parts[i].pattern, parts[j].pattern)) {
          parts[i].pattern = drop_full(sys, *m);
          parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
  }
  std::sort(parts.begin(), parts.end());
  return {t.system, std::move(parts)};
}

}  // namespace

CocycleTable identity_table(const SystemPtr& sys) { return constant_table(sys, sys->group.identity()); }

CocycleTable constant_table(const SystemPtr& sys, const GroupElement& g) {
  sys->group.check(g);
  return {sys, {{Pattern::full(), g}}};
}

CocycleTable odometer_swap(const SystemPtr& sys) {
  if (!is_odometer(*sys) || sys->bases.at(0) != 2) throw KindMismatch("swap needs a binary first digit");
  CocycleTable t{sys,
                 {{Pattern::exact({{Cell::digit(0), 0}}), GroupElement::vec({1})},
                  {Pattern::exact({{Cell::digit(0), 1}}), GroupElement::vec({-1})}}};
  return t;
}

const GroupElement& cocycle_at(const CocycleTable& t, const Point& x) {
  const GroupElement* hit = nullptr;
  for (const auto& p : t.parts)
    if (matches(*t.system, p.pattern, x)) {
      if (hit) throw AmbiguousMatch("point matches two cylinders");
      hit = &p.element;
    }
  if (!hit) throw NoMatchingCylinder("point matches no cylinder");
  return *hit;
}

Point evaluate(const CocycleTable& t, const Point& x) { return translate(*t.system, x, cocycle_at(t, x)); }

CocycleTable compose(const CocycleTable& a, const CocycleTable& b, const FullGroupBudget& budget) {
  same_system(a, b);
  const auto& sys = *a.system;
  if (is_odometer(sys)) {
    PrefixSpace S(sys.bases, std::max(depth(a), depth(b)), budget.max_cylinders);
    auto ta = tabulate(a, S), tb = tabulate(b, S);
    std::vector<std::int64_t> tc(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) tc[i] = ta[S.add(i, tb[i])] + tb[i];
    return from_tabulation(a.system, S, tc);
  }
  if (sys.kind != SystemContext::Kind::Orbit) throw KindMismatch("composition on product systems is not supported");
  CocycleTable out{a.system, {}};
  for (const auto& pb : b.parts) {
    std::vector<std::int64_t> back;
    for (auto v : pb.element.data) back.push_back(-v);
    for (const auto& pa : a.parts) {
      // g_b x lies in pa  <=>  x satisfies pa shifted by -g_b
      auto cut = intersect(pb.pattern, shift_pattern(pa.pattern, back));
      if (!cut || infeasible(sys, *cut)) continue;
      out.parts.push_back({std::move(*cut), multiply(sys.group, pa.element, pb.element)});
      if (out.parts.size() > budget.max_parts) throw BudgetExceeded("composition exceeds part budget");
    }
  }
  return normalize_generic(out);
}

CocycleTable inverse(const CocycleTable& t, const FullGroupBudget& budget) {
  const auto& sys = *t.system;
  if (is_odometer(sys)) {
    PrefixSpace S(sys.bases, depth(t), budget.max_cylinders);
    auto tab = tabulate(t, S);
    std::vector<std::int64_t> inv(S.size());
    std::vector<char> hit(S.size(), 0);
    for (std::size_t i = 0; i < S.size(); ++i) {
      auto y = S.add(i, tab[i]);
      if (hit[y]++) throw InvalidInput("table is not bijective on cylinders");
      inv[y] = -tab[i];
    }
    return from_tabulation(t.system, S, inv);
  }
  if (sys.kind != SystemContext::Kind::Orbit) throw KindMismatch("inverse on product systems is not supported");
  CocycleTable out{t.system, {}};
  for (const auto& p : t.parts)
    out.parts.push_back({shift_pattern(p.pattern, p.element.data), tfg::inverse(sys.group, p.element)});
  return normalize_generic(out);
}

CocycleTable normalize(const CocycleTable& t, const FullGroupBudget& budget) {
  const auto& sys = *t.system;
  if (is_odometer(sys)) {
    PrefixSpace S(sys.bases, depth(t), budget.max_cylinders);
    return from_tabulation(t.system, S, tabulate(t, S));
  }
  return normalize_generic(t);
}

bool is_identity(const CocycleTable& t) {
  auto n = normalize(t);
  return n.parts.size() == 1 && n.parts[0].pattern.is_full() && t.system->group.is_identity(n.parts[0].element);
}

std::vector<Pattern> open_support(const CocycleTable& t) {
  if (!t.system->declared_free) throw NotFree("open support is only computed on systems declared free");
  std::vector<Pattern> out;
  for (const auto& p : t.parts)
    if (!t.system->group.is_identity(p.element)) out.push_back(p.pattern);
  return out;
}

std::vector<CocycleTable> subgroup_ball(const std::vector<CocycleTable>& T, int radius, const FullGroupBudget& budget) {
  if (T.empty()) throw InvalidInput("subgroup_ball: empty generator list");
  auto id = identity_table(T.front().system);
  std::map<std::vector<TablePart>, CocycleTable> seen{{id.parts, id}};
  std::vector<CocycleTable> frontier{id};
  std::vector<CocycleTable> gens;
  for (const auto& t : T) gens.push_back(normalize(t, budget));
  for (int r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<CocycleTable> next;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        auto h = compose(g, f, budget);
        if (seen.emplace(h.parts, h).second) {
          next.push_back(std::move(h));
          if (seen.size() > budget.max_ball) throw BudgetExceeded("subgroup ball exceeds budget");
        }
      }
    frontier = std::move(next);
  }
  std::vector<CocycleTable> out;
  for (auto& [k, v] : seen) out.push_back(std::move(v));
  return out;
}

UniformPartition uniform_partition(const std::vector<CocycleTable>& T, int radius, const FullGroupBudget& budget) {
  UniformPartition up;
  up.ball = subgroup_ball(T, radius, budget);
  const auto& sys = *T.front().system;
  if (is_odometer(sys)) {
    std::size_t D = 0;
    for (const auto& g : up.ball) D = std::max(D, depth(g));
    PrefixSpace S(sys.bases, D, budget.max_cylinders);
    std::vector<std::vector<std::int64_t>> label(S.size(), std::vector<std::int64_t>(up.ball.size()));
    for (std::size_t j = 0; j < up.ball.size(); ++j) {
      auto tab = tabulate(up.ball[j], S);
      for (std::size_t i = 0; i < S.size(); ++i) label[i][j] = tab[i];
    }
    std::vector<std::pair<Pattern, std::size_t>> leaves;
    coarsen(S, label, 0, 0, leaves);
    std::sort(leaves.begin(), leaves.end());
    for (auto& [p, q] : leaves) {
      up.parts.push_back(p);
      std::vector<GroupElement> row;
      for (auto v : label[q]) row.push_back(GroupElement::vec({v}));
      up.elements.push_back(std::move(row));
    }
    return up;
  }
  if (sys.kind != SystemContext::Kind::Orbit) throw KindMismatch("uniform partition on product systems is not supported");
  struct Cut {
    Pattern p;
    std::vector<GroupElement> row;
  };
  std::vector<Cut> cuts{{Pattern::full(), {}}};
  for (const auto& g : up.ball) {
    std::vector<Cut> next;
    for (const auto& c : cuts)
      for (const auto& part : g.parts) {
        auto m = intersect(c.p, part.pattern);
        if (!m || infeasible(sys, *m)) continue;
        auto row = c.row;
        row.push_back(part.element);
        next.push_back({std::move(*m), std::move(row)});
        if (next.size() > budget.max_parts) throw BudgetExceeded("uniform partition exceeds part budget");
      }
    cuts = std::move(next);
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.p < b.p; });
  for (auto& c : cuts) {
    up.parts.push_back(std::move(c.p));
    up.elements.push_back(std::move(c.row));
  }
  return up;
}

std::vector<Point> grid_points(const SystemContext& sys, std::int64_t R) {
  if (sys.kind != SystemContext::Kind::Orbit) throw KindMismatch("grid points are defined for orbit systems");
  std::vector<Point> out;
  std::vector<std::int64_t> cur(sys.orbit.dim, -R);
  for (;;) {
    out.push_back(orbit_point(cur));
    int i = sys.orbit.dim - 1;
    while (i >= 0 && cur[i] == R) cur[i--] = -R;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<Point> grid_signature(const CocycleTable& t, std::int64_t R) {
  std::vector<Point> out;
  for (const auto& p : grid_points(*t.system, R)) out.push_back(evaluate(t, p));
  return out;
}

PartitionCheck check_partition(const SystemContext& sys, const std::vector<Pattern>& parts, std::int64_t grid_radius) {
  PartitionCheck pc;
  if (is_odometer(sys)) {
    std::size_t D = 0;
    for (const auto& p : parts)
      for (const auto& k : p.constraints) D = std::max(D, static_cast<std::size_t>(k.cell.a) + 1);
    PrefixSpace S(sys.bases, D, std::size_t{1} << 22);
    pc.exact = true;
    pc.disjoint = pc.covering = true;
    for (std::size_t i = 0; i < S.size(); ++i) {
      int hits = 0;
      for (const auto& p : parts) hits += match_prefix(p, S, i);
      if (hits == 0) pc.covering = false;
      if (hits > 1) pc.disjoint = false;
    }
    pc.detail = "checked all cylinders of depth " + std::to_string(D);
    return pc;
  }
  pc.disjoint = true;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      auto m = intersect(parts[i], parts[j]);
      if (m && !infeasible(sys, *m)) pc.disjoint = false;
    }
  pc.covering = true;
  pc.grid_radius = grid_radius;
  for (const auto& x : grid_points(sys, grid_radius)) {
    int hits = 0;
    for (const auto& p : parts) hits += matches(sys, p, x);
    if (hits != 1) pc.covering = false;
  }
  pc.detail = "grid [-" + std::to_string(grid_radius) + "," + std::to_string(grid_radius) + "]^d";
  return pc;
}

nlohmann::json to_json(const CocycleTable& t) {
  auto parts = nlohmann::json::array();
  for (const auto& p : t.parts) parts.push_back({{"pattern", to_json(p.pattern)}, {"element", to_json(p.element)}});
  return {{"parts", parts}};
}

}  // namespace tfg

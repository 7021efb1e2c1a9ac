#include "tfg/lef.hpp"

#include <algorithm>
#include <set>

namespace tfg {

namespace {

Map identity_map(std::size_t n) {
  Map m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(i);
  return m;
}

Map power_map(const Map& f, std::int64_t k) {
  Map out = identity_map(f.size());
  for (std::int64_t i = 0; i < k; ++i) out = compose_maps(f, out);
  return out;
}

nlohmann::json witness_json(const std::optional<std::pair<std::size_t, std::size_t>>& w) {
  if (!w) return nullptr;
  return nlohmann::json::array({w->first, w->second});
}

}  // namespace

Map FiniteModel::beta_of(const GroupElement& g) const {
  const auto& G = system->group;
  if (G.is_identity(g)) return identity_map(points.size());
  if (auto it = beta.find(g); it != beta.end()) return it->second;
  // Z: powers of the +-1 generators.
  if (G.kind == GroupKind::IntVector && G.dim == 1) {
    const auto k = g.data.at(0);
    const auto step = beta.find(GroupElement::vec({k > 0 ? 1 : -1}));
    if (step != beta.end()) return power_map(step->second, k > 0 ? k : -k);
  }
  throw LefError("cocycle value " + g.str() + " is outside the modeled set");
}

FiniteModel odometer_finite_model(const SystemPtr& sys, int n) {
  if (sys->kind != SystemContext::Kind::Odometer) throw KindMismatch("odometer_finite_model needs an odometer");
  if (n < 1) throw InvalidInput("odometer_finite_model: n must be >= 1");
  const BigInt N = sys->bases.modulus(static_cast<std::size_t>(n));
  if (N > BigInt(1) << 24) throw BudgetExceeded("odometer_finite_model: more than 2^24 points");
  const auto size = static_cast<std::uint32_t>(N);
  FiniteModel m;
  m.system = sys;
  m.radius = n;
  m.epsilon = ratio(1, pow(BigInt(2), static_cast<unsigned>(n)));
  m.F = {GroupElement::vec({1}), GroupElement::vec({-1})};
  m.points.reserve(size);
  for (std::uint32_t k = 0; k < size; ++k) m.points.push_back(odometer_integer_point(*sys, k, static_cast<std::size_t>(n)));
  Map up(size), down(size);
  for (std::uint32_t k = 0; k < size; ++k) {
    up[k] = (k + 1) % size;
    down[k] = (k + size - 1) % size;
  }
  m.beta[m.F[0]] = std::move(up);
  m.beta[m.F[1]] = std::move(down);
  return m;
}

ResidualReport check_residually_finite(const FiniteModel& model, const std::vector<Point>& samples,
                                       const std::vector<GroupElement>& F, const Rational& eps) {
  ResidualReport r;
  const int R = model.radius + 8;
  const auto& sys = *model.system;
  for (const auto& z : samples) {
    std::optional<Rational> best;
    for (const auto& p : model.points) {
      const Rational d = metric(sys, z, p, R).value;
      if (!best || d < *best) best = d;
      if (*best == 0) break;
    }
    const Rational d = best.value_or(Rational(1));
    if (d > r.worst_density) r.worst_density = d;
    if (d > eps && r.density_ok) {
      r.density_ok = false;
      r.density_witness = z;
    }
  }
  for (const auto& s : F) {
    const Map b = model.beta_of(s);
    for (std::size_t i = 0; i < model.points.size(); ++i) {
      const Rational d = metric(sys, translate(sys, model.points[i], s), model.points[b[i]], R).value;
      if (d > r.worst_approximation) r.worst_approximation = d;
      if (d > eps && r.approximation_ok) {
        r.approximation_ok = false;
        r.approximation_witness = {i, s};
      }
    }
  }
  return r;
}

FreenessReport freeness_check(const FiniteModel& model, int search_radius) {
  FreenessReport r;
  if (search_radius <= 0) {
    r.vacuous = true;
    return r;
  }
  std::set<Point> seen;
  for (std::size_t i = 0; i < model.points.size(); ++i)
    if (!seen.insert(model.points[i]).second) {
      r.free = false;
      r.duplicate = i;
      return r;
    }
  const auto& sys = *model.system;
  if (sys.kind == SystemContext::Kind::Odometer) {
    r.structural = true;
    return r;
  }
  for (const auto& g : ball(sys.group, search_radius)) {
    if (sys.group.is_identity(g)) continue;
    for (std::size_t i = 0; i < model.points.size(); ++i)
      if (translate(sys, model.points[i], g) == model.points[i]) {
        r.free = false;
        r.fixed = {i, g};
        return r;
      }
  }
  return r;
}

Map lef_permutation(const CocycleTable& gamma, const FiniteModel& model) {
  std::map<GroupElement, Map> cache;
  Map out(model.points.size());
  for (std::size_t i = 0; i < model.points.size(); ++i) {
    const GroupElement& g = cocycle_at(gamma, model.points[i]);
    auto it = cache.find(g);
    if (it == cache.end()) {
      try {
        it = cache.emplace(g, model.beta_of(g)).first;
      } catch (const LefError& e) {
        throw LefError(std::string(e.what()) + " at model point " + std::to_string(i));
      }
    }
    out[i] = it->second[i];
  }
  return out;
}

LefMap build_lef_map(const std::vector<CocycleTable>& ball, const FiniteModel& model) {
  LefMap m;
  m.ball = ball;
  for (const auto& t : ball) m.theta.push_back(lef_permutation(t, model));
  return m;
}

LefReport check_lef_conditions(const LefMap& theta, const FiniteModel& model, const std::vector<Rational>& eps_list) {
  LefReport r;
  r.carrier = model.points.size();
  r.min_displacement = 1;
  const auto& ball = theta.ball;
  std::map<std::vector<TablePart>, std::size_t> index;
  for (std::size_t i = 0; i < ball.size(); ++i) index.emplace(normalize(ball[i]).key(), i);
  const Map id = identity_map(r.carrier);
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = 0; j < ball.size(); ++j) {
      ++r.pairs;
      const CocycleTable prod = normalize(compose(ball[i], ball[j]));
      auto it = index.find(prod.key());
      const Map direct = it != index.end() ? theta.theta[it->second] : lef_permutation(prod, model);
      const Rational d = hamming(direct, compose_maps(theta.theta[i], theta.theta[j]));
      if (d > r.max_product_defect) r.max_product_defect = d;
      if (d != 0 && r.multiplicative) {
        r.multiplicative = false;
        r.product_witness = {i, j};
      }
    }
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (is_identity(ball[i])) continue;
    const Rational d = hamming(theta.theta[i], id);
    const Rational eps = i < eps_list.size() ? eps_list[i] : Rational(0);
    if (d < r.min_displacement) r.min_displacement = d;
    if (!(d > eps) && r.displacement_ok) {
      r.displacement_ok = false;
      r.displacement_witness = i;
    }
  }
  return r;
}

LefSearch minimal_lef_n(const SystemPtr& sys, const std::vector<CocycleTable>& ball, int max_n,
                        const std::vector<Rational>& eps_list) {
  LefSearch s;
  for (int n = 1; n <= max_n; ++n) {
    const auto model = odometer_finite_model(sys, n);
    LefSearchRow row{n, check_lef_conditions(build_lef_map(ball, model), model, eps_list)};
    if (row.report.pass()) {
      if (!s.minimal_n) s.minimal_n = n;
    } else if (s.minimal_n) {
      s.monotone = false;
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

nlohmann::json to_json(const ResidualReport& r) {
  nlohmann::json j = {{"density_ok", r.density_ok},
                      {"approximation_ok", r.approximation_ok},
                      {"worst_density", to_string(r.worst_density)},
                      {"worst_approximation", to_string(r.worst_approximation)},
                      {"pass", r.pass()}};
  if (r.density_witness) j["density_witness"] = to_json(*r.density_witness);
  if (r.approximation_witness)
    j["approximation_witness"] = {r.approximation_witness->first, to_json(r.approximation_witness->second)};
  return j;
}

nlohmann::json to_json(const LefReport& r) {
  nlohmann::json j = {{"carrier", r.carrier},
                      {"pairs", r.pairs},
                      {"max_product_defect", to_string(r.max_product_defect)},
                      {"multiplicative", r.multiplicative},
                      {"min_displacement", to_string(r.min_displacement)},
                      {"displacement_ok", r.displacement_ok},
                      {"product_witness", witness_json(r.product_witness)},
                      {"pass", r.pass()}};
  j["displacement_witness"] = r.displacement_witness ? nlohmann::json(*r.displacement_witness) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const LefSearch& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : s.rows) {
    auto j = to_json(row.report);
    j["n"] = row.n;
    rows.push_back(std::move(j));
  }
  return {{"minimal_n", s.minimal_n ? nlohmann::json(*s.minimal_n) : nlohmann::json(nullptr)},
          {"monotone", s.monotone},
          {"conditions", std::move(rows)}};
}

}  // namespace tfg

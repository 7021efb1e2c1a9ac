#include "tfg/systems.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace tfg {

Pattern Pattern::exact(std::vector<std::pair<Cell, int>> cells) {
  Pattern p;
  for (auto& [c, s] : cells) p.constraints.push_back({c, std::uint64_t{1} << s});
  std::sort(p.constraints.begin(), p.constraints.end());
  for (std::size_t i = 1; i < p.constraints.size(); ++i)
    if (p.constraints[i].cell == p.constraints[i - 1].cell) throw InvalidInput("pattern cell repeated");
  return p;
}

std::optional<std::uint64_t> Pattern::mask_at(const Cell& c) const {
  auto it = std::lower_bound(constraints.begin(), constraints.end(), c,
                             [](const Constraint& k, const Cell& x) { return k.cell < x; });
  if (it != constraints.end() && it->cell == c) return it->mask;
  return std::nullopt;
}

std::optional<Pattern> intersect(const Pattern& a, const Pattern& b) {
  Pattern r;
  std::size_t i = 0, j = 0;
  while (i < a.constraints.size() || j < b.constraints.size()) {
    if (j == b.constraints.size() || (i < a.constraints.size() && a.constraints[i].cell < b.constraints[j].cell)) {
      r.constraints.push_back(a.constraints[i++]);
    } else if (i == a.constraints.size() || b.constraints[j].cell < a.constraints[i].cell) {
      r.constraints.push_back(b.constraints[j++]);
    } else {
      auto m = a.constraints[i].mask & b.constraints[j].mask;
      if (!m) return std::nullopt;
      r.constraints.push_back({a.constraints[i].cell, m});
      ++i, ++j;
    }
  }
  return r;
}

bool syntactically_disjoint(const Pattern& a, const Pattern& b) { return !intersect(a, b).has_value(); }

int OdometerBases::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return cycle[(i - prefix.size()) % cycle.size()];
}

BigInt OdometerBases::modulus(std::size_t n) const {
  BigInt m = 1;
  for (std::size_t i = 0; i < n; ++i) m *= at(i);
  return m;
}

SystemPtr SystemContext::odometer(OdometerBases bases) {
  if (bases.cycle.empty()) throw InvalidInput("odometer base cycle must be nonempty");
  for (int b : bases.prefix)
    if (b < 2) throw InvalidInput("odometer bases must be >= 2");
  for (int b : bases.cycle)
    if (b < 2 || b > 64) throw InvalidInput("odometer bases must be in [2,64]");
  auto s = std::make_shared<SystemContext>();
  s->kind = Kind::Odometer;
  s->group = GroupContext::standard_int_vector(1);
  s->bases = std::move(bases);
  s->declared_free = true;
  return s;
}

SystemPtr SystemContext::binary_odometer() {
  static const SystemPtr s = odometer(OdometerBases::constant(2));
  return s;
}

SystemPtr SystemContext::orbit_system(OrbitSpec spec, bool declared_free) {
  if (!spec.oracle) throw InvalidInput("orbit system needs a symbol oracle");
  if (spec.alphabet < 1 || spec.alphabet > 64) throw InvalidInput("orbit alphabet must be in [1,64]");
  auto s = std::make_shared<SystemContext>();
  s->kind = Kind::Orbit;
  s->group = GroupContext::standard_int_vector(spec.dim);
  s->orbit = std::move(spec);
  s->declared_free = declared_free;
  return s;
}

SystemPtr SystemContext::product(std::vector<SystemPtr> factors) {
  if (factors.empty()) throw InvalidInput("product of no systems");
  for (const auto& f : factors) {
    if (f->kind == Kind::Product) throw InvalidInput("nested products are not supported");
    if (f->group.dim != factors.front()->group.dim) throw KindMismatch("product factors act by different groups");
  }
  auto s = std::make_shared<SystemContext>();
  s->kind = Kind::Product;
  s->group = factors.front()->group;
  s->declared_free = std::any_of(factors.begin(), factors.end(), [](const SystemPtr& f) { return f->declared_free; });
  s->factors = std::move(factors);
  return s;
}

int SystemContext::alphabet_size(const Cell& c) const {
  switch (kind) {
    case Kind::Odometer:
      return bases.at(static_cast<std::size_t>(c.a));
    case Kind::Orbit:
      return orbit.alphabet;
    case Kind::Product:
      return factors.at(c.factor)->alphabet_size(c);
  }
  return 0;
}

std::uint64_t SystemContext::full_mask(const Cell& c) const {
  int n = alphabet_size(c);
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

int DigitStream::digit(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return period[(i - prefix.size()) % period.size()];
}

namespace {

DigitStream canonical(std::vector<int> prefix, std::vector<int> period) {
  if (period.empty()) throw InvalidInput("digit stream needs a nonempty period");
  std::size_t n = period.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = period[i] == period[i - p];
    if (ok) {
      period.resize(p);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return {std::move(prefix), std::move(period)};
}

std::size_t horizon(const DigitStream& s, const OdometerBases& B) {
  return std::max(s.prefix.size(), B.prefix.size()) + std::lcm(s.period.size(), B.cycle.size());
}

DigitStream step(const DigitStream& s, const OdometerBases& B, int dir) {
  std::size_t H = horizon(s, B);
  std::size_t j = 0;
  for (; j < H; ++j) {
    int d = s.digit(j), b = B.at(j);
    if (dir > 0 ? d < b - 1 : d > 0) break;
  }
  if (j == H) {
    if (dir > 0) return canonical({}, {0});
    std::vector<int> pre, per;
    for (int b : B.prefix) pre.push_back(b - 1);
    for (int b : B.cycle) per.push_back(b - 1);
    return canonical(std::move(pre), std::move(per));
  }
  std::size_t Q = std::max(j + 1, s.prefix.size());
  std::vector<int> pre(Q), per(s.period.size());
  for (std::size_t i = 0; i < Q; ++i) {
    if (i < j)
      pre[i] = dir > 0 ? 0 : B.at(i) - 1;
    else if (i == j)
      pre[i] = s.digit(i) + dir;
    else
      pre[i] = s.digit(i);
  }
  for (std::size_t t = 0; t < per.size(); ++t) per[t] = s.digit(Q + t);
  return canonical(std::move(pre), std::move(per));
}

const std::vector<std::int64_t>& vec_of(const SystemContext& sys, const GroupElement& g) {
  sys.group.check(g);
  return g.data;
}

}  // namespace

Point odometer_point(const SystemContext& sys, std::vector<int> prefix, std::vector<int> period) {
  if (sys.kind != SystemContext::Kind::Odometer) throw KindMismatch("not an odometer");
  Point p;
  p.digits = canonical(std::move(prefix), std::move(period));
  std::size_t H = horizon(p.digits, sys.bases);
  for (std::size_t i = 0; i < H; ++i) {
    int d = p.digits.digit(i);
    if (d < 0 || d >= sys.bases.at(i)) throw InvalidInput("odometer digit out of range");
  }
  return p;
}

Point odometer_integer_point(const SystemContext& sys, const BigInt& k, std::size_t n) {
  if (k < 0 || k >= sys.bases.modulus(n)) throw InvalidInput("integer outside [0, modulus)");
  std::vector<int> digits(n);
  BigInt r = k;
  for (std::size_t i = 0; i < n; ++i) {
    digits[i] = static_cast<int>(r % sys.bases.at(i));
    r /= sys.bases.at(i);
  }
  return odometer_point(sys, std::move(digits), {0});
}

Point orbit_point(std::vector<std::int64_t> shift) {
  Point p;
  p.shift = std::move(shift);
  return p;
}

Point translate(const SystemContext& sys, const Point& x, const GroupElement& g) {
  const auto& v = vec_of(sys, g);
  switch (sys.kind) {
    case SystemContext::Kind::Odometer: {
      Point r = x;
      std::int64_t k = v[0];
      for (; k > 0; --k) r.digits = step(r.digits, sys.bases, +1);
      for (; k < 0; ++k) r.digits = step(r.digits, sys.bases, -1);
      return r;
    }
    case SystemContext::Kind::Orbit: {
      if (x.shift.size() != v.size()) throw KindMismatch("orbit point dimension mismatch");
      Point r = x;
      for (std::size_t i = 0; i < v.size(); ++i) r.shift[i] += v[i];
      return r;
    }
    case SystemContext::Kind::Product: {
      if (x.factors.size() != sys.factors.size()) throw KindMismatch("product point arity mismatch");
      Point r;
      for (std::size_t i = 0; i < sys.factors.size(); ++i) r.factors.push_back(translate(*sys.factors[i], x.factors[i], g));
      return r;
    }
  }
  return x;
}

Cell shift_cell(const Cell& c, std::span<const std::int64_t> v) {
  Cell r = c;
  if (!v.empty()) r.a += v[0];
  if (v.size() > 1) r.b += v[1];
  return r;
}

Pattern shift_pattern(const Pattern& p, std::span<const std::int64_t> v) {
  Pattern r = p;
  for (auto& k : r.constraints) k.cell = shift_cell(k.cell, v);
  std::sort(r.constraints.begin(), r.constraints.end());
  return r;
}

int symbol_at(const SystemContext& sys, const Point& x, const Cell& c) {
  switch (sys.kind) {
    case SystemContext::Kind::Odometer:
      if (c.kind != Cell::Digit || c.a < 0) throw KindMismatch("odometer cells are digits");
      return x.digits.digit(static_cast<std::size_t>(c.a));
    case SystemContext::Kind::Orbit: {
      // (g.sigma)(e) = sigma(g^{-1} e)
      std::vector<std::int64_t> neg;
      for (auto s : x.shift) neg.push_back(-s);
      Cell base = shift_cell(c, neg);
      base.factor = 0;
      return sys.orbit.oracle(base);
    }
    case SystemContext::Kind::Product: {
      Cell inner = c;
      inner.factor = 0;
      return symbol_at(*sys.factors.at(c.factor), x.factors.at(c.factor), inner);
    }
  }
  return 0;
}

std::vector<int> window(const SystemContext& sys, const Point& x, std::span<const Cell> domain) {
  std::vector<int> out;
  out.reserve(domain.size());
  for (const auto& c : domain) out.push_back(symbol_at(sys, x, c));
  return out;
}

Pattern window_pattern(const SystemContext& sys, const Point& x, std::span<const Cell> domain) {
  std::vector<std::pair<Cell, int>> cells;
  for (const auto& c : domain) cells.emplace_back(c, symbol_at(sys, x, c));
  return Pattern::exact(std::move(cells));
}

bool matches(const SystemContext& sys, const Pattern& p, const Point& x) {
  for (const auto& k : p.constraints)
    if (!((k.mask >> symbol_at(sys, x, k.cell)) & 1u)) return false;
  return true;
}

std::vector<Cell> radius_cells(const SystemContext& sys, int r) {
  std::vector<Cell> out;
  if (r <= 0) return out;
  switch (sys.kind) {
    case SystemContext::Kind::Odometer:
      for (int i = 0; i < r; ++i) out.push_back(Cell::digit(i));
      break;
    case SystemContext::Kind::Orbit: {
      std::int64_t R = r - 1;
      if (sys.orbit.dim == 1) {
        for (std::int64_t x = -R; x <= R; ++x) out.push_back(Cell::site(x));
      } else if (!sys.orbit.edges) {
        for (std::int64_t x = -R; x <= R; ++x)
          for (std::int64_t y = -R; y <= R; ++y) out.push_back(Cell::site(x, y));
      } else {
        // edges with at least one endpoint in [-R,R]^2
        for (std::int64_t x = -R - 1; x <= R; ++x)
          for (std::int64_t y = -R; y <= R; ++y) out.push_back(Cell::hedge(x, y));
        for (std::int64_t x = -R; x <= R; ++x)
          for (std::int64_t y = -R - 1; y <= R; ++y) out.push_back(Cell::vedge(x, y));
      }
      break;
    }
    case SystemContext::Kind::Product:
      for (std::size_t f = 0; f < sys.factors.size(); ++f)
        for (auto c : radius_cells(*sys.factors[f], r)) {
          c.factor = static_cast<int>(f);
          out.push_back(c);
        }
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

MetricValue metric(const SystemContext& sys, const Point& x, const Point& y, int max_radius) {
  if (max_radius < 1) throw InvalidInput("metric: max_radius must be >= 1");
  if (sys.kind == SystemContext::Kind::Product) {
    MetricValue worst{0, max_radius, true};
    for (std::size_t f = 0; f < sys.factors.size(); ++f) {
      auto m = metric(*sys.factors[f], x.factors.at(f), y.factors.at(f), max_radius);
      if (m.value > worst.value || (!m.truncated && worst.truncated)) worst = m;
    }
    return worst;
  }
  int r = 0;
  if (sys.kind == SystemContext::Kind::Odometer) {
    while (r < max_radius && x.digits.digit(r) == y.digits.digit(r)) ++r;
  } else {
    while (r < max_radius) {
      auto cells = radius_cells(sys, r + 1);
      if (window(sys, x, cells) != window(sys, y, cells)) break;
      ++r;
    }
  }
  if (r == max_radius) return {0, r, true};
  return {Rational(BigInt(1), pow(BigInt(2), static_cast<unsigned>(r))), r, false};
}

std::vector<GroupElement> dyadic_folner_set(const SystemContext& sys, int n) {
  return folner_box(sys.group, n, BoxFamily::Dyadic);
}

std::vector<Point> orbit_points(const SystemContext& sys, const Point& x, std::span<const GroupElement> F) {
  std::vector<Point> out;
  out.reserve(F.size());
  if (sys.kind == SystemContext::Kind::Odometer) {
    // walk the orbit in unit steps when F is consecutive
    std::int64_t at = 0;
    Point cur = x;
    for (const auto& s : F) {
      std::int64_t k = vec_of(sys, s)[0];
      cur = translate(sys, cur, GroupElement::vec({k - at}));
      at = k;
      out.push_back(cur);
    }
    return out;
  }
  for (const auto& s : F) out.push_back(translate(sys, x, s));
  return out;
}

Rational banach_density_lower(const SystemContext& sys, const Pattern& pattern, const Point& basepoint, int n) {
  auto F = dyadic_folner_set(sys, n);
  auto pts = orbit_points(sys, basepoint, F);
  std::size_t hits = 0;
  for (const auto& p : pts) hits += matches(sys, pattern, p);
  return Rational(BigInt(hits), BigInt(F.size()));
}

nlohmann::json to_json(const Cell& c) { return {c.factor, c.kind, c.a, c.b}; }

nlohmann::json to_json(const Pattern& p) {
  nlohmann::json domain = nlohmann::json::array(), symbols = nlohmann::json::array();
  for (const auto& k : p.constraints) {
    domain.push_back(to_json(k.cell));
    auto allowed = nlohmann::json::array();
    for (int s = 0; s < 64; ++s)
      if ((k.mask >> s) & 1u) allowed.push_back(s);
    symbols.push_back(allowed.size() == 1 ? allowed[0] : allowed);
  }
  return {{"domain", domain}, {"symbols", symbols}};
}

nlohmann::json to_json(const Point& x) {
  if (!x.factors.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& f : x.factors) arr.push_back(to_json(f));
    return {{"product", arr}};
  }
  if (!x.shift.empty()) return {{"shift", x.shift}};
  return {{"prefix", x.digits.prefix}, {"period", x.digits.period}};
}

std::string describe(const Point& x) {
  std::ostringstream os;
  if (!x.factors.empty()) {
    os << "(";
    for (std::size_t i = 0; i < x.factors.size(); ++i) os << (i ? ", " : "") << describe(x.factors[i]);
    os << ")";
  } else if (!x.shift.empty()) {
    os << "shift(";
    for (std::size_t i = 0; i < x.shift.size(); ++i) os << (i ? "," : "") << x.shift[i];
    os << ")";
  } else {
    for (int d : x.digits.prefix) os << d;
    os << "(";
    for (int d : x.digits.period) os << d;
    os << ")*";
  }
  return os.str();
}

}  // namespace tfg

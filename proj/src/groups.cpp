#include "tfg/groups.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tfg {

GroupElement GroupElement::vec(std::vector<std::int64_t> coords) {
  return {GroupKind::IntVector, std::move(coords)};
}

GroupElement GroupElement::sparse(std::vector<std::pair<std::int64_t, std::int64_t>> entries) {
  std::map<std::int64_t, std::int64_t> acc;
  for (auto [i, v] : entries) acc[i] += v;
  GroupElement g{GroupKind::DirectSum, {}};
  for (auto [i, v] : acc)
    if (v != 0) {
      g.data.push_back(i);
      g.data.push_back(v);
    }
  return g;
}

GroupElement GroupElement::word(std::vector<std::int64_t> letters) {
  GroupElement g{GroupKind::FreeInvolution, {}};
  for (auto x : letters) {
    if (!g.data.empty() && g.data.back() == x)
      g.data.pop_back();
    else
      g.data.push_back(x);
  }
  return g;
}

GroupElement GroupElement::word(std::string_view letters) {
  std::vector<std::int64_t> w;
  for (char c : letters) {
    if (c < 'A' || c > 'Z') throw InvalidInput("bad letter in word");
    w.push_back(c - 'A');
  }
  return word(std::move(w));
}

std::string GroupElement::str() const {
  std::ostringstream os;
  switch (kind) {
    case GroupKind::IntVector:
      os << "(";
      for (std::size_t i = 0; i < data.size(); ++i) os << (i ? "," : "") << data[i];
      os << ")";
      break;
    case GroupKind::DirectSum:
      os << "{";
      for (std::size_t i = 0; i + 1 < data.size(); i += 2) os << (i ? "," : "") << data[i] << ":" << data[i + 1];
      os << "}";
      break;
    case GroupKind::FreeInvolution:
      if (data.empty()) os << "e";
      for (auto x : data) os << static_cast<char>('A' + x);
      break;
  }
  return os.str();
}

GroupContext GroupContext::int_vector(int d, std::vector<GroupElement> S) {
  GroupContext c;
  c.kind = GroupKind::IntVector;
  c.dim = d;
  c.generators = std::move(S);
  return c;
}

GroupContext GroupContext::standard_int_vector(int d) {
  std::vector<GroupElement> S{GroupElement::vec(std::vector<std::int64_t>(d, 0))};
  for (int i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      std::vector<std::int64_t> v(d, 0);
      v[i] = s;
      S.push_back(GroupElement::vec(v));
    }
  return int_vector(d, std::move(S));
}

GroupContext GroupContext::direct_sum(std::int64_t lo, std::int64_t hi, std::vector<GroupElement> S) {
  GroupContext c;
  c.kind = GroupKind::DirectSum;
  c.index_lo = lo;
  c.index_hi = hi;
  c.generators = std::move(S);
  return c;
}

GroupContext GroupContext::free_involutions(int letters, std::vector<GroupElement> S) {
  GroupContext c;
  c.kind = GroupKind::FreeInvolution;
  c.letters = letters;
  c.generators = std::move(S);
  if (c.generators.empty()) {
    c.generators.push_back(c.identity());
    for (int i = 0; i < letters; ++i) c.generators.push_back(GroupElement::word(std::vector<std::int64_t>{i}));
  }
  return c;
}

GroupElement GroupContext::identity() const {
  switch (kind) {
    case GroupKind::IntVector:
      return GroupElement::vec(std::vector<std::int64_t>(dim, 0));
    case GroupKind::DirectSum:
      return {GroupKind::DirectSum, {}};
    case GroupKind::FreeInvolution:
      return {GroupKind::FreeInvolution, {}};
  }
  return {};
}

bool GroupContext::is_identity(const GroupElement& g) const { return g == identity(); }

void GroupContext::check(const GroupElement& g) const {
  if (g.kind != kind) throw KindMismatch("group element kind does not match context");
  switch (kind) {
    case GroupKind::IntVector:
      if (static_cast<int>(g.data.size()) != dim) throw KindMismatch("vector length does not match dimension");
      break;
    case GroupKind::DirectSum:
      if (g.data.size() % 2) throw KindMismatch("malformed direct-sum element");
      for (std::size_t i = 0; i < g.data.size(); i += 2) {
        if (g.data[i] < index_lo || g.data[i] > index_hi) throw KindMismatch("index outside declared window");
        if (g.data[i + 1] == 0 || (i && g.data[i - 2] >= g.data[i]))
          throw KindMismatch("direct-sum element not in normal form");
      }
      break;
    case GroupKind::FreeInvolution:
      for (std::size_t i = 0; i < g.data.size(); ++i) {
        if (g.data[i] < 0 || g.data[i] >= letters) throw KindMismatch("letter outside alphabet");
        if (i && g.data[i] == g.data[i - 1]) throw KindMismatch("word not reduced");
      }
      break;
  }
}

void GroupContext::check_generators() const {
  ElementSet S(generators.begin(), generators.end());
  for (const auto& s : generators) check(s);
  if (!S.count(identity())) throw InvalidInput("generator set must contain the identity");
  for (const auto& s : generators)
    if (!S.count(inverse(*this, s))) throw InvalidInput("generator set must be symmetric: missing inverse of " + s.str());
}

GroupElement multiply(const GroupContext& ctx, const GroupElement& a, const GroupElement& b) {
  if (a.kind != ctx.kind || b.kind != ctx.kind) throw KindMismatch("multiply: kind mismatch");
  switch (ctx.kind) {
    case GroupKind::IntVector: {
      if (a.data.size() != b.data.size()) throw KindMismatch("multiply: dimension mismatch");
      GroupElement r = a;
      for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
      return r;
    }
    case GroupKind::DirectSum: {
      GroupElement r{GroupKind::DirectSum, {}};
      std::size_t i = 0, j = 0;
      while (i < a.data.size() || j < b.data.size()) {
        if (j >= b.data.size() || (i < a.data.size() && a.data[i] < b.data[j])) {
          r.data.insert(r.data.end(), {a.data[i], a.data[i + 1]});
          i += 2;
        } else if (i >= a.data.size() || b.data[j] < a.data[i]) {
          r.data.insert(r.data.end(), {b.data[j], b.data[j + 1]});
          j += 2;
        } else {
          auto v = a.data[i + 1] + b.data[j + 1];
          if (v != 0) r.data.insert(r.data.end(), {a.data[i], v});
          i += 2;
          j += 2;
        }
      }
      return r;
    }
    case GroupKind::FreeInvolution: {
      GroupElement r = a;
      for (auto x : b.data) {
        if (!r.data.empty() && r.data.back() == x)
          r.data.pop_back();
        else
          r.data.push_back(x);
      }
      return r;
    }
  }
  return {};
}

GroupElement inverse(const GroupContext& ctx, const GroupElement& a) {
  if (a.kind != ctx.kind) throw KindMismatch("inverse: kind mismatch");
  GroupElement r = a;
  switch (ctx.kind) {
    case GroupKind::IntVector:
      for (auto& x : r.data) x = -x;
      break;
    case GroupKind::DirectSum:
      for (std::size_t i = 1; i < r.data.size(); i += 2) r.data[i] = -r.data[i];
      break;
    case GroupKind::FreeInvolution:
      std::reverse(r.data.begin(), r.data.end());
      break;
  }
  return r;
}

std::vector<GroupElement> ball(const GroupContext& ctx, int r) {
  if (r < 0) throw InvalidInput("ball radius must be non-negative");
  ElementSet seen{ctx.identity()};
  std::vector<GroupElement> frontier{ctx.identity()};
  for (int step = 0; step < r && !frontier.empty(); ++step) {
    std::vector<GroupElement> next;
    for (const auto& g : frontier)
      for (const auto& s : ctx.generators) {
        auto h = multiply(ctx, s, g);
        if (seen.insert(h).second) {
          next.push_back(std::move(h));
          if (seen.size() > ctx.enumeration_cap) throw BudgetExceeded("ball enumeration cap exceeded");
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<GroupElement> boundary(const GroupContext& ctx, const ElementSet& A,
                                   std::span<const GroupElement> S, BoundaryKind kind) {
  ElementSet out;
  if (kind != BoundaryKind::Exterior)
    for (const auto& g : A)
      for (const auto& s : S)
        if (!A.count(multiply(ctx, s, g))) {
          out.insert(g);
          break;
        }
  if (kind != BoundaryKind::Interior)
    for (const auto& a : A)
      for (const auto& s : S) {
        // s g = a  <=>  g = s^{-1} a
        auto g = multiply(ctx, inverse(ctx, s), a);
        if (!A.count(g)) out.insert(g);
      }
  return {out.begin(), out.end()};
}

InvarianceReport is_invariant(const GroupContext& ctx, const ElementSet& A,
                              std::span<const GroupElement> S, const Rational& eps) {
  if (A.empty()) throw InvalidInput("is_invariant: empty set");
  auto inner = boundary(ctx, A, S, BoundaryKind::Interior);
  Rational defect(BigInt(inner.size()), BigInt(A.size()));
  return {defect, defect < eps};
}

std::vector<GroupElement> folner_box(const GroupContext& ctx, int n, BoxFamily family) {
  if (ctx.kind != GroupKind::IntVector) throw KindMismatch("folner_box needs an integer-vector context");
  if (n < 1) throw InvalidInput("folner_box: n must be >= 1");
  if (family == BoxFamily::Dyadic && n > 62) throw BudgetExceeded("folner_box: side too large");
  std::int64_t side = family == BoxFamily::Dyadic ? (std::int64_t{1} << n) : n;
  BigInt total = pow(BigInt(side), static_cast<unsigned>(ctx.dim));
  if (total > BigInt(ctx.enumeration_cap)) throw BudgetExceeded("folner_box: size cap exceeded");
  std::vector<GroupElement> out;
  std::vector<std::int64_t> cur(ctx.dim, 1);
  for (;;) {
    out.push_back(GroupElement::vec(cur));
    int i = ctx.dim - 1;
    while (i >= 0 && cur[i] == side) cur[i--] = 1;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

nlohmann::json to_json(const GroupElement& g) {
  switch (g.kind) {
    case GroupKind::IntVector:
      return g.data;
    case GroupKind::DirectSum: {
      auto arr = nlohmann::json::array();
      for (std::size_t i = 0; i < g.data.size(); i += 2) arr.push_back({g.data[i], g.data[i + 1]});
      return arr;
    }
    case GroupKind::FreeInvolution:
      return g.str();
  }
  return nullptr;
}

GroupElement element_from_json(const GroupContext& ctx, const nlohmann::json& j) {
  GroupElement g;
  switch (ctx.kind) {
    case GroupKind::IntVector:
      g = GroupElement::vec(j.get<std::vector<std::int64_t>>());
      break;
    case GroupKind::DirectSum: {
      std::vector<std::pair<std::int64_t, std::int64_t>> e;
      for (const auto& p : j) e.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
      g = GroupElement::sparse(std::move(e));
      break;
    }
    case GroupKind::FreeInvolution: {
      auto s = j.get<std::string>();
      g = s == "e" ? GroupElement::word(std::vector<std::int64_t>{}) : GroupElement::word(std::string_view(s));
      break;
    }
  }
  ctx.check(g);
  return g;
}

GroupContext load_group_context(const nlohmann::json& doc) {
  static const std::set<std::string> allowed{"kind", "d", "generators", "index_lo", "index_hi", "letters"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!allowed.count(it.key())) throw InvalidInput("unknown field in group document: " + it.key());
  auto kind = doc.at("kind").get<std::string>();
  GroupContext ctx;
  if (kind == "IntVector") {
    ctx = GroupContext::int_vector(doc.at("d").get<int>());
  } else if (kind == "DirectSumInt") {
    ctx = GroupContext::direct_sum(doc.at("index_lo").get<std::int64_t>(), doc.at("index_hi").get<std::int64_t>());
  } else if (kind == "FreeInvolutionProduct") {
    ctx = GroupContext::free_involutions(doc.at("letters").get<int>());
  } else {
    throw InvalidInput("unknown group kind: " + kind);
  }
  for (const auto& gj : doc.at("generators")) ctx.generators.push_back(element_from_json(ctx, gj));
  ctx.check_generators();
  return ctx;
}

}  // namespace tfg

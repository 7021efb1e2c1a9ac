#include "tfg/box.hpp"

#include <algorithm>

namespace tfg {

bool Box::empty() const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return true;
  return false;
}

BigInt Box::volume() const {
  if (empty()) return 0;
  BigInt v = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i] + 1;
  return v;
}

bool Box::contains(const std::vector<std::int64_t>& p) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (BigInt(p[i]) < lo[i] || BigInt(p[i]) > hi[i]) return false;
  return true;
}

bool Box::contains(const Box& other) const {
  if (other.empty()) return true;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (other.lo[i] < lo[i] || other.hi[i] > hi[i]) return false;
  return true;
}

std::vector<BigInt> Box::sides() const {
  std::vector<BigInt> s;
  for (std::size_t i = 0; i < lo.size(); ++i) s.push_back(hi[i] >= lo[i] ? BigInt(hi[i] - lo[i] + 1) : BigInt(0));
  return s;
}

Box centered_cube(int d, const BigInt& half_width) {
  return {std::vector<BigInt>(d, -half_width), std::vector<BigInt>(d, half_width)};
}

Box corner_box(const std::vector<BigInt>& sides) { return {std::vector<BigInt>(sides.size(), 1), sides}; }

Box translate(const Box& b, const std::vector<BigInt>& v) {
  Box r = b;
  for (std::size_t i = 0; i < v.size(); ++i) {
    r.lo[i] += v[i];
    r.hi[i] += v[i];
  }
  return r;
}

Box intersect(const Box& a, const Box& b) {
  Box r = a;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    r.lo[i] = std::max(a.lo[i], b.lo[i]);
    r.hi[i] = std::min(a.hi[i], b.hi[i]);
  }
  return r;
}

Region Region::of_box(Box b) {
  Region r;
  r.box = std::move(b);
  return r;
}

Region Region::of_points(std::vector<Offset> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Region r;
  r.points = std::move(pts);
  return r;
}

int Region::dim() const {
  if (box) return box->dim();
  return points.empty() ? 0 : static_cast<int>(points.front().size());
}

BigInt Region::size() const { return box ? box->volume() : BigInt(points.size()); }

bool Region::contains_origin() const {
  Offset zero(dim(), 0);
  if (box) return box->contains(zero);
  return std::binary_search(points.begin(), points.end(), zero);
}

std::vector<BigInt> Region::coord_min() const {
  if (box) return box->lo;
  std::vector<BigInt> m(dim());
  for (int i = 0; i < dim(); ++i) {
    std::int64_t v = points.front()[i];
    for (const auto& p : points) v = std::min(v, p[i]);
    m[i] = v;
  }
  return m;
}

std::vector<BigInt> Region::coord_max() const {
  if (box) return box->hi;
  std::vector<BigInt> m(dim());
  for (int i = 0; i < dim(); ++i) {
    std::int64_t v = points.front()[i];
    for (const auto& p : points) v = std::max(v, p[i]);
    m[i] = v;
  }
  return m;
}

std::vector<Offset> Region::enumerate(std::size_t cap) const {
  if (!box) return points;
  if (box->volume() > BigInt(cap)) throw BudgetExceeded("region too large to enumerate");
  std::vector<Offset> out;
  if (box->empty()) return out;
  int d = box->dim();
  Offset lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = box->lo[i].convert_to<std::int64_t>();
    hi[i] = box->hi[i].convert_to<std::int64_t>();
  }
  Offset cur = lo;
  for (;;) {
    out.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[i] == hi[i]) cur[i] = lo[i], --i;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

BigInt interior_boundary_size(const Box& K, const Region& T) {
  if (K.empty()) return 0;
  // g + t in K for all t  <=>  lo - min t <= g <= hi - max t coordinatewise
  auto tmin = T.coord_min(), tmax = T.coord_max();
  Box core = K;
  for (int i = 0; i < K.dim(); ++i) {
    core.lo[i] = K.lo[i] - tmin[i];
    core.hi[i] = K.hi[i] - tmax[i];
  }
  return K.volume() - intersect(core, K).volume();
}

BigInt union_volume(const std::vector<Box>& boxes) {
  std::vector<Box> live;
  for (const auto& b : boxes)
    if (!b.empty()) live.push_back(b);
  if (live.empty()) return 0;
  int d = live.front().dim();
  std::vector<std::vector<BigInt>> cuts(d);
  for (const auto& b : live)
    for (int i = 0; i < d; ++i) {
      cuts[i].push_back(b.lo[i]);
      cuts[i].push_back(b.hi[i] + 1);
    }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  BigInt cells = 1;
  for (const auto& c : cuts) cells *= c.size() - 1;
  if (cells > 4'000'000) throw BudgetExceeded("union_volume: too many cells");
  BigInt total = 0;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    bool covered = false;
    for (const auto& b : live) {
      bool in = true;
      for (int i = 0; i < d && in; ++i) in = b.lo[i] <= cuts[i][idx[i]] && cuts[i][idx[i]] <= b.hi[i];
      if (in) {
        covered = true;
        break;
      }
    }
    if (covered) {
      BigInt v = 1;
      for (int i = 0; i < d; ++i) v *= cuts[i][idx[i] + 1] - cuts[i][idx[i]];
      total += v;
    }
    int i = d - 1;
    while (i >= 0 && idx[i] + 2 == cuts[i].size()) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return total;
}

BigInt exterior_boundary_size(const Box& K, const Region& T) {
  if (K.empty()) return 0;
  // union over t of (K - t), together with K, minus K
  std::vector<Box> parts{K};
  if (T.box) {
    Box sum = K;
    for (int i = 0; i < K.dim(); ++i) {
      sum.lo[i] = K.lo[i] - T.box->hi[i];
      sum.hi[i] = K.hi[i] - T.box->lo[i];
    }
    parts.push_back(sum);
  } else {
    for (const auto& t : T.points) {
      std::vector<BigInt> v;
      for (auto x : t) v.emplace_back(-x);
      parts.push_back(translate(K, v));
    }
  }
  return union_volume(parts) - K.volume();
}

BigInt boundary_size(const Box& K, const Region& T) {
  return interior_boundary_size(K, T) + exterior_boundary_size(K, T);
}

}  // namespace tfg

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tfg/rational.hpp"

namespace tfg {

// Inclusive lattice box in Z^d; empty when lo > hi in some coordinate.
struct Box {
  std::vector<BigInt> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const;
  BigInt volume() const;
  bool contains(const std::vector<std::int64_t>& p) const;
  bool contains(const Box& other) const;
  std::vector<BigInt> sides() const;
  bool operator==(const Box&) const = default;
};

Box centered_cube(int d, const BigInt& half_width);
Box corner_box(const std::vector<BigInt>& sides);  // [1,s_1] x ... x [1,s_d]
Box translate(const Box& b, const std::vector<BigInt>& v);
Box intersect(const Box& a, const Box& b);

using Offset = std::vector<std::int64_t>;

// A finite subset of Z^d held either as a box or as explicit points.
struct Region {
  std::optional<Box> box;
  std::vector<Offset> points;

  static Region of_box(Box b);
  static Region of_points(std::vector<Offset> pts);

  int dim() const;
  BigInt size() const;
  bool contains_origin() const;
  std::vector<BigInt> coord_min() const;
  std::vector<BigInt> coord_max() const;
  // Explicit points, lexicographic; throws BudgetExceeded above cap.
  std::vector<Offset> enumerate(std::size_t cap) const;
};

// Group law on Z^d is addition, so t g = t + g.
// |{g in K : exists t in T, t + g notin K}|
BigInt interior_boundary_size(const Box& K, const Region& T);
// |{g notin K : exists t in T, t + g in K}|
BigInt exterior_boundary_size(const Box& K, const Region& T);
// interior + exterior (disjoint)
BigInt boundary_size(const Box& K, const Region& T);

// Volume of a finite union of boxes (coordinate compression).
BigInt union_volume(const std::vector<Box>& boxes);

}  // namespace tfg

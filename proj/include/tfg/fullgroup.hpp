#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfg/groups.hpp"
#include "tfg/systems.hpp"

namespace tfg {

struct TablePart {
  Pattern pattern;
  GroupElement element;
  auto operator<=>(const TablePart&) const = default;
};

// An element of the topological full group: on each cylinder, translate by a fixed element.
struct CocycleTable {
  SystemPtr system;
  std::vector<TablePart> parts;

  // Canonical key; meaningful after normalize().
  const std::vector<TablePart>& key() const { return parts; }
};

struct NoMatchingCylinder : Error {
  using Error::Error;
};
struct AmbiguousMatch : Error {
  using Error::Error;
};
struct NotFree : Error {
  using Error::Error;
};

struct FullGroupBudget {
  std::size_t max_cylinders = std::size_t{1} << 20;  // odometer refinement depth cap
  std::size_t max_parts = 200'000;
  std::size_t max_ball = 100'000;
};

CocycleTable identity_table(const SystemPtr& sys);
// One part covering everything, translating by g.
CocycleTable constant_table(const SystemPtr& sys, const GroupElement& g);
// Odometer: +1 on {d0 = 0}, -1 on {d0 = 1} (binary only).
CocycleTable odometer_swap(const SystemPtr& sys);

const GroupElement& cocycle_at(const CocycleTable& t, const Point& x);
Point evaluate(const CocycleTable& t, const Point& x);

// a o b (apply b first).
CocycleTable compose(const CocycleTable& a, const CocycleTable& b, const FullGroupBudget& budget = {});
CocycleTable inverse(const CocycleTable& t, const FullGroupBudget& budget = {});
CocycleTable normalize(const CocycleTable& t, const FullGroupBudget& budget = {});
bool is_identity(const CocycleTable& t);

// Patterns whose element is not the identity. Requires a system declared free.
std::vector<Pattern> open_support(const CocycleTable& t);

// Products of at most `radius` generators, normalized and deduplicated by normal form, sorted.
std::vector<CocycleTable> subgroup_ball(const std::vector<CocycleTable>& T, int radius, const FullGroupBudget& budget = {});

struct UniformPartition {
  std::vector<Pattern> parts;
  std::vector<CocycleTable> ball;
  // elements[i][j]: the element by which ball[j] acts on parts[i]
  std::vector<std::vector<GroupElement>> elements;
};
UniformPartition uniform_partition(const std::vector<CocycleTable>& T, int radius, const FullGroupBudget& budget = {});

// Partition validity. Odometers: exact (pairwise disjoint, total mass 1).
// Orbit systems: disjoint syntactically and every grid translate matches exactly one part.
struct PartitionCheck {
  bool disjoint = false;
  bool covering = false;
  bool exact = false;        // decided exactly rather than on a grid
  std::int64_t grid_radius = 0;
  std::string detail;
};
PartitionCheck check_partition(const SystemContext& sys, const std::vector<Pattern>& parts, std::int64_t grid_radius = 16);

// Orbit systems: translates g.sigma for g in [-R,R]^d, lexicographic.
std::vector<Point> grid_points(const SystemContext& sys, std::int64_t R);
// Evaluations on the grid; two tables with different signatures differ as maps.
std::vector<Point> grid_signature(const CocycleTable& t, std::int64_t R);

nlohmann::json to_json(const CocycleTable& t);

}  // namespace tfg

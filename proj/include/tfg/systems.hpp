#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfg/groups.hpp"
#include "tfg/rational.hpp"

namespace tfg {

// A coordinate of a configuration: an odometer digit, a lattice edge, or a lattice site.
struct Cell {
  enum Kind : int { Digit = 0, HEdge = 1, VEdge = 2, Site = 3 };
  int factor = 0;
  int kind = Digit;
  std::int64_t a = 0;
  std::int64_t b = 0;

  static Cell digit(std::int64_t i, int factor = 0) { return {factor, Digit, i, 0}; }
  static Cell hedge(std::int64_t x, std::int64_t y) { return {0, HEdge, x, y}; }
  static Cell vedge(std::int64_t x, std::int64_t y) { return {0, VEdge, x, y}; }
  static Cell site(std::int64_t x, std::int64_t y = 0) { return {0, Site, x, y}; }
  auto operator<=>(const Cell&) const = default;
};

// One cell restricted to a set of symbols (bit i = symbol i allowed).
struct Constraint {
  Cell cell;
  std::uint64_t mask = 0;
  auto operator<=>(const Constraint&) const = default;
};

// Conjunction of constraints with distinct cells, sorted. Empty = whole space.
struct Pattern {
  std::vector<Constraint> constraints;

  static Pattern full() { return {}; }
  static Pattern exact(std::vector<std::pair<Cell, int>> cells);
  bool is_full() const { return constraints.empty(); }
  std::optional<std::uint64_t> mask_at(const Cell& c) const;
  auto operator<=>(const Pattern&) const = default;
};

// nullopt when some shared cell has no admissible symbol.
std::optional<Pattern> intersect(const Pattern& a, const Pattern& b);
bool syntactically_disjoint(const Pattern& a, const Pattern& b);

struct OdometerBases {
  std::vector<int> prefix;
  std::vector<int> cycle{2};

  static OdometerBases constant(int b) { return {{}, {b}}; }
  int at(std::size_t i) const;
  // Product of the first n bases.
  BigInt modulus(std::size_t n) const;
};

struct OrbitSpec {
  std::string name;
  int dim = 2;
  bool edges = true;  // cells are lattice edges (dim 2) or sites
  int alphabet = 2;
  std::function<int(const Cell&)> oracle;  // symbol of the base configuration
  // Optional: true when no configuration of the space can satisfy the pattern.
  std::function<bool(const Pattern&)> infeasible;
};

class SystemContext;
using SystemPtr = std::shared_ptr<const SystemContext>;

class SystemContext {
 public:
  enum class Kind { Odometer, Orbit, Product };

  Kind kind = Kind::Odometer;
  GroupContext group;
  OdometerBases bases;
  OrbitSpec orbit;
  std::vector<SystemPtr> factors;
  bool declared_free = false;

  static SystemPtr odometer(OdometerBases bases);
  static SystemPtr binary_odometer();
  static SystemPtr orbit_system(OrbitSpec spec, bool declared_free);
  static SystemPtr product(std::vector<SystemPtr> factors);

  int alphabet_size(const Cell& c) const;
  std::uint64_t full_mask(const Cell& c) const;
};

struct DigitStream {
  std::vector<int> prefix;
  std::vector<int> period{0};

  int digit(std::size_t i) const;
  auto operator<=>(const DigitStream&) const = default;
};

struct Point {
  DigitStream digits;               // Odometer
  std::vector<std::int64_t> shift;  // Orbit: the point shift . sigma
  std::vector<Point> factors;       // Product

  std::strong_ordering operator<=>(const Point&) const = default;
  bool operator==(const Point&) const = default;
};

// Shortest prefix + shortest period; validates digits against the bases.
Point odometer_point(const SystemContext& sys, std::vector<int> prefix, std::vector<int> period = {0});
// Digits of k (0 <= k < modulus(n)) in the first n places, zero tail.
Point odometer_integer_point(const SystemContext& sys, const BigInt& k, std::size_t n);
Point orbit_point(std::vector<std::int64_t> shift);

Point translate(const SystemContext& sys, const Point& x, const GroupElement& g);
int symbol_at(const SystemContext& sys, const Point& x, const Cell& c);
std::vector<int> window(const SystemContext& sys, const Point& x, std::span<const Cell> domain);
Pattern window_pattern(const SystemContext& sys, const Point& x, std::span<const Cell> domain);
bool matches(const SystemContext& sys, const Pattern& p, const Point& x);

// Cells seen at radius r: first r digits, or everything touching [-(r-1), r-1]^d.
std::vector<Cell> radius_cells(const SystemContext& sys, int r);

struct MetricValue {
  Rational value;        // 2^-r, or 0 when windows agree up to max_radius
  int agree_radius = 0;  // r
  bool truncated = false;
};
MetricValue metric(const SystemContext& sys, const Point& x, const Point& y, int max_radius);

// Cell of the base configuration seen by x at c, for orbit systems: c - shift.
Cell shift_cell(const Cell& c, std::span<const std::int64_t> v);
Pattern shift_pattern(const Pattern& p, std::span<const std::int64_t> v);

// [1,2^n]^d for the acting group of sys.
std::vector<GroupElement> dyadic_folner_set(const SystemContext& sys, int n);
// s.x for s in F, in order of F; incremental for odometers.
std::vector<Point> orbit_points(const SystemContext& sys, const Point& x, std::span<const GroupElement> F);

Rational banach_density_lower(const SystemContext& sys, const Pattern& pattern, const Point& basepoint, int n);

nlohmann::json to_json(const Cell& c);
nlohmann::json to_json(const Pattern& p);
nlohmann::json to_json(const Point& x);
std::string describe(const Point& x);

}  // namespace tfg

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "json.hpp"
#include "tfg/fullgroup.hpp"
#include "tfg/graph.hpp"
#include "tfg/rational.hpp"

namespace tfg {

// A self-map of {0, ..., size-1}.
using Map = std::vector<std::uint32_t>;

Rational hamming(const Map& f, const Map& g);
// f o g
Map compose_maps(const Map& f, const Map& g);
bool is_permutation(const Map& f);
// Diagonal power on tuples of length l (tuple index = sum t_i base^i).
Map amplify_map(const Map& f, int l, std::size_t cap = std::size_t{1} << 24);

// Theta_n: tables act on the finite carrier A_n (a disjoint union of Folner orbits),
// and on A_n^l coordinatewise when l > 1.
struct AlmostAction {
  SystemPtr system;
  std::vector<Point> basepoints;
  int n = 0;
  int l = 1;
  std::vector<Point> points;          // A_n, block by block
  std::vector<std::uint32_t> block;   // basepoint index of each carrier point
  std::size_t block_size = 0;
  std::vector<std::map<Point, std::uint32_t>> index;  // per block: point -> carrier index
  std::map<std::vector<TablePart>, Map> assignments;  // keyed by normal form, maps on A_n
  FullGroupBudget budget;

  std::size_t base_size() const { return points.size(); }
  BigInt carrier_size() const;
  bool assigned(const CocycleTable& t) const;
  // Throws Error when t has not been assigned.
  const Map& base_map(const CocycleTable& t) const;
  // Coordinatewise image of a tuple in A_n^l.
  std::vector<std::uint32_t> apply(const CocycleTable& t, std::span<const std::uint32_t> tuple) const;
};

AlmostAction build_theta(const SystemPtr& sys, const Point& x, int n, const std::vector<CocycleTable>& gamma_set);
AlmostAction build_theta_multi(const SystemPtr& sys, const std::vector<Point>& xs, int n,
                               const std::vector<CocycleTable>& gamma_set);
// Assigns t (normalized) on demand; returns its map on A_n.
const Map& ensure_assigned(AlmostAction& A, const CocycleTable& t);

// Diagonal power; the tuple carrier stays implicit.
AlmostAction amplify(const AlmostAction& A, int l, const BigInt& cap = BigInt(1) << 64);

// d_H on the carrier A_n^l from factor statistics: 1 - (1 - d_H on A_n)^l.
Rational action_hamming(const AlmostAction& A, const CocycleTable& f, const CocycleTable& g);
// Same quantity by enumerating every tuple (bounded by cap).
Rational action_hamming_explicit(const AlmostAction& A, const CocycleTable& f, const CocycleTable& g,
                                 std::size_t cap = std::size_t{1} << 22);

struct AlmostActionReport {
  Rational epsilon;
  Rational mult_defect;       // max d_H(Theta(fg), Theta(f)Theta(g))
  Rational min_displacement;  // min over nontrivial f of d_H(Theta(f), id); 1 when vacuous
  bool identity_ok = false;
  bool mult_ok = false;
  bool displacement_ok = false;
  bool pass = false;
  std::size_t pairs = 0;
  std::size_t nontrivial = 0;
};
AlmostActionReport check_injective_almost_action(AlmostAction& A, const std::vector<CocycleTable>& F, const Rational& eps);
nlohmann::json to_json(const AlmostAction& A, const AlmostActionReport& r);

// Points of A_n where Theta(g1)Theta(g2) = Theta(g1 g2) for every g1, g2 in the ball,
// and where every nontrivial ball element moves the point.
struct GoodSets {
  Rational q1;  // |Q1| / |A_n|^l
  Rational q2;  // |Q2| / |A_n|^l
  std::size_t ball_size = 0;
  std::size_t multiplicative_points = 0;  // |D| on A_n
};
GoodSets measure_good_sets(AlmostAction& A, const std::vector<CocycleTable>& ball);
// Ball of radius K^l in the subgroup generated by T.
GoodSets measure_good_sets(AlmostAction& A, const std::vector<CocycleTable>& T, int K);

// Edges (z, Theta(t)(z)) labelled by the index of t; explicit tuples when l > 1.
LabeledGraph schreier_graph(AlmostAction& A, const std::vector<CocycleTable>& T, std::size_t cap = std::size_t{1} << 22);

// Locality: points of A_n in psi^-1 phi^-1(F) n psi^-1(F) n phi^-1(F) n F that violate
// Theta(phi)Theta(psi) = Theta(phi psi). Always zero for a correct construction.
std::size_t locality_violations(AlmostAction& A, const CocycleTable& phi, const CocycleTable& psi);

}  // namespace tfg

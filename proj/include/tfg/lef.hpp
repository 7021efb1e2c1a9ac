#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfg/fullgroup.hpp"
#include "tfg/sofic.hpp"

namespace tfg {

// A finite set E of points of X with a permutation action beta approximating alpha on F.
struct FiniteModel {
  SystemPtr system;
  std::vector<Point> points;
  std::map<GroupElement, Map> beta;  // keyed by generator
  Rational epsilon;
  std::vector<GroupElement> F;
  int radius = 1;  // metric radius used for distances
  // beta(g) for any g generated by the keyed elements; throws Error outside.
  Map beta_of(const GroupElement& g) const;
};

// E = {k < N with zero tail}, N = product of the first n bases, beta(+-1) = k -> k +- 1 mod N.
FiniteModel odometer_finite_model(const SystemPtr& sys, int n);

struct ResidualReport {
  bool density_ok = true;
  bool approximation_ok = true;
  Rational worst_density;        // max over samples of min distance to E
  Rational worst_approximation;  // max over z, s of d(alpha(s) z, beta(s) z)
  std::optional<Point> density_witness;
  std::optional<std::pair<std::size_t, GroupElement>> approximation_witness;
  bool pass() const { return density_ok && approximation_ok; }
};
// Both conditions with <= eps; metric at model.radius + 8.
ResidualReport check_residually_finite(const FiniteModel& model, const std::vector<Point>& samples,
                                       const std::vector<GroupElement>& F, const Rational& eps);

struct FreenessReport {
  bool free = true;
  bool structural = false;  // odometer: free by construction
  bool vacuous = false;
  std::optional<std::size_t> duplicate;  // index of a repeated point
  std::optional<std::pair<std::size_t, GroupElement>> fixed;
};
FreenessReport freeness_check(const FiniteModel& model, int search_radius);

struct LefMap {
  std::vector<CocycleTable> ball;
  std::vector<Map> theta;
};
struct LefError : Error {
  using Error::Error;
};
// Theta(gamma)(z) = beta(c(gamma, z))(z).
Map lef_permutation(const CocycleTable& gamma, const FiniteModel& model);
LefMap build_lef_map(const std::vector<CocycleTable>& ball, const FiniteModel& model);

struct LefReport {
  std::size_t carrier = 0;
  std::size_t pairs = 0;
  Rational max_product_defect;  // max d_H(Theta(gh), Theta(g) Theta(h))
  bool multiplicative = true;   // all product defects exactly 0
  Rational min_displacement;    // min d_H(Theta(g), id) over nontrivial g (1 when none)
  bool displacement_ok = true;  // d_H(Theta(g), id) > eps_g for every nontrivial g
  std::optional<std::pair<std::size_t, std::size_t>> product_witness;
  std::optional<std::size_t> displacement_witness;
  bool pass() const { return multiplicative && displacement_ok; }
};
// eps_list is indexed like the ball; missing entries are 0.
LefReport check_lef_conditions(const LefMap& theta, const FiniteModel& model, const std::vector<Rational>& eps_list = {});

struct LefSearchRow {
  int n = 0;
  LefReport report;
};
struct LefSearch {
  std::optional<int> minimal_n;
  std::vector<LefSearchRow> rows;
  bool monotone = true;  // every n above minimal_n also passes
};
LefSearch minimal_lef_n(const SystemPtr& sys, const std::vector<CocycleTable>& ball, int max_n,
                        const std::vector<Rational>& eps_list = {});

nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const LefReport& r);
nlohmann::json to_json(const LefSearch& s);

}  // namespace tfg

#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfg/rational.hpp"

namespace tfg {

enum class GroupKind { IntVector, DirectSum, FreeInvolution };

// Payload by kind:
//   IntVector       dense coordinates
//   DirectSum       flattened (index, value) pairs, sorted by index, no zero values
//   FreeInvolution  reduced letter word (no two equal adjacent letters)
struct GroupElement {
  GroupKind kind = GroupKind::IntVector;
  std::vector<std::int64_t> data;

  static GroupElement vec(std::vector<std::int64_t> coords);
  static GroupElement sparse(std::vector<std::pair<std::int64_t, std::int64_t>> entries);
  static GroupElement word(std::vector<std::int64_t> letters);
  // Letters 'A'.. map to 0..
  static GroupElement word(std::string_view letters);

  std::string str() const;
  auto operator<=>(const GroupElement&) const = default;
};

using ElementSet = std::set<GroupElement>;

struct GroupContext {
  GroupKind kind = GroupKind::IntVector;
  int dim = 1;                   // IntVector
  std::int64_t index_lo = 0;     // DirectSum: declared finite index window
  std::int64_t index_hi = -1;
  int letters = 0;               // FreeInvolution
  std::vector<GroupElement> generators;
  std::size_t enumeration_cap = 2'000'000;

  static GroupContext int_vector(int d, std::vector<GroupElement> S = {});
  // S = {0, +-e_1, ..., +-e_d}
  static GroupContext standard_int_vector(int d);
  static GroupContext direct_sum(std::int64_t lo, std::int64_t hi, std::vector<GroupElement> S = {});
  // Empty S = {e, each letter}
  static GroupContext free_involutions(int letters, std::vector<GroupElement> S = {});

  GroupElement identity() const;
  bool is_identity(const GroupElement& g) const;
  void check(const GroupElement& g) const;
  // Throws unless S is symmetric and contains the identity.
  void check_generators() const;
};

GroupElement multiply(const GroupContext& ctx, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupContext& ctx, const GroupElement& a);

// Products of at most r generators, sorted.
std::vector<GroupElement> ball(const GroupContext& ctx, int r);

enum class BoundaryKind { Interior, Exterior, Both };

// interior = {g in A : Sg meets A^c}, exterior = {g notin A : Sg meets A}
std::vector<GroupElement> boundary(const GroupContext& ctx, const ElementSet& A,
                                   std::span<const GroupElement> S, BoundaryKind kind);

struct InvarianceReport {
  Rational defect;  // |interior boundary| / |A|
  bool invariant = false;  // defect < eps
};
InvarianceReport is_invariant(const GroupContext& ctx, const ElementSet& A,
                              std::span<const GroupElement> S, const Rational& eps);

enum class BoxFamily { Dyadic, Linear };
// [1,2^n]^d or [1,n]^d in lexicographic order.
std::vector<GroupElement> folner_box(const GroupContext& ctx, int n, BoxFamily family);

GroupContext load_group_context(const nlohmann::json& doc);
nlohmann::json to_json(const GroupElement& g);
GroupElement element_from_json(const GroupContext& ctx, const nlohmann::json& j);

}  // namespace tfg

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfg/box.hpp"
#include "tfg/fullgroup.hpp"
#include "tfg/hyperfinite.hpp"
#include "tfg/rational.hpp"
#include "tfg/sofic.hpp"

namespace tfg {

// |{g in F : exists t in T, t g notin F}| / |F| by table composition and normal forms.
Rational folner_defect(const std::vector<CocycleTable>& F, const std::vector<CocycleTable>& T,
                       const FullGroupBudget& budget = {});

struct FolnerReport {
  std::vector<CocycleTable> F;
  std::vector<CocycleTable> T;
  Rational defect;
  Rational epsilon;
  bool meets = false;          // defect <= epsilon
  bool exact_minimum = false;  // |F| is the true minimum (exhaustive search), else an upper bound
  std::optional<std::size_t> K;  // certificate block bound, when extracted from a certificate
  bool within_K = true;
  std::string provenance;
};
nlohmann::json to_json(const FolnerReport& r);

struct ExtractOptions {
  std::size_t max_anchors_per_block = 8;
  std::size_t max_candidates = 256;
};
// Pulls back certificate blocks along Theta: F = {g in B(Gamma, K_ball) : Theta(g)(v) in block}.
// Throws Error with the best defect found when no candidate meets eps.
FolnerReport extract_folner_set(const PartitionCertificate& cert, AlmostAction& A, const std::vector<CocycleTable>& T,
                                int K_ball, const Rational& eps, const ExtractOptions& opt = {});

struct ZdBound {
  std::int64_t m = 0;
  BigInt C;
  BigInt k_statement;      // ceil(m / (1 - (1 - eps/C)^{1/d}))
  BigInt k_proof;          // ceil(2m / (1 - (1 - eps/C)^{1/d}))
  BigInt bound_statement;  // k_statement^{dl}
  BigInt bound_proof;      // k_proof^{dl}
  bool clamped = false;    // eps > C: 1 - eps/C replaced by 0
};
// S in Z^d, |T| tables, power l.
ZdBound folner_bound_zd(int l, int d, const std::vector<Offset>& S, std::size_t T_size, const Rational& eps);
// Smallest integer k >= c with (1 - c/k)^d >= q, i.e. k >= c / (1 - q^{1/d}); exact.
BigInt ceil_over_root_gap(const BigInt& c, const Rational& q, int d);

struct OracleAnswer {
  BigInt value;
  Region witness;
  bool exact = false;     // the value is the true minimum, not only an upper bound
  bool verified = false;  // witness re-checked in closed form (and by enumeration when small)
  std::string method;
};
struct FolnerOracle {
  std::function<OracleAnswer(const Rational&)> fol;  // Fol_{G,S}(eta)
  std::function<OracleAnswer(const Rational&)> psi;  // minimal radius holding a minimal witness
  std::function<BigInt(const BigInt&)> vol;          // |B(G, r)|
};
// Z^d with S = {0, +-e_i}: box witnesses, exhaustive search over connected sets up to size 6.
FolnerOracle standard_zd_oracle(int d);

// |B(Z^d, r)| in the word metric of the standard generators.
BigInt l1_ball_volume(int d, const BigInt& r);

struct A2Params {
  std::size_t T_size = 2;
  int l = 1;
};
struct PhiRow {
  int i = 0;
  BigInt Phi, phi;
  Rational eta;  // argument passed to the oracles (rows i >= 2)
  std::optional<OracleAnswer> fol, psi;
};
struct PhiTable {
  std::vector<PhiRow> rows;
  Rational delta;   // delta(eps) for the given |T| and l
  unsigned n = 0;   // ceil(log delta / log(1 - delta))
  bool complete = false;
  std::string stopped;
};
PhiTable phi_recursion(const GroupContext& ctx, const Rational& eps, int steps, const FolnerOracle& oracle,
                       const A2Params& params = {});
Rational a2_delta(const Rational& eps, std::size_t S_size, const A2Params& params);
unsigned a2_n(const Rational& delta);

struct PsiRow {
  int i = 0;
  BigInt Psi;
  Rational eta;
  BigInt radius;  // Fol-tilde(eta)
  bool verified = false;
};
struct PsiTable {
  std::vector<PsiRow> rows;
  bool complete = false;
  std::string stopped;
};
// Minimal r >= 1 with |interior boundary of B(r)| <= eta |B(r)| for standard Z^d.
BigInt folner_tilde(int d, const Rational& eta, unsigned radius_bits_budget = 4096);
PsiTable psi_tilde_recursion(const GroupContext& ctx, const Rational& eps, int steps,
                             unsigned radius_bits_budget = 4096);

struct EmpiricalOptions {
  int ball_radius = 5;
  std::size_t exhaustive_size = 6;
  std::size_t max_sets = 2'000'000;
};
// Smallest F found among connected sets up to size 6 (exact when found) and balls of Gamma.
FolnerReport empirical_folner_function(const std::vector<CocycleTable>& T, const Rational& eps,
                                       const EmpiricalOptions& opt = {});

std::string phi_csv(const PhiTable& t);
std::string psi_csv(const PsiTable& t);

}  // namespace tfg

#pragma once

// Asymmetric quantum code parameters from nested classical codes (CSS and
// Hermitian CSS), the family pipelines built on them, and table audits.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/families.hpp"
#include "qct/lincode.hpp"

namespace qct {

enum class Purity { pure, degenerate, unknown };
std::string to_string(Purity p);

// [[n,k,{dz,dx}]]_q with dz >= dx. `raw` keeps the pair in the order the
// construction produces it; `swapped` is set when that order had dz < dx.
struct AqcParams {
  std::size_t n = 0;
  std::size_t k = 0;
  unsigned dz = 0;
  unsigned dx = 0;
  std::uint64_t q = 0;
  bool dz_exact = false;
  bool dx_exact = false;
  Purity purity = Purity::unknown;
  std::string construction;
  std::vector<std::string> inputs;
  std::pair<unsigned, unsigned> raw{0, 0};
  bool swapped = false;
  std::vector<std::string> notes;

  std::string format() const;
};

nlohmann::json to_json(const AqcParams& a);
AqcParams aqc_from_json(const nlohmann::json& j);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AqcResult {
  AqcParams params;
  std::vector<Check> checks;

  bool ok() const;
  const Check* find(const std::string& name) const;
};

nlohmann::json to_json(const AqcResult& r);

// CSS(i): C1 a proper nonzero subcode of C2. Both relative weights are
// computed; purity compares them with d(C2) and d(C1^perp).
AqcResult css_standard(const LinearCode& c1, const LinearCode& c2, const SearchConfig& cfg = {});

// CSS(ii) over GF(Q^2): requires C1^{perp h} in C2; k = k1 + k2 - n and
// {dz,dx} = {d1,d2}. The record is Q-ary.
AqcResult css_hermitian(const LinearCode& c1, const LinearCode& c2, const SearchConfig& cfg = {});

// [[n, k-1, {d, 2}]] for a code containing the all-ones word.
AqcResult allone_aqc(const LinearCode& c, const SearchConfig& cfg = {});

// (i) from the narrow-sense BCH code (q, n, delta): the code itself and its
// puncture at the last coordinate.
std::pair<AqcResult, AqcResult> th_best_bch(std::uint64_t q, std::size_t n, std::size_t delta,
                                            const SearchConfig& cfg = {});
// (ii) binary self-dual input (checked).
AqcResult th_best_self_dual(const LinearCode& c, const SearchConfig& cfg = {});
// (iii) [[2^m-1, m, {2^(m-1)-1, 2}]] from S_m inside C_0.
AqcResult th_best_simplex(unsigned m, const SearchConfig& cfg = {});

// CSS(i) with C1 = B(delta2)^perp, C2 = B(delta1), n = 2^m - 1. Codes are
// built as matrices when n <= matrix_limit; otherwise the pair is handled by
// defining sets and certified bounds.
AqcResult lemma_bch1(unsigned m, unsigned delta1, unsigned delta2, const SearchConfig& cfg = {},
                     std::size_t matrix_limit = 255);

struct CharpinResult {
  AqcResult first;
  std::optional<AqcResult> second;
  std::string second_rejected;  // reason when `second` is empty
};
CharpinResult charpin_family(unsigned m, unsigned i, const SearchConfig& cfg = {}, std::size_t matrix_limit = 255);

// CSS(i) on RS(q,k_t) + extended RS(q,k_t), t = 1, 2.
AqcResult rs_direct_sum_aqc(std::uint64_t q, std::size_t k1, std::size_t k2, const SearchConfig& cfg = {});

// CSS(i) on the parity-augmented expansions of RS(q^m, k_t) over GF(q).
AqcResult concat_expand_aqc(std::uint64_t q, unsigned m, std::size_t k1, std::size_t k2, const SearchConfig& cfg = {});

// Parameters of the concatenation with the inner [[q^m-2, 1, {q^m-k-1, k}]]
// code; the distance D is a lower bound.
AqcParams quantum_concat_params(std::uint64_t q, unsigned m, std::size_t k1, std::size_t k2, std::size_t k);

// Expansion of the negacyclic pair C_s^{perp h} in C_s over GF(q^2) to GF(q).
// Every hypothesis is a check; construction runs when m == 2 and the
// negacyclic preconditions hold.
AqcResult negacyclic_expand_aqc(std::uint64_t q, std::size_t n, std::size_t s, unsigned m,
                                const SearchConfig& cfg = {});

enum class BoundKind { carlitz_uchiyama, singleton_wt, singleton };
// carlitz_uchiyama(m, delta): ceil(2^(m-1) - 2^(m/2)(delta-1)/2), may be <= 0.
// singleton_wt(m, delta): m(delta-1)/2 + 1. singleton(n, k): n - k + 1.
long long bound(BoundKind kind, long long a, long long b);

enum class RowStatus { confirmed, formula_consistent, inconsistent, unverifiable_at_scale };
std::string to_string(RowStatus s);

struct ReportRow {
  std::string claim;
  RowStatus status = RowStatus::unverifiable_at_scale;
  std::string summary;
  nlohmann::json detail;
};

struct VerificationReport {
  std::string target;
  std::vector<ReportRow> rows;

  std::size_t count(RowStatus s) const;
};

nlohmann::json to_json(const VerificationReport& r);
std::string to_csv(const VerificationReport& r);

// Exhaustive solutions of the concatenation formula (q, m fixed) for
// [[n, k, {a, b}]], both orderings. `dominating` collects pairs whose
// distances are at least {a, b} in some order with the same k.
struct FormulaSearch {
  std::vector<std::pair<std::size_t, std::size_t>> exact;
  std::vector<std::pair<std::size_t, std::size_t>> dominating;
  std::uint64_t examined = 0;
};
FormulaSearch search_concat_formula(std::uint64_t q, unsigned m, std::size_t k, unsigned a, unsigned b);
FormulaSearch search_rs_sum_formula(std::uint64_t q, std::size_t k, unsigned a, unsigned b);

// table1 | table2 | table3 | table4 | examples.
VerificationReport audit_table(const std::string& which, const SearchConfig& cfg = {});
std::vector<std::string> audit_targets();

}  // namespace qct

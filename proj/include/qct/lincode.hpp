#pragma once

// Linear codes over GF(q) held in canonical reduced row echelon form, their
// duals, minimum distances and the subfield expansions Phi_B.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/galois.hpp"
#include "qct/matrix.hpp"
#include "qct/polyalg.hpp"

namespace qct {

enum class Exactness { exact, lower_bound, upper_bound };
enum class DistanceMethod { enumeration, mds_rank, bch_bound, structural, search };

std::string to_string(Exactness e);
std::string to_string(DistanceMethod m);

struct DistanceResult {
  // The exact distance, or the best certified lower bound when not exact.
  unsigned value = 0;
  Exactness exactness = Exactness::lower_bound;
  DistanceMethod method = DistanceMethod::bch_bound;
  // A codeword of weight `value` (exact) or of weight `upper` (bounds).
  std::optional<std::vector<Elem>> witness;
  // Smallest weight actually observed on a codeword, when known.
  std::optional<unsigned> upper;
  // Value claimed by a construction but not verified.
  std::optional<unsigned> declared;

  bool is_exact() const { return exactness == Exactness::exact; }
};

nlohmann::json to_json(const DistanceResult& d, bool with_witness = false);
DistanceResult distance_from_json(const nlohmann::json& j);

// Budgets shared by every distance computation.
struct SearchConfig {
  // Exhaustive enumeration runs when q^k (of the enumerated space) is at
  // most this many codewords.
  std::uint64_t cap = std::uint64_t{1} << 24;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 0x5eed;
  // Information-set iterations for the sampled upper bound.
  unsigned samples = 200;
  // k-subsets examined by is_mds.
  std::uint64_t subset_cap = 5'000'000;
};

class LinearCode {
 public:
  // Canonicalizes rows; throws on ragged input or entries outside the field.
  // A code with zero rows needs an explicit length.
  static LinearCode from_generator(FieldPtr field, const std::vector<std::vector<Elem>>& rows,
                                   std::optional<std::size_t> length = std::nullopt);
  static LinearCode from_matrix(Matrix generator);
  static LinearCode zero(FieldPtr field, std::size_t n);
  static LinearCode whole_space(FieldPtr field, std::size_t n);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t length() const { return generator_.cols(); }
  std::size_t dimension() const { return generator_.rows(); }
  const Matrix& generator() const { return generator_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  const std::string& provenance() const { return provenance_; }
  LinearCode& set_provenance(std::string p) {
    provenance_ = std::move(p);
    return *this;
  }
  const std::optional<DefiningSet>& defining_set() const { return defining_set_; }
  LinearCode& set_defining_set(DefiningSet t) {
    defining_set_ = std::move(t);
    return *this;
  }

  // Cached distance knowledge. Exact entries must carry a witness.
  std::optional<DistanceResult> distance_info() const;
  void record_distance(const DistanceResult& d) const;

  // Parity-check matrix (generator of the dual), in RREF.
  Matrix parity_check() const;
  bool contains_word(std::span<const Elem> v) const;
  std::vector<Elem> encode(std::span<const Elem> msg) const;

  // Same field, length and row space.
  bool operator==(const LinearCode& o) const { return generator_ == o.generator_; }

 private:
  LinearCode(Matrix g, std::vector<std::size_t> pivots) : generator_(std::move(g)), pivots_(std::move(pivots)) {
    field_ = generator_.field_ptr();
  }
  struct Cache {
    std::mutex mu;
    std::optional<DistanceResult> distance;
  };

  FieldPtr field_;
  Matrix generator_;
  std::vector<std::size_t> pivots_;
  std::string provenance_;
  std::optional<DefiningSet> defining_set_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct ClassicalParams {
  std::size_t n = 0, k = 0;
  unsigned d = 0;
  bool d_exact = false;
  std::uint64_t q = 0;
};
ClassicalParams params_of(const LinearCode& c);
std::string format_params(const LinearCode& c);

LinearCode dual(const LinearCode& c);
// Requires |F| = Q^2; dual of the entrywise Q-conjugated code.
LinearCode hermitian_dual(const LinearCode& c);
// Entrywise x -> x^Q.
LinearCode conjugate_code(const LinearCode& c);

bool contains_code(const LinearCode& outer, const LinearCode& inner);
bool contains_allones(const LinearCode& c);

LinearCode puncture(const LinearCode& c, std::size_t position);
LinearCode extend_parity(const LinearCode& c);
LinearCode direct_sum(const LinearCode& a, const LinearCode& b);

// Exact when the enumerated space fits the cap; otherwise certified bounds.
// Results are cached on the code and reused when exact.
DistanceResult min_distance(const LinearCode& c, const SearchConfig& cfg = {});
// Minimum weight of C2 \ C1. Throws when C1 is not a proper subcode of C2.
DistanceResult relative_min_weight(const LinearCode& c2, const LinearCode& c1, const SearchConfig& cfg = {});
// Reference implementation for tests: double loop over all messages.
unsigned naive_min_distance(const LinearCode& c);

// Every k-subset of columns independent; throws CapExceeded when the number
// of subsets exceeds cfg.subset_cap.
// Uses an exact cached distance or a structural bound before the rank test.
bool is_mds(const LinearCode& c, const SearchConfig& cfg = {});
bool is_mds_by_rank(const LinearCode& c, const SearchConfig& cfg = {});

// Psi_B(x): coordinates of x in basis b.
std::vector<Elem> psi(const ExtensionBasis& b, Elem x);
// Phi_B applied to a code over the extension field of b.
LinearCode expand_basis(const LinearCode& c, const ExtensionBasis& b);
// Phi_B followed by one parity symbol per block. c must be MDS; the distance
// 2(n-k+1) is recorded as declared, and as a certified lower bound.
LinearCode expand_with_parity(const LinearCode& c, const ExtensionBasis& b, const SearchConfig& cfg = {});

nlohmann::json to_json(const LinearCode& c);
LinearCode code_from_json(const nlohmann::json& j);

}  // namespace qct

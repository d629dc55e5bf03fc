#pragma once

// Finite fields GF(p^e) with log/Zech tables, subfield embeddings, the trace
// map and (self-)dual bases of an extension over a subfield.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/error.hpp"

namespace qct {

// Field elements are packed coefficient vectors over the prime field:
// sum_i c_i * p^i where c_i is the coefficient of x^i modulo the field's
// defining polynomial. Zero is 0 and one is 1 in every field.
using Elem = std::uint32_t;

// Largest field order that build_field accepts. Log and Zech tables are kept
// for every field, so memory grows linearly with this value.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 22;

class Field {
 public:
  Field(unsigned p, unsigned e);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  Elem order() const { return q_; }
  // Monic defining polynomial over GF(p), constant term first (e+1 entries).
  const std::vector<unsigned>& modulus() const { return modulus_; }
  // The fixed primitive element.
  Elem generator() const { return generator_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) return (a + b) % p_;
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t diff = log_[b] >= log_[a] ? log_[b] - log_[a] : log_[b] + (q_ - 1) - log_[a];
    std::uint32_t z = zech_[diff];
    if (z == kNoLog) return 0;
    return exp_[log_[a] + z];
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a == 0) return a;
    if (e_ == 1) return p_ - a;
    return exp_[log_[a] + half_];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  // Discrete logarithm base generator(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  // generator()^k.
  Elem exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  // a^(p^k).
  Elem frobenius(Elem a, unsigned k) const;
  // Multiplicative order of a nonzero element.
  std::uint64_t element_order(Elem a) const;

  // The image of the integer c under Z -> GF(p) -> this field.
  Elem from_int(long long c) const;
  std::vector<unsigned> coefficients(Elem a) const;
  Elem from_coefficients(std::span<const unsigned> coeffs) const;

  // "0", "1" or "w^k" (powers of the generator).
  std::string format(Elem a) const;
  // Accepts the output of format(), plain "w", and decimal packed indices.
  Elem parse(const std::string& text) const;

  bool same_as(const Field& other) const { return p_ == other.p_ && e_ == other.e_; }

 private:
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  unsigned p_;
  unsigned e_;
  Elem q_;
  std::uint32_t half_ = 0;  // (q-1)/2, log of -1 in odd characteristic
  std::vector<unsigned> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> exp_;           // length 2(q-1)
  std::vector<std::uint32_t> log_;  // length q
  std::vector<std::uint32_t> zech_; // 1 + w^i = w^zech[i]
};

using FieldPtr = std::shared_ptr<const Field>;

// Returns the canonical GF(p^e): lowest irreducible monic modulus (by packed
// integer value of its lower coefficients) and the smallest primitive element.
// Fields are cached, so repeated calls share one instance.
FieldPtr build_field(unsigned p, unsigned e);
// build_field for a prime power q.
FieldPtr field_of_order(std::uint64_t q);

bool is_prime(std::uint64_t n);
// Returns (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q);
// Ben-Or irreducibility test for a monic polynomial over GF(p).
bool is_irreducible_mod_p(std::span<const unsigned> poly, unsigned p);

// A value-semantic element for public interfaces. Hot loops work on Elem.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {}

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  std::vector<unsigned> rep() const { return field_->coefficients(value_); }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_->add(value_, o.value_)}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_->sub(value_, o.value_)}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_->mul(value_, o.value_)}; }
  FieldElement operator/(const FieldElement& o) const { return {field_, field_->div(value_, o.value_)}; }
  bool operator==(const FieldElement& o) const {
    return field_->same_as(*o.field_) && value_ == o.value_;
  }
  std::string to_string() const { return field_->format(value_); }

 private:
  FieldPtr field_;
  Elem value_;
};

// GF(q) embedded in GF(q^m). Both fields keep their own canonical
// representation; the embedding sends the subfield's defining variable to a
// fixed root of its modulus inside the extension.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr sub, FieldPtr ext);

  const FieldPtr& sub() const { return sub_; }
  const FieldPtr& ext() const { return ext_; }
  unsigned relative_degree() const { return m_; }

  Elem embed(Elem a) const { return embed_[a]; }
  std::optional<Elem> restrict(Elem x) const;
  Elem restrict_or_throw(Elem x) const;
  bool in_subfield(Elem x) const { return restrict(x).has_value(); }

  // Tr_{ext/sub}(x) = sum_{i<m} x^(q^i), returned as a subfield element.
  Elem trace(Elem x) const;

 private:
  FieldPtr sub_;
  FieldPtr ext_;
  unsigned m_;
  std::uint32_t cofactor_;           // (|ext|-1)/(|sub|-1)
  std::vector<Elem> embed_;          // sub -> ext
  std::vector<Elem> restrict_by_log_;  // log_ext / cofactor -> sub
};

using EmbeddingPtr = std::shared_ptr<const FieldEmbedding>;

// Cached embedding of GF(p^sub_e) in GF(p^ext_e); sub_e must divide ext_e.
EmbeddingPtr embedding(unsigned p, unsigned sub_e, unsigned ext_e);
EmbeddingPtr embedding(const FieldPtr& sub, const FieldPtr& ext);

FieldElement trace(const FieldElement& x, const FieldPtr& subfield);

// x -> x^q on GF(q^2).
Elem conjugate(const Field& field, Elem x, std::uint64_t q);
FieldElement conjugate(const FieldElement& x, std::uint64_t q);

struct ExtensionBasis {
  EmbeddingPtr tower;
  std::vector<Elem> elements;  // extension elements

  // m x m matrix [Tr(a_i b_j)] over the subfield, row-major.
  std::vector<Elem> trace_gram(std::span<const Elem> other) const;
  unsigned size() const { return static_cast<unsigned>(elements.size()); }
  bool operator==(const ExtensionBasis& o) const { return elements == o.elements; }
};

// Powers of the extension generator, 1, w, ..., w^(m-1) taken as elements of
// a GF(q)-basis; fails when they are dependent (never for a primitive w).
ExtensionBasis polynomial_basis(const EmbeddingPtr& tower);

// True when the elements are independent over the subfield.
bool is_basis(const ExtensionBasis& b);

// The unique basis B' with Tr(a_i b'_j) = delta_ij.
ExtensionBasis find_dual_basis(const ExtensionBasis& b);

// The basis B' with Tr(a_i (b'_j)^Q) = delta_ij where x -> x^Q is the
// Hermitian involution of the extension (|ext| = Q^2, Q a power of |sub|).
ExtensionBasis find_hermitian_dual_basis(const ExtensionBasis& b);

struct SelfDualSearch {
  std::uint64_t node_budget = 50'000'000;  // deterministic backtracking steps
  std::uint64_t seed = 0x5eed;             // randomized fallback
  unsigned random_restarts = 2000;
};

// A basis with identity trace Gram matrix, or nullopt when none exists.
// The answer comes from the search itself; the existence criterion (q even,
// or q and m both odd) is only used to raise when a guaranteed basis was not
// found within budget.
std::optional<ExtensionBasis> find_self_dual_basis(const EmbeddingPtr& tower,
                                                   const SelfDualSearch& opts = {});

// Existence condition for a self-dual basis of GF(q^m) over GF(q).
bool self_dual_basis_exists(std::uint64_t q, unsigned m);

// JSON descriptor {p, e, modulus, generator}.
nlohmann::json field_to_json(const Field& f);
// Rejects descriptors that disagree with the canonical field.
FieldPtr field_from_json(const nlohmann::json& j);

}  // namespace qct

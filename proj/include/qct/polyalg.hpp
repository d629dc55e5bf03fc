#pragma once

// Polynomials over GF(q), q-cyclotomic cosets and defining sets of cyclic and
// negacyclic codes.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/galois.hpp"

namespace qct {

class Poly {
 public:
  Poly(FieldPtr field, std::vector<Elem> coeffs);
  static Poly constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }
  static Poly monomial(FieldPtr field, std::size_t degree, Elem c = 1);
  // x^n + c
  static Poly binomial(FieldPtr field, std::size_t n, Elem c);

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  Elem operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  Elem leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  // Euclidean division; throws on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

  Elem eval(Elem x) const;
  // Coefficients reversed, x^deg f(1/x).
  Poly reciprocal() const;
  std::string to_string() const;

 private:
  void normalize();
  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

struct CyclotomicCoset {
  std::uint64_t modulus;  // n
  std::uint64_t base;     // q
  std::uint64_t representative;
  std::vector<std::uint64_t> members;  // sorted
};

// Orbit of s under multiplication by q modulo n.
CyclotomicCoset cyclotomic_coset(std::uint64_t n, std::uint64_t q, std::uint64_t s);

enum class CodeKind { cyclic, negacyclic };
std::string to_string(CodeKind k);

// Root exponents of a cyclic code (residues mod n) or of a negacyclic code
// (odd residues mod 2n, relative to a primitive 2n-th root of unity).
struct DefiningSet {
  CodeKind kind = CodeKind::cyclic;
  std::uint64_t n = 0;
  std::uint64_t q = 0;  // alphabet size of the code
  std::vector<std::uint64_t> exponents;  // sorted, unique

  // Number of residues exponents live in: n or 2n.
  std::uint64_t residue_modulus() const { return kind == CodeKind::cyclic ? n : 2 * n; }
  bool contains(std::uint64_t e) const;
  bool is_closed() const;
  bool operator==(const DefiningSet& o) const = default;
};

// O_n = {1, 3, ..., 2n-1}.
std::vector<std::uint64_t> odd_residues(std::uint64_t n);

// Smallest q-closed superset of raw. Negacyclic raw sets must contain only odd
// residues below 2n.
DefiningSet defining_set_closure(const std::vector<std::uint64_t>& raw, CodeKind kind, std::uint64_t n,
                                 std::uint64_t q);

// All q-cyclotomic cosets of the residue range of kind (all of Z_n, or O_n).
std::vector<CyclotomicCoset> all_cosets(CodeKind kind, std::uint64_t n, std::uint64_t q);

// Narrow-sense BCH defining set: closure of {1, ..., delta-1} modulo n.
DefiningSet narrow_sense_bch_set(std::uint64_t n, std::uint64_t q, std::uint64_t delta);

// Roots of unity of order `order` in the splitting field of GF(q).
struct RootContext {
  FieldPtr base;
  EmbeddingPtr tower;  // base inside the splitting field
  std::uint64_t order;
  Elem alpha;  // generator^((|splitting|-1)/order)
  const Field& splitting() const { return *tower->ext(); }
};

// Smallest t with q^t = 1 mod order.
unsigned multiplicative_order(std::uint64_t q, std::uint64_t order);
RootContext root_context(const FieldPtr& base, std::uint64_t order);

// Minimal polynomial of alpha^s over field_q where alpha generates the order-n
// roots of unity in splitting_field.
Poly minimal_polynomial(std::uint64_t s, std::uint64_t n, const FieldPtr& field_q, const FieldPtr& splitting_field);

// prod_{s in T} (x - alpha^s), returned over the code's field. Requires T to be
// q-closed. The result divides x^n - 1 (cyclic) or x^n + 1 (negacyclic).
Poly generator_from_defining_set(const DefiningSet& t, const FieldPtr& field);

// Defining set of the Euclidean dual code: complement of -T.
DefiningSet euclidean_dual_defining_set(const DefiningSet& t);

// Hermitian dual of a negacyclic code over GF(q^2): {i in O_n : i not in -qT}.
// t.q must equal q^2.
DefiningSet hermitian_dual_defining_set(const DefiningSet& t, std::uint64_t q);

// l+1 for the longest run l of consecutive exponents (step 1 with wrap-around
// for cyclic sets, step 2 inside O_n without wrap for negacyclic sets).
unsigned bch_bound(const DefiningSet& t);

nlohmann::json to_json(const DefiningSet& t);
DefiningSet defining_set_from_json(const nlohmann::json& j);

}  // namespace qct

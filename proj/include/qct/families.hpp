#pragma once

// Constructors for the classical code families: Reed-Solomon, narrow-sense
// BCH, simplex / C_0, the Preparata-related cyclic codes B_i and the MDS
// negacyclic codes C_s.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/lincode.hpp"

namespace qct {

// Cyclic or negacyclic code with the given (closed) defining set; rows are
// the shifts x^i g(x), i < n - |T|.
LinearCode cyclic_code(const DefiningSet& t, const FieldPtr& field);

// [q-1, k, q-k] evaluation code at generator^0, ..., generator^(q-2).
LinearCode rs_code(std::uint64_t q, std::size_t k);

// Narrow-sense BCH code over GF(q): defining set closure of {1..delta-1}.
LinearCode bch_narrow_sense(std::uint64_t q, std::size_t n, std::size_t delta);

// S_m (defining set Z_n \ Cl(-1)) and C_0 (Z_n \ ({0} u Cl(-1))).
std::pair<LinearCode, LinearCode> simplex_and_c0(unsigned m);

// Binary cyclic code with defining set Cl(1) u Cl(2^i+1), n = 2^m - 1.
LinearCode preparata_like_bi(unsigned m, unsigned i);
// Every violated precondition of preparata_like_bi, empty when valid.
std::vector<std::string> preparata_like_violations(unsigned m, unsigned i);

struct NegacyclicCs {
  LinearCode code;
  LinearCode hermitian_dual;
  bool mds = false;
  bool hdual_contained_defset = false;
  bool hdual_contained_matrix = false;
};

// Negacyclic code over GF(q^2) with defining set {1, 3, ..., s-1}.
NegacyclicCs negacyclic_cs(std::uint64_t q, std::size_t n, std::size_t s, const SearchConfig& cfg = {});
std::vector<std::string> negacyclic_cs_violations(std::uint64_t q, std::size_t n, std::size_t s);

// Accepts the code record written by to_json, or {q, generator, [distance]}.
LinearCode import_code(const nlohmann::json& record);

bool is_self_dual(const LinearCode& c);

}  // namespace qct

#include "qct/families.hpp"

#include <algorithm>
#include <numeric>

namespace qct {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}

FieldPtr checked_field(std::uint64_t q) {
  if (!prime_power(q)) throw PreconditionError(std::to_string(q) + " is not a prime power");
  return field_of_order(q);
}

}  // namespace

LinearCode cyclic_code(const DefiningSet& t, const FieldPtr& field) {
  Poly g = generator_from_defining_set(t, field);
  const std::size_t n = t.n, k = n - static_cast<std::size_t>(g.degree());
  Matrix m(field, k, n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i = 0; i <= static_cast<std::size_t>(g.degree()); ++i) m(r, r + i) = g[i];
  }
  auto code = LinearCode::from_matrix(std::move(m));
  code.set_defining_set(t);
  if (code.dimension() != k) throw Error("generator shifts are dependent: invariant violated");
  return code;
}

LinearCode rs_code(std::uint64_t q, std::size_t k) {
  auto f = checked_field(q);
  const std::size_t n = q - 1;
  if (k < 1 || k > n) {
    throw PreconditionError("RS dimension " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<std::vector<Elem>> rows;
  for (std::size_t d = 0; d < k; ++d) {
    std::vector<Elem> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = f->exp(i * d);
    rows.push_back(std::move(r));
  }
  auto c = LinearCode::from_generator(f, rows);
  // Evaluations of degree < k polynomials vanish at alpha^1..alpha^(n-k).
  std::vector<std::uint64_t> zeros;
  for (std::size_t j = 1; j <= n - k; ++j) zeros.push_back(j);
  c.set_defining_set(DefiningSet{CodeKind::cyclic, n, q, zeros});
  c.set_provenance("RS(" + std::to_string(q) + "," + std::to_string(k) + ")");
  return c;
}

LinearCode bch_narrow_sense(std::uint64_t q, std::size_t n, std::size_t delta) {
  auto f = checked_field(q);
  if (std::gcd<std::uint64_t>(n, q) != 1) {
    throw PreconditionError("gcd(n=" + std::to_string(n) + ", q=" + std::to_string(q) + ") != 1");
  }
  auto c = cyclic_code(narrow_sense_bch_set(n, q, delta), f);
  c.set_provenance("BCH(q=" + std::to_string(q) + ",n=" + std::to_string(n) + ",delta=" + std::to_string(delta) + ")");
  return c;
}

std::pair<LinearCode, LinearCode> simplex_and_c0(unsigned m) {
  if (m < 2 || m > 20) throw PreconditionError("simplex pair needs 2 <= m <= 20");
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  auto f = build_field(2, 1);
  auto minus_one = cyclotomic_coset(n, 2, n - 1);
  std::vector<bool> excluded(n, false);
  for (auto e : minus_one.members) excluded[e] = true;
  std::vector<std::uint64_t> ts, t0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (excluded[i]) continue;
    ts.push_back(i);
    if (i != 0) t0.push_back(i);
  }
  auto s = cyclic_code(DefiningSet{CodeKind::cyclic, n, 2, ts}, f);
  auto c0 = cyclic_code(DefiningSet{CodeKind::cyclic, n, 2, t0}, f);
  s.set_provenance("S_" + std::to_string(m));
  c0.set_provenance("C_0(m=" + std::to_string(m) + ")");
  return {std::move(s), std::move(c0)};
}

std::vector<std::string> preparata_like_violations(unsigned m, unsigned i) {
  std::vector<std::string> v;
  if (m < 3 || m > 20) v.push_back("m=" + std::to_string(m) + " outside [3, 20]");
  if (m % 2 == 0) v.push_back("m=" + std::to_string(m) + " is not odd");
  if (i == 0 || std::gcd(i, m) != 1) v.push_back("gcd(i=" + std::to_string(i) + ", m=" + std::to_string(m) + ") != 1");
  if (i >= 1 && i < 31 && m <= 20) {
    const std::uint64_t bound = (std::uint64_t{1} << ((m + 1) / 2)) - 1;
    if ((std::uint64_t{1} << i) + 1 > bound) {
      v.push_back("2^i+1=" + std::to_string((std::uint64_t{1} << i) + 1) + " exceeds 2^ceil(m/2)-1=" + std::to_string(bound));
    }
  }
  return v;
}

LinearCode preparata_like_bi(unsigned m, unsigned i) {
  if (auto v = preparata_like_violations(m, i); !v.empty()) throw PreconditionError(join(v));
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  auto t = defining_set_closure({1, (std::uint64_t{1} << i) + 1}, CodeKind::cyclic, n, 2);
  auto c = cyclic_code(t, build_field(2, 1));
  const std::size_t expect = n - 2 * m;
  if (c.dimension() != expect) {
    throw Error("B_i has dimension " + std::to_string(c.dimension()) + ", expected " + std::to_string(expect));
  }
  c.set_provenance("B_" + std::to_string(i) + "(m=" + std::to_string(m) + ")");
  DistanceResult d;
  d.value = bch_bound(t);
  d.exactness = Exactness::lower_bound;
  d.method = DistanceMethod::bch_bound;
  d.declared = 5;
  c.record_distance(d);
  return c;
}

std::vector<std::string> negacyclic_cs_violations(std::uint64_t q, std::size_t n, std::size_t s) {
  std::vector<std::string> v;
  if (!prime_power(q)) v.push_back("q=" + std::to_string(q) + " is not a prime power");
  if (q % 2 == 0) v.push_back("q=" + std::to_string(q) + " is not odd");
  if (q % 4 != 1) v.push_back("q=" + std::to_string(q) + " is not 1 mod 4");
  if (n == 0 || n % 2 || (q - 1) % n) v.push_back("n=" + std::to_string(n) + " is not an even divisor of q-1");
  if (s == 0 || s % 2) v.push_back("s=" + std::to_string(s) + " is not a positive even integer");
  if (s > n) v.push_back("s=" + std::to_string(s) + " exceeds n=" + std::to_string(n));
  if (q * q > kMaxFieldOrder) v.push_back("GF(q^2) exceeds the field size cap");
  return v;
}

NegacyclicCs negacyclic_cs(std::uint64_t q, std::size_t n, std::size_t s, const SearchConfig& cfg) {
  if (auto v = negacyclic_cs_violations(q, n, s); !v.empty()) throw PreconditionError(join(v));
  auto f = field_of_order(q * q);
  std::vector<std::uint64_t> raw;
  for (std::uint64_t i = 1; i < s; i += 2) raw.push_back(i);
  auto t = defining_set_closure(raw, CodeKind::negacyclic, n, q * q);
  auto code = cyclic_code(t, f);
  code.set_provenance("C_" + std::to_string(s) + "(q=" + std::to_string(q) + ",n=" + std::to_string(n) + ")");
  auto h = hermitian_dual(code);
  auto hset = hermitian_dual_defining_set(t, q);
  NegacyclicCs out{code, h};
  out.mds = is_mds_by_rank(code, cfg);
  // C^{perp h} is contained in C iff T(C) is a subset of T(C^{perp h}).
  out.hdual_contained_defset =
      std::includes(hset.exponents.begin(), hset.exponents.end(), t.exponents.begin(), t.exponents.end());
  out.hdual_contained_matrix = contains_code(code, h);
  min_distance(out.code, cfg);
  return out;
}

LinearCode import_code(const nlohmann::json& record) {
  if (record.contains("field")) return code_from_json(record);
  try {
    auto f = checked_field(record.at("q").get<std::uint64_t>());
    auto rows = record.at("generator").get<std::vector<std::vector<Elem>>>();
    std::optional<std::size_t> n;
    if (record.contains("n")) n = record["n"].get<std::size_t>();
    auto c = LinearCode::from_generator(f, rows, n);
    if (record.contains("k") && record["k"].get<std::size_t>() != c.dimension()) {
      throw Error("record declares k=" + std::to_string(record["k"].get<std::size_t>()) +
                  " but the generator has rank " + std::to_string(c.dimension()));
    }
    c.set_provenance(record.value("provenance", std::string("imported")));
    if (record.contains("d") && c.dimension() > 0) {
      DistanceResult d;
      d.value = 1;
      d.exactness = Exactness::lower_bound;
      d.method = DistanceMethod::structural;
      d.declared = record["d"].get<unsigned>();
      c.record_distance(d);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed code record: ") + e.what());
  }
}

bool is_self_dual(const LinearCode& c) { return 2 * c.dimension() == c.length() && dual(c) == c; }

}  // namespace qct

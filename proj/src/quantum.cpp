#include "qct/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qct {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t saturating_pow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    r *= b;
  }
  return r;
}

std::string describe(const DistanceResult& d) {
  std::ostringstream os;
  if (d.is_exact()) {
    os << d.value << " exact (" << to_string(d.method) << ")";
  } else {
    os << ">= " << d.value << " (" << to_string(d.method) << ")";
    if (d.upper) os << ", sampled word of weight " << *d.upper;
  }
  if (d.declared) os << ", declared " << *d.declared;
  return os.str();
}

AqcParams make_params(std::string construction, std::size_t n, long long k, std::uint64_t q, unsigned first,
                      bool first_exact, unsigned second, bool second_exact) {
  if (k <= 0) throw PreconditionError(construction + ": k = " + std::to_string(k) + " is not positive");
  if (static_cast<std::size_t>(k) > n) throw PreconditionError(construction + ": k exceeds n");
  AqcParams a;
  a.construction = std::move(construction);
  a.n = n;
  a.k = static_cast<std::size_t>(k);
  a.q = q;
  a.raw = {first, second};
  a.swapped = first < second;
  a.dz = std::max(first, second);
  a.dx = std::min(first, second);
  a.dz_exact = a.swapped ? second_exact : first_exact;
  a.dx_exact = a.swapped ? first_exact : second_exact;
  if (a.swapped) a.notes.push_back("swapped: construction order gives dz < dx");
  return a;
}

void add(AqcResult& r, std::string name, bool passed, std::string detail = {}) {
  r.checks.push_back({std::move(name), passed, std::move(detail)});
}

std::optional<unsigned> sqrt_order(const Field& f) {
  if (f.degree() % 2) return std::nullopt;
  return static_cast<unsigned>(ipow(f.characteristic(), f.degree() / 2));
}

// CSS(i) given both codes and their duals (duals may carry distance caches).
// The relative weights are returned through `sides` when given.
AqcResult css_core(const std::string& name, const LinearCode& c1, const LinearCode& c2, const LinearCode& c1p,
                   const LinearCode& c2p, const SearchConfig& cfg,
                   std::pair<DistanceResult, DistanceResult>* sides = nullptr) {
  auto a = relative_min_weight(c2, c1, cfg);
  auto b = relative_min_weight(c1p, c2p, cfg);
  if (sides) *sides = {a, b};
  AqcResult r;
  r.params = make_params(name, c1.length(), static_cast<long long>(c2.dimension()) - static_cast<long long>(c1.dimension()),
                         c1.field().order(), a.value, a.is_exact(), b.value, b.is_exact());
  r.params.inputs = {c1.provenance(), c2.provenance()};
  r.params.notes.push_back("wt(C2\\C1) " + describe(a));
  r.params.notes.push_back("wt(C1perp\\C2perp) " + describe(b));
  if (a.is_exact() && b.is_exact()) {
    auto d2 = min_distance(c2, cfg);
    auto d1p = min_distance(c1p, cfg);
    if (d2.is_exact() && d1p.is_exact()) {
      bool pure = std::minmax(a.value, b.value) == std::minmax(d2.value, d1p.value);
      r.params.purity = pure ? Purity::pure : Purity::degenerate;
    }
  }
  return r;
}

void require_css_pair(const LinearCode& c1, const LinearCode& c2) {
  if (!c1.field().same_as(c2.field()) || c1.length() != c2.length()) {
    throw PreconditionError("CSS codes must share field and length");
  }
  if (c1.dimension() == 0) throw PreconditionError("C1 must be nonzero");
  if (c2.dimension() <= c1.dimension()) throw PreconditionError("CSS needs k2 > k1");
  if (!contains_code(c2, c1)) throw PreconditionError("C1 is not contained in C2");
}

// Replaces a side of `r` by the formula value when the construction could
// not decide it; exact construction values are kept and compared.
void reconcile(AqcResult& r, unsigned formula_first, unsigned formula_second, const DistanceResult* first,
               const DistanceResult* second) {
  auto side = [&](const char* label, unsigned formula, const DistanceResult* d, unsigned& value, bool& exact) {
    if (d && d->is_exact()) {
      add(r, std::string("formula ") + label + " matches construction", d->value == formula,
          "formula " + std::to_string(formula) + ", constructed " + std::to_string(d->value));
      value = d->value;
      exact = true;
      return;
    }
    value = formula;
    exact = false;
    if (d) {
      r.params.notes.push_back(std::string(label) + " side: formula " + std::to_string(formula) + ", certified >= " +
                               std::to_string(d->value));
      if (d->upper) {
        add(r, std::string("no sampled ") + label + " word below formula", *d->upper >= formula,
            "lightest sampled word " + std::to_string(*d->upper) + ", formula " + std::to_string(formula));
      }
    }
  };
  unsigned a, b;
  bool ea, eb;
  side("first", formula_first, first, a, ea);
  side("second", formula_second, second, b, eb);
  auto keep = r.params;
  r.params = make_params(keep.construction, keep.n, static_cast<long long>(keep.k), keep.q, a, ea, b, eb);
  r.params.inputs = keep.inputs;
  for (auto& n : keep.notes) {
    if (n.rfind("swapped", 0) != 0) r.params.notes.push_back(n);
  }
  r.params.purity = (ea && eb) ? keep.purity : Purity::unknown;
}

}  // namespace

std::string to_string(Purity p) {
  switch (p) {
    case Purity::pure: return "pure";
    case Purity::degenerate: return "degenerate";
    case Purity::unknown: return "unknown";
  }
  return "unknown";
}

std::string AqcParams::format() const {
  return "[[" + std::to_string(n) + "," + std::to_string(k) + ",{" + std::to_string(dz) + "," + std::to_string(dx) +
         "}]]_" + std::to_string(q);
}

nlohmann::json to_json(const AqcParams& a) {
  return {{"n", a.n},
          {"k", a.k},
          {"dz", a.dz},
          {"dx", a.dx},
          {"q", a.q},
          {"purity", to_string(a.purity)},
          {"exact", {{"dz", a.dz_exact}, {"dx", a.dx_exact}}},
          {"provenance",
           {{"construction", a.construction},
            {"inputs", a.inputs},
            {"raw", {a.raw.first, a.raw.second}},
            {"swapped", a.swapped},
            {"notes", a.notes}}}};
}

AqcParams aqc_from_json(const nlohmann::json& j) {
  try {
    AqcParams a;
    a.n = j.at("n").get<std::size_t>();
    a.k = j.at("k").get<std::size_t>();
    a.dz = j.at("dz").get<unsigned>();
    a.dx = j.at("dx").get<unsigned>();
    a.q = j.at("q").get<std::uint64_t>();
    auto p = j.at("purity").get<std::string>();
    a.purity = p == "pure" ? Purity::pure : p == "degenerate" ? Purity::degenerate : Purity::unknown;
    a.dz_exact = j.at("exact").at("dz").get<bool>();
    a.dx_exact = j.at("exact").at("dx").get<bool>();
    const auto& prov = j.at("provenance");
    a.construction = prov.at("construction").get<std::string>();
    a.inputs = prov.at("inputs").get<std::vector<std::string>>();
    a.raw = {prov.at("raw").at(0).get<unsigned>(), prov.at("raw").at(1).get<unsigned>()};
    a.swapped = prov.at("swapped").get<bool>();
    a.notes = prov.at("notes").get<std::vector<std::string>>();
    if (a.n == 0 || a.k == 0 || a.k > a.n || a.dx == 0 || a.dz < a.dx) throw Error("AQC record violates n >= k >= 1, dz >= dx >= 1");
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed AQC record: ") + e.what());
  }
}

bool AqcResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* AqcResult::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json to_json(const AqcResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"params", to_json(r.params)}, {"checks", checks}, {"ok", r.ok()}};
}

AqcResult css_standard(const LinearCode& c1, const LinearCode& c2, const SearchConfig& cfg) {
  require_css_pair(c1, c2);
  auto r = css_core("css", c1, c2, dual(c1), dual(c2), cfg);
  add(r, "C1 in C2", true);
  return r;
}

AqcResult css_hermitian(const LinearCode& c1, const LinearCode& c2, const SearchConfig& cfg) {
  if (!c1.field().same_as(c2.field()) || c1.length() != c2.length()) {
    throw PreconditionError("Hermitian CSS codes must share field and length");
  }
  auto big_q = sqrt_order(c1.field());
  if (!big_q) throw PreconditionError("Hermitian CSS needs a field of square order");
  auto h = hermitian_dual(c1);
  if (!contains_code(c2, h)) throw PreconditionError("C1^{perp h} is not contained in C2");
  const long long k = static_cast<long long>(c1.dimension() + c2.dimension()) - static_cast<long long>(c1.length());
  auto d1 = min_distance(c1, cfg);
  auto d2 = min_distance(c2, cfg);
  AqcResult r;
  r.params = make_params("css-hermitian", c1.length(), k, *big_q, d1.value, d1.is_exact(), d2.value, d2.is_exact());
  r.params.inputs = {c1.provenance(), c2.provenance()};
  r.params.notes.push_back("k = k1 + k2 - n, reading k1^h as dim C1^{perp h} = n - k1");
  r.params.purity = d1.is_exact() && d2.is_exact() ? Purity::pure : Purity::unknown;
  add(r, "C1^{perp h} in C2", true);
  return r;
}

AqcResult allone_aqc(const LinearCode& c, const SearchConfig& cfg) {
  if (c.dimension() < 2) throw PreconditionError("all-ones construction needs k >= 2");
  if (!contains_allones(c)) throw PreconditionError("the code does not contain the all-ones word");
  auto d = min_distance(c, cfg);
  AqcResult r;
  // wt(C \ <1>) = d(C), and the sum-zero code has weight-2 words outside C^perp when k >= 2.
  r.params = make_params("allone", c.length(), static_cast<long long>(c.dimension()) - 1, c.field().order(), d.value,
                         d.is_exact(), 2, true);
  r.params.inputs = {c.provenance()};
  r.params.notes.push_back("d(C) " + describe(d));
  r.params.purity = d.is_exact() ? Purity::pure : Purity::unknown;
  add(r, "all-ones in C", true);
  return r;
}

std::pair<AqcResult, AqcResult> th_best_bch(std::uint64_t q, std::size_t n, std::size_t delta, const SearchConfig& cfg) {
  auto c = bch_narrow_sense(q, n, delta);
  auto whole = allone_aqc(c, cfg);
  whole.params.construction = "th_best(i)";

  auto p = puncture(c, n - 1);
  p.set_provenance("punctured " + c.provenance());
  if (saturating_pow(q, p.dimension()) > cfg.cap) {
    // Deleting one coordinate lowers the weight of any codeword by at most one.
    auto dc = min_distance(c, cfg);
    DistanceResult lb;
    lb.value = std::max(1u, dc.value - 1);
    lb.exactness = Exactness::lower_bound;
    lb.method = dc.method;
    p.record_distance(lb);
  }
  auto punct = allone_aqc(p, cfg);
  punct.params.construction = "th_best(i) punctured";
  if (p.dimension() != c.dimension()) add(punct, "puncturing keeps k", false);
  return {std::move(whole), std::move(punct)};
}

AqcResult th_best_self_dual(const LinearCode& c, const SearchConfig& cfg) {
  if (c.field().order() != 2) throw PreconditionError("th_best(ii) needs a binary code");
  if (!is_self_dual(c)) throw PreconditionError("the input code is not self-dual");
  auto r = allone_aqc(c, cfg);
  r.params.construction = "th_best(ii)";
  add(r, "self-dual", true);
  return r;
}

AqcResult th_best_simplex(unsigned m, const SearchConfig& cfg) {
  auto [s, c0] = simplex_and_c0(m);
  const std::size_t n = (std::size_t{1} << m) - 1;
  auto r = allone_aqc(c0, cfg);
  r.params.construction = "th_best(iii)";
  add(r, "S_m in C_0", contains_code(c0, s));
  add(r, "dim S_m = m", s.dimension() == m);
  add(r, "dim C_0 = m+1", c0.dimension() == m + 1);
  auto ds = min_distance(s, cfg);
  auto d0 = min_distance(c0, cfg);
  add(r, "d(S_m) = 2^(m-1)", ds.is_exact() && ds.value == (n + 1) / 2, describe(ds));
  add(r, "d(C_0) = 2^(m-1)-1", d0.is_exact() && d0.value == (n + 1) / 2 - 1, describe(d0));
  if (saturating_pow(2, c0.dimension()) <= cfg.cap) {
    auto ones = LinearCode::from_generator(c0.field_ptr(), {std::vector<Elem>(n, 1)});
    auto css = css_standard(ones, c0, cfg);
    add(r, "CSS on <1> in C_0 agrees", css.params.dz == r.params.dz && css.params.dx == r.params.dx &&
                                          css.params.dz_exact && css.params.dx_exact,
        css.params.format());
  }
  return r;
}

long long bound(BoundKind kind, long long a, long long b) {
  switch (kind) {
    case BoundKind::carlitz_uchiyama: {
      const long double x = std::ldexp(1.0L, static_cast<int>(a - 1)) -
                            std::pow(2.0L, static_cast<long double>(a) / 2) * static_cast<long double>(b - 1) / 2;
      return static_cast<long long>(std::ceil(x - 1e-9L));
    }
    case BoundKind::singleton_wt:
      return a * ((b - 1) / 2) + 1;
    case BoundKind::singleton:
      return a - b + 1;
  }
  return 0;
}

AqcResult lemma_bch1(unsigned m, unsigned delta1, unsigned delta2, const SearchConfig& cfg, std::size_t matrix_limit) {
  std::vector<std::string> bad;
  if (m < 2 || m > 20) bad.push_back("m=" + std::to_string(m) + " outside [2, 20]");
  const unsigned top = m >= 2 && m <= 20 ? (1u << ((m + 1) / 2)) - 1 : 0;
  if (delta1 < 2 || delta1 > delta2 || delta2 > top) {
    bad.push_back("need 2 <= delta1 <= delta2 <= 2^ceil(m/2)-1 = " + std::to_string(top));
  }
  if (delta1 % 2 == 0 || delta2 % 2 == 0) bad.push_back("delta1 and delta2 must be odd");
  if (!bad.empty()) throw PreconditionError(join(bad));

  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  auto t1 = narrow_sense_bch_set(n, 2, delta1);
  auto t2 = narrow_sense_bch_set(n, 2, delta2);
  const long long k_formula = static_cast<long long>(n + m) - static_cast<long long>(m) * (delta1 + delta2) / 2;
  const long long dim1 = static_cast<long long>(n - t1.exponents.size());  // B(delta1)
  const long long dim2p = static_cast<long long>(t2.exponents.size());     // B(delta2)^perp
  auto t2p = euclidean_dual_defining_set(t2);
  const bool nested = std::includes(t2p.exponents.begin(), t2p.exponents.end(), t1.exponents.begin(), t1.exponents.end());

  AqcResult r;
  const std::string ins[2] = {"BCH(q=2,n=" + std::to_string(n) + ",delta=" + std::to_string(delta2) + ")^perp",
                              "BCH(q=2,n=" + std::to_string(n) + ",delta=" + std::to_string(delta1) + ")"};
  if (n <= matrix_limit) {
    auto b1 = bch_narrow_sense(2, n, delta1);
    auto b2 = bch_narrow_sense(2, n, delta2);
    auto c1 = dual(b2);
    const bool mat_nested = contains_code(b1, c1);
    if (mat_nested && b1.dimension() > c1.dimension()) {
      r = css_core("bch1", c1, b1, b2, dual(b1), cfg);
    } else {
      r.params = make_params("bch1", n, k_formula, 2, bch_bound(t2), false, bch_bound(t1), false);
    }
    add(r, "B(delta2)^perp in B(delta1) (matrix)", mat_nested);
    add(r, "k by rank equals formula",
        static_cast<long long>(b1.dimension()) - static_cast<long long>(c1.dimension()) == k_formula,
        "rank " + std::to_string(b1.dimension()) + " - " + std::to_string(c1.dimension()));
  } else {
    // wt(B(d2) \ B(d1)^perp) >= d(B(d2)) >= BCH bound, and symmetrically.
    r.params = make_params("bch1", n, k_formula, 2, bch_bound(t2), false, bch_bound(t1), false);
    r.params.notes.push_back("distances are BCH-bound certified lower bounds (beyond matrix limit)");
  }
  r.params.inputs = {ins[0], ins[1]};
  add(r, "B(delta2)^perp in B(delta1) (defining sets)", nested);
  add(r, "k from cosets equals formula", dim1 - dim2p == k_formula,
      std::to_string(dim1) + " - " + std::to_string(dim2p) + " vs " + std::to_string(k_formula));
  add(r, "dim B(delta1) = n - m(delta1-1)/2", dim1 == static_cast<long long>(n) - m * ((delta1 - 1) / 2));
  add(r, "dim B(delta2) = n - m(delta2-1)/2", dim2p == static_cast<long long>(m) * ((delta2 - 1) / 2));

  const long long sw2 = bound(BoundKind::singleton_wt, m, delta2), sw1 = bound(BoundKind::singleton_wt, m, delta1);
  const long long cu1 = bound(BoundKind::carlitz_uchiyama, m, delta1), cu2 = bound(BoundKind::carlitz_uchiyama, m, delta2);
  r.params.notes.push_back("d(B(delta2)) in [" + std::to_string(bch_bound(t2)) + ", " + std::to_string(sw2) +
                           "] (BCH, Singleton weight bound)");
  r.params.notes.push_back("d(B(delta1)) in [" + std::to_string(bch_bound(t1)) + ", " + std::to_string(sw1) + "]");
  r.params.notes.push_back("Carlitz-Uchiyama: d(B(delta1)^perp) >= " + std::to_string(cu1) +
                           ", d(B(delta2)^perp) >= " + std::to_string(cu2));
  r.params.notes.push_back(cu1 > sw2 ? "dz = d(B(delta2)) follows from CU(delta1) > Singleton(delta2)"
                                     : "CU(delta1) <= Singleton(delta2): dz = d(B(delta2)) not implied by the bounds");
  r.params.notes.push_back(cu2 > sw1 ? "dx = d(B(delta1)) follows from CU(delta2) > Singleton(delta1)"
                                     : "CU(delta2) <= Singleton(delta1): dx = d(B(delta1)) not implied by the bounds");
  return r;
}

CharpinResult charpin_family(unsigned m, unsigned i, const SearchConfig& cfg, std::size_t matrix_limit) {
  if (auto v = preparata_like_violations(m, i); !v.empty()) throw PreconditionError(join(v));
  const std::uint64_t n = (std::uint64_t{1} << m) - 1;
  const unsigned delta = (1u << i) + 1;
  auto tb = defining_set_closure({1, delta}, CodeKind::cyclic, n, 2);
  auto td = narrow_sense_bch_set(n, 2, delta);
  auto tdp = euclidean_dual_defining_set(td);
  const long long dim_b = static_cast<long long>(n - tb.exponents.size());
  const long long dim_d = static_cast<long long>(n - td.exponents.size());
  auto subset = [](const DefiningSet& small, const DefiningSet& big) {
    return std::includes(big.exponents.begin(), big.exponents.end(), small.exponents.begin(), small.exponents.end());
  };
  const std::string bname = "B_" + std::to_string(i) + "(m=" + std::to_string(m) + ")";
  const std::string dname = "BCH(q=2,n=" + std::to_string(n) + ",delta=" + std::to_string(delta) + ")";
  const bool build = n <= matrix_limit;
  std::optional<LinearCode> bi, bd;
  if (build) {
    bi = preparata_like_bi(m, i);
    bd = bch_narrow_sense(2, n, delta);
  }
  // Lower bound on wt(C1^perp \ C2^perp) when no construction decides it.
  auto formula_result = [&](const std::string& name, long long k, unsigned dz_lb) {
    AqcResult r;
    r.params = make_params(name, n, k, 2, dz_lb, false, 5, false);
    r.params.notes.push_back("dx = 5 declared; BCH bound on B_i gives >= " + std::to_string(bch_bound(tb)));
    return r;
  };

  CharpinResult out;
  {
    const long long k = static_cast<long long>(n) - static_cast<long long>(m) * (2 + (1ll << (i - 1)));
    const bool nested = subset(tb, tdp);  // B(delta)^perp in B_i
    AqcResult r;
    if (build && nested && contains_code(*bi, dual(*bd))) {
      r = css_core("charpin-1", dual(*bd), *bi, *bd, dual(*bi), cfg);
    } else {
      r = formula_result("charpin-1", k, bch_bound(td));
    }
    r.params.inputs = {dname + "^perp", bname};
    add(r, "B(delta)^perp in B_i (defining sets)", nested);
    if (build) add(r, "B(delta)^perp in B_i (matrix)", contains_code(*bi, dual(*bd)));
    add(r, "k from cosets equals formula", dim_b - (static_cast<long long>(n) - dim_d) == k);
    out.first = std::move(r);
  }
  const long long k2 = static_cast<long long>(m) * ((1ll << (i - 1)) - 2);
  if (k2 <= 0) {
    out.second_rejected = "k = m(2^(i-1)-2) = " + std::to_string(k2) + " is not positive";
    return out;
  }
  const bool nested = subset(tb, td);  // B(delta) in B_i
  AqcResult r;
  if (build && nested && contains_code(*bi, *bd)) {
    r = css_core("charpin-2", *bd, *bi, dual(*bd), dual(*bi), cfg);
  } else {
    const long long cu = bound(BoundKind::carlitz_uchiyama, m, delta);
    r = formula_result("charpin-2", k2, static_cast<unsigned>(std::max(1ll, cu)));
    r.params.notes.push_back("dz lower bound from Carlitz-Uchiyama on B(delta)^perp");
  }
  r.params.inputs = {dname, bname};
  add(r, "B(delta) in B_i (defining sets)", nested);
  if (build) add(r, "B(delta) in B_i (matrix)", contains_code(*bi, *bd));
  add(r, "k from cosets equals formula", dim_b - dim_d == k2);
  out.second = std::move(r);
  return out;
}

AqcResult rs_direct_sum_aqc(std::uint64_t q, std::size_t k1, std::size_t k2, const SearchConfig& cfg) {
  if (!prime_power(q)) throw PreconditionError(std::to_string(q) + " is not a prime power");
  if (!(1 <= k2 && k2 < k1 && k1 <= q - 1)) throw PreconditionError("need 1 <= k2 < k1 <= q-1");
  struct Sum {
    LinearCode code, dual_code;
    bool identity;
  };
  auto build = [&](std::size_t k) {
    auto a = rs_code(q, k);
    auto e = extend_parity(a);
    e.set_provenance("ext " + a.provenance());
    min_distance(a, cfg);
    min_distance(e, cfg);
    auto da = dual(a), de = dual(e);
    if (da.dimension()) min_distance(da, cfg);
    min_distance(de, cfg);
    auto s = direct_sum(a, e);
    auto ds = direct_sum(da, de);
    return Sum{s, ds, dual(s) == ds};
  };
  auto s1 = build(k1), s2 = build(k2);
  const bool nested = contains_code(s1.code, s2.code);
  if (!nested) throw Error("direct sums are not nested: invariant violated");
  // C1 = sum for k2 (smaller), C2 = sum for k1.
  std::pair<DistanceResult, DistanceResult> sides;
  auto r = css_core("rs-direct-sum", s2.code, s1.code, s2.dual_code, s1.dual_code, cfg, &sides);
  add(r, "C_k2 + ext in C_k1 + ext", nested);
  add(r, "dual of sum is sum of duals (k1)", s1.identity);
  add(r, "dual of sum is sum of duals (k2)", s2.identity);
  add(r, "k = 2(k1-k2)", r.params.k == 2 * (k1 - k2));
  reconcile(r, static_cast<unsigned>(q - k1), static_cast<unsigned>(k2 + 1), &sides.first, &sides.second);
  return r;
}

AqcResult concat_expand_aqc(std::uint64_t q, unsigned m, std::size_t k1, std::size_t k2, const SearchConfig& cfg) {
  std::vector<std::string> bad;
  auto pp = prime_power(q);
  if (!pp) bad.push_back(std::to_string(q) + " is not a prime power");
  if (m < 1) bad.push_back("m must be positive");
  if (pp && !(q % 2 == 0 || (pp->second == 1 && m % 2 == 1))) {
    bad.push_back("needs q even, or q an odd prime with m odd");
  }
  const std::uint64_t big = pp && m >= 1 && m * pp->second <= 22 ? ipow(q, m) : 0;
  if (pp && (big == 0 || big > kMaxFieldOrder)) bad.push_back("q^m exceeds the field size cap");
  if (big && !(1 <= k2 && k2 < k1 && k1 <= big - 1)) bad.push_back("need 1 <= k2 < k1 <= q^m-1");
  if (!bad.empty()) throw PreconditionError(join(bad));

  auto tower = embedding(pp->first, pp->second, pp->second * m);
  std::optional<ExtensionBasis> basis;
  std::string basis_kind = "polynomial";
  if (self_dual_basis_exists(q, m)) {
    basis = find_self_dual_basis(tower, SelfDualSearch{.seed = cfg.seed});
    if (basis) basis_kind = "self-dual";
  }
  if (!basis) basis = polynomial_basis(tower);

  auto a1 = rs_code(big, k1), a2 = rs_code(big, k2);
  min_distance(a1, cfg);
  min_distance(a2, cfg);
  auto x1 = expand_with_parity(a1, *basis, cfg), x2 = expand_with_parity(a2, *basis, cfg);
  const bool nested = contains_code(x1, x2);
  const unsigned f1 = static_cast<unsigned>(2 * (big - k1)), f2 = static_cast<unsigned>(2 * (k2 + 1));
  AqcResult r;
  if (nested) {
    std::pair<DistanceResult, DistanceResult> sides;
    r = css_core("concat", x2, x1, dual(x2), dual(x1), cfg, &sides);
    reconcile(r, f1, f2, &sides.first, &sides.second);
  } else {
    r.params = make_params("concat", x1.length(), static_cast<long long>(m) * (k1 - k2), q, f1, false, f2, false);
  }
  r.params.inputs = {"Phi_B+parity(" + a2.provenance() + ")", "Phi_B+parity(" + a1.provenance() + ")"};
  r.params.notes.push_back("expansion basis: " + basis_kind);
  add(r, "expansions nested", nested);
  add(r, "k by rank equals m(k1-k2)", x1.dimension() - x2.dimension() == m * (k1 - k2),
      std::to_string(x1.dimension()) + " - " + std::to_string(x2.dimension()));
  return r;
}

AqcParams quantum_concat_params(std::uint64_t q, unsigned m, std::size_t k1, std::size_t k2, std::size_t k) {
  auto pp = prime_power(q);
  if (!pp) throw PreconditionError(std::to_string(q) + " is not a prime power");
  if (m < 1 || m * pp->second > 40) throw PreconditionError("m out of range");
  const std::uint64_t big = ipow(q, m);
  std::vector<std::string> bad;
  if (big < 4) bad.push_back("q^m must be at least 4");
  for (auto [name, v] : {std::pair{"m", std::uint64_t{m}}, {"k1", k1}, {"k2", k2}, {"k", k}}) {
    if (v < 1 || v + 3 > big) bad.push_back(std::string(name) + "=" + std::to_string(v) + " outside [1, q^m-3]");
  }
  if (k2 >= k1) bad.push_back("need k2 < k1");
  if (!bad.empty()) throw PreconditionError(join(bad));
  const std::uint64_t n = (m + 1) * (big - 1) * (big - 2);
  const std::uint64_t outer = std::min(2 * (big - k1), 2 * (k2 + 1));
  const std::uint64_t inner = std::min(2 * (big - k - 1), std::uint64_t{k});
  const auto dd = static_cast<unsigned>(outer * inner);
  auto a = make_params("quantum-concat", n, static_cast<long long>(m) * (k1 - k2), q, dd, false, dd, false);
  a.notes.push_back("D >= d d' with d' = " + std::to_string(outer) + ", d = " + std::to_string(inner));
  a.notes.push_back("d = min{2(q^m-k-1), k} implemented as stated");
  a.inputs = {"concat(q=" + std::to_string(q) + ",m=" + std::to_string(m) + ",k1=" + std::to_string(k1) +
                  ",k2=" + std::to_string(k2) + ")",
              "AQMDS [[q^m-2,1,{q^m-k-1,k}]] with k=" + std::to_string(k)};
  return a;
}

AqcResult negacyclic_expand_aqc(std::uint64_t q, std::size_t n, std::size_t s, unsigned m, const SearchConfig& cfg) {
  const long long k = static_cast<long long>(m) * (static_cast<long long>(n) - static_cast<long long>(s));
  if (k <= 0) throw PreconditionError("k = m(n-s) = " + std::to_string(k) + " is not positive");
  const std::size_t big_n = (m + 1) * n;
  const unsigned f1 = static_cast<unsigned>(2 * (s / 2 + 1)), f2 = static_cast<unsigned>(2 * (n - s / 2 + 1));

  AqcResult r;
  auto viol = negacyclic_cs_violations(q, n, s);
  for (const auto& v : viol) add(r, "negacyclic precondition", false, v);
  auto pp = prime_power(q);
  add(r, "q = p^2 with p an odd prime", pp && pp->second == 2 && pp->first % 2 == 1);
  const bool self1 = pp && (q % 2 == 0 ? pp->second % 2 == 0 : (pp->second == 1 && m % 2 == 1));
  add(r, "q = p^2 even, or q an odd prime with m odd", self1,
      "stated hypothesis of the expansion theorem; conflicts with q = p^2 odd above");
  add(r, "m equals [GF(q^2):GF(q)] = 2", m == 2, "m = " + std::to_string(m));

  if (!viol.empty() || m != 2) {
    r.params = make_params("negacyclic-expand", big_n, k, q, f1, false, f2, false);
    r.params.notes.push_back("formula level only: construction preconditions fail");
    return r;
  }

  auto cs = negacyclic_cs(q, n, s, cfg);
  add(r, "C_s is MDS", cs.mds);
  add(r, "C_s^{perp h} in C_s (defining sets)", cs.hdual_contained_defset);
  add(r, "C_s^{perp h} in C_s (matrix)", cs.hdual_contained_matrix);

  auto tower = embedding(pp->first, pp->second, 2 * pp->second);
  auto sd = find_self_dual_basis(tower, SelfDualSearch{.seed = cfg.seed});
  add(r, "self-dual basis of GF(q^2)/GF(q) found", sd.has_value(),
      self_dual_basis_exists(q, 2) ? "" : "none exists for odd q and even degree");
  ExtensionBasis basis = sd ? *sd : polynomial_basis(tower);

  min_distance(cs.hermitian_dual, cfg);
  auto x2 = expand_with_parity(cs.code, basis, cfg);
  auto x1 = expand_with_parity(cs.hermitian_dual, basis, cfg);
  const bool nested = contains_code(x2, x1);
  add(r, "expanded C_s^{perp h} in expanded C_s", nested);
  add(r, "k by rank equals m(n-s)",
      static_cast<long long>(x2.dimension()) - static_cast<long long>(x1.dimension()) == k);
  if (nested && x2.dimension() > x1.dimension()) {
    std::pair<DistanceResult, DistanceResult> sides;
    auto css = css_core("negacyclic-expand", x1, x2, dual(x1), dual(x2), cfg, &sides);
    css.checks.insert(css.checks.begin(), r.checks.begin(), r.checks.end());
    r = std::move(css);
    reconcile(r, f1, f2, &sides.first, &sides.second);
  } else {
    r.params = make_params("negacyclic-expand", big_n, k, q, f1, false, f2, false);
  }
  r.params.inputs = {"Phi_B+parity(" + cs.code.provenance() + "^{perp h})", "Phi_B+parity(" + cs.code.provenance() + ")"};
  r.params.notes.push_back(std::string("expansion basis: ") + (sd ? "self-dual" : "polynomial"));
  return r;
}

}  // namespace qct

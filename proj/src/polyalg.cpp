#include "qct/polyalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qct {

Poly::Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  normalize();
}

Poly Poly::monomial(FieldPtr field, std::size_t degree, Elem c) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::binomial(FieldPtr field, std::size_t n, Elem c) {
  std::vector<Elem> v(n + 1, 0);
  v[n] = 1;
  v[0] = field->add(v[0], c);
  return Poly(std::move(field), std::move(v));
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Elem> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->add((*this)[i], o[i]);
  return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Elem> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->sub((*this)[i], o[i]);
  return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(field_, {});
  std::vector<Elem> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i]) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      r[i + j] = field_->add(r[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return Poly(field_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  std::vector<Elem> rem = coeffs_;
  if (rem.size() < d.coeffs_.size()) return {Poly(field_, {}), *this};
  std::vector<Elem> quot(rem.size() - d.coeffs_.size() + 1, 0);
  const Elem lead_inv = field_->inv(d.leading());
  for (std::size_t i = quot.size(); i-- > 0;) {
    Elem c = field_->mul(rem[i + d.coeffs_.size() - 1], lead_inv);
    quot[i] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < d.coeffs_.size(); ++j) {
      rem[i + j] = field_->sub(rem[i + j], field_->mul(c, d.coeffs_[j]));
    }
  }
  return {Poly(field_, std::move(quot)), Poly(field_, std::move(rem))};
}

Elem Poly::eval(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
  return acc;
}

Poly Poly::reciprocal() const {
  std::vector<Elem> r(coeffs_.rbegin(), coeffs_.rend());
  return Poly(field_, std::move(r));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (!coeffs_[i]) continue;
    if (!out.empty()) out += " + ";
    std::string c = field_->format(coeffs_[i]);
    if (i == 0) {
      out += c;
    } else {
      if (coeffs_[i] != 1) out += (c.find('^') != std::string::npos || c.find('+') != std::string::npos) ? "(" + c + ")" : c;
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out;
}

CyclotomicCoset cyclotomic_coset(std::uint64_t n, std::uint64_t q, std::uint64_t s) {
  if (n == 0) throw PreconditionError("cyclotomic coset modulus must be positive");
  if (std::gcd(n, q) != 1) {
    throw PreconditionError("gcd(n=" + std::to_string(n) + ", q=" + std::to_string(q) + ") != 1");
  }
  s %= n;
  std::vector<std::uint64_t> members;
  std::uint64_t x = s;
  do {
    members.push_back(x);
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * q) % n);
  } while (x != s);
  std::sort(members.begin(), members.end());
  return {n, q, members.front(), std::move(members)};
}

std::string to_string(CodeKind k) { return k == CodeKind::cyclic ? "cyclic" : "negacyclic"; }

bool DefiningSet::contains(std::uint64_t e) const {
  return std::binary_search(exponents.begin(), exponents.end(), e % residue_modulus());
}

bool DefiningSet::is_closed() const {
  const std::uint64_t N = residue_modulus();
  return std::all_of(exponents.begin(), exponents.end(), [&](std::uint64_t e) {
    return contains(static_cast<std::uint64_t>((static_cast<unsigned __int128>(e) * q) % N));
  });
}

std::vector<std::uint64_t> odd_residues(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 1; i < 2 * n; i += 2) out.push_back(i);
  return out;
}

DefiningSet defining_set_closure(const std::vector<std::uint64_t>& raw, CodeKind kind, std::uint64_t n,
                                 std::uint64_t q) {
  DefiningSet t{kind, n, q, {}};
  const std::uint64_t N = t.residue_modulus();
  if (n == 0) throw PreconditionError("code length must be positive");
  if (std::gcd(N, q) != 1) {
    throw PreconditionError("gcd(" + std::to_string(N) + ", q=" + std::to_string(q) + ") != 1");
  }
  std::set<std::uint64_t> acc;
  for (auto r : raw) {
    if (r >= N) throw PreconditionError("exponent " + std::to_string(r) + " outside [0, " + std::to_string(N) + ")");
    if (kind == CodeKind::negacyclic && r % 2 == 0) {
      throw PreconditionError("negacyclic defining sets contain only odd residues, got " + std::to_string(r));
    }
    if (acc.count(r)) continue;
    auto c = cyclotomic_coset(N, q, r);
    acc.insert(c.members.begin(), c.members.end());
  }
  t.exponents.assign(acc.begin(), acc.end());
  return t;
}

std::vector<CyclotomicCoset> all_cosets(CodeKind kind, std::uint64_t n, std::uint64_t q) {
  const std::uint64_t N = kind == CodeKind::cyclic ? n : 2 * n;
  std::vector<bool> seen(N, false);
  std::vector<CyclotomicCoset> out;
  const std::uint64_t step = kind == CodeKind::cyclic ? 1 : 2;
  for (std::uint64_t s = kind == CodeKind::cyclic ? 0 : 1; s < N; s += step) {
    if (seen[s]) continue;
    auto c = cyclotomic_coset(N, q, s);
    for (auto m : c.members) seen[m] = true;
    out.push_back(std::move(c));
  }
  return out;
}

DefiningSet narrow_sense_bch_set(std::uint64_t n, std::uint64_t q, std::uint64_t delta) {
  if (delta < 2 || delta > n) {
    throw PreconditionError("designed distance " + std::to_string(delta) + " outside [2, n=" + std::to_string(n) + "]");
  }
  std::vector<std::uint64_t> raw;
  for (std::uint64_t i = 1; i < delta; ++i) raw.push_back(i % n);
  return defining_set_closure(raw, CodeKind::cyclic, n, q);
}

unsigned multiplicative_order(std::uint64_t q, std::uint64_t order) {
  if (order == 1) return 1;
  if (std::gcd(q, order) != 1) throw PreconditionError("q and the root order are not coprime");
  std::uint64_t x = q % order;
  unsigned t = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * q) % order);
    ++t;
  }
  return t;
}

RootContext root_context(const FieldPtr& base, std::uint64_t order) {
  const unsigned t = multiplicative_order(base->order(), order);
  auto tower = embedding(base->characteristic(), base->degree(), base->degree() * t);
  const Field& big = *tower->ext();
  Elem alpha = big.exp((big.order() - 1) / order);
  return {base, std::move(tower), order, alpha};
}

namespace {

// prod over exponents of (x - alpha^e), computed in the splitting field and
// mapped back to the base field.
Poly product_of_roots(const RootContext& ctx, const std::vector<std::uint64_t>& exponents) {
  const Field& big = ctx.splitting();
  FieldPtr bigp = ctx.tower->ext();
  Poly acc = Poly::constant(bigp, 1);
  for (auto e : exponents) {
    Elem root = big.pow(ctx.alpha, e);
    acc = acc * Poly(bigp, {big.neg(root), 1});
  }
  std::vector<Elem> coeffs;
  for (Elem c : acc.coeffs()) coeffs.push_back(ctx.tower->restrict_or_throw(c));
  return Poly(ctx.base, std::move(coeffs));
}

}  // namespace

Poly minimal_polynomial(std::uint64_t s, std::uint64_t n, const FieldPtr& field_q, const FieldPtr& splitting_field) {
  if ((splitting_field->order() - 1) % n != 0) {
    throw PreconditionError(std::to_string(n) + " does not divide |GF(" + std::to_string(splitting_field->order()) +
                            ")*|");
  }
  auto tower = embedding(field_q, splitting_field);
  const Field& big = *splitting_field;
  RootContext ctx{field_q, tower, n, big.exp((big.order() - 1) / n)};
  auto coset = cyclotomic_coset(n, field_q->order(), s);
  return product_of_roots(ctx, coset.members);
}

Poly generator_from_defining_set(const DefiningSet& t, const FieldPtr& field) {
  if (field->order() != t.q) {
    throw PreconditionError("defining set base q=" + std::to_string(t.q) + " does not match GF(" +
                            std::to_string(field->order()) + ")");
  }
  if (!t.is_closed()) throw PreconditionError("defining set is not closed under multiplication by q");
  if (t.exponents.empty()) return Poly::constant(field, 1);
  auto ctx = root_context(field, t.residue_modulus());
  // Multiply coset by coset so intermediate products stay small.
  Poly g = Poly::constant(field, 1);
  std::vector<bool> done(t.residue_modulus(), false);
  for (auto e : t.exponents) {
    if (done[e]) continue;
    auto c = cyclotomic_coset(t.residue_modulus(), t.q, e);
    for (auto m : c.members) done[m] = true;
    g = g * product_of_roots(ctx, c.members);
  }
  return g;
}

DefiningSet euclidean_dual_defining_set(const DefiningSet& t) {
  const std::uint64_t N = t.residue_modulus();
  DefiningSet out{t.kind, t.n, t.q, {}};
  const std::uint64_t step = t.kind == CodeKind::cyclic ? 1 : 2;
  for (std::uint64_t i = t.kind == CodeKind::cyclic ? 0 : 1; i < N; i += step) {
    if (!t.contains((N - i) % N)) out.exponents.push_back(i);
  }
  return out;
}

DefiningSet hermitian_dual_defining_set(const DefiningSet& t, std::uint64_t q) {
  if (t.kind != CodeKind::negacyclic) throw PreconditionError("Hermitian dual defining sets are for negacyclic codes");
  if (q * q != t.q) {
    throw PreconditionError("code alphabet " + std::to_string(t.q) + " is not q^2 for q=" + std::to_string(q));
  }
  const std::uint64_t N = t.residue_modulus();
  std::set<std::uint64_t> neg_qt;
  for (auto e : t.exponents) neg_qt.insert((N - (e * q) % N) % N);
  DefiningSet out{t.kind, t.n, t.q, {}};
  for (auto i : odd_residues(t.n)) {
    if (!neg_qt.count(i)) out.exponents.push_back(i);
  }
  return out;
}

unsigned bch_bound(const DefiningSet& t) {
  if (t.exponents.empty()) return 1;
  const std::uint64_t N = t.residue_modulus();
  if (t.kind == CodeKind::cyclic) {
    if (t.exponents.size() == N) return static_cast<unsigned>(N + 1);
    // Runs on the cycle Z_n: start each run at an exponent whose predecessor is absent.
    std::uint64_t best = 0;
    for (auto e : t.exponents) {
      if (t.contains((e + N - 1) % N)) continue;
      std::uint64_t len = 0;
      while (len < N && t.contains((e + len) % N)) ++len;
      best = std::max(best, len);
    }
    return static_cast<unsigned>(best + 1);
  }
  std::uint64_t best = 0, cur = 0;
  for (std::uint64_t i = 1; i < N; i += 2) {
    cur = t.contains(i) ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return static_cast<unsigned>(best + 1);
}

nlohmann::json to_json(const DefiningSet& t) {
  return {{"kind", to_string(t.kind)}, {"n", t.n}, {"q", t.q}, {"exponents", t.exponents}};
}

DefiningSet defining_set_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  CodeKind k;
  if (kind == "cyclic") {
    k = CodeKind::cyclic;
  } else if (kind == "negacyclic") {
    k = CodeKind::negacyclic;
  } else {
    throw Error("unknown defining set kind '" + kind + "'");
  }
  auto t = defining_set_closure(j.at("exponents").get<std::vector<std::uint64_t>>(), k, j.at("n").get<std::uint64_t>(),
                                j.at("q").get<std::uint64_t>());
  if (t.exponents != j.at("exponents").get<std::vector<std::uint64_t>>()) {
    throw Error("serialized defining set is not q-closed");
  }
  return t;
}

}  // namespace qct

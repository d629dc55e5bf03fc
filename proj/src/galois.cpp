#include "qct/galois.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "qct/matrix.hpp"

namespace qct {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Polynomials over GF(p) as coefficient vectors, constant term first.
using PolyP = std::vector<unsigned>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  // p is prime: a^(p-2).
  std::uint64_t r = 1, b = a % p;
  unsigned e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<unsigned>(r);
}

PolyP poly_mod(PolyP a, const PolyP& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const unsigned lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    unsigned c = static_cast<unsigned>(std::uint64_t{a.back()} * lead_inv % p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<unsigned>((a[shift + i] + std::uint64_t{p - c} * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, unsigned p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<unsigned>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

PolyP poly_gcd(PolyP a, PolyP b, unsigned p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

PolyP poly_powmod(PolyP base, std::uint64_t e, const PolyP& m, unsigned p) {
  PolyP r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  unsigned e = 0;
  while (q > 1) {
    q /= f[0];
    ++e;
  }
  return std::make_pair(static_cast<unsigned>(f[0]), e);
}

bool is_irreducible_mod_p(std::span<const unsigned> poly, unsigned p) {
  PolyP f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  PolyP x{0, 1};
  PolyP h = x;
  for (std::size_t d = 1; d <= n / 2; ++d) {
    h = poly_powmod(h, p, f, p);
    PolyP diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    PolyP g = poly_gcd(f, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

Field::Field(unsigned p, unsigned e) : p_(p), e_(e) {
  if (!is_prime(p)) throw PreconditionError("field characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw PreconditionError("field degree must be positive");
  long double size = 1;
  for (unsigned i = 0; i < e; ++i) size *= p;
  if (size > static_cast<long double>(kMaxFieldOrder)) {
    throw CapExceeded("GF(" + std::to_string(p) + "^" + std::to_string(e) + ") exceeds the field size cap of " +
                      std::to_string(kMaxFieldOrder));
  }
  q_ = static_cast<Elem>(ipow(p, e));
  half_ = (q_ - 1) / 2;

  if (e == 1) {
    modulus_ = {0, 1};
  } else {
    for (std::uint64_t v = 1; v < q_; ++v) {
      PolyP cand(e + 1, 0);
      std::uint64_t t = v;
      for (unsigned i = 0; i < e; ++i) {
        cand[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      cand[e] = 1;
      if (cand[0] == 0) continue;
      if (is_irreducible_mod_p(cand, p)) {
        modulus_ = std::move(cand);
        break;
      }
    }
  }

  auto to_poly = [&](Elem a) {
    PolyP r(e, 0);
    for (unsigned i = 0; i < e; ++i) {
      r[i] = a % p;
      a /= p;
    }
    trim(r);
    return r;
  };
  auto from_poly = [&](const PolyP& a) {
    Elem r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = r * p + a[i];
    return r;
  };
  auto slow_mul = [&](Elem a, Elem b) { return from_poly(poly_mulmod(to_poly(a), to_poly(b), modulus_, p)); };
  auto slow_pow = [&](Elem a, std::uint64_t k) {
    Elem r = 1;
    while (k) {
      if (k & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      k >>= 1;
    }
    return r;
  };

  const auto factors = prime_factors(q_ - 1);
  generator_ = 1;
  if (q_ > 2) {
    for (Elem g = 2; g < q_; ++g) {
      bool primitive = std::all_of(factors.begin(), factors.end(),
                                   [&](std::uint64_t r) { return slow_pow(g, (q_ - 1) / r) != 1; });
      if (primitive) {
        generator_ = g;
        break;
      }
    }
  }

  const std::uint32_t n1 = q_ - 1;
  exp_.assign(2 * std::size_t{n1}, 0);
  log_.assign(q_, kNoLog);
  Elem cur = 1;
  for (std::uint32_t i = 0; i < n1; ++i) {
    exp_[i] = cur;
    exp_[i + n1] = cur;
    log_[cur] = i;
    cur = slow_mul(cur, generator_);
  }
  if (cur != 1) throw Error("internal: generator order mismatch while building field tables");

  zech_.assign(n1, kNoLog);
  for (std::uint32_t i = 0; i < n1; ++i) {
    // 1 + w^i: only the constant digit changes.
    Elem w = exp_[i];
    Elem c0 = w % p;
    Elem s = w - c0 + (c0 + 1) % p;
    zech_[i] = s == 0 ? kNoLog : log_[s];
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error("division by zero in GF(" + std::to_string(q_) + ")");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t l = (std::uint64_t{log_[a]} * (k % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

std::uint32_t Field::log(Elem a) const {
  if (a == 0 || a >= q_) throw Error("logarithm of zero or out-of-range element");
  return log_[a];
}

Elem Field::frobenius(Elem a, unsigned k) const {
  if (a == 0) return 0;
  std::uint64_t l = log_[a];
  for (unsigned i = 0; i < k % e_; ++i) l = (l * p_) % (q_ - 1);
  return exp_[l];
}

std::uint64_t Field::element_order(Elem a) const {
  if (a == 0) throw Error("zero has no multiplicative order");
  return (q_ - 1) / std::gcd<std::uint64_t>(log_[a], q_ - 1);
}

Elem Field::from_int(long long c) const {
  long long r = c % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<unsigned> Field::coefficients(Elem a) const {
  std::vector<unsigned> out(e_, 0);
  for (unsigned i = 0; i < e_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Elem Field::from_coefficients(std::span<const unsigned> coeffs) const {
  if (coeffs.size() > e_) throw Error("too many coefficients for GF(" + std::to_string(q_) + ")");
  Elem r = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * p_ + coeffs[i] % p_;
  return r;
}

std::string Field::format(Elem a) const {
  if (a == 0) return "0";
  if (a == 1) return "1";
  std::uint32_t l = log(a);
  if (l == 1) return "w";
  return "w^" + std::to_string(l);
}

Elem Field::parse(const std::string& text) const {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw Error("empty field element");
  if (t == "w") return generator_;
  if (t.rfind("w^", 0) == 0) {
    return exp(std::stoull(t.substr(2)));
  }
  if (std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    auto v = std::stoull(t);
    if (v >= q_) throw Error("element index " + t + " out of range for GF(" + std::to_string(q_) + ")");
    return static_cast<Elem>(v);
  }
  throw Error("cannot parse field element '" + text + "'");
}

FieldPtr build_field(unsigned p, unsigned e) {
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
  {
    std::lock_guard lock(registry_mutex());
    if (auto it = cache.find({p, e}); it != cache.end()) return it->second;
  }
  auto f = std::make_shared<const Field>(p, e);
  std::lock_guard lock(registry_mutex());
  auto [it, inserted] = cache.emplace(std::make_pair(p, e), f);
  return it->second;
}

FieldPtr field_of_order(std::uint64_t q) {
  auto pe = prime_power(q);
  if (!pe) throw PreconditionError(std::to_string(q) + " is not a prime power");
  return build_field(pe->first, pe->second);
}

FieldEmbedding::FieldEmbedding(FieldPtr sub, FieldPtr ext) : sub_(std::move(sub)), ext_(std::move(ext)) {
  if (sub_->characteristic() != ext_->characteristic() || ext_->degree() % sub_->degree() != 0) {
    throw PreconditionError("GF(" + std::to_string(sub_->order()) + ") is not a subfield of GF(" +
                            std::to_string(ext_->order()) + ")");
  }
  m_ = ext_->degree() / sub_->degree();
  const Elem q = sub_->order();
  const Elem big = ext_->order();
  cofactor_ = (big - 1) / (q - 1);
  embed_.assign(q, 0);

  if (sub_->degree() == 1 || m_ == 1) {
    for (Elem c = 0; c < q; ++c) embed_[c] = c;
  } else {
    const auto& mod = sub_->modulus();
    auto eval = [&](Elem x) {
      Elem acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;) {
        acc = ext_->add(ext_->mul(acc, x), ext_->from_int(mod[i]));
      }
      return acc;
    };
    Elem root = 0;
    bool found = false;
    for (std::uint64_t j = 1; j < q - 1 && !found; ++j) {
      Elem cand = ext_->exp(j * cofactor_);
      if (eval(cand) == 0) {
        root = cand;
        found = true;
      }
    }
    if (!found) throw Error("internal: no root of the subfield modulus inside the extension");
    for (Elem a = 0; a < q; ++a) {
      auto coeffs = sub_->coefficients(a);
      Elem acc = 0;
      for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = ext_->add(ext_->mul(acc, root), ext_->from_int(coeffs[i]));
      }
      embed_[a] = acc;
    }
  }

  restrict_by_log_.assign(q - 1, 0);
  for (Elem a = 1; a < q; ++a) {
    std::uint32_t l = ext_->log(embed_[a]);
    if (l % cofactor_ != 0) throw Error("internal: embedded element outside the subfield");
    restrict_by_log_[l / cofactor_] = a;
  }
  if (ext_->element_order(embed_[sub_->generator()]) != q - 1) {
    throw Error("internal: embedding does not preserve the generator order");
  }
}

std::optional<Elem> FieldEmbedding::restrict(Elem x) const {
  if (x == 0) return Elem{0};
  std::uint32_t l = ext_->log(x);
  if (l % cofactor_ != 0) return std::nullopt;
  return restrict_by_log_[l / cofactor_];
}

Elem FieldEmbedding::restrict_or_throw(Elem x) const {
  auto r = restrict(x);
  if (!r) {
    throw Error(ext_->format(x) + " is not in GF(" + std::to_string(sub_->order()) + ")");
  }
  return *r;
}

Elem FieldEmbedding::trace(Elem x) const {
  Elem acc = 0;
  Elem cur = x;
  for (unsigned i = 0; i < m_; ++i) {
    acc = ext_->add(acc, cur);
    cur = ext_->frobenius(cur, sub_->degree());
  }
  return restrict_or_throw(acc);
}

EmbeddingPtr embedding(const FieldPtr& sub, const FieldPtr& ext) {
  return embedding(sub->characteristic(), sub->degree(), ext->degree());
}

EmbeddingPtr embedding(unsigned p, unsigned sub_e, unsigned ext_e) {
  static std::map<std::tuple<unsigned, unsigned, unsigned>, EmbeddingPtr> cache;
  auto key = std::make_tuple(p, sub_e, ext_e);
  {
    std::lock_guard lock(registry_mutex());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto emb = std::make_shared<const FieldEmbedding>(build_field(p, sub_e), build_field(p, ext_e));
  std::lock_guard lock(registry_mutex());
  return cache.emplace(key, emb).first->second;
}

FieldElement trace(const FieldElement& x, const FieldPtr& subfield) {
  auto tower = embedding(subfield, x.field());
  return {tower->sub(), tower->trace(x.value())};
}

Elem conjugate(const Field& field, Elem x, std::uint64_t q) {
  if (std::uint64_t{q} * q != field.order()) {
    throw PreconditionError("conjugation by q=" + std::to_string(q) + " needs a field of order q^2, got " +
                            std::to_string(field.order()));
  }
  return field.frobenius(x, field.degree() / 2);
}

FieldElement conjugate(const FieldElement& x, std::uint64_t q) {
  return {x.field(), conjugate(*x.field(), x.value(), q)};
}

std::vector<Elem> ExtensionBasis::trace_gram(std::span<const Elem> other) const {
  const Field& ext = *tower->ext();
  const std::size_t m = elements.size();
  std::vector<Elem> g(m * other.size());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < other.size(); ++j) {
      g[i * other.size() + j] = tower->trace(ext.mul(elements[i], other[j]));
    }
  }
  return g;
}

ExtensionBasis polynomial_basis(const EmbeddingPtr& tower) {
  ExtensionBasis b{tower, {}};
  for (unsigned i = 0; i < tower->relative_degree(); ++i) b.elements.push_back(tower->ext()->exp(i));
  return b;
}

namespace {

Matrix gram_matrix(const ExtensionBasis& b) {
  const std::size_t m = b.elements.size();
  auto g = b.trace_gram(b.elements);
  Matrix out(b.tower->sub(), m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(i, j) = g[i * m + j];
  }
  return out;
}

}  // namespace

bool is_basis(const ExtensionBasis& b) {
  if (b.elements.size() != b.tower->relative_degree()) return false;
  return rank(gram_matrix(b)) == b.elements.size();
}

ExtensionBasis find_dual_basis(const ExtensionBasis& b) {
  if (b.elements.size() != b.tower->relative_degree()) {
    throw PreconditionError("basis has " + std::to_string(b.elements.size()) + " elements, extension degree is " +
                            std::to_string(b.tower->relative_degree()));
  }
  Matrix ginv;
  try {
    ginv = inverse(gram_matrix(b));
  } catch (const Error&) {
    throw Error("trace Gram matrix is singular: the elements are not a basis");
  }
  const Field& ext = *b.tower->ext();
  const std::size_t m = b.elements.size();
  ExtensionBasis dual{b.tower, std::vector<Elem>(m, 0)};
  for (std::size_t j = 0; j < m; ++j) {
    Elem acc = 0;
    for (std::size_t l = 0; l < m; ++l) {
      acc = ext.add(acc, ext.mul(b.tower->embed(ginv(j, l)), b.elements[l]));
    }
    dual.elements[j] = acc;
  }
  return dual;
}

ExtensionBasis find_hermitian_dual_basis(const ExtensionBasis& b) {
  const Field& ext = *b.tower->ext();
  const unsigned sub_e = b.tower->sub()->degree();
  if (ext.degree() % 2 != 0 || (ext.degree() / 2) % sub_e != 0) {
    throw PreconditionError("Hermitian dual basis needs |ext| = Q^2 with Q a power of |sub|");
  }
  ExtensionBasis dual = find_dual_basis(b);
  for (auto& x : dual.elements) x = ext.frobenius(x, ext.degree() / 2);
  return dual;
}

bool self_dual_basis_exists(std::uint64_t q, unsigned m) { return q % 2 == 0 || m % 2 == 1; }

std::optional<ExtensionBasis> find_self_dual_basis(const EmbeddingPtr& tower, const SelfDualSearch& opts) {
  const Field& ext = *tower->ext();
  const unsigned m = tower->relative_degree();
  auto form = [&](Elem a, Elem b) { return tower->trace(ext.mul(a, b)); };

  std::vector<Elem> candidates;
  for (Elem x = 1; x < ext.order(); ++x) {
    if (form(x, x) == 1) candidates.push_back(x);
  }

  std::vector<Elem> chosen;
  std::uint64_t nodes = 0;
  bool exhausted_budget = false;
  // Depth-first over increasing candidate indices; each level keeps only the
  // candidates orthogonal to everything chosen so far.
  auto dfs = [&](auto&& self, const std::vector<Elem>& pool) -> bool {
    if (chosen.size() == m) return true;
    if (pool.size() < m - chosen.size()) return false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (++nodes > opts.node_budget) {
        exhausted_budget = true;
        return false;
      }
      Elem x = pool[i];
      std::vector<Elem> next;
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if (form(x, pool[j]) == 0) next.push_back(pool[j]);
      }
      chosen.push_back(x);
      if (self(self, next)) return true;
      chosen.pop_back();
      if (exhausted_budget) return false;
    }
    return false;
  };

  if (dfs(dfs, candidates)) return ExtensionBasis{tower, chosen};

  if (!exhausted_budget) return std::nullopt;

  std::mt19937_64 rng(opts.seed);
  for (unsigned attempt = 0; attempt < opts.random_restarts; ++attempt) {
    std::vector<Elem> pool = candidates;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Elem> pick;
    for (Elem x : pool) {
      if (std::all_of(pick.begin(), pick.end(), [&](Elem y) { return form(x, y) == 0; })) {
        pick.push_back(x);
        if (pick.size() == m) return ExtensionBasis{tower, pick};
      }
    }
  }
  throw CapExceeded("self-dual basis search for GF(" + std::to_string(ext.order()) + ")/GF(" +
                    std::to_string(tower->sub()->order()) + ") ran out of budget");
}

nlohmann::json field_to_json(const Field& f) {
  return {{"p", f.characteristic()}, {"e", f.degree()}, {"modulus", f.modulus()}, {"generator", f.generator()}};
}

FieldPtr field_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("e")) throw Error("field descriptor needs p and e");
  auto f = build_field(j.at("p").get<unsigned>(), j.at("e").get<unsigned>());
  if (j.contains("modulus") && j.at("modulus").get<std::vector<unsigned>>() != f->modulus()) {
    throw Error("field descriptor modulus differs from the canonical modulus of GF(" + std::to_string(f->order()) +
                ")");
  }
  if (j.contains("generator") && j.at("generator").get<Elem>() != f->generator()) {
    throw Error("field descriptor generator differs from the canonical generator");
  }
  return f;
}

}  // namespace qct

#include "qct/lincode.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

namespace qct {

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::lower_bound: return "lower_bound";
    case Exactness::upper_bound: return "upper_bound";
  }
  return "?";
}

std::string to_string(DistanceMethod m) {
  switch (m) {
    case DistanceMethod::enumeration: return "enumeration";
    case DistanceMethod::mds_rank: return "mds_rank";
    case DistanceMethod::bch_bound: return "bch_bound";
    case DistanceMethod::structural: return "structural";
    case DistanceMethod::search: return "search";
  }
  return "?";
}

namespace {

template <class E>
E parse_enum(const std::string& s, std::initializer_list<E> all) {
  for (E e : all) {
    if (to_string(e) == s) return e;
  }
  throw Error("unknown enum value '" + s + "'");
}

// q^k saturating at 2^64-1.
std::uint64_t saturating_pow(std::uint64_t q, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
    r *= q;
  }
  return r;
}

unsigned thread_count(const SearchConfig& cfg) {
  unsigned t = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  return std::max(1u, t);
}

}  // namespace

nlohmann::json to_json(const DistanceResult& d, bool with_witness) {
  nlohmann::json j = {{"value", d.value}, {"exactness", to_string(d.exactness)}, {"method", to_string(d.method)}};
  if (d.upper) j["upper"] = *d.upper;
  if (d.declared) j["declared"] = *d.declared;
  if (with_witness && d.witness) j["witness"] = *d.witness;
  return j;
}

DistanceResult distance_from_json(const nlohmann::json& j) {
  DistanceResult d;
  d.value = j.at("value").get<unsigned>();
  d.exactness = parse_enum(j.at("exactness").get<std::string>(),
                           {Exactness::exact, Exactness::lower_bound, Exactness::upper_bound});
  d.method = parse_enum(j.at("method").get<std::string>(),
                        {DistanceMethod::enumeration, DistanceMethod::mds_rank, DistanceMethod::bch_bound,
                         DistanceMethod::structural, DistanceMethod::search});
  if (j.contains("upper")) d.upper = j["upper"].get<unsigned>();
  if (j.contains("declared")) d.declared = j["declared"].get<unsigned>();
  if (j.contains("witness")) d.witness = j["witness"].get<std::vector<Elem>>();
  return d;
}

LinearCode LinearCode::from_matrix(Matrix generator) {
  auto pivots = rref(generator);
  return LinearCode(std::move(generator), std::move(pivots));
}

LinearCode LinearCode::from_generator(FieldPtr field, const std::vector<std::vector<Elem>>& rows,
                                      std::optional<std::size_t> length) {
  if (rows.empty() && !length) throw Error("empty generator matrix needs an explicit length");
  std::size_t n = length ? *length : rows.front().size();
  return from_matrix(Matrix::from_rows(std::move(field), rows, n));
}

LinearCode LinearCode::zero(FieldPtr field, std::size_t n) { return from_matrix(Matrix(std::move(field), 0, n)); }

LinearCode LinearCode::whole_space(FieldPtr field, std::size_t n) { return from_matrix(Matrix::identity(std::move(field), n)); }

std::optional<DistanceResult> LinearCode::distance_info() const {
  std::lock_guard lock(cache_->mu);
  return cache_->distance;
}

void LinearCode::record_distance(const DistanceResult& d) const {
  if (d.is_exact() && !d.witness) throw Error("exact distance recorded without a witness");
  std::lock_guard lock(cache_->mu);
  auto& cur = cache_->distance;
  if (!cur || (d.is_exact() && !cur->is_exact()) || (!cur->is_exact() && !d.is_exact() && d.value > cur->value)) {
    DistanceResult merged = d;
    if (cur && !d.is_exact()) {
      if (!merged.declared) merged.declared = cur->declared;
      if (cur->upper && (!merged.upper || *cur->upper < *merged.upper)) {
        merged.upper = cur->upper;
        merged.witness = cur->witness;
      }
    }
    cur = merged;
  } else if (cur && !cur->is_exact()) {
    if (d.upper && (!cur->upper || *d.upper < *cur->upper)) {
      cur->upper = d.upper;
      cur->witness = d.witness;
    }
    if (d.declared && !cur->declared) cur->declared = d.declared;
  }
}

Matrix LinearCode::parity_check() const {
  if (dimension() == 0) return Matrix::identity(field_, length());
  return nullspace(generator_);
}

bool LinearCode::contains_word(std::span<const Elem> v) const {
  if (v.size() != length()) throw Error("word length does not match the code");
  // Reduce v against the RREF rows: v is a codeword iff the remainder is 0.
  std::vector<Elem> r(v.begin(), v.end());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    Elem c = r[pivots_[i]];
    if (c) axpy(*field_, r, field_->neg(c), generator_.row(i));
  }
  return std::all_of(r.begin(), r.end(), [](Elem x) { return x == 0; });
}

std::vector<Elem> LinearCode::encode(std::span<const Elem> msg) const {
  if (msg.size() != dimension()) throw Error("message length does not match the code dimension");
  return vec_mat(*field_, msg, generator_);
}

ClassicalParams params_of(const LinearCode& c) {
  ClassicalParams p{c.length(), c.dimension(), 0, false, c.field().order()};
  if (auto d = c.distance_info()) {
    p.d = d->value;
    p.d_exact = d->is_exact();
  }
  return p;
}

std::string format_params(const LinearCode& c) {
  auto p = params_of(c);
  std::string d = p.d == 0 ? "?" : (p.d_exact ? "" : ">=") + std::to_string(p.d);
  return "[" + std::to_string(p.n) + "," + std::to_string(p.k) + "," + d + "]_" + std::to_string(p.q);
}

LinearCode dual(const LinearCode& c) {
  auto d = LinearCode::from_matrix(c.parity_check());
  if (!c.provenance().empty()) d.set_provenance("dual(" + c.provenance() + ")");
  if (c.defining_set()) d.set_defining_set(euclidean_dual_defining_set(*c.defining_set()));
  return d;
}

namespace {

std::uint64_t square_root_order(const Field& f) {
  if (f.degree() % 2) {
    throw PreconditionError("Hermitian duality needs a square field order, got GF(" + std::to_string(f.order()) + ")");
  }
  std::uint64_t q = 1;
  for (unsigned i = 0; i < f.degree() / 2; ++i) q *= f.characteristic();
  return q;
}

}  // namespace

LinearCode conjugate_code(const LinearCode& c) {
  const std::uint64_t q = square_root_order(c.field());
  Matrix g = c.generator();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (auto& x : g.row(r)) x = conjugate(c.field(), x, q);
  }
  return LinearCode::from_matrix(std::move(g));
}

LinearCode hermitian_dual(const LinearCode& c) {
  auto d = dual(conjugate_code(c));
  if (!c.provenance().empty()) d.set_provenance("hdual(" + c.provenance() + ")");
  if (c.defining_set() && c.defining_set()->kind == CodeKind::negacyclic) {
    d.set_defining_set(hermitian_dual_defining_set(*c.defining_set(), square_root_order(c.field())));
  }
  return d;
}

namespace {

void require_compatible(const LinearCode& a, const LinearCode& b) {
  if (!a.field().same_as(b.field())) throw PreconditionError("codes are over different fields");
  if (a.length() != b.length()) throw PreconditionError("codes have different lengths");
}

}  // namespace

bool contains_code(const LinearCode& outer, const LinearCode& inner) {
  require_compatible(outer, inner);
  if (inner.dimension() > outer.dimension()) return false;
  for (std::size_t r = 0; r < inner.dimension(); ++r) {
    if (!outer.contains_word(inner.generator().row(r))) return false;
  }
  return true;
}

bool contains_allones(const LinearCode& c) {
  std::vector<Elem> ones(c.length(), 1);
  return c.contains_word(ones);
}

LinearCode puncture(const LinearCode& c, std::size_t position) {
  if (position >= c.length()) {
    throw PreconditionError("puncture position " + std::to_string(position) + " outside [0, " +
                            std::to_string(c.length()) + ")");
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < c.length(); ++i) {
    if (i != position) keep.push_back(i);
  }
  auto out = LinearCode::from_matrix(c.generator().select_columns(keep));
  if (!c.provenance().empty()) out.set_provenance("puncture(" + c.provenance() + "," + std::to_string(position) + ")");
  return out;
}

LinearCode extend_parity(const LinearCode& c) {
  const Field& f = c.field();
  Matrix g(c.field_ptr(), c.dimension(), c.length() + 1);
  for (std::size_t r = 0; r < c.dimension(); ++r) {
    Elem s = 0;
    for (std::size_t i = 0; i < c.length(); ++i) {
      g(r, i) = c.generator()(r, i);
      s = f.add(s, g(r, i));
    }
    g(r, c.length()) = f.neg(s);
  }
  auto out = LinearCode::from_matrix(std::move(g));
  if (!c.provenance().empty()) out.set_provenance("extend(" + c.provenance() + ")");
  return out;
}

LinearCode direct_sum(const LinearCode& a, const LinearCode& b) {
  if (!a.field().same_as(b.field())) throw PreconditionError("direct sum of codes over different fields");
  const std::size_t na = a.length(), nb = b.length();
  Matrix g(a.field_ptr(), a.dimension() + b.dimension(), na + nb);
  for (std::size_t r = 0; r < a.dimension(); ++r)
    for (std::size_t i = 0; i < na; ++i) g(r, i) = a.generator()(r, i);
  for (std::size_t r = 0; r < b.dimension(); ++r)
    for (std::size_t i = 0; i < nb; ++i) g(a.dimension() + r, na + i) = b.generator()(r, i);
  auto out = LinearCode::from_matrix(std::move(g));
  out.set_provenance("(" + a.provenance() + ")+(" + b.provenance() + ")");

  // d(A+B) = min(d(A), d(B)); a zero summand contributes nothing.
  auto da = a.dimension() ? a.distance_info() : std::nullopt;
  auto db = b.dimension() ? b.distance_info() : std::nullopt;
  auto padded = [&](const std::vector<Elem>& w, bool first) {
    std::vector<Elem> v(na + nb, 0);
    std::copy(w.begin(), w.end(), v.begin() + (first ? 0 : na));
    return v;
  };
  if ((a.dimension() == 0 || (da && da->is_exact())) && (b.dimension() == 0 || (db && db->is_exact())) &&
      out.dimension() > 0) {
    bool use_a = a.dimension() && (!b.dimension() || da->value <= db->value);
    const auto& src = use_a ? *da : *db;
    DistanceResult r = src;
    r.witness = padded(*src.witness, use_a);
    out.record_distance(r);
  } else if ((a.dimension() == 0 || da) && (b.dimension() == 0 || db) && out.dimension() > 0) {
    DistanceResult r;
    r.exactness = Exactness::lower_bound;
    r.method = (da && !db) ? da->method : (db && !da) ? db->method : (da->value <= db->value ? da->method : db->method);
    r.value = std::min(da ? da->value : ~0u, db ? db->value : ~0u);
    out.record_distance(r);
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Projective enumeration. Words sum_i m_i r_i with the first nonzero m_i
// (index below lead_limit) equal to 1. Each lead index i splits the free
// coefficients m_{i+1..k-1} into GF(p)-digits walked with a modular p-ary
// Gray code, so every step adds one precomputed row.

struct Hit {
  unsigned weight = std::numeric_limits<unsigned>::max();
  std::vector<Elem> word;
};

struct Chunk {
  std::size_t lead;
  std::uint64_t prefix;  // value of the top `top_digits` digits
};

class Enumerator {
 public:
  Enumerator(FieldPtr field, std::vector<std::vector<Elem>> rows, std::size_t lead_limit)
      : field_(std::move(field)), rows_(std::move(rows)), lead_limit_(lead_limit) {
    const Field& f = *field_;
    n_ = rows_.empty() ? 0 : rows_.front().size();
    p_ = f.characteristic();
    e_ = f.degree();
    binary_ = f.order() == 2;
    // GF(p)-basis of GF(q): the packed units p^t.
    std::uint64_t unit = 1;
    for (unsigned t = 0; t < e_; ++t, unit *= p_) units_.push_back(static_cast<Elem>(unit));
    for (std::size_t lead = 0; lead < lead_limit_; ++lead) {
      const std::size_t digits = e_ * (rows_.size() - 1 - lead);
      std::size_t top = 0;
      std::uint64_t chunks = 1;
      while (top < digits && chunks < 64) {
        chunks *= p_;
        ++top;
      }
      top_digits_.push_back(top);
      for (std::uint64_t c = 0; c < chunks; ++c) chunks_.push_back({lead, c});
    }
  }

  // Digit j of lead index `lead`: GF(q)-row lead+1+j/e times units_[j%e].
  std::vector<Elem> digit_row(std::size_t lead, std::size_t j) const {
    const auto& r = rows_[lead + 1 + j / e_];
    std::vector<Elem> v(n_);
    Elem u = units_[j % e_];
    for (std::size_t i = 0; i < n_; ++i) v[i] = field_->mul(u, r[i]);
    return v;
  }

  Hit run(unsigned target, unsigned threads) {
    std::vector<Hit> hits(chunks_.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};
    auto worker = [&] {
      for (;;) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= chunks_.size()) return;
        if (first_hit.load() < idx) continue;
        hits[idx] = binary_ ? run_chunk_binary(chunks_[idx], idx, target, first_hit)
                            : run_chunk(chunks_[idx], idx, target, first_hit);
        if (hits[idx].weight <= target) {
          std::size_t cur = first_hit.load();
          while (idx < cur && !first_hit.compare_exchange_weak(cur, idx)) {
          }
        }
      }
    };
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks_.size()));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    Hit best;
    for (auto& h : hits) {
      if (h.weight < best.weight) best = std::move(h);
    }
    return best;
  }

 private:
  static bool should_abort(const std::atomic<std::size_t>& first_hit, std::size_t idx) {
    return first_hit.load(std::memory_order_relaxed) < idx;
  }

  // Start word of a chunk and the rows of its free (low) digits.
  std::vector<Elem> chunk_start(const Chunk& c, std::size_t& low_digits, std::vector<std::vector<Elem>>& low_rows) const {
    const std::size_t digits = e_ * (rows_.size() - 1 - c.lead);
    const std::size_t top = top_digits_[c.lead];
    low_digits = digits - top;
    std::vector<Elem> w = rows_[c.lead];
    std::uint64_t pre = c.prefix;
    for (std::size_t j = low_digits; j < digits; ++j, pre /= p_) {
      auto r = digit_row(c.lead, j);
      for (std::uint64_t t = 0; t < pre % p_; ++t) axpy(*field_, w, 1, r);
    }
    low_rows.clear();
    for (std::size_t j = 0; j < low_digits; ++j) low_rows.push_back(digit_row(c.lead, j));
    return w;
  }

  Hit run_chunk(const Chunk& c, std::size_t idx, unsigned target, const std::atomic<std::size_t>& first_hit) const {
    const Field& f = *field_;
    std::size_t low = 0;
    std::vector<std::vector<Elem>> low_rows;
    std::vector<Elem> w = chunk_start(c, low, low_rows);
    std::vector<std::vector<std::uint32_t>> supp(low);
    for (std::size_t j = 0; j < low; ++j) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (low_rows[j][i]) supp[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
    unsigned weight = hamming_weight(w);
    Hit best{weight, w};
    if (weight <= target) return best;
    const std::uint64_t steps = saturating_pow(p_, low);
    const bool char2 = p_ == 2;
    for (std::uint64_t t = 1; t < steps; ++t) {
      std::uint64_t x = t;
      std::size_t v = 0;
      while (x % p_ == 0) {
        x /= p_;
        ++v;
      }
      const auto& r = low_rows[v];
      for (auto i : supp[v]) {
        Elem before = w[i];
        Elem after = char2 ? before ^ r[i] : f.add(before, r[i]);
        w[i] = after;
        weight += (after != 0) - (before != 0);
      }
      if (weight < best.weight) {
        best.weight = weight;
        best.word = w;
        if (weight <= target) return best;
      }
      if ((t & 0xfff) == 0 && should_abort(first_hit, idx)) return best;
    }
    return best;
  }

  Hit run_chunk_binary(const Chunk& c, std::size_t idx, unsigned target,
                       const std::atomic<std::size_t>& first_hit) const {
    std::size_t low = 0;
    std::vector<std::vector<Elem>> low_rows;
    std::vector<Elem> start = chunk_start(c, low, low_rows);
    const std::size_t words = (n_ + 63) / 64;
    auto pack = [&](const std::vector<Elem>& v) {
      std::vector<std::uint64_t> b(words, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        if (v[i]) b[i / 64] |= std::uint64_t{1} << (i % 64);
      }
      return b;
    };
    std::vector<std::uint64_t> w = pack(start);
    std::vector<std::uint64_t> rows(low * words);
    for (std::size_t j = 0; j < low; ++j) {
      auto b = pack(low_rows[j]);
      std::copy(b.begin(), b.end(), rows.begin() + j * words);
    }
    auto weight_of = [&] {
      unsigned s = 0;
      for (auto x : w) s += static_cast<unsigned>(std::popcount(x));
      return s;
    };
    auto unpack = [&] {
      std::vector<Elem> v(n_);
      for (std::size_t i = 0; i < n_; ++i) v[i] = (w[i / 64] >> (i % 64)) & 1;
      return v;
    };
    unsigned weight = weight_of();
    Hit best{weight, start};
    if (weight <= target) return best;
    const std::uint64_t steps = std::uint64_t{1} << low;
    for (std::uint64_t t = 1; t < steps; ++t) {
      const std::size_t v = static_cast<std::size_t>(std::countr_zero(t));
      const std::uint64_t* r = rows.data() + v * words;
      unsigned s = 0;
      for (std::size_t k = 0; k < words; ++k) {
        w[k] ^= r[k];
        s += static_cast<unsigned>(std::popcount(w[k]));
      }
      if (s < best.weight) {
        best.weight = s;
        best.word = unpack();
        if (s <= target) return best;
      }
      if ((t & 0xffff) == 0 && should_abort(first_hit, idx)) return best;
    }
    return best;
  }

  FieldPtr field_;
  std::vector<std::vector<Elem>> rows_;
  std::size_t lead_limit_;
  std::size_t n_ = 0;
  unsigned p_ = 2, e_ = 1;
  bool binary_ = false;
  std::vector<Elem> units_;
  std::vector<std::size_t> top_digits_;
  std::vector<Chunk> chunks_;
};

// ---------------------------------------------------------------------------
// Information-set sampling for upper bounds: random column permutation,
// systematic form, then single rows and pairs of rows.

struct Sampled {
  unsigned weight = std::numeric_limits<unsigned>::max();
  std::vector<Elem> word;
};

template <class Accept>
Sampled sample_low_weight(const Matrix& g, const SearchConfig& cfg, Accept accept) {
  Sampled best;
  const std::size_t k = g.rows(), n = g.cols();
  if (k == 0) return best;
  const Field& f = g.field();
  const double per_sample = static_cast<double>(k) * k * n / (f.order() == 2 ? 64.0 : 1.0) +
                            static_cast<double>(k) * k * (f.order() - 1) * n / 2.0;
  const double budget = 4e8;
  const unsigned samples = static_cast<unsigned>(std::clamp(budget / std::max(per_sample, 1.0), 1.0, double(cfg.samples)));
  const bool pairs = static_cast<double>(k) * k * (f.order() - 1) <= 2e5;
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Elem> orig(n);
  auto consider = [&](std::span<const Elem> permuted) {
    unsigned w = hamming_weight(permuted);
    if (w == 0 || w >= best.weight) return;
    for (std::size_t i = 0; i < n; ++i) orig[perm[i]] = permuted[i];
    if (!accept(orig)) return;
    best.weight = w;
    best.word = orig;
  };
  for (unsigned s = 0; s < samples; ++s) {
    if (s > 0) std::shuffle(perm.begin(), perm.end(), rng);
    Matrix m = g.select_columns(perm);
    rref(m);
    std::vector<Elem> tmp(n);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      consider(m.row(r));
      if (!pairs) continue;
      for (std::size_t r2 = r + 1; r2 < m.rows(); ++r2) {
        for (Elem lambda = 1; lambda < f.order(); ++lambda) {
          std::copy(m.row(r).begin(), m.row(r).end(), tmp.begin());
          axpy(f, tmp, lambda, m.row(r2));
          consider(tmp);
        }
      }
    }
  }
  return best;
}

std::vector<std::vector<Elem>> rows_of(const Matrix& m) { return m.to_rows(); }

// Certified lower bound from structure alone.
DistanceResult structural_lower_bound(const LinearCode& c) {
  DistanceResult r;
  r.value = 1;
  r.method = DistanceMethod::structural;
  if (auto cached = c.distance_info()) r = *cached;
  if (c.defining_set()) {
    unsigned b = bch_bound(*c.defining_set());
    if (b > r.value) {
      r.value = b;
      r.method = DistanceMethod::bch_bound;
    }
  }
  r.exactness = Exactness::lower_bound;
  return r;
}

}  // namespace

unsigned naive_min_distance(const LinearCode& c) {
  const Field& f = c.field();
  const std::size_t k = c.dimension(), n = c.length();
  if (k == 0) throw PreconditionError("the zero code has no minimum distance");
  const std::uint64_t total = saturating_pow(f.order(), k);
  unsigned best = std::numeric_limits<unsigned>::max();
  std::vector<Elem> msg(k);
  for (std::uint64_t m = 1; m < total; ++m) {
    std::uint64_t x = m;
    for (std::size_t i = 0; i < k; ++i, x /= f.order()) msg[i] = static_cast<Elem>(x % f.order());
    unsigned w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Elem s = 0;
      for (std::size_t i = 0; i < k; ++i) s = f.add(s, f.mul(msg[i], c.generator()(i, j)));
      w += s != 0;
    }
    best = std::min(best, w);
  }
  return best;
}

DistanceResult min_distance(const LinearCode& c, const SearchConfig& cfg) {
  const std::size_t k = c.dimension(), n = c.length();
  if (k == 0) throw PreconditionError("the zero code has no minimum distance");
  if (auto cached = c.distance_info(); cached && cached->is_exact()) return *cached;

  DistanceResult lower = structural_lower_bound(c);
  const unsigned singleton = static_cast<unsigned>(n - k + 1);

  // A lower bound meeting Singleton pins the distance; RREF row 0 has weight
  // at most n-k+1, so it is a witness.
  auto mds_exact = [&](DistanceMethod method) {
    DistanceResult r;
    r.value = singleton;
    r.exactness = Exactness::exact;
    r.method = method;
    std::vector<Elem> w(c.generator().row(0).begin(), c.generator().row(0).end());
    r.witness = w;
    r.declared = lower.declared;
    return r;
  };
  if (lower.value >= singleton) {
    auto r = mds_exact(lower.method);
    c.record_distance(r);
    return r;
  }

  const std::uint64_t space = saturating_pow(c.field().order(), k);
  if (space <= cfg.cap) {
    Enumerator en(c.field_ptr(), rows_of(c.generator()), k);
    Hit h = en.run(lower.value, thread_count(cfg));
    DistanceResult r;
    r.value = h.weight;
    r.exactness = Exactness::exact;
    r.method = DistanceMethod::enumeration;
    r.witness = std::move(h.word);
    r.declared = lower.declared;
    c.record_distance(r);
    return r;
  }

  try {
    if (is_mds(c, cfg)) {
      auto r = mds_exact(DistanceMethod::mds_rank);
      c.record_distance(r);
      return r;
    }
  } catch (const CapExceeded&) {
  }

  auto s = sample_low_weight(c.generator(), cfg, [](std::span<const Elem>) { return true; });
  DistanceResult r = lower;
  if (s.weight < std::numeric_limits<unsigned>::max() && (!r.upper || s.weight < *r.upper)) {
    r.upper = s.weight;
    r.witness = s.word;
  }
  if (r.upper && *r.upper == r.value) r.exactness = Exactness::exact;
  c.record_distance(r);
  return c.distance_info().value_or(r);
}

DistanceResult relative_min_weight(const LinearCode& c2, const LinearCode& c1, const SearchConfig& cfg) {
  require_compatible(c2, c1);
  if (!contains_code(c2, c1)) throw PreconditionError("relative weight needs C1 contained in C2");
  if (c1.dimension() == c2.dimension()) throw PreconditionError("C2 \\ C1 is empty: the codes are equal");
  if (c1.dimension() == 0) return min_distance(c2, cfg);

  DistanceResult base = structural_lower_bound(c2);
  if (auto d2 = c2.distance_info(); d2 && d2->is_exact() && !c1.contains_word(*d2->witness)) return *d2;

  const std::uint64_t space = saturating_pow(c2.field().order(), c2.dimension());
  if (space <= cfg.cap) {
    // Complement rows first so leading coefficients index C2 / C1.
    Matrix basis = c1.generator();
    std::vector<std::vector<Elem>> complement;
    for (std::size_t r = 0; r < c2.dimension(); ++r) {
      Matrix trial = basis;
      trial.append_row(c2.generator().row(r));
      if (rank(trial) > basis.rows()) {
        basis = std::move(trial);
        complement.emplace_back(c2.generator().row(r).begin(), c2.generator().row(r).end());
      }
    }
    std::vector<std::vector<Elem>> rows = complement;
    for (auto& r : rows_of(c1.generator())) rows.push_back(std::move(r));
    Enumerator en(c2.field_ptr(), std::move(rows), complement.size());
    Hit h = en.run(base.value, thread_count(cfg));
    DistanceResult r;
    r.value = h.weight;
    r.exactness = Exactness::exact;
    r.method = DistanceMethod::enumeration;
    r.witness = std::move(h.word);
    return r;
  }

  // Beyond the cap: wt(C2 \ C1) >= d(C2), and sampling gives an upper bound.
  DistanceResult d2 = min_distance(c2, cfg);
  if (d2.is_exact() && d2.witness && !c1.contains_word(*d2.witness)) return d2;
  DistanceResult r;
  r.value = d2.value;
  r.exactness = Exactness::lower_bound;
  r.method = d2.method;
  auto s = sample_low_weight(c2.generator(), cfg, [&](std::span<const Elem> w) { return !c1.contains_word(w); });
  if (s.weight < std::numeric_limits<unsigned>::max()) {
    r.upper = s.weight;
    r.witness = s.word;
    if (s.weight == r.value) r.exactness = Exactness::exact;
  }
  return r;
}

bool is_mds(const LinearCode& c, const SearchConfig& cfg) {
  const std::size_t n = c.length(), k = c.dimension();
  if (k == 0 || k == n) return true;
  if (auto d = c.distance_info(); d && d->is_exact()) return d->value == n - k + 1;
  if (structural_lower_bound(c).value >= n - k + 1) return true;
  return is_mds_by_rank(c, cfg);
}

bool is_mds_by_rank(const LinearCode& c, const SearchConfig& cfg) {
  const std::size_t n = c.length(), k = c.dimension();
  if (k == 0 || k == n) return true;
  // C(n, k) with saturation.
  std::uint64_t count = 1;
  const std::size_t kk = std::min(k, n - k);
  for (std::size_t i = 0; i < kk; ++i) {
    count = count * (n - i) / (i + 1);
    if (count > cfg.subset_cap) {
      throw CapExceeded("MDS check needs more than " + std::to_string(cfg.subset_cap) + " column subsets");
    }
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (rank(c.generator().select_columns(idx)) < k) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Elem> psi(const ExtensionBasis& b, Elem x) {
  auto d = find_dual_basis(b);
  std::vector<Elem> out;
  for (Elem beta : d.elements) out.push_back(b.tower->trace(b.tower->ext()->mul(x, beta)));
  return out;
}

namespace {

void require_basis_field(const LinearCode& c, const ExtensionBasis& b) {
  if (!c.field().same_as(*b.tower->ext())) {
    throw PreconditionError("basis is for GF(" + std::to_string(b.tower->ext()->order()) + "), code is over GF(" +
                            std::to_string(c.field().order()) + ")");
  }
  if (!is_basis(b)) throw PreconditionError("expansion elements are not a basis");
}

// Rows Phi_B(a_t * g_r) over the subfield; optionally with a parity symbol
// after every block.
Matrix expanded_rows(const LinearCode& c, const ExtensionBasis& b, bool parity) {
  const Field& big = c.field();
  const Field& small = *b.tower->sub();
  const std::size_t m = b.size(), n = c.length(), block = m + (parity ? 1 : 0);
  auto dualb = find_dual_basis(b);
  Matrix out(b.tower->sub(), 0, n * block);
  std::vector<Elem> row(n * block);
  for (std::size_t r = 0; r < c.dimension(); ++r) {
    for (Elem a : b.elements) {
      for (std::size_t i = 0; i < n; ++i) {
        Elem x = big.mul(a, c.generator()(r, i));
        Elem s = 0;
        for (std::size_t j = 0; j < m; ++j) {
          Elem coord = b.tower->trace(big.mul(x, dualb.elements[j]));
          row[i * block + j] = coord;
          s = small.add(s, coord);
        }
        if (parity) row[i * block + m] = small.neg(s);
      }
      out.append_row(row);
    }
  }
  return out;
}

}  // namespace

LinearCode expand_basis(const LinearCode& c, const ExtensionBasis& b) {
  require_basis_field(c, b);
  auto out = LinearCode::from_matrix(expanded_rows(c, b, false));
  out.set_provenance("Phi_B(" + c.provenance() + ")");
  if (auto d = c.distance_info()) {
    DistanceResult r;
    r.value = d->value;
    r.exactness = Exactness::lower_bound;
    r.method = d->method;
    if (out.dimension()) out.record_distance(r);
  }
  return out;
}

LinearCode expand_with_parity(const LinearCode& c, const ExtensionBasis& b, const SearchConfig& cfg) {
  require_basis_field(c, b);
  if (!is_mds(c, cfg)) throw PreconditionError("expand_with_parity needs an MDS code");
  auto out = LinearCode::from_matrix(expanded_rows(c, b, true));
  out.set_provenance("Phi_B+parity(" + c.provenance() + ")");
  if (out.dimension() == 0) return out;
  // Every nonzero block with its parity symbol has weight >= 2, and an MDS
  // codeword has n-k+1 nonzero blocks.
  const unsigned bound = static_cast<unsigned>(2 * (c.length() - c.dimension() + 1));
  DistanceResult r;
  r.value = bound;
  r.exactness = Exactness::lower_bound;
  r.method = DistanceMethod::structural;
  out.record_distance(r);
  if (saturating_pow(out.field().order(), out.dimension()) <= cfg.cap) min_distance(out, cfg);
  return out;
}

namespace {

// Every row of c vanishes at alpha^e for e in t, so the BCH bound of t is a
// valid lower bound for c.
bool vanishes_on(const LinearCode& c, const DefiningSet& t) {
  if (c.length() != t.n || c.field().order() != t.q) return false;
  if (t.exponents.empty()) return true;
  auto ctx = root_context(c.field_ptr(), t.residue_modulus());
  const Field& big = ctx.splitting();
  for (std::size_t r = 0; r < c.dimension(); ++r) {
    std::vector<Elem> lifted;
    for (Elem x : c.generator().row(r)) lifted.push_back(ctx.tower->embed(x));
    Poly pr(ctx.tower->ext(), lifted);
    for (auto e : t.exponents) {
      if (pr.eval(big.pow(ctx.alpha, e)) != 0) return false;
    }
  }
  return true;
}

}  // namespace

nlohmann::json to_json(const LinearCode& c) {
  nlohmann::json j = {{"field", field_to_json(c.field())},
                      {"n", c.length()},
                      {"k", c.dimension()},
                      {"generator", c.generator().to_rows()},
                      {"provenance", c.provenance()}};
  if (auto d = c.distance_info()) j["distance"] = to_json(*d, d->is_exact());
  if (c.defining_set()) j["defining_set"] = to_json(*c.defining_set());
  return j;
}

LinearCode code_from_json(const nlohmann::json& j) {
  try {
    auto field = field_from_json(j.at("field"));
    const std::size_t n = j.at("n").get<std::size_t>();
    auto rows = j.at("generator").get<std::vector<std::vector<Elem>>>();
    auto c = LinearCode::from_generator(field, rows, n);
    if (j.contains("k") && j["k"].get<std::size_t>() != c.dimension()) {
      throw Error("record declares k=" + std::to_string(j["k"].get<std::size_t>()) + " but the generator has rank " +
                  std::to_string(c.dimension()));
    }
    if (j.contains("provenance")) c.set_provenance(j["provenance"].get<std::string>());
    if (j.contains("defining_set")) {
      auto t = defining_set_from_json(j["defining_set"]);
      if (!vanishes_on(c, t)) throw Error("generator rows do not vanish on the recorded defining set");
      c.set_defining_set(t);
    }
    if (j.contains("distance") && c.dimension() > 0) {
      // Imported claims stay declared; only the structural bound is certified.
      auto d = distance_from_json(j["distance"]);
      DistanceResult r = structural_lower_bound(c);
      r.declared = d.is_exact() ? d.value : d.declared.value_or(d.value);
      if (d.witness && c.contains_word(*d.witness)) {
        unsigned w = hamming_weight(*d.witness);
        if (w > 0 && w >= r.value) {
          r.upper = w;
          r.witness = d.witness;
          if (w == r.value) r.exactness = Exactness::exact;
        }
      }
      c.record_distance(r);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed code record: ") + e.what());
  }
}

}  // namespace qct

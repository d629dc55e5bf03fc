#include <gtest/gtest.h>

#include <random>

#include "qct/lincode.hpp"

using namespace qct;

namespace {

LinearCode hamming7() {
  return LinearCode::from_generator(build_field(2, 1), {{1, 0, 0, 0, 0, 1, 1},
                                                        {0, 1, 0, 0, 1, 0, 1},
                                                        {0, 0, 1, 0, 1, 1, 0},
                                                        {0, 0, 0, 1, 1, 1, 1}});
}

LinearCode repetition(std::size_t n, unsigned q = 2) {
  return LinearCode::from_generator(field_of_order(q), {std::vector<Elem>(n, 1)});
}

LinearCode even_weight7() {
  std::vector<std::vector<Elem>> rows;
  for (std::size_t i = 0; i < 6; ++i) {
    std::vector<Elem> r(7, 0);
    r[i] = r[6] = 1;
    rows.push_back(r);
  }
  return LinearCode::from_generator(build_field(2, 1), rows);
}

// Evaluation code of polynomials of degree < k at `points` powers of the generator.
LinearCode eval_code(const FieldPtr& f, std::size_t n, std::size_t k) {
  std::vector<std::vector<Elem>> rows;
  for (std::size_t d = 0; d < k; ++d) {
    std::vector<Elem> r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(f->pow(f->exp(i), d));
    rows.push_back(r);
  }
  return LinearCode::from_generator(f, rows);
}

LinearCode random_code(const FieldPtr& f, std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::vector<Elem>> rows(k, std::vector<Elem>(n));
  for (auto& r : rows)
    for (auto& x : r) x = static_cast<Elem>(rng() % f->order());
  return LinearCode::from_generator(f, rows);
}

// All codewords, by brute force over messages.
std::vector<std::vector<Elem>> all_words(const LinearCode& c) {
  std::vector<std::vector<Elem>> out;
  const auto q = c.field().order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < c.dimension(); ++i) total *= q;
  std::vector<Elem> msg(c.dimension());
  for (std::uint64_t m = 0; m < total; ++m) {
    std::uint64_t x = m;
    for (auto& v : msg) {
      v = static_cast<Elem>(x % q);
      x /= q;
    }
    out.push_back(c.encode(msg));
  }
  return out;
}

unsigned naive_relative(const LinearCode& c2, const LinearCode& c1) {
  unsigned best = ~0u;
  for (auto& w : all_words(c2)) {
    if (!c1.contains_word(w)) best = std::min(best, hamming_weight(w));
  }
  return best;
}

}  // namespace

TEST(LinearCode, FromGeneratorExamples) {
  auto f2 = build_field(2, 1);
  auto whole = LinearCode::from_matrix(Matrix::identity(f2, 5));
  EXPECT_EQ(whole.dimension(), 5u);
  EXPECT_EQ(min_distance(whole).value, 1u);
  auto rep = repetition(5);
  EXPECT_EQ(rep.dimension(), 1u);
  EXPECT_EQ(min_distance(rep).value, 5u);
  auto dup = LinearCode::from_generator(f2, {{1, 0, 1}, {1, 0, 1}});
  EXPECT_EQ(dup.dimension(), 1u);
  EXPECT_THROW(LinearCode::from_generator(f2, {}), Error);
  EXPECT_THROW(LinearCode::from_generator(f2, {{1, 0}, {1}}), Error);
}

TEST(LinearCode, CanonicalFormMakesEqualitySyntactic) {
  auto a = hamming7();
  auto rows = a.generator().to_rows();
  std::swap(rows[0], rows[3]);
  for (std::size_t i = 0; i < 7; ++i) rows[1][i] ^= rows[2][i];
  EXPECT_EQ(LinearCode::from_generator(build_field(2, 1), rows), a);
}

TEST(Dual, Examples) {
  auto f2 = build_field(2, 1);
  EXPECT_EQ(dual(LinearCode::whole_space(f2, 4)).dimension(), 0u);
  auto simplex = dual(hamming7());
  EXPECT_EQ(simplex.dimension(), 3u);
  auto d = min_distance(simplex);
  EXPECT_EQ(d.value, 4u);
  EXPECT_TRUE(d.is_exact());
  for (auto& w : all_words(simplex)) {
    unsigned wt = hamming_weight(w);
    EXPECT_TRUE(wt == 0 || wt == 4);
  }
  auto rs = eval_code(build_field(2, 2), 3, 2);
  auto rsd = dual(rs);
  EXPECT_EQ(rsd.dimension(), 1u);
  EXPECT_EQ(min_distance(rsd).value, 3u);
}

TEST(Dual, InvolutionAndOrthogonality) {
  std::mt19937_64 rng(7);
  for (unsigned q : {2u, 3u, 4u, 9u}) {
    auto f = field_of_order(q);
    for (int t = 0; t < 20; ++t) {
      auto c = random_code(f, 2 + rng() % 7, 1 + rng() % 4, rng);
      auto d = dual(c);
      EXPECT_EQ(c.dimension() + d.dimension(), c.length());
      EXPECT_EQ(dual(d), c);
      for (std::size_t i = 0; i < c.dimension(); ++i)
        for (std::size_t j = 0; j < d.dimension(); ++j) EXPECT_EQ(dot(*f, c.generator().row(i), d.generator().row(j)), 0u);
    }
  }
}

TEST(HermitianDual, Examples) {
  auto f4 = build_field(2, 2);
  EXPECT_EQ(hermitian_dual(LinearCode::zero(f4, 3)).dimension(), 3u);
  auto c = LinearCode::from_generator(f4, {{1, 1}});
  EXPECT_EQ(hermitian_dual(c), c);
  EXPECT_THROW(hermitian_dual(LinearCode::zero(build_field(2, 3), 2)), PreconditionError);
}

TEST(HermitianDual, InvolutionAndHermitianOrthogonality) {
  std::mt19937_64 rng(11);
  for (unsigned q : {2u, 3u}) {
    auto f = field_of_order(q * q);
    for (int t = 0; t < 20; ++t) {
      auto c = random_code(f, 2 + rng() % 6, 1 + rng() % 3, rng);
      auto h = hermitian_dual(c);
      EXPECT_EQ(c.dimension() + h.dimension(), c.length());
      EXPECT_EQ(hermitian_dual(h), c);
      for (std::size_t i = 0; i < c.dimension(); ++i) {
        for (std::size_t j = 0; j < h.dimension(); ++j) {
          Elem s = 0;
          for (std::size_t x = 0; x < c.length(); ++x)
            s = f->add(s, f->mul(c.generator()(i, x), conjugate(*f, h.generator()(j, x), q)));
          EXPECT_EQ(s, 0u);
        }
      }
    }
  }
}

TEST(MinDistance, Examples) {
  EXPECT_EQ(min_distance(repetition(5)).value, 5u);
  auto d = min_distance(hamming7());
  EXPECT_EQ(d.value, 3u);
  EXPECT_TRUE(d.is_exact());
  EXPECT_EQ(d.method, DistanceMethod::enumeration);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(hamming_weight(*d.witness), 3u);
  EXPECT_TRUE(hamming7().contains_word(*d.witness));
  EXPECT_THROW(min_distance(LinearCode::zero(build_field(2, 1), 3)), PreconditionError);
}

TEST(MinDistance, MatchesNaiveOracleForSmallCodes) {
  std::mt19937_64 rng(2024);
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    auto f = field_of_order(q);
    for (int t = 0; t < 12; ++t) {
      std::size_t n = 2 + rng() % 14;
      std::size_t kmax = 1;
      std::uint64_t s = q;
      while (kmax < n && s * q <= 4096) {
        s *= q;
        ++kmax;
      }
      auto c = random_code(f, n, 1 + rng() % kmax, rng);
      SearchConfig cfg;
      cfg.threads = 1 + t % 3;
      auto d = min_distance(c, cfg);
      ASSERT_TRUE(d.is_exact());
      EXPECT_EQ(d.value, naive_min_distance(c)) << "q=" << q << " n=" << n << " k=" << c.dimension();
      EXPECT_EQ(hamming_weight(*d.witness), d.value);
      EXPECT_TRUE(c.contains_word(*d.witness));
      EXPECT_LE(d.value, n - c.dimension() + 1);
    }
  }
}

TEST(MinDistance, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(5);
  auto f = field_of_order(4);
  auto c = random_code(f, 14, 7, rng);
  std::optional<DistanceResult> first;
  for (unsigned th : {1u, 2u, 4u}) {
    auto copy = LinearCode::from_matrix(c.generator());
    SearchConfig cfg;
    cfg.threads = th;
    auto d = min_distance(copy, cfg);
    if (!first) first = d;
    EXPECT_EQ(d.value, first->value);
    EXPECT_EQ(*d.witness, *first->witness);
  }
}

TEST(MinDistance, BeyondCapGivesBounds) {
  auto c = hamming7();
  SearchConfig cfg;
  cfg.cap = 4;
  auto d = min_distance(c, cfg);
  EXPECT_LE(d.value, 3u);
  ASSERT_TRUE(d.upper);
  EXPECT_GE(*d.upper, 3u);
  if (!d.is_exact()) { EXPECT_EQ(d.exactness, Exactness::lower_bound); }
}

TEST(MinDistance, MdsShortcutBeyondCap) {
  auto rs = eval_code(build_field(2, 4), 15, 9);
  SearchConfig cfg;
  cfg.cap = 16;
  auto d = min_distance(rs, cfg);
  EXPECT_TRUE(d.is_exact());
  EXPECT_EQ(d.value, 7u);
  EXPECT_EQ(d.method, DistanceMethod::mds_rank);
  EXPECT_EQ(hamming_weight(*d.witness), 7u);
}

TEST(RelativeWeight, Examples) {
  auto f2 = build_field(2, 1);
  EXPECT_EQ(relative_min_weight(hamming7(), LinearCode::zero(f2, 7)).value, 3u);
  auto r = relative_min_weight(hamming7(), repetition(7));
  EXPECT_EQ(r.value, 3u);
  EXPECT_TRUE(r.is_exact());
  auto simplex = dual(hamming7());
  EXPECT_EQ(relative_min_weight(even_weight7(), simplex).value, 2u);
  EXPECT_THROW(relative_min_weight(repetition(7), simplex), PreconditionError);
  EXPECT_THROW(relative_min_weight(hamming7(), hamming7()), PreconditionError);
}

TEST(RelativeWeight, MatchesNaiveOracle) {
  std::mt19937_64 rng(99);
  for (unsigned q : {2u, 3u, 4u}) {
    auto f = field_of_order(q);
    for (int t = 0; t < 15; ++t) {
      std::size_t n = 4 + rng() % 8;
      std::size_t k2 = 2 + rng() % (q == 2 ? 6 : 4);
      if (k2 > n) k2 = n;
      auto c2 = random_code(f, n, k2, rng);
      if (c2.dimension() < 2) continue;
      // C1: span of a random subset of C2's rows combined.
      std::size_t k1 = 1 + rng() % (c2.dimension() - 1);
      std::vector<std::vector<Elem>> rows;
      for (std::size_t i = 0; i < k1; ++i) {
        std::vector<Elem> msg(c2.dimension());
        for (auto& m : msg) m = static_cast<Elem>(rng() % q);
        rows.push_back(c2.encode(msg));
      }
      auto c1 = LinearCode::from_generator(f, rows);
      if (c1.dimension() == 0 || c1.dimension() == c2.dimension()) continue;
      auto r = relative_min_weight(c2, c1);
      ASSERT_TRUE(r.is_exact());
      EXPECT_EQ(r.value, naive_relative(c2, c1));
      EXPECT_FALSE(c1.contains_word(*r.witness));
      EXPECT_TRUE(c2.contains_word(*r.witness));
    }
  }
}

TEST(Containment, Examples) {
  EXPECT_TRUE(contains_code(hamming7(), hamming7()));
  EXPECT_TRUE(contains_code(hamming7(), repetition(7)));
  EXPECT_FALSE(contains_code(repetition(7), dual(hamming7())));
  EXPECT_THROW(contains_code(hamming7(), repetition(5)), PreconditionError);
  EXPECT_TRUE(contains_allones(repetition(6, 4)));
  EXPECT_FALSE(contains_allones(even_weight7()));
}

TEST(Puncture, Examples) {
  auto p = puncture(repetition(5), 4);
  EXPECT_EQ(p.length(), 4u);
  EXPECT_EQ(p.dimension(), 1u);
  EXPECT_EQ(min_distance(p).value, 4u);
  auto ph = puncture(hamming7(), 6);
  EXPECT_EQ(ph.dimension(), 4u);
  EXPECT_EQ(min_distance(ph).value, 2u);
  EXPECT_THROW(puncture(hamming7(), 7), PreconditionError);
  // A weight-1 word at the punctured position drops the dimension.
  auto f2 = build_field(2, 1);
  auto c = LinearCode::from_generator(f2, {{1, 0, 0}, {0, 1, 1}});
  EXPECT_EQ(puncture(c, 0).dimension(), 1u);
}

TEST(ExtendParity, Examples) {
  auto e = extend_parity(hamming7());
  EXPECT_EQ(e.length(), 8u);
  EXPECT_EQ(e.dimension(), 4u);
  EXPECT_EQ(min_distance(e).value, 4u);
  auto rs = extend_parity(eval_code(build_field(2, 2), 3, 2));
  EXPECT_EQ(rs.length(), 4u);
  EXPECT_EQ(min_distance(rs).value, 3u);
  EXPECT_TRUE(is_mds(rs));
  auto f3 = build_field(3, 1);
  auto t = extend_parity(LinearCode::from_generator(f3, {{1, 1, 0}}));
  for (auto& w : all_words(t)) {
    Elem s = 0;
    for (Elem x : w) s = f3->add(s, x);
    EXPECT_EQ(s, 0u);
  }
}

TEST(DirectSum, Examples) {
  auto f4 = build_field(2, 2);
  auto a = eval_code(f4, 3, 2);
  auto b = extend_parity(a);
  min_distance(a);
  min_distance(b);
  auto s = direct_sum(a, b);
  EXPECT_EQ(s.length(), 7u);
  EXPECT_EQ(s.dimension(), 4u);
  auto cached = s.distance_info();
  ASSERT_TRUE(cached);
  EXPECT_TRUE(cached->is_exact());
  EXPECT_EQ(cached->value, 2u);
  EXPECT_EQ(naive_min_distance(s), 2u);
  auto z = direct_sum(a, LinearCode::zero(f4, 0));
  EXPECT_EQ(z, a);
}

TEST(DirectSum, DualOfSumIsSumOfDuals) {
  std::mt19937_64 rng(3);
  for (unsigned q : {2u, 3u, 4u}) {
    auto f = field_of_order(q);
    for (int t = 0; t < 15; ++t) {
      auto a = random_code(f, 2 + rng() % 5, 1 + rng() % 2, rng);
      auto b = random_code(f, 2 + rng() % 5, 1 + rng() % 2, rng);
      EXPECT_EQ(dual(direct_sum(a, b)), direct_sum(dual(a), dual(b)));
    }
  }
}

TEST(Mds, Examples) {
  EXPECT_TRUE(is_mds(eval_code(build_field(2, 2), 3, 2)));
  EXPECT_FALSE(is_mds(hamming7()));
  SearchConfig cfg;
  cfg.subset_cap = 3;
  EXPECT_THROW(is_mds(hamming7(), cfg), CapExceeded);
}

TEST(Expand, TrivialBasisIsIdentity) {
  auto t = embedding(2, 2, 2);
  auto c = eval_code(build_field(2, 2), 3, 2);
  ExtensionBasis b{t, {1}};
  EXPECT_EQ(expand_basis(c, b), c);
}

TEST(Expand, RsOverGf16ToGf4) {
  auto f16 = build_field(2, 4);
  auto c = eval_code(f16, 3, 2);
  auto b = polynomial_basis(embedding(2, 2, 4));
  auto e = expand_basis(c, b);
  EXPECT_EQ(e.length(), 6u);
  EXPECT_EQ(e.dimension(), 4u);
  EXPECT_GE(min_distance(e).value, 2u);
}

TEST(Expand, PsiIsCoordinateMap) {
  auto t = embedding(3, 1, 2);
  auto b = polynomial_basis(t);
  const Field& f = *t->ext();
  for (Elem x = 0; x < f.order(); ++x) {
    auto a = psi(b, x);
    Elem back = 0;
    for (std::size_t j = 0; j < a.size(); ++j) back = f.add(back, f.mul(t->embed(a[j]), b.elements[j]));
    EXPECT_EQ(back, x);
  }
}

TEST(Expand, PreservesNesting) {
  std::mt19937_64 rng(17);
  auto f = build_field(2, 2);
  auto b = polynomial_basis(embedding(2, 1, 2));
  for (int t = 0; t < 20; ++t) {
    auto big = random_code(f, 6, 3, rng);
    auto small = LinearCode::from_matrix(big.generator().select_rows(0, 1));
    EXPECT_TRUE(contains_code(expand_basis(big, b), expand_basis(small, b)));
  }
}

TEST(Expand, DualityEuclidean) {
  // Phi_{B^perp}(C^perp) = Phi_B(C)^perp.
  std::mt19937_64 rng(1234);
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}}) {
    auto t = embedding(p, e, 2 * e);
    auto f = t->ext();
    for (int trial = 0; trial < 50; ++trial) {
      ExtensionBasis b{t, {}};
      do {
        b.elements = {static_cast<Elem>(rng() % f->order()), static_cast<Elem>(rng() % f->order())};
      } while (!is_basis(b));
      auto c = random_code(f, 2 + rng() % 7, 1 + rng() % 3, rng);
      auto lhs = expand_basis(dual(c), find_dual_basis(b));
      auto rhs = dual(expand_basis(c, b));
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(Expand, DualityHermitianViaHermitianDualBasis) {
  // Phi_{B^h}(C^{perp h}) = Phi_B(C)^perp with B^h the Hermitian dual basis.
  std::mt19937_64 rng(4321);
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}}) {
    auto t = embedding(p, e, 2 * e);
    auto f = t->ext();
    for (int trial = 0; trial < 50; ++trial) {
      ExtensionBasis b{t, {}};
      do {
        b.elements = {static_cast<Elem>(rng() % f->order()), static_cast<Elem>(rng() % f->order())};
      } while (!is_basis(b));
      auto c = random_code(f, 2 + rng() % 7, 1 + rng() % 3, rng);
      auto lhs = expand_basis(hermitian_dual(c), find_hermitian_dual_basis(b));
      auto rhs = dual(expand_basis(c, b));
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(ExpandWithParity, Examples) {
  auto f4 = build_field(2, 2);
  auto c = eval_code(f4, 3, 2);
  auto b = polynomial_basis(embedding(2, 1, 2));
  auto e = expand_with_parity(c, b);
  EXPECT_EQ(e.length(), 9u);
  EXPECT_EQ(e.dimension(), 4u);
  auto d = e.distance_info();
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->is_exact());
  EXPECT_EQ(d->value, 4u);
  EXPECT_EQ(naive_min_distance(e), 4u);

  auto full = LinearCode::whole_space(f4, 3);
  auto fe = expand_with_parity(full, b);
  EXPECT_EQ(fe.distance_info()->value, 2u);
  EXPECT_THROW(expand_with_parity(LinearCode::from_generator(f4, {{1, 1, 0}, {0, 0, 1}}), b), PreconditionError);
}

TEST(ExpandWithParity, Rs15Over16) {
  auto f16 = build_field(2, 4);
  auto c = eval_code(f16, 15, 13);
  auto b = polynomial_basis(embedding(2, 2, 4));
  auto e = expand_with_parity(c, b);
  EXPECT_EQ(e.length(), 45u);
  EXPECT_EQ(e.dimension(), 26u);
  EXPECT_EQ(e.distance_info()->value, 6u);
  EXPECT_EQ(e.distance_info()->method, DistanceMethod::structural);
}

TEST(CodeJson, RoundTrip) {
  auto c = hamming7();
  c.set_provenance("hamming");
  min_distance(c);
  auto j = to_json(c);
  auto back = code_from_json(j);
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.provenance(), "hamming");
  auto d = back.distance_info();
  ASSERT_TRUE(d);
  EXPECT_EQ(d->declared.value(), 3u);
  auto bad = j;
  bad["field"]["p"] = 3;
  EXPECT_THROW(code_from_json(bad), Error);
  auto wrongk = j;
  wrongk["k"] = 3;
  EXPECT_THROW(code_from_json(wrongk), Error);
}

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "qct/quantum.hpp"

using namespace qct;

namespace {

// Smallest weight of a word of `big` outside `small`, by listing every message.
unsigned naive_relative(const LinearCode& big, const LinearCode& small) {
  const auto& f = big.field();
  const std::size_t k = big.dimension();
  std::vector<Elem> msg(k, 0);
  unsigned best = 0;
  while (true) {
    std::size_t i = 0;
    while (i < k && msg[i] == f.order() - 1) msg[i++] = 0;
    if (i == k) break;
    ++msg[i];
    auto w = big.encode(msg);
    if (small.contains_word(w)) continue;
    unsigned wt = static_cast<unsigned>(hamming_weight(w));
    if (best == 0 || wt < best) best = wt;
  }
  return best;
}

LinearCode hamming7() {
  return LinearCode::from_generator(build_field(2, 1), {{1, 0, 0, 0, 1, 1, 0},
                                                        {0, 1, 0, 0, 1, 0, 1},
                                                        {0, 0, 1, 0, 0, 1, 1},
                                                        {0, 0, 0, 1, 1, 1, 1}});
}

LinearCode repetition(std::size_t n) {
  return LinearCode::from_generator(build_field(2, 1), {std::vector<Elem>(n, 1)});
}

bool check_passed(const AqcResult& r, const std::string& name) {
  auto c = r.find(name);
  return c && c->passed;
}

}  // namespace

TEST(Css, MatchesNaiveRelativeWeights) {
  std::mt19937_64 rng(7);
  int built = 0;
  for (std::uint64_t q : {2, 3, 4}) {
    auto f = field_of_order(q);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 4 + rng() % 4;
      const std::size_t k2 = 2 + rng() % (n - 2);
      std::vector<std::vector<Elem>> rows(k2, std::vector<Elem>(n));
      for (auto& r : rows) {
        for (auto& x : r) x = static_cast<Elem>(rng() % q);
      }
      auto c2 = LinearCode::from_generator(f, rows);
      if (c2.dimension() < 2) continue;
      std::vector<std::vector<Elem>> sub;
      const std::size_t k1 = 1 + rng() % (c2.dimension() - 1);
      for (std::size_t i = 0; i < k1; ++i) {
        auto row = c2.generator().row(i);
        sub.emplace_back(row.begin(), row.end());
      }
      auto c1 = LinearCode::from_generator(f, sub);
      auto r = css_standard(c1, c2);
      const unsigned a = naive_relative(c2, c1), b = naive_relative(dual(c1), dual(c2));
      EXPECT_EQ(r.params.k, c2.dimension() - c1.dimension());
      EXPECT_EQ(r.params.dz, std::max(a, b));
      EXPECT_EQ(r.params.dx, std::min(a, b));
      EXPECT_EQ(r.params.swapped, a < b);
      EXPECT_TRUE(r.params.dz_exact && r.params.dx_exact);
      EXPECT_GE(r.params.dz, r.params.dx);
      ++built;
    }
  }
  EXPECT_GT(built, 40);
}

TEST(Css, HammingOverRepetition) {
  auto r = css_standard(repetition(7), hamming7());
  EXPECT_EQ(r.params.format(), "[[7,3,{3,2}]]_2");
  EXPECT_EQ(r.params.purity, Purity::pure);
  EXPECT_TRUE(r.ok());
}

TEST(Css, SelfOrthogonalPairIsSymmetric) {
  auto h = hamming7();
  auto r = css_standard(dual(h), h);
  EXPECT_EQ(r.params.format(), "[[7,1,{3,3}]]_2");
  EXPECT_EQ(r.params.dz, r.params.dx);
}

TEST(Css, RejectsBadPairs) {
  auto h = hamming7();
  EXPECT_THROW(css_standard(h, repetition(7)), PreconditionError);
  EXPECT_THROW(css_standard(h, h), PreconditionError);
}

TEST(CssHermitian, NegacyclicExamples) {
  auto c4 = negacyclic_cs(9, 8, 4);
  auto r = css_hermitian(c4.code, c4.code);
  EXPECT_EQ(r.params.format(), "[[8,4,{3,3}]]_9");
  EXPECT_TRUE(r.ok());

  auto c2 = negacyclic_cs(9, 8, 2);
  EXPECT_EQ(css_hermitian(c2.code, c2.code).params.format(), "[[8,6,{2,2}]]_9");

  auto c6 = negacyclic_cs(9, 8, 6);
  EXPECT_THROW(css_hermitian(c6.code, c6.code), PreconditionError);
}

TEST(Allone, BchExamples) {
  auto a = allone_aqc(bch_narrow_sense(4, 15, 3));
  EXPECT_EQ(a.params.format(), "[[15,10,{3,2}]]_4");
  EXPECT_EQ(a.params.purity, Purity::pure);
  auto b = allone_aqc(bch_narrow_sense(4, 15, 11));
  EXPECT_EQ(b.params.format(), "[[15,2,{11,2}]]_4");
  EXPECT_THROW(allone_aqc(rs_code(4, 1).set_provenance("x")), PreconditionError);
}

TEST(ThBest, BchPunctured) {
  auto [whole, punct] = th_best_bch(4, 15, 7);
  EXPECT_EQ(whole.params.format(), "[[15,5,{7,2}]]_4");
  EXPECT_EQ(punct.params.format(), "[[14,5,{6,2}]]_4");
  EXPECT_TRUE(punct.params.dz_exact);
}

TEST(ThBest, SelfDual) {
  auto ext = extend_parity(hamming7());
  auto r = th_best_self_dual(ext);
  EXPECT_EQ(r.params.format(), "[[8,3,{4,2}]]_2");
  EXPECT_THROW(th_best_self_dual(hamming7()), PreconditionError);
}

TEST(ThBest, Simplex) {
  auto a = th_best_simplex(3);
  EXPECT_EQ(a.params.format(), "[[7,3,{3,2}]]_2");
  EXPECT_TRUE(a.params.dz_exact && a.params.dx_exact);
  EXPECT_TRUE(a.ok());
  auto b = th_best_simplex(4);
  EXPECT_EQ(b.params.format(), "[[15,4,{7,2}]]_2");
  EXPECT_TRUE(b.ok());
}

TEST(Bch1, TableThreeDimensions) {
  const std::vector<std::pair<unsigned, std::size_t>> rows = {{15, 803}, {11, 823}, {7, 843}, {3, 863}};
  for (auto [d1, k] : rows) {
    auto r = lemma_bch1(10, d1, 31, {}, 0);
    EXPECT_EQ(r.params.n, 1023u);
    EXPECT_EQ(r.params.k, k);
    EXPECT_EQ(r.params.dz, 31u);
    EXPECT_EQ(r.params.dx, d1);
    EXPECT_FALSE(r.params.dz_exact);
    EXPECT_TRUE(r.ok());
  }
}

TEST(Bch1, DeskScale) {
  auto r = lemma_bch1(6, 3, 7);
  EXPECT_EQ(r.params.format(), "[[63,39,{7,3}]]_2");
  EXPECT_TRUE(r.params.dz_exact && r.params.dx_exact);
  EXPECT_TRUE(check_passed(r, "B(delta2)^perp in B(delta1) (matrix)"));
  EXPECT_TRUE(check_passed(r, "k by rank equals formula"));
  EXPECT_TRUE(check_passed(r, "k from cosets equals formula"));
  EXPECT_TRUE(r.ok());
}

TEST(Bch1, Preconditions) {
  EXPECT_THROW(lemma_bch1(6, 4, 7), PreconditionError);
  EXPECT_THROW(lemma_bch1(6, 9, 7), PreconditionError);
  EXPECT_THROW(lemma_bch1(6, 3, 9), PreconditionError);
}

TEST(Charpin, MFive) {
  auto r = charpin_family(5, 2);
  EXPECT_EQ(r.first.params.format(), "[[31,11,{5,5}]]_2");
  EXPECT_TRUE(r.first.params.dx_exact);
  EXPECT_TRUE(r.first.ok());
  EXPECT_FALSE(r.second);
  EXPECT_FALSE(r.second_rejected.empty());
}

TEST(Charpin, MSevenSecondFamilyNotNested) {
  auto r = charpin_family(7, 3);
  EXPECT_EQ(r.first.params.n, 127u);
  EXPECT_EQ(r.first.params.k, 85u);
  EXPECT_TRUE(r.first.ok());
  ASSERT_TRUE(r.second);
  EXPECT_FALSE(check_passed(*r.second, "B(delta) in B_i (defining sets)"));
  EXPECT_FALSE(r.second->ok());
}

TEST(RsDirectSum, Examples) {
  auto r = rs_direct_sum_aqc(16, 9, 2);
  EXPECT_EQ(r.params.format(), "[[31,14,{7,3}]]_16");
  EXPECT_TRUE(r.params.dz_exact && r.params.dx_exact);
  EXPECT_TRUE(check_passed(r, "C_k2 + ext in C_k1 + ext"));
  EXPECT_TRUE(check_passed(r, "dual of sum is sum of duals (k1)"));
  EXPECT_TRUE(check_passed(r, "dual of sum is sum of duals (k2)"));
  EXPECT_TRUE(r.ok());

  auto small = rs_direct_sum_aqc(4, 2, 1);
  EXPECT_EQ(small.params.format(), "[[7,2,{2,2}]]_4");
  auto swapped = rs_direct_sum_aqc(4, 3, 1);
  EXPECT_EQ(swapped.params.format(), "[[7,4,{2,1}]]_4");
  EXPECT_TRUE(swapped.params.swapped);
}

// The C2 \ C1 side of the expansion meets its formula; the dual side does
// not, and the construction reports the lighter word it finds.
TEST(Concat, DeskScaleConstruction) {
  struct Case {
    std::uint64_t q;
    unsigned m;
    std::size_t k1, k2;
    unsigned dz, dx;
  };
  for (auto c : {Case{2, 2, 3, 1, 2, 2}, Case{2, 2, 2, 1, 4, 2}, Case{2, 3, 5, 2, 6, 4}}) {
    auto r = concat_expand_aqc(c.q, c.m, c.k1, c.k2);
    EXPECT_EQ(r.params.k, c.m * (c.k1 - c.k2));
    EXPECT_EQ(r.params.dz, c.dz) << c.k1 << " " << c.k2;
    EXPECT_EQ(r.params.dx, c.dx);
    EXPECT_TRUE(check_passed(r, "expansions nested"));
    EXPECT_TRUE(check_passed(r, "formula first matches construction"));
    EXPECT_FALSE(check_passed(r, "formula second matches construction"));
  }
}

// Independent of the basis: every GF(2)-basis of GF(4) leaves a dual-side
// word lighter than 2(k2+1).
TEST(Concat, DualSideBelowFormulaForEveryBasis) {
  auto tower = embedding(2, 1, 2);
  auto a1 = rs_code(4, 2), a2 = rs_code(4, 1);
  int bases = 0;
  for (Elem x = 1; x < 4; ++x) {
    for (Elem y = 1; y < 4; ++y) {
      ExtensionBasis b{tower, {x, y}};
      if (!is_basis(b)) continue;
      ++bases;
      auto x1 = expand_with_parity(a1, b), x2 = expand_with_parity(a2, b);
      ASSERT_TRUE(contains_code(x1, x2));
      EXPECT_EQ(naive_relative(x1, x2), 2u * (4 - 2));
      EXPECT_LT(naive_relative(dual(x2), dual(x1)), 2u * (1 + 1));
    }
  }
  EXPECT_EQ(bases, 6);
}

TEST(Concat, PaperScaleRowSamplesLightDualWord) {
  auto r = concat_expand_aqc(4, 2, 13, 1);
  EXPECT_EQ(r.params.n, 45u);
  EXPECT_EQ(r.params.k, 24u);
  EXPECT_TRUE(check_passed(r, "expansions nested"));
  EXPECT_TRUE(check_passed(r, "k by rank equals m(k1-k2)"));
  EXPECT_FALSE(check_passed(r, "no sampled second word below formula"));
}

TEST(Concat, Preconditions) {
  EXPECT_THROW(concat_expand_aqc(3, 2, 5, 1), PreconditionError);
  EXPECT_THROW(concat_expand_aqc(4, 2, 1, 1), PreconditionError);
}

TEST(QuantumConcat, Params) {
  auto a = quantum_concat_params(4, 2, 13, 1, 7);
  EXPECT_EQ(a.n, 630u);
  EXPECT_EQ(a.k, 24u);
  EXPECT_EQ(a.dz, 28u);
  EXPECT_FALSE(a.dz_exact);
  EXPECT_EQ(quantum_concat_params(4, 2, 13, 1, 1).dz, 4u);
  EXPECT_THROW(quantum_concat_params(4, 2, 13, 1, 14), PreconditionError);
}

TEST(NegacyclicExpand, HypothesesReported) {
  auto r = negacyclic_expand_aqc(9, 8, 4, 2);
  EXPECT_EQ(r.params.n, 24u);
  EXPECT_EQ(r.params.k, 8u);
  EXPECT_TRUE(check_passed(r, "q = p^2 with p an odd prime"));
  EXPECT_FALSE(check_passed(r, "q = p^2 even, or q an odd prime with m odd"));
  EXPECT_FALSE(check_passed(r, "self-dual basis of GF(q^2)/GF(q) found"));
  EXPECT_TRUE(check_passed(r, "C_s is MDS"));
  EXPECT_TRUE(check_passed(r, "expanded C_s^{perp h} in expanded C_s"));

  auto bad = negacyclic_expand_aqc(9, 8, 6, 2);
  EXPECT_FALSE(check_passed(bad, "C_s^{perp h} in C_s (matrix)"));
  EXPECT_FALSE(check_passed(bad, "C_s^{perp h} in C_s (defining sets)"));

  auto wrong_m = negacyclic_expand_aqc(9, 8, 4, 3);
  EXPECT_FALSE(check_passed(wrong_m, "m equals [GF(q^2):GF(q)] = 2"));
}

TEST(Bounds, Values) {
  EXPECT_EQ(bound(BoundKind::carlitz_uchiyama, 10, 31), 32);
  EXPECT_EQ(bound(BoundKind::singleton_wt, 10, 31), 151);
  EXPECT_EQ(bound(BoundKind::singleton, 9, 9), 1);
  EXPECT_EQ(bound(BoundKind::carlitz_uchiyama, 7, 9), 19);
}

TEST(FormulaSearch, ConcatAndRsSum) {
  auto a = search_concat_formula(4, 2, 24, 6, 4);
  EXPECT_NE(std::find(a.exact.begin(), a.exact.end(), std::pair<std::size_t, std::size_t>{13, 1}), a.exact.end());
  auto b = search_concat_formula(2, 5, 45, 34, 16);
  EXPECT_TRUE(b.exact.empty());
  EXPECT_TRUE(b.dominating.empty());
  auto c = search_concat_formula(2, 5, 100, 18, 6);
  EXPECT_TRUE(c.exact.empty());
  EXPECT_FALSE(c.dominating.empty());
  auto d = search_rs_sum_formula(16, 14, 7, 3);
  EXPECT_NE(std::find(d.exact.begin(), d.exact.end(), std::pair<std::size_t, std::size_t>{9, 2}), d.exact.end());
  EXPECT_TRUE(search_rs_sum_formula(16, 4, 14, 2).exact.empty());
}

TEST(Audit, TableOne) {
  auto r = audit_table("table1");
  EXPECT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.count(RowStatus::confirmed), 6u);
}

TEST(Audit, TableTwoDimensionOffByOne) {
  auto r = audit_table("table2");
  EXPECT_EQ(r.rows.size(), 36u);
  EXPECT_EQ(r.count(RowStatus::inconsistent), 36u);
  std::size_t undecremented = 0;
  for (const auto& row : r.rows) {
    if (row.summary.find("instead of dim(BCH)-1") != std::string::npos) ++undecremented;
  }
  EXPECT_EQ(undecremented, 26u);
}

TEST(Audit, TableThree) {
  auto r = audit_table("table3");
  EXPECT_EQ(r.count(RowStatus::formula_consistent), 4u);
}

TEST(Audit, TableFour) {
  auto r = audit_table("table4");
  ASSERT_EQ(r.rows.size(), 12u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(r.rows[i].status, RowStatus::formula_consistent) << r.rows[i].claim;
  for (const auto& row : r.rows) {
    if (row.claim == "[[186,100,{18,6}]]_2") {
      EXPECT_EQ(row.status, RowStatus::formula_consistent);
    }
    if (row.claim == "[[186,45,{34,16}]]_2") {
      EXPECT_EQ(row.status, RowStatus::inconsistent);
    }
  }
}

TEST(Audit, Examples) {
  auto r = audit_table("examples");
  ASSERT_GE(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].status, RowStatus::confirmed);
  EXPECT_EQ(r.rows[1].status, RowStatus::inconsistent);
  EXPECT_EQ(r.rows[2].status, RowStatus::inconsistent);
}

TEST(Audit, UnknownTarget) { EXPECT_THROW(audit_table("table9"), Error); }

TEST(Serialization, AqcJsonRoundTrip) {
  auto p = rs_direct_sum_aqc(4, 3, 1).params;
  auto back = aqc_from_json(to_json(p));
  EXPECT_EQ(back.format(), p.format());
  EXPECT_EQ(back.purity, p.purity);
  EXPECT_EQ(back.swapped, p.swapped);
  EXPECT_EQ(back.raw, p.raw);
  EXPECT_EQ(back.inputs, p.inputs);
  EXPECT_EQ(back.dz_exact, p.dz_exact);
}

TEST(Serialization, ReportCsv) {
  auto r = audit_table("table3");
  std::istringstream in(to_csv(r));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 5u);
  auto j = to_json(r);
  EXPECT_EQ(j["rows"].size(), 4u);
}

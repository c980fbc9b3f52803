#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "zerosum/bass.hpp"
#include "zerosum/error.hpp"
#include "zerosum/productone.hpp"

using namespace zerosum;

namespace {

GroupPtr G(long m, long n, long s) { return mk_metacyclic(MetacyclicParams::make(m, n, s)); }

GroupSequence P(const GroupPtr& g, const char* text) { return parse_sequence(g, text); }

}  // namespace

TEST(Verdict, Examples) {
  auto a = bass_check(MetacyclicParams::make(2, 3, 2));
  EXPECT_EQ(a.verdict, Verdict::kHolds);
  EXPECT_EQ(a.report.d_exact, 3);
  EXPECT_EQ(a.report.e_exact, 9);

  auto b = bass_check(MetacyclicParams::make(4, 3, 2));
  EXPECT_EQ(b.verdict, Verdict::kFails);
  EXPECT_EQ(b.report.d_lower, 6);

  auto c = bass_check(MetacyclicParams::make(1, 5, 1));
  EXPECT_EQ(c.verdict, Verdict::kHolds);
  EXPECT_EQ(c.report.d_exact, 4);
  EXPECT_EQ(c.report.e_exact, 9);

  auto d = bass_check(MetacyclicParams::make(4, 7, 6));
  EXPECT_EQ(d.verdict, Verdict::kFails);
  EXPECT_EQ(verdict_to_json(d)["verdict"], "fails");
}

TEST(Verdict, UnknownWithoutCertificates) {
  // order 16 > Gao budget and the lower bound is not beaten
  auto v = bass_check(MetacyclicParams::make(2, 8, 7));
  EXPECT_EQ(v.verdict, Verdict::kUnknownAtBudget);
}

TEST(Range, Parse) {
  auto r = parse_range("4..8");
  EXPECT_EQ(r.lo, 4);
  EXPECT_EQ(r.hi, 8);
  auto s = parse_range("7");
  EXPECT_EQ(s.lo, 7);
  EXPECT_EQ(s.hi, 7);
  EXPECT_THROW(parse_range("4..x"), Error);
  EXPECT_THROW(parse_range(""), Error);
}

TEST(Scan, Examples) {
  auto key = [](const ScanHit& h) { return std::make_tuple(h.params.m, h.params.n, h.params.s); };
  std::set<std::tuple<int, int, int>> hits;
  for (const auto& h : counterexample_scan(parse_range("4"), IntRange{3, 7})) hits.insert(key(h));
  EXPECT_TRUE(hits.count({4, 3, 2}));
  EXPECT_TRUE(hits.count({4, 7, 6}));

  auto five = counterexample_scan(parse_range("4"), parse_range("5"));
  ASSERT_EQ(five.size(), 1u);
  EXPECT_EQ(key(five[0]), std::make_tuple(4, 5, 4));
  EXPECT_EQ(five[0].d_exact, 10);

  EXPECT_TRUE(counterexample_scan(parse_range("2"), parse_range("1..40")).empty());
}

TEST(Scan, MatchesPredicate) {
  std::set<std::tuple<int, int, int>> expected;
  for (int m = 1; m <= 16; ++m)
    for (int n = 1; n <= 21; ++n)
      for (int s = 0; s < n; ++s) {
        if (m < 4 || m % 2 || n < 3 || n % 2 == 0 || std::gcd(s, n) != 1) continue;
        if (oracle::ord(s, n) != 2) continue;
        if (std::lcm(m / 2, n) < m + n - 1) continue;
        expected.insert({m, n, s});
      }
  std::set<std::tuple<int, int, int>> got;
  for (const auto& h : counterexample_scan({1, 16}, {1, 21})) {
    got.insert({h.params.m, h.params.n, h.params.s});
    EXPECT_EQ(h.cyclic_order, std::lcm(h.params.m / 2, h.params.n));
    if (h.coprime) EXPECT_EQ(h.d_exact, h.params.m * h.params.n / 2);
  }
  EXPECT_EQ(got, expected);
}

TEST(Scan, CoprimeHitsMatchSearch) {
  for (const auto& h : counterexample_scan({4, 24}, {3, 24})) {
    if (!h.coprime || h.params.order() > 24) continue;
    auto r = davenport_exact(mk_metacyclic(h.params));
    ASSERT_TRUE(r.exact());
    EXPECT_EQ(*r.value, h.params.m * h.params.n / 2);
  }
}

// The lower bound needs no normality: every product containing x has odd
// x-exponent.
TEST(Scan, WitnessFreeEvenWhenNotNormal) {
  for (const auto& h : counterexample_scan({4, 12}, {3, 21})) {
    if (h.params.order() > 400) continue;
    auto g = mk_metacyclic(h.params);
    GroupSequence w(g);
    w.add(g->element(2, 1), h.cyclic_order - 1);
    w.add(g->element(1, 0));
    EXPECT_TRUE(is_product_one_free(w)) << h.params.m << " " << h.params.n << " " << h.params.s;
  }
  auto g = G(12, 15, 11);
  std::vector<Element> z = {g->element(2, 1)};
  EXPECT_FALSE(subgroup_generated(g, z).normal);
}

TEST(Template, Examples) {
  for (int s : {1, 2}) {
    auto g = G(2, 3, s);
    auto t = template_match(P(g, "1^[2]·y^[5]·x"), 2, 3);
    ASSERT_TRUE(t.has_value());
    EXPECT_EQ(t->alpha, 0);
    EXPECT_EQ(t->beta, 1);
    EXPECT_EQ(t->ell, 1);
    EXPECT_EQ(t->w, 1);
    EXPECT_EQ(template_sequence(g, 2, 3, *t), P(g, "1^[2]·y^[5]·x"));
  }
  auto g = G(2, 3, 2);
  EXPECT_FALSE(template_match(P(g, "1^[5]·x·x*y·x*y^2"), 2, 3).has_value());
  EXPECT_FALSE(template_match(GroupSequence(g), 2, 3).has_value());
  EXPECT_THROW(template_match(P(G(4, 3, 2), "x"), 2, 3), Error);
}

TEST(Audit, DihedralFrozenFixture) {
  auto a = condition_b_audit(2, 3, -1);
  EXPECT_EQ(a.candidate_length, 8);
  EXPECT_EQ(a.gao_exact, 9);
  EXPECT_FALSE(a.conditional_on_a);
  EXPECT_EQ(a.matches.size(), 18u);
  ASSERT_EQ(a.exceptions.size(), 1u);
  auto g = G(2, 3, 2);
  EXPECT_EQ(a.exceptions[0], P(g, "1^[5]·x·x*y·x*y^2"));

  std::set<std::string> all;
  for (const auto& [s, t] : a.matches) {
    all.insert(format_sequence(s));
    EXPECT_EQ(template_sequence(g, 2, 3, t), s);
    EXPECT_FALSE(has_k_product_one(s, 6));
  }
  for (const auto& s : a.exceptions) all.insert(format_sequence(s));
  EXPECT_EQ(all, fixtures::kDihedralAudit);
}

TEST(Audit, FixtureMatchesOracle) {
  auto g = G(2, 3, 2);
  std::set<std::string> brute;
  for (const auto& c : oracle::k_free(oracle::metacyclic(2, 3, 2), 8)) {
    GroupSequence s(g);
    for (int v : c) s.add(Element{static_cast<std::uint32_t>(v)});
    brute.insert(format_sequence(s));
  }
  EXPECT_EQ(brute, fixtures::kDihedralAudit);
  EXPECT_TRUE(oracle::k_free(oracle::metacyclic(2, 3, 2), 9).empty());
}

TEST(Doubling, Params) {
  auto d = doubling_params(4, 10, 3);
  EXPECT_FALSE(d.shifted);
  EXPECT_EQ(d.params.s, 3);
  auto e = doubling_params(2, 10, 4);  // n0 = 5 odd, s even -> s + 5 = 9
  EXPECT_TRUE(e.shifted);
  EXPECT_EQ(e.original_s, 4);
  EXPECT_EQ(e.params.s, 9);
  EXPECT_THROW(doubling_params(3, 10, 1), Error);
}

TEST(Doubling, Subgroup) {
  auto ds = doubling_subgroup(G(4, 10, 3));
  EXPECT_EQ(ds.h.order(), 10u);
  EXPECT_TRUE(is_klein_four(*ds.quotient.group));
}

TEST(Pairs, Examples) {
  auto g = G(4, 10, 3);
  auto h = doubling_subgroup(g).h;

  auto inside = P(g, "1·y^2·y^4·x^2·x^2*y^2");
  auto p = pigeonhole_pairs(inside, h);
  EXPECT_EQ(p.pairs.size(), 2u);
  EXPECT_EQ(p.remainder.length(), 1u);

  auto distinct = P(g, "1·x·y·x*y");
  auto q = pigeonhole_pairs(distinct, h);
  EXPECT_TRUE(q.pairs.empty());
  EXPECT_EQ(q.remainder, distinct);
  EXPECT_TRUE(remainder_parity_check(q.remainder));
}

TEST(Pairs, RandomLength52) {
  std::mt19937 rng(31);
  auto g = G(4, 10, 3);
  auto ds = doubling_subgroup(g);
  std::uniform_int_distribution<std::uint32_t> el(0, 39);
  for (int i = 0; i < 100; ++i) {
    GroupSequence s(g);
    for (int j = 0; j < 52; ++j) s.add(Element{el(rng)});
    auto p = pigeonhole_pairs(s, ds.h);
    EXPECT_GE(p.pairs.size(), 24u);
    EXPECT_LE(p.remainder.length(), 4u);
    GroupSequence back = p.remainder;
    for (const auto& pr : p.pairs) {
      EXPECT_TRUE(ds.h.contains(pr.product));
      EXPECT_EQ(g->mul(pr.first, pr.second), pr.product);
      back.add(pr.first);
      back.add(pr.second);
    }
    EXPECT_EQ(back, s);
    std::set<std::uint32_t> classes;
    for (auto e : p.remainder.terms()) classes.insert(ds.quotient.project(e).code);
    EXPECT_EQ(classes.size(), p.remainder.length());
    if (p.remainder.length() == 4) EXPECT_TRUE(remainder_parity_check(p.remainder));
  }
}

TEST(Parity, Examples) {
  auto g = G(4, 10, 3);
  EXPECT_TRUE(remainder_parity_check(P(g, "1·x·y·x*y")));
  EXPECT_FALSE(remainder_parity_check(P(g, "x^[2]·y·x*y")));
  EXPECT_THROW(remainder_parity_check(P(g, "x·y")), Error);
}

TEST(KSolver, Examples) {
  EXPECT_EQ(k_solver(1, 2, 3, 4, 5, 10), 1);
  EXPECT_EQ((2 * 1 * 4 + 2 * 2 * 4 + 2 * 3) % 10, 0);
  for (long n0 : {3L, 5L, 7L})
    for (long r = 2; r <= 8; r += 2) EXPECT_EQ(k_solver(0, 1, r / 2, r, n0, 2 * n0), n0);
  EXPECT_THROW(k_solver(1, 2, 0, 3, 5, 10), Error);
  EXPECT_THROW(k_solver(0, 3, 0, 2, 3, 6), Error);
  EXPECT_THROW(k_solver(0, 1, 0, 2, 3, 8), Error);
}

TEST(KSolver, FullGrid) {
  for (long n0 = 1; n0 <= 9; ++n0) {
    const long n = 2 * n0;
    for (long a = 0; a < n0; ++a)
      for (long b = 0; b < n0; ++b) {
        if (std::gcd(a - b, n0) != 1) continue;
        for (long t = 0; t < n0; ++t)
          for (long r = 2; r <= 2 * n0 + 2; r += 2) {
            const long k = k_solver(a, b, t, r, n0, n);
            ASSERT_GE(k, 1);
            ASSERT_LE(k, n0);
            const long total = 2 * a * (n0 - k) + 2 * b * (n0 + k - r / 2) + 2 * t;
            ASSERT_EQ(((total % n) + n) % n, 0) << a << " " << b << " " << t << " " << r << " " << n0;
          }
      }
  }
}

TEST(CyclicHit, Examples) {
  auto g = G(4, 10, 3);
  std::vector<Element> ysq = {g->element(0, 2)};
  auto c = subgroup_generated(g, ysq);

  auto single = find_subsequence_into_cyclic(P(g, "y^4·x^2*y^2"), c);
  EXPECT_EQ(single.subsequence.length(), 1u);
  EXPECT_TRUE(c.contains(single.product));

  auto both = find_subsequence_into_cyclic(P(g, "x^2*y^2·x^2*y^4"), c);
  EXPECT_EQ(both.subsequence.length(), 2u);
  EXPECT_TRUE(c.contains(both.product));
  EXPECT_EQ(ordered_product(*g, both.ordering), both.product);

  EXPECT_THROW(find_subsequence_into_cyclic(P(g, "x^2"), c), Error);
}

TEST(CyclicHit, RandomPairsInH) {
  std::mt19937 rng(37);
  auto g = G(4, 10, 3);
  auto h = doubling_subgroup(g).h;
  std::vector<Element> ysq = {g->element(0, 2)};
  auto c = subgroup_generated(g, ysq);
  auto inside = h.elements();
  std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
  for (int i = 0; i < 1000; ++i) {
    GroupSequence r(g);
    r.add(inside[pick(rng)]);
    r.add(inside[pick(rng)]);
    auto hit = find_subsequence_into_cyclic(r, c);
    ASSERT_TRUE(hit.subsequence.divides(r));
    ASSERT_TRUE(c.contains(hit.product));
    ASSERT_EQ(ordered_product(*g, hit.ordering), hit.product);
  }
}

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "zerosum/bass.hpp"
#include "zerosum/constants.hpp"
#include "zerosum/productone.hpp"

using namespace zerosum;

namespace {

// time limits in seconds
constexpr double kLimit1 = 5.0;
constexpr double kLimit2 = 60.0;
constexpr double kLimit3 = 5.0;
constexpr double kLimit4 = 60.0;
constexpr double kLimit5 = 30.0;
constexpr double kLimit6 = 120.0;
constexpr double kLimit7 = 60.0;

constexpr std::uint32_t kSeed = 20240611;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

GroupPtr G(long m, long n, long s) { return mk_metacyclic(MetacyclicParams::make(m, n, s)); }

oracle::Group oracle_for(const GroupPtr& g) {
  if (const auto& p = g->metacyclic_params()) return oracle::metacyclic(p->m, p->n, p->s);
  std::vector<std::vector<int>> t(g->order(), std::vector<int>(g->order()));
  auto tab = g->table();
  for (std::size_t u = 0; u < g->order(); ++u)
    for (std::size_t v = 0; v < g->order(); ++v) t[u][v] = static_cast<int>(tab[u * g->order() + v]);
  return oracle::from_table(t, static_cast<int>(g->identity().code));
}

std::set<int> as_set(const ElementSet& s) {
  std::set<int> out;
  s.for_each([&](Element e) { out.insert(static_cast<int>(e.code)); });
  return out;
}

void criterion1(Outcome& o) {
  auto g = G(2, 3, 2);
  auto d = davenport_exact(g);
  auto e = gao_exact(g);
  o.require(d.exact() && d.value == 3, "d(G_{2,3,2}) = 3");
  o.require(e.exact() && e.value == 9, "E(G_{2,3,2}) = 9");
  o.detail << " d=" << d.value.value_or(-1) << " E=" << e.value.value_or(-1);
}

void criterion2(Outcome& o) {
  auto g = G(4, 3, -1);
  auto b = davenport_bounds(g);
  o.require(b.lower == 6 && b.upper == 6, "bounds meet at 6");
  bool cert = false;
  for (const auto& c : b.certificates)
    if (c.witness && *c.witness == parse_sequence(g, "(x^2*y)^[5]·x") && c.value == 6) cert = is_product_one_free(*c.witness);
  o.require(cert, "certificate z^[5]·x with z = x^2*y");
  auto d = davenport_exact(g);
  o.require(d.exact() && d.value == 6, "exhaustive d = 6");
  auto v = bass_check(*g->metacyclic_params());
  o.require(v.verdict == Verdict::kFails, "verdict fails");
  o.detail << " bounds=" << b.lower << "/" << b.upper << " exhaustive=" << d.value.value_or(-1) << " verdict="
           << to_string(v.verdict);
}

void criterion3(Outcome& o) {
  auto g = G(4, 7, -1);
  auto r = constant_report(g);
  o.require(r.d_lower == 14 && r.d_upper == 14 && r.d_exact == 14, "bounds meet at 14");
  o.require(r.d_method == "bounds-meet", "no exhaustive search");
  o.require(r.e_lower == 42 && r.e_lower > 37, "E_lower = 42 > 37");
  o.detail << " d=" << r.d_exact.value_or(-1) << " E_lower=" << r.e_lower;
}

void criterion4(Outcome& o) {
  for (int n = 2; n <= 6; ++n) {
    auto e = gao_exact(mk_cyclic(n));
    o.require(e.exact() && e.value == 2 * n - 1, "E(C_" + std::to_string(n) + ")");
  }
  for (int n = 2; n <= 10; ++n) {
    auto d = davenport_exact(mk_cyclic(n));
    o.require(d.exact() && d.value == n - 1, "d(C_" + std::to_string(n) + ")");
  }
  o.detail << " E(C_n) n=2..6, d(C_n) n=2..10";
}

void criterion5(Outcome& o) {
  auto a = condition_b_audit(2, 3, 2);
  auto g = G(2, 3, 2);
  long space = 1;  // multisets of size 8 from 6 elements: C(13, 8)
  for (long i = 1; i <= 8; ++i) space = space * (5 + i) / i;
  o.require(space == 1287, "search space 1287");
  o.require(a.candidate_length == 8, "length 8");
  bool exception_found = false;
  for (const auto& s : a.exceptions) {
    if (s == parse_sequence(g, "1^[5]·x·x*y·x*y^2")) exception_found = true;
    o.require(fixtures::kDihedralAudit.count(format_sequence(s)) == 1, "exception in frozen fixture");
    o.require(!has_k_product_one(s, 6), "exception verified");
  }
  o.require(exception_found, "1^[5]·x·x*y·x*y^2 among exceptions");
  for (const auto& [s, t] : a.matches) {
    o.require(template_sequence(g, 2, 3, t) == s, "template reconstructs");
    o.require(!has_k_product_one(s, 6), "match verified");
  }
  o.require(a.matches.size() + a.exceptions.size() == fixtures::kDihedralAudit.size(), "output count");
  o.detail << " matches=" << a.matches.size() << " exceptions=" << a.exceptions.size();
}

void criterion6(Outcome& o) {
  std::vector<GroupPtr> groups;
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; m * n <= 8; ++n)
      for (int s = 0; s < n; ++s)
        if (oracle::powmod(s, m, n) == 1 % n) groups.push_back(G(m, n, s));
  std::vector<std::vector<std::uint32_t>> q8;
  for (auto& row : oracle::q8_table()) q8.emplace_back(row.begin(), row.end());
  groups.push_back(FiniteGroup::from_table(q8));

  std::mt19937 rng(kSeed);
  std::uniform_int_distribution<std::size_t> pick_group(0, groups.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_len(1, 8);
  std::size_t mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const auto& g = groups[pick_group(rng)];
    const auto og = oracle_for(g);
    std::uniform_int_distribution<std::uint32_t> el(0, static_cast<std::uint32_t>(g->order() - 1));
    GroupSequence s(g);
    for (std::size_t j = pick_len(rng); j > 0; --j) s.add(Element{el(rng)});
    std::vector<int> codes;
    for (auto e : s.terms()) codes.push_back(static_cast<int>(e.code));
    if (as_set(big_pi_set(s)) != oracle::big_pi(og, codes)) ++mismatches;
    for (std::size_t k = 1; k <= s.length(); ++k)
      if (has_k_product_one(s, k) != oracle::has_k(og, codes, k)) ++mismatches;
  }
  o.require(mismatches == 0, "zero mismatches");
  o.detail << " sequences=500 mismatches=" << mismatches;
}

void criterion7(Outcome& o) {
  std::mt19937 rng(kSeed);
  auto g = G(4, 10, 3);
  auto ds = doubling_subgroup(g);
  std::uniform_int_distribution<std::uint32_t> el(0, static_cast<std::uint32_t>(g->order() - 1));
  std::size_t min_pairs = 1000;
  for (int i = 0; i < 100; ++i) {
    GroupSequence s(g);
    for (int j = 0; j < 52; ++j) s.add(Element{el(rng)});
    auto p = pigeonhole_pairs(s, ds.h);
    min_pairs = std::min(min_pairs, p.pairs.size());
    o.require(p.pairs.size() >= 24, "at least 24 pairs");
    o.require(p.remainder.length() <= 4, "remainder at most 4");
    for (const auto& pr : p.pairs) o.require(ds.h.contains(pr.product), "pair product in H");
    std::set<std::uint32_t> classes;
    for (auto e : p.remainder.terms()) classes.insert(ds.quotient.project(e).code);
    o.require(classes.size() == p.remainder.length(), "remainder classes distinct");
  }

  std::size_t grid = 0;
  for (long n0 : {3L, 5L, 7L, 9L}) {
    const long n = 2 * n0;
    for (long a = 0; a < n0; ++a)
      for (long b = 0; b < n0; ++b) {
        if (std::gcd(a - b, n0) != 1) continue;
        for (long t = 0; t < n0; ++t)
          for (long r = 2; r <= 2 * n0; r += 2) {
            const long k = k_solver(a, b, t, r, n0, n);
            const long total = 2 * a * (n0 - k) + 2 * b * (n0 + k - r / 2) + 2 * t;
            o.require(k >= 1 && k <= n0 && ((total % n) + n) % n == 0, "k_solver identity");
            ++grid;
          }
      }
  }

  const std::array<Element, 1> ysq{g->element(0, 2)};
  auto c = subgroup_generated(g, ysq);
  auto inside = ds.h.elements();
  std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
  std::size_t found = 0;
  for (int i = 0; i < 1000; ++i) {
    GroupSequence r3(g);
    for (int j = 0; j < 2; ++j) r3.add(inside[pick(rng)]);
    try {
      auto hit = find_subsequence_into_cyclic(r3, c);
      if (c.contains(hit.product) && hit.subsequence.divides(r3)) ++found;
    } catch (const std::exception&) {
    }
  }
  o.require(found == 1000, "find_subsequence_into_cyclic never fails");
  o.detail << " min_pairs=" << min_pairs << " k_grid=" << grid << " cyclic_hits=" << found << "/1000";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "dihedral baseline d = 3, E = 9", kLimit1, criterion1},
      {2, "G_{4,3,-1}: bounds meet at 6, exhaustive 6, verdict fails", kLimit2, criterion2},
      {3, "G_{4,7,-1}: d = 14 from bounds, E_lower = 42 > 37", kLimit3, criterion3},
      {4, "EGZ suite on cyclic groups", kLimit4, criterion4},
      {5, "condition (B) audit of G_{2,3,2}", kLimit5, criterion5},
      {6, "reach engine agrees with brute force", kLimit6, criterion6},
      {7, "pairing, k-solver and cyclic subsequence steps", kLimit7, criterion7},
  };

  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit) {
      o.ok = false;
      o.detail << " [over time limit " << c.limit << " s]";
    }
    all = all && o.ok;
    std::printf("%s criterion %d: %s (%.3f s / %.0f s)%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.str().c_str());
  }
  return all ? 0 : 1;
}

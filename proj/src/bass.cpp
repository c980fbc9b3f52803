#include "zerosum/bass.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

#include "zerosum/error.hpp"
#include "zerosum/productone.hpp"

namespace zerosum {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kFails:
      return "fails";
    case Verdict::kUnknownAtBudget:
      return "unknown-at-budget";
  }
  return "unknown";
}

BassVerdict bass_check(const MetacyclicParams& params, const SearchBudget& budget) {
  const auto group = mk_metacyclic(params);
  const auto& p = *group->metacyclic_params();
  BassVerdict v;
  v.params = p;
  v.ord = ord_mod(p.s, p.n);
  v.hypothesis_holds = v.ord == p.m;
  v.d_expected = p.m + p.n - 2;
  v.e_expected = static_cast<long>(p.m) * p.n + p.m + p.n - 2;

  ReportOptions opts;
  opts.budget = budget;
  opts.search_e = group->order() <= budget.max_order_gao;
  v.report = constant_report(group, opts);
  const auto& r = v.report;

  if (r.d_lower > v.d_expected) {
    v.verdict = Verdict::kFails;
    v.reason = "d >= " + std::to_string(r.d_lower) + " > " + std::to_string(v.d_expected) + " = m+n-2";
  } else if (r.e_lower > v.e_expected) {
    v.verdict = Verdict::kFails;
    v.reason = "E >= " + std::to_string(r.e_lower) + " > " + std::to_string(v.e_expected) + " = mn+m+n-2";
  } else if (r.e_exact && *r.e_exact > v.e_expected) {
    v.verdict = Verdict::kFails;
    v.reason = "E = " + std::to_string(*r.e_exact) + " > " + std::to_string(v.e_expected) + " = mn+m+n-2";
  } else if (r.d_exact && r.e_exact && *r.d_exact == v.d_expected && *r.e_exact == v.e_expected) {
    v.verdict = Verdict::kHolds;
    v.reason = "d = " + std::to_string(*r.d_exact) + " and E = " + std::to_string(*r.e_exact);
  } else {
    v.verdict = Verdict::kUnknownAtBudget;
    v.reason = "exact values not certified within budget";
  }
  return v;
}

nlohmann::json verdict_to_json(const BassVerdict& v) {
  return {{"m", v.params.m},
          {"n", v.params.n},
          {"s", v.params.s},
          {"ord_n_s", v.ord},
          {"hypothesis", v.hypothesis_holds ? "ord = m" : "proper divisor"},
          {"d_expected", v.d_expected},
          {"E_expected", v.e_expected},
          {"verdict", to_string(v.verdict)},
          {"reason", v.reason},
          {"report", report_to_json(v.report)}};
}

IntRange parse_range(const std::string& text) {
  auto to_long = [&](const std::string& part) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(part, &used);
    } catch (const std::exception&) {
      throw Error("malformed range '" + text + "'");
    }
    if (used != part.size()) throw Error("malformed range '" + text + "'");
    return value;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const long v = to_long(text);
    return {v, v};
  }
  return {to_long(text.substr(0, dots)), to_long(text.substr(dots + 2))};
}

bool corollary_predicate(long m, long n, long s) {
  if (m < 4 || m % 2 != 0 || n < 3 || n % 2 == 0) return false;
  if (gcd_long(mod_floor(s, n), n) != 1) return false;
  if (ord_mod(s, n) != 2) return false;
  return lcm_long(m / 2, n) >= m + n - 1;
}

std::vector<ScanHit> counterexample_scan(IntRange m_range, IntRange n_range) {
  std::vector<ScanHit> hits;
  for (long m = std::max(1L, m_range.lo); m <= m_range.hi; ++m) {
    for (long n = std::max(1L, n_range.lo); n <= n_range.hi; ++n) {
      for (long s = 0; s < n; ++s) {
        if (!corollary_predicate(m, n, s)) continue;
        ScanHit hit;
        hit.params = MetacyclicParams{static_cast<int>(m), static_cast<int>(n), static_cast<int>(s)};
        hit.cyclic_order = lcm_long(m / 2, n);
        hit.coprime = gcd_long(m / 2, n) == 1;
        hit.d_lower = hit.cyclic_order;
        if (hit.coprime) hit.d_exact = m * n / 2;
        hit.e_lower = m * n + hit.d_exact.value_or(hit.d_lower);
        hits.push_back(hit);
      }
    }
  }
  return hits;
}

nlohmann::json scan_hit_to_json(const ScanHit& hit) {
  return {{"m", hit.params.m},
          {"n", hit.params.n},
          {"s", hit.params.s},
          {"cyclic_order", hit.cyclic_order},
          {"coprime", hit.coprime},
          {"d_lower", hit.d_lower},
          {"d_exact", hit.d_exact ? nlohmann::json(*hit.d_exact) : nlohmann::json(nullptr)},
          {"E_lower", hit.e_lower},
          {"d_expected", hit.params.m + hit.params.n - 2},
          {"E_expected", hit.params.m * hit.params.n + hit.params.m + hit.params.n - 2}};
}

std::optional<TemplateMatch> template_match(const GroupSequence& s, int m0, int n0) {
  const auto& p = s.group().metacyclic_params();
  if (!p || p->m != m0 || p->n != n0) throw Error("template_match: sequence is not over G_{m0,n0,*}");
  const long expected_len = static_cast<long>(m0) * n0 + m0 + n0 - 3;
  if (static_cast<long>(s.length()) != expected_len || s.empty()) return std::nullopt;

  std::map<int, std::size_t> y_part;
  std::vector<int> gammas;
  std::optional<int> w;
  for (const auto& [g, k] : s.multiplicities()) {
    const auto [a, b] = s.group().exponents(g);
    if (a == 0) {
      y_part[b] += k;
      continue;
    }
    if (w && *w != a) return std::nullopt;
    w = a;
    gammas.insert(gammas.end(), k, b);
  }
  if (static_cast<int>(gammas.size()) != m0 - 1) return std::nullopt;
  if (m0 > 1 && gcd_long(*w, m0) != 1) return std::nullopt;

  for (int ell = 1; ell <= m0; ++ell) {
    const long c_alpha = static_cast<long>(ell) * n0 - 1;
    const long c_beta = static_cast<long>(m0 + 1 - ell) * n0 - 1;
    for (int alpha = 0; alpha < n0; ++alpha) {
      for (int beta = 0; beta < n0; ++beta) {
        if (gcd_long(alpha - beta, n0) != 1) continue;
        std::map<int, std::size_t> expect;
        if (c_alpha > 0) expect[alpha] += static_cast<std::size_t>(c_alpha);
        if (c_beta > 0) expect[beta] += static_cast<std::size_t>(c_beta);
        if (expect == y_part) return TemplateMatch{alpha, beta, gammas, w.value_or(0), ell};
      }
    }
  }
  return std::nullopt;
}

GroupSequence template_sequence(const GroupPtr& group, int m0, int n0, const TemplateMatch& t) {
  GroupSequence out(group);
  out.add(group->element(0, t.alpha), static_cast<std::size_t>(t.ell * n0 - 1));
  out.add(group->element(0, t.beta), static_cast<std::size_t>((m0 + 1 - t.ell) * n0 - 1));
  for (int gamma : t.gammas) out.add(group->element(t.w, gamma));
  return out;
}

nlohmann::json template_to_json(const TemplateMatch& t) {
  return {{"alpha", t.alpha}, {"beta", t.beta}, {"gammas", t.gammas}, {"w", t.w}, {"ell", t.ell}};
}

AuditResult condition_b_audit(int m0, int n0, long sigma, const SearchBudget& budget) {
  AuditResult out;
  out.params = MetacyclicParams::make(m0, n0, sigma);
  const auto group = mk_metacyclic(out.params);
  const std::size_t k = group->order();
  const long a_value = static_cast<long>(m0) * n0 + m0 + n0 - 2;

  out.candidate_length = a_value - 1;
  if (k <= budget.max_order_gao) {
    auto e = gao_exact(group, budget);
    if (e.exact()) {
      out.gao_exact = e.value;
      out.conditional_on_a = false;
      out.candidate_length = *e.value - 1;
    }
  }

  const auto length = static_cast<std::size_t>(out.candidate_length);
  std::vector<std::vector<std::vector<Element>>> found(k);
  FreeSearchSpec spec{k, length, false};
  const auto outcome = enumerate_free_multisets(group, spec, budget, [&](Element root) -> NodeVisitor {
    auto* slot = &found[root.code];
    return [slot, length](std::span<const Element> terms) {
      if (terms.size() == length) {
        slot->emplace_back(terms.begin(), terms.end());
        return NodeAction::kSkipChildren;
      }
      return NodeAction::kDescend;
    };
  });
  out.nodes = outcome.nodes;
  if (outcome.budget_exceeded) throw BudgetExceeded("condition (B) audit exceeded the search budget");

  for (const auto& bucket : found) {
    for (const auto& terms : bucket) {
      auto seq = GroupSequence::from_terms(group, terms);
      if (has_k_product_one(seq, k)) throw Error("engine rejected audit output " + format_sequence(seq));
      if (auto match = template_match(seq, m0, n0)) {
        out.matches.emplace_back(std::move(seq), *match);
      } else {
        out.exceptions.push_back(std::move(seq));
      }
    }
  }
  return out;
}

DoublingParams doubling_params(long m, long n, long s) {
  if (m < 2 || m % 2 != 0 || n < 2 || n % 2 != 0) throw Error("doubling context needs even m and n");
  DoublingParams out;
  out.original_s = s;
  const long n0 = n / 2;
  long reduced = mod_floor(s, n);
  if (n0 % 2 == 1 && reduced % 2 == 0) {
    reduced = mod_floor(reduced + n0, n);
    out.shifted = true;
  }
  out.params = MetacyclicParams::make(m, n, reduced);
  return out;
}

DoublingSubgroup doubling_subgroup(const GroupPtr& group) {
  const auto& p = group->metacyclic_params();
  if (!p || p->m % 2 != 0 || p->n % 2 != 0) throw Error("<x^2, y^2> needs a metacyclic group with m, n even");
  const std::array<Element, 2> gens{group->element(2, 0), group->element(0, 2)};
  DoublingSubgroup out{group, subgroup_generated(group, gens), {}};
  if (!out.h.normal) throw Error("<x^2, y^2> is not normal");
  out.quotient = quotient(out.h);
  if (!is_klein_four(*out.quotient.group)) throw Error("G/<x^2, y^2> is not C2 x C2");
  return out;
}

PairExtraction pigeonhole_pairs(const GroupSequence& s, const Subgroup& h) {
  if (!h.parent->same_as(s.group())) throw Error("subgroup does not belong to the sequence's group");
  const auto q = quotient(h);
  if (!is_klein_four(*q.group)) throw Error("pigeonhole pairing needs G/H isomorphic to C2 x C2");

  std::array<std::vector<Element>, 4> classes;
  for (auto g : s.terms()) classes[q.project(g).code].push_back(g);

  PairExtraction out{{}, GroupSequence(s.group_ptr())};
  const auto& group = s.group();
  for (const auto& terms : classes) {
    std::size_t i = 0;
    for (; i + 1 < terms.size(); i += 2) {
      PairRecord rec;
      rec.first = terms[i];
      rec.second = terms[i + 1];
      rec.product = group.mul(rec.first, rec.second);
      std::set<Element> prods{rec.product, group.mul(rec.second, rec.first)};
      rec.products.assign(prods.begin(), prods.end());
      out.pairs.push_back(std::move(rec));
    }
    if (i < terms.size()) out.remainder.add(terms[i]);
  }

  GroupSequence rebuilt = out.remainder;
  for (const auto& rec : out.pairs) {
    rebuilt.add(rec.first);
    rebuilt.add(rec.second);
    for (auto p : rec.products)
      if (!h.contains(p)) throw Error("pair product " + group.label(p) + " escapes H");
  }
  if (!(rebuilt == s)) throw Error("pairs and remainder do not reconstruct the sequence");
  std::set<std::uint32_t> images;
  for (auto g : out.remainder.terms())
    if (!images.insert(q.project(g).code).second) throw Error("remainder has a repeated quotient class");
  return out;
}

nlohmann::json pairs_to_json(const PairExtraction& p) {
  const auto& group = p.remainder.group();
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& rec : p.pairs) {
    nlohmann::json prods = nlohmann::json::array();
    for (auto g : rec.products) prods.push_back(group.label(g));
    pairs.push_back({{"terms", {group.label(rec.first), group.label(rec.second)}},
                     {"product", group.label(rec.product)},
                     {"pi", prods}});
  }
  return {{"pair_count", p.pairs.size()}, {"pairs", pairs}, {"remainder", format_sequence(p.remainder)}};
}

namespace {

// Inverse of a modulo n (gcd(a, n) = 1).
long mod_inverse(long a, long n) {
  long old_r = mod_floor(a, n), r = n;
  long old_x = 1, x = 0;
  while (r != 0) {
    const long q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_x = std::exchange(x, old_x - q * x);
  }
  return mod_floor(old_x, n);
}

}  // namespace

long k_solver(long a, long b, long t, long r, long n0, long n) {
  if (n0 < 1 || n != 2 * n0) throw Error("k_solver needs n = 2 n0");
  if (r % 2 != 0) throw Error("k_solver needs r even");
  if (gcd_long(a - b, n0) != 1) throw Error("k_solver needs gcd(a - b, n0) = 1");
  long k = mod_floor(mod_inverse(b - a, n0) * mod_floor(b * (r / 2) - t, n0), n0);
  if (k == 0) k = n0;
  const long exponent = 2 * a * (n0 - k) + 2 * b * (n0 + k - r / 2) + 2 * t;
  if (mod_floor(exponent, n) != 0) throw Error("k_solver: identity check failed");
  return k;
}

CyclicHit find_subsequence_into_cyclic(const GroupSequence& r3, const Subgroup& c) {
  if (!c.parent->same_as(r3.group())) throw Error("subgroup does not belong to the sequence's group");
  if (r3.empty()) throw Error("find_subsequence_into_cyclic needs a non-empty sequence");
  const auto table = reach(r3);
  for (std::size_t w = 1; w <= r3.length(); ++w) {
    for (std::size_t idx = 1; idx < table.state_count(); ++idx) {
      if (table.weight(idx) != w) continue;
      auto hit = table.entry(idx) & c.members;
      if (hit.empty()) continue;
      const Element product = hit.elements().front();
      return {table.subsequence(idx), product, table.realize(idx, product)};
    }
  }
  throw Error("no subsequence of " + format_sequence(r3) + " has a product in the cyclic subgroup");
}

bool remainder_parity_check(const GroupSequence& r) {
  if (r.length() != 4) throw Error("remainder_parity_check needs exactly four terms");
  const auto ds = doubling_subgroup(r.group_ptr());
  std::set<std::uint32_t> images;
  for (auto g : r.terms()) images.insert(ds.quotient.project(g).code);
  return images.size() == 4;
}

}  // namespace zerosum

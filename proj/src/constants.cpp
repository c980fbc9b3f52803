#include "zerosum/constants.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <thread>

#include "zerosum/error.hpp"
#include "zerosum/productone.hpp"

namespace zerosum {

const char* to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kLowerWitness:
      return "lower-witness";
    case CertificateKind::kUpperLemma:
      return "upper-lemma";
    case CertificateKind::kLowerInequality:
      return "lower-inequality";
  }
  return "unknown";
}

namespace {

void require_free(const GroupSequence& witness, const char* what) {
  if (!is_product_one_free(witness))
    throw Error(std::string("engine rejected the ") + what + " witness " + format_sequence(witness) +
                " (product-one free claim failed)");
}

}  // namespace

ConstantCertificate cert_xy(const GroupPtr& group) {
  const auto& params = group->metacyclic_params();
  if (!params) throw Error("cert_xy needs a metacyclic group");
  if (params->m * params->n < 2) throw Error("cert_xy needs m * n >= 2");
  GroupSequence witness(group);
  witness.add(group->element(1, 0), static_cast<std::size_t>(params->m - 1));
  witness.add(group->element(0, 1), static_cast<std::size_t>(params->n - 1));
  require_free(witness, "x^[m-1].y^[n-1]");
  return {CertificateKind::kLowerWitness, "d", static_cast<long>(witness.length()), witness,
          "x^[m-1].y^[n-1] is product-one free"};
}

ConstantCertificate cert_cyclic(const GroupPtr& group, Element z, Element w) {
  const std::array<Element, 1> gens{z};
  const auto h = subgroup_generated(group, gens);
  if (!h.normal) throw Error("cert_cyclic: <" + group->label(z) + "> is not normal");
  if (h.order() == group->order()) throw Error("cert_cyclic: <" + group->label(z) + "> is not a proper subgroup");
  if (h.contains(w)) throw Error("cert_cyclic: " + group->label(w) + " lies in <" + group->label(z) + ">");
  const auto t = h.order();
  GroupSequence witness(group);
  witness.add(z, t - 1);
  witness.add(w);
  require_free(witness, "z^[t-1].w");
  return {CertificateKind::kLowerWitness, "d", static_cast<long>(t), witness,
          "z^[t-1].w is product-one free for a cyclic normal <z> of order t and w outside it"};
}

DavenportBounds davenport_bounds(const GroupPtr& group) {
  DavenportBounds out;
  const std::size_t order = group->order();
  if (order == 1) {
    out.certificates.push_back({CertificateKind::kUpperLemma, "d", 0, std::nullopt, "trivial group"});
    return out;
  }
  if (group->is_metacyclic()) out.certificates.push_back(cert_xy(group));

  std::optional<Element> generator;
  for (auto g : group->elements()) {
    if (element_order(*group, g) == order) {
      generator = g;
      break;
    }
  }

  if (generator) {
    GroupSequence witness(group);
    witness.add(*generator, order - 1);
    require_free(witness, "generator power");
    out.certificates.push_back({CertificateKind::kLowerWitness, "d", static_cast<long>(order - 1), witness,
                                "g^[|G|-1] is product-one free for a generator g"});
    out.certificates.push_back({CertificateKind::kUpperLemma, "d", static_cast<long>(order - 1), std::nullopt,
                                "any |G| terms have a product-one run of prefix products"});
    out.upper = static_cast<long>(order - 1);
  } else {
    std::vector<ElementSet> seen;
    std::optional<ConstantCertificate> best;
    for (auto z : group->elements()) {
      if (z == group->identity()) continue;
      const std::array<Element, 1> gens{z};
      auto h = subgroup_generated(group, gens);
      bool dup = false;
      for (const auto& s : seen)
        if (s == h.members) {
          dup = true;
          break;
        }
      if (dup) continue;
      seen.push_back(h.members);
      if (!h.normal || h.order() == order) continue;
      if (best && static_cast<long>(h.order()) <= best->value) continue;
      Element w = group->identity();
      for (auto g : group->elements())
        if (!h.contains(g)) {
          w = g;
          break;
        }
      best = cert_cyclic(group, z, w);
    }
    if (best) out.certificates.push_back(*best);
    out.certificates.push_back({CertificateKind::kUpperLemma, "d", static_cast<long>((order + 1) / 2), std::nullopt,
                                "Olson-White: d(G) <= ceil(|G|/2) for non-cyclic G"});
    out.upper = static_cast<long>((order + 1) / 2);
  }

  for (const auto& c : out.certificates)
    if (c.kind == CertificateKind::kLowerWitness) out.lower = std::max(out.lower, c.value);
  return out;
}

long gao_lower(const FiniteGroup& group, long d_lower) { return d_lower + static_cast<long>(group.order()); }

BranchOutcome enumerate_free_multisets(const GroupPtr& group, const FreeSearchSpec& spec, const SearchBudget& budget,
                                       const std::function<NodeVisitor(Element root)>& factory) {
  const std::size_t order = group->order();
  std::vector<Element> roots;
  for (auto g : group->elements())
    if (!(spec.exclude_identity && g == group->identity())) roots.push_back(g);

  BranchOutcome outcome;
  if (spec.max_length == 0 || roots.empty()) return outcome;

  std::vector<NodeVisitor> visitors;
  visitors.reserve(roots.size());
  for (auto r : roots) visitors.push_back(factory(r));

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> over{false};
  std::atomic<std::size_t> cutoff{std::numeric_limits<std::size_t>::max()};
  std::atomic<std::size_t> next{0};
  const Element one = group->identity();

  auto run_root = [&](std::size_t r) {
    ReachOptions opts;
    opts.max_states = budget.max_states;
    opts.max_weight = spec.k;
    ReachabilityTable table(group, opts);
    std::vector<Element> terms;
    terms.reserve(spec.max_length);
    const auto& visit = visitors[r];

    // Returns false when the whole root must be abandoned.
    std::function<bool(std::uint32_t)> dfs = [&](std::uint32_t start) -> bool {
      for (std::uint32_t c = start; c < order; ++c) {
        const Element g{c};
        if (spec.exclude_identity && g == one) continue;
        if (over.load(std::memory_order_relaxed) || cutoff.load(std::memory_order_relaxed) < r) return false;
        std::pair<std::size_t, std::size_t> block;
        try {
          block = table.push(g);
        } catch (const BudgetExceeded&) {
          over = true;
          return false;
        }
        if (table.find(one, block.first, block.second, spec.k)) {
          table.pop();
          continue;
        }
        if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget.max_nodes) {
          over = true;
          return false;
        }
        terms.push_back(g);
        const auto action = visit(terms);
        bool keep_going = true;
        if (action == NodeAction::kStop) {
          std::size_t cur = cutoff.load();
          while (r < cur && !cutoff.compare_exchange_weak(cur, r)) {
          }
          keep_going = false;
        } else if (action == NodeAction::kDescend && terms.size() < spec.max_length) {
          keep_going = dfs(c);
        }
        terms.pop_back();
        table.pop();
        if (!keep_going) return false;
      }
      return true;
    };

    // The root itself: a single term followed by its extensions. Only the
    // first term is fixed, so run the loop body for that code alone.
    const Element g = roots[r];
    std::pair<std::size_t, std::size_t> block;
    try {
      block = table.push(g);
    } catch (const BudgetExceeded&) {
      over = true;
      return;
    }
    if (table.find(one, block.first, block.second, spec.k)) return;
    if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget.max_nodes) {
      over = true;
      return;
    }
    terms.push_back(g);
    const auto action = visit(terms);
    if (action == NodeAction::kStop) {
      std::size_t cur = cutoff.load();
      while (r < cur && !cutoff.compare_exchange_weak(cur, r)) {
      }
      return;
    }
    if (action == NodeAction::kDescend && terms.size() < spec.max_length) dfs(g.code);
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= roots.size() || over.load()) return;
      if (r > cutoff.load()) continue;
      run_root(r);
    }
  };

  const unsigned threads = std::max(1U, budget.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  outcome.nodes = nodes.load();
  outcome.budget_exceeded = over.load();
  return outcome;
}

SearchResult davenport_exact(const GroupPtr& group, const SearchBudget& budget, std::optional<long> stop_at) {
  SearchResult result;
  const std::size_t order = group->order();
  if (order > budget.max_order_davenport) {
    result.status = SearchStatus::kBudgetExceeded;
    result.reason = "|G| = " + std::to_string(order) + " exceeds the Davenport search limit " +
                    std::to_string(budget.max_order_davenport);
    return result;
  }

  struct Best {
    std::size_t length = 0;
    std::vector<Element> witness;
  };
  std::vector<Best> best(order);

  FreeSearchSpec spec{std::nullopt, order, true};
  const auto outcome = enumerate_free_multisets(group, spec, budget, [&](Element root) -> NodeVisitor {
    Best* slot = &best[root.code];
    return [slot, stop_at](std::span<const Element> terms) {
      if (terms.size() > slot->length) {
        slot->length = terms.size();
        slot->witness.assign(terms.begin(), terms.end());
      }
      if (stop_at && static_cast<long>(terms.size()) >= *stop_at) return NodeAction::kStop;
      return NodeAction::kDescend;
    };
  });
  result.nodes = outcome.nodes;
  if (outcome.budget_exceeded) {
    result.status = SearchStatus::kBudgetExceeded;
    result.reason = "search budget exhausted after " + std::to_string(outcome.nodes) + " nodes";
    return result;
  }

  const Best* winner = nullptr;
  for (const auto& b : best)
    if (winner == nullptr || b.length > winner->length) winner = &b;
  const auto witness = GroupSequence::from_terms(group, winner ? winner->witness : std::vector<Element>{});
  require_free(witness, "Davenport search");
  result.value = static_cast<long>(witness.length());
  result.witnesses.push_back(witness);
  return result;
}

SearchResult gao_exact(const GroupPtr& group, const SearchBudget& budget) {
  SearchResult result;
  const std::size_t order = group->order();
  if (order > budget.max_order_gao) {
    result.status = SearchStatus::kBudgetExceeded;
    result.reason = "|G| = " + std::to_string(order) + " exceeds the Gao search limit " +
                    std::to_string(budget.max_order_gao);
    return result;
  }

  struct Extremal {
    std::size_t length = 0;
    std::vector<std::vector<Element>> sequences;
  };
  std::vector<Extremal> best(order);

  // Every sequence of 2|G| - 1 terms has a |G|-product-one subsequence.
  FreeSearchSpec spec{order, 2 * order - 1, false};
  const auto outcome = enumerate_free_multisets(group, spec, budget, [&](Element root) -> NodeVisitor {
    Extremal* slot = &best[root.code];
    return [slot](std::span<const Element> terms) {
      if (terms.size() > slot->length) {
        slot->length = terms.size();
        slot->sequences.clear();
      }
      if (terms.size() == slot->length) slot->sequences.emplace_back(terms.begin(), terms.end());
      return NodeAction::kDescend;
    };
  });
  result.nodes = outcome.nodes;
  if (outcome.budget_exceeded) {
    result.status = SearchStatus::kBudgetExceeded;
    result.reason = "search budget exhausted after " + std::to_string(outcome.nodes) + " nodes";
    return result;
  }

  std::size_t max_len = 0;
  for (const auto& b : best) max_len = std::max(max_len, b.length);
  if (max_len >= 2 * order - 1) throw Error("gao search reached 2|G|-1 terms; engine inconsistency");
  for (const auto& b : best) {
    if (b.length != max_len || max_len == 0) continue;
    for (const auto& seq : b.sequences) {
      auto witness = GroupSequence::from_terms(group, seq);
      if (has_k_product_one(witness, order)) throw Error("engine rejected Gao witness " + format_sequence(witness));
      result.witnesses.push_back(std::move(witness));
    }
  }
  if (max_len == 0) result.witnesses.emplace_back(group);
  result.value = static_cast<long>(max_len) + 1;
  return result;
}

ConstantReport constant_report(const GroupPtr& group, const ReportOptions& options) {
  ConstantReport r;
  r.group = group_to_json(*group);
  r.descriptor = describe(*group);
  r.order = group->order();

  auto bounds = davenport_bounds(group);
  r.d_lower = bounds.lower;
  r.d_upper = bounds.upper;
  r.certificates = std::move(bounds.certificates);
  if (r.d_lower == r.d_upper) {
    r.d_exact = r.d_lower;
    r.d_method = "bounds-meet";
  }

  if (options.search_d || !r.d_exact) {
    const std::optional<long> stop = options.search_d ? std::nullopt : std::optional<long>(r.d_upper);
    auto res = davenport_exact(group, options.budget, stop);
    if (res.exact()) {
      if (*res.value < r.d_lower || *res.value > r.d_upper)
        throw Error("exact d = " + std::to_string(*res.value) + " lies outside the certified bounds");
      r.d_exact = res.value;
      r.d_method = "exhaustive-search";
      r.d_witnesses = std::move(res.witnesses);
    } else {
      r.notes.push_back("d search: " + res.reason);
      if (!r.d_exact) r.budget_exceeded = true;
    }
  }

  const long d_for_e = r.d_exact.value_or(r.d_lower);
  r.e_lower = gao_lower(*group, d_for_e);
  r.certificates.push_back(
      {CertificateKind::kLowerInequality, "E", r.e_lower, std::nullopt, "E(G) >= d(G) + |G|"});

  if (options.search_e) {
    auto res = gao_exact(group, options.budget);
    if (res.exact()) {
      if (*res.value < r.e_lower)
        throw Error("exact E = " + std::to_string(*res.value) + " is below the certified lower bound");
      r.e_exact = res.value;
      r.e_method = "exhaustive-search";
      r.e_witnesses = std::move(res.witnesses);
    } else {
      r.notes.push_back("E search: " + res.reason);
      r.budget_exceeded = true;
    }
  }
  if (!r.e_exact) r.notes.push_back("E exact value open: only the lower bound d(G) + |G| is certified");
  return r;
}

nlohmann::json certificate_to_json(const ConstantCertificate& c) {
  nlohmann::json j{{"kind", to_string(c.kind)}, {"constant", c.constant}, {"value", c.value},
                   {"provenance", c.provenance}};
  j["witness"] = c.witness ? nlohmann::json(format_sequence(*c.witness)) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json report_to_json(const ConstantReport& r) {
  auto opt = [](const std::optional<long>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json j;
  j["group"] = r.group;
  j["order"] = r.order;
  j["d"] = {{"lower", r.d_lower}, {"upper", r.d_upper}, {"exact", opt(r.d_exact)}, {"method", r.d_method}};
  j["E"] = {{"lower", r.e_lower}, {"exact", opt(r.e_exact)}, {"method", r.e_method}};
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : r.certificates) j["certificates"].push_back(certificate_to_json(c));
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.d_witnesses) j["witnesses"].push_back({{"constant", "d"}, {"sequence", format_sequence(w)}});
  for (const auto& w : r.e_witnesses) j["witnesses"].push_back({{"constant", "E"}, {"sequence", format_sequence(w)}});
  j["notes"] = r.notes;
  j["budget_exceeded"] = r.budget_exceeded;
  return j;
}

}  // namespace zerosum

// zerosum: command-line front end.
//
// Exit codes: 0 verified/holds, 1 refuted/fails, 2 unknown at budget, 3 usage error.

#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zerosum/bass.hpp"
#include "zerosum/cache.hpp"
#include "zerosum/constants.hpp"
#include "zerosum/error.hpp"
#include "zerosum/group.hpp"
#include "zerosum/productone.hpp"
#include "zerosum/sequence.hpp"

namespace {

using nlohmann::json;
using namespace zerosum;

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 3;

struct GroupArgs {
  std::optional<long> m;
  std::optional<long> n;
  std::optional<long> s;
  std::string descriptor;

  void attach(CLI::App* app) {
    app->add_option("-m", m, "order of x");
    app->add_option("-n", n, "order of y");
    app->add_option("-s", s, "twist: y x = x y^s")->allow_extra_args(false);
    app->add_option("--group", descriptor, R"(JSON descriptor {"m":..,"n":..,"s":..} or {"table":[[..]]})");
  }

  GroupPtr build() const {
    if (!descriptor.empty()) return group_from_json(json::parse(descriptor));
    if (!m || !n || !s) throw Error("give -m, -n and -s, or --group");
    return mk_metacyclic(MetacyclicParams::make(*m, *n, *s));
  }
};

struct BudgetArgs {
  SearchBudget budget;

  void attach(CLI::App* app) {
    app->add_option("--max-order-d", budget.max_order_davenport, "largest |G| for exhaustive d search");
    app->add_option("--max-order-e", budget.max_order_gao, "largest |G| for exhaustive E search");
    app->add_option("--max-nodes", budget.max_nodes, "search node budget");
    app->add_option("--max-states", budget.max_states, "sub-multiset lattice budget");
    app->add_option("--threads", budget.threads, "worker threads for search fan-out");
  }

  json to_json() const {
    return {{"max_order_d", budget.max_order_davenport},
            {"max_order_e", budget.max_order_gao},
            {"max_nodes", budget.max_nodes},
            {"max_states", budget.max_states}};
  }
};

struct CacheArgs {
  std::string path;
  bool disabled = false;
  bool no_timestamp = false;

  void attach(CLI::App* app) {
    app->add_option("--cache", path, "cache file (default $ZEROSUM_CACHE or ./.zerosum-cache.json)");
    app->add_flag("--no-cache", disabled, "neither read nor write the cache");
    app->add_flag("--no-timestamp", no_timestamp, "omit the timestamp from the output");
  }

  std::filesystem::path resolved() const { return path.empty() ? ResultCache::default_path() : std::filesystem::path(path); }
};

void print(const json& j) { std::cout << j.dump() << '\n'; }

json subgroup_info(const std::string& name, const Subgroup& h) {
  json j{{"name", name}, {"order", h.order()}, {"normal", h.normal}};
  if (h.normal) {
    const auto q = quotient(h);
    j["quotient_order"] = q.group->order();
    j["quotient_klein_four"] = is_klein_four(*q.group);
    j["quotient_cyclic"] = is_cyclic(*q.group);
  }
  return j;
}

int cmd_group(const GroupArgs& args) {
  const auto g = args.build();
  json out{{"group", group_to_json(*g)},
           {"order", g->order()},
           {"abelian", is_abelian(*g)},
           {"cyclic", is_cyclic(*g)}};
  if (const auto& p = g->metacyclic_params()) {
    out["ord_n_s"] = ord_mod(p->s, p->n);
    out["bass_hypothesis"] = ord_mod(p->s, p->n) == p->m;
    json subs = json::array();
    const std::array<Element, 1> z{g->element(2, 1)};
    subs.push_back(subgroup_info("<x^2*y>", subgroup_generated(g, z)));
    const std::array<Element, 2> xy2{g->element(2, 0), g->element(0, 2)};
    subs.push_back(subgroup_info("<x^2, y^2>", subgroup_generated(g, xy2)));
    out["subgroups"] = subs;
  }
  print(out);
  return kOk;
}

// Shared by dav and gao.
int cmd_constant(const std::string& which, const GroupArgs& gargs, const BudgetArgs& bargs, const CacheArgs& cargs,
                 bool exact, bool bounds_ok) {
  const auto g = gargs.build();
  ReportOptions opts;
  opts.budget = bargs.budget;
  opts.search_d = which == "dav" && exact;
  opts.search_e = which == "gao" && (exact || g->order() <= bargs.budget.max_order_gao);

  const json key_opts{{"exact", exact}, {"budget", bargs.to_json()}};
  const auto key = cache_key(which, group_to_json(*g), key_opts);
  std::optional<ResultCache> cache;
  if (!cargs.disabled) cache.emplace(cargs.resolved());

  json report;
  std::string stamp;
  if (cache) {
    if (auto hit = cache->lookup(key)) {
      report = *hit;
      std::cerr << "cache hit " << key << '\n';
    }
  }
  if (report.is_null()) {
    report = report_to_json(constant_report(g, opts));
    stamp = utc_timestamp();
    if (cache) {
      cache->store(key, report, stamp);
      cache->save();
    }
  }

  const auto& section = which == "dav" ? report.at("d") : report.at("E");
  json out = report;
  if (!cargs.no_timestamp) out["timestamp"] = stamp.empty() ? utc_timestamp() : stamp;
  print(out);
  if (section.at("exact").is_null() && !bounds_ok) return kUnknown;
  return kOk;
}

int cmd_bass(const GroupArgs& gargs, const BudgetArgs& bargs) {
  const auto g = gargs.build();
  if (!g->is_metacyclic()) throw Error("bass needs -m/-n/-s");
  const auto v = bass_check(*g->metacyclic_params(), bargs.budget);
  print(verdict_to_json(v));
  switch (v.verdict) {
    case Verdict::kHolds:
      return kOk;
    case Verdict::kFails:
      return kRefuted;
    default:
      return kUnknown;
  }
}

int cmd_scan(const std::string& m_range, const std::string& n_range, bool check, const BudgetArgs& bargs) {
  const auto hits = counterexample_scan(parse_range(m_range), parse_range(n_range));
  int rc = kOk;
  for (const auto& hit : hits) {
    auto j = scan_hit_to_json(hit);
    if (check) {
      const auto v = bass_check(hit.params, bargs.budget);
      j["verdict"] = to_string(v.verdict);
      j["certified_d_lower"] = v.report.d_lower;
      if (v.verdict != Verdict::kFails) rc = kUnknown;
    }
    print(j);
  }
  return rc;
}

int cmd_audit(int m0, int n0, long sigma, const BudgetArgs& bargs) {
  AuditResult audit;
  try {
    audit = condition_b_audit(m0, n0, sigma, bargs.budget);
  } catch (const BudgetExceeded& e) {
    print({{"error", e.what()}});
    return kUnknown;
  }
  for (const auto& [seq, match] : audit.matches)
    print({{"sequence", format_sequence(seq)}, {"kind", "template"}, {"template", template_to_json(match)}});
  for (const auto& seq : audit.exceptions) print({{"sequence", format_sequence(seq)}, {"kind", "exception"}});
  print({{"summary",
          {{"m0", audit.params.m},
           {"n0", audit.params.n},
           {"sigma", audit.params.s},
           {"length", audit.candidate_length},
           {"E_exact", audit.gao_exact ? json(*audit.gao_exact) : json(nullptr)},
           {"conditional_on_A", audit.conditional_on_a},
           {"template_matches", audit.matches.size()},
           {"exceptions", audit.exceptions.size()}}}});
  return kOk;
}

int cmd_pairs(long m, long n, long s, const std::string& seq_text, std::optional<std::size_t> random_length,
              std::uint64_t seed) {
  const auto dp = doubling_params(m, n, s);
  const auto g = mk_metacyclic(dp.params);
  const auto ds = doubling_subgroup(g);
  GroupSequence seq(g);
  if (random_length) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(g->order() - 1));
    for (std::size_t i = 0; i < *random_length; ++i) seq.add(Element{pick(rng)});
  } else {
    seq = parse_sequence(g, seq_text);
  }
  const auto extraction = pigeonhole_pairs(seq, ds.h);
  json out = pairs_to_json(extraction);
  out["group"] = group_to_json(*g);
  out["s_shifted"] = dp.shifted;
  out["sequence_length"] = seq.length();
  out["h_order"] = ds.h.order();
  if (extraction.remainder.length() == 4) out["remainder_parity_ok"] = remainder_parity_check(extraction.remainder);
  print(out);
  return kOk;
}

int cmd_verify(const GroupArgs& gargs, const std::string& seq_text, const std::string& claim) {
  const auto g = gargs.build();
  const auto seq = parse_sequence(g, seq_text);
  std::optional<std::size_t> k;
  if (claim != "po-free") {
    const std::string suffix = "-po-free";
    if (claim.size() <= suffix.size() || claim.compare(claim.size() - suffix.size(), suffix.size(), suffix) != 0)
      throw Error("claim must be 'po-free' or '<k>-po-free'");
    k = std::stoul(claim.substr(0, claim.size() - suffix.size()));
  }
  std::optional<ProductOneWitness> witness;
  if (k) {
    if (*k == 0) throw Error("k must be positive");
    if (*k <= seq.length()) witness = find_k_product_one(seq, *k);
  } else {
    witness = find_product_one(seq);
  }
  json out{{"sequence", format_sequence(seq)}, {"claim", claim}, {"verified", !witness.has_value()}};
  if (witness) {
    std::string ordering;
    for (auto e : witness->ordering) ordering += (ordering.empty() ? "" : "·") + g->label(e);
    out["witness"] = {{"subsequence", format_sequence(witness->subsequence)}, {"ordering", ordering}, {"product", "1"}};
  }
  print(out);
  return witness ? kRefuted : kOk;
}

int cmd_cache(const std::string& action, const CacheArgs& cargs) {
  ResultCache cache(cargs.resolved());
  if (action == "path") {
    std::cout << cache.path().string() << '\n';
  } else if (action == "list") {
    for (const auto& e : cache.entries())
      print({{"key", e.key}, {"engine_version", e.engine_version}, {"timestamp", e.timestamp},
             {"group", e.report.value("group", json(nullptr))}});
  } else if (action == "clear") {
    cache.clear();
    cache.save();
  } else {
    throw Error("cache action must be path, list or clear");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-sum invariants of metacyclic groups"};
  app.require_subcommand(1);

  GroupArgs gargs;
  BudgetArgs bargs;
  CacheArgs cargs;
  bool exact = false;
  bool bounds_ok = false;

  auto* group = app.add_subcommand("group", "order, ord_n(s), abelian flag and notable subgroups");
  gargs.attach(group);

  auto* dav = app.add_subcommand("dav", "small Davenport constant report (JSON)");
  auto* gao = app.add_subcommand("gao", "Gao constant report (JSON)");
  for (auto* sub : {dav, gao}) {
    gargs.attach(sub);
    bargs.attach(sub);
    cargs.attach(sub);
    sub->add_flag("--exact", exact, "force exhaustive search");
    sub->add_flag("--bounds-ok", bounds_ok, "exit 0 with bounds when the exact value is out of budget");
  }

  auto* bass = app.add_subcommand("bass", "check the conjectured values d = m+n-2 and E = mn+m+n-2");
  gargs.attach(bass);
  bargs.attach(bass);

  std::string m_range = "4..8";
  std::string n_range = "3..9";
  bool check = false;
  auto* scan = app.add_subcommand("scan", "list triples in the <x^2*y> counterexample family");
  scan->add_option("--m", m_range, "range a..b");
  scan->add_option("--n", n_range, "range a..b");
  scan->add_flag("--check", check, "run the full verdict on every hit");
  bargs.attach(scan);

  int m0 = 2;
  int n0 = 3;
  long sigma = -1;
  auto* audit = app.add_subcommand("audit-b", "classify maximal |G|-product-one free sequences");
  audit->add_option("--m0", m0);
  audit->add_option("--n0", n0);
  audit->add_option("--sigma", sigma);
  bargs.attach(audit);

  long pm = 4;
  long pn = 10;
  long ps = 3;
  std::string seq_text;
  std::optional<std::size_t> random_length;
  std::uint64_t seed = 1;
  auto* pairs = app.add_subcommand("pairs", "pigeonhole pairing modulo <x^2, y^2>");
  pairs->add_option("-m", pm);
  pairs->add_option("-n", pn);
  pairs->add_option("-s", ps);
  auto* seq_opt = pairs->add_option("--seq", seq_text, "sequence in text notation");
  pairs->add_option("--random", random_length, "use a random sequence of this length")->excludes(seq_opt);
  pairs->add_option("--seed", seed);

  std::string claim;
  std::string verify_seq;
  auto* verify = app.add_subcommand("verify-cert", "verify a product-one free claim");
  gargs.attach(verify);
  verify->add_option("--seq", verify_seq, "sequence in text notation")->required();
  verify->add_option("--claim", claim, "po-free or <k>-po-free")->required();

  std::string cache_action = "list";
  auto* cache = app.add_subcommand("cache", "inspect or clear the result cache");
  cache->add_option("action", cache_action, "path | list | clear");
  cache->add_option("--cache", cargs.path, "cache file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*group) return cmd_group(gargs);
    if (*dav) return cmd_constant("dav", gargs, bargs, cargs, exact, bounds_ok);
    if (*gao) return cmd_constant("gao", gargs, bargs, cargs, exact, bounds_ok);
    if (*bass) return cmd_bass(gargs, bargs);
    if (*scan) return cmd_scan(m_range, n_range, check, bargs);
    if (*audit) return cmd_audit(m0, n0, sigma, bargs);
    if (*pairs) return cmd_pairs(pm, pn, ps, seq_text, random_length, seed);
    if (*verify) return cmd_verify(gargs, verify_seq, claim);
    if (*cache) return cmd_cache(cache_action, cargs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

struct SearchBudget {
  std::size_t max_order_davenport = 24;
  std::size_t max_order_gao = 8;
  std::uint64_t max_nodes = 50'000'000;
  std::size_t max_states = std::size_t{1} << 24;
  unsigned threads = 1;
};

enum class CertificateKind { kLowerWitness, kUpperLemma, kLowerInequality };

const char* to_string(CertificateKind kind);

struct ConstantCertificate {
  CertificateKind kind = CertificateKind::kLowerWitness;
  std::string constant;  // "d" or "E"
  long value = 0;
  std::optional<GroupSequence> witness;
  std::string provenance;
};

/// x^[m-1] . y^[n-1] is product-one free over every G_{m,n,s}, so
/// d >= m + n - 2. The witness is re-verified by the engine.
ConstantCertificate cert_xy(const GroupPtr& group);

/// For a proper normal cyclic subgroup <z> of order t and w outside it,
/// z^[t-1] . w is product-one free, so d >= t.
ConstantCertificate cert_cyclic(const GroupPtr& group, Element z, Element w);

struct DavenportBounds {
  long lower = 0;
  long upper = 0;
  std::vector<ConstantCertificate> certificates;
};

/// Lower: best verified witness (cert_xy, cyclic normal subgroups, or a
/// generator for cyclic groups). Upper: ceil(|G|/2) for non-cyclic G,
/// |G| - 1 for cyclic G.
DavenportBounds davenport_bounds(const GroupPtr& group);

/// E(G) >= d(G) + |G|.
long gao_lower(const FiniteGroup& group, long d_lower);

enum class SearchStatus { kExact, kBudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::kExact;
  std::optional<long> value;
  std::vector<GroupSequence> witnesses;
  std::uint64_t nodes = 0;
  std::string reason;

  bool exact() const noexcept { return status == SearchStatus::kExact; }
};

/// Exact d(G) by DFS over product-one free multisets in non-decreasing code
/// order. Without `stop_at` the search is exhaustive; with it the search ends
/// as soon as a sequence of that length is found (use an independently known
/// upper bound). The witness is the lexicographically least sequence of
/// maximal length.
SearchResult davenport_exact(const GroupPtr& group, const SearchBudget& budget = {},
                             std::optional<long> stop_at = std::nullopt);

/// Exact E(G) = 1 + max length of a |G|-product-one free sequence, with all
/// extremal sequences in canonical order.
SearchResult gao_exact(const GroupPtr& group, const SearchBudget& budget = {});

// --- generic multiset search ------------------------------------------------

enum class NodeAction { kDescend, kSkipChildren, kStop };

struct FreeSearchSpec {
  /// nullopt: product-one free. Otherwise: no product-one subsequence of
  /// exactly this length.
  std::optional<std::size_t> k;
  std::size_t max_length = 0;
  bool exclude_identity = false;
};

/// Called on every accepted (free) non-empty multiset, terms in canonical order.
using NodeVisitor = std::function<NodeAction(std::span<const Element> terms)>;

struct BranchOutcome {
  std::uint64_t nodes = 0;
  bool budget_exceeded = false;
};

/// Runs one DFS per first term (root), possibly on several threads. The
/// factory is called once per root, in root order, before any work starts;
/// visitors of distinct roots never run concurrently with themselves. A
/// kStop from root r cancels roots after r but lets earlier roots finish.
BranchOutcome enumerate_free_multisets(const GroupPtr& group, const FreeSearchSpec& spec, const SearchBudget& budget,
                                       const std::function<NodeVisitor(Element root)>& factory);

// --- reports -----------------------------------------------------------------

struct ReportOptions {
  bool search_d = false;  // force exhaustive search even when bounds meet
  bool search_e = false;
  SearchBudget budget;
};

struct ConstantReport {
  nlohmann::json group;
  std::string descriptor;
  std::size_t order = 0;

  long d_lower = 0;
  long d_upper = 0;
  std::optional<long> d_exact;
  std::string d_method;  // "bounds-meet", "exhaustive-search" or ""

  long e_lower = 0;
  std::optional<long> e_exact;
  std::string e_method;

  std::vector<ConstantCertificate> certificates;
  std::vector<GroupSequence> d_witnesses;
  std::vector<GroupSequence> e_witnesses;
  std::vector<std::string> notes;
  bool budget_exceeded = false;
};

/// Bounds, then exact values where requested or needed and within budget.
/// Exact values are cross-checked against the bounds.
ConstantReport constant_report(const GroupPtr& group, const ReportOptions& options = {});

nlohmann::json certificate_to_json(const ConstantCertificate& c);
nlohmann::json report_to_json(const ConstantReport& r);

}  // namespace zerosum

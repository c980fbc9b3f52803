#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zerosum/constants.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

// --- conjecture verdicts ------------------------------------------------------

enum class Verdict { kHolds, kFails, kUnknownAtBudget };

const char* to_string(Verdict v);

struct BassVerdict {
  MetacyclicParams params;
  int ord = 1;                  // ord_n(s)
  bool hypothesis_holds = true;  // ord_n(s) == m, otherwise a proper divisor
  long d_expected = 0;          // m + n - 2
  long e_expected = 0;          // mn + m + n - 2
  ConstantReport report;
  Verdict verdict = Verdict::kUnknownAtBudget;
  std::string reason;
};

/// Compares certified values of d and E with m + n - 2 and mn + m + n - 2.
/// "fails" is only reported on a certified bound strictly beating an
/// expected value; "holds" needs both exact values.
BassVerdict bass_check(const MetacyclicParams& params, const SearchBudget& budget = {});

nlohmann::json verdict_to_json(const BassVerdict& v);

// --- counterexample family ----------------------------------------------------

struct IntRange {
  long lo = 0;
  long hi = -1;  // inclusive
};

/// "a..b" or a single integer.
IntRange parse_range(const std::string& text);

/// m >= 4 even, n >= 3 odd, ord_n(s) = 2 and lcm(m/2, n) >= m + n - 1.
bool corollary_predicate(long m, long n, long s);

struct ScanHit {
  MetacyclicParams params;
  long cyclic_order = 0;  // |<x^2 y>| = lcm(m/2, n); not always normal
  bool coprime = false;   // gcd(m/2, n) = 1
  long d_lower = 0;
  std::optional<long> d_exact;  // mn/2 when coprime
  long e_lower = 0;
};

/// Every (m, n, s) in range, s in [0, n-1], satisfying corollary_predicate,
/// in (m, n, s) order.
std::vector<ScanHit> counterexample_scan(IntRange m_range, IntRange n_range);

nlohmann::json scan_hit_to_json(const ScanHit& hit);

// --- condition (B) ------------------------------------------------------------

/// (y^alpha)^[l n0 - 1] . (y^beta)^[(m0 + 1 - l) n0 - 1] . prod_{i < m0} x^w y^{gamma_i}
/// with gcd(alpha - beta, n0) = 1, gcd(w, m0) = 1. For m0 = 1 there are no
/// x-terms and w is reported as 0.
struct TemplateMatch {
  int alpha = 0;
  int beta = 0;
  std::vector<int> gammas;  // ascending
  int w = 0;
  int ell = 1;
};

std::optional<TemplateMatch> template_match(const GroupSequence& s, int m0, int n0);
GroupSequence template_sequence(const GroupPtr& group, int m0, int n0, const TemplateMatch& t);

nlohmann::json template_to_json(const TemplateMatch& t);

struct AuditResult {
  MetacyclicParams params;
  long candidate_length = 0;     // (A) value minus one
  std::optional<long> gao_exact;  // when computed
  bool conditional_on_a = true;
  std::vector<std::pair<GroupSequence, TemplateMatch>> matches;
  std::vector<GroupSequence> exceptions;
  std::uint64_t nodes = 0;
};

/// All m0 n0-product-one free sequences of length m0 n0 + m0 + n0 - 3 over
/// G_{m0,n0,sigma}, split into template matches and exceptions. E(G) is
/// computed when |G| fits the Gao budget; otherwise the audit is labelled
/// conditional on (A). Throws BudgetExceeded if the enumeration does not fit.
AuditResult condition_b_audit(int m0, int n0, long sigma, const SearchBudget& budget = {});

// --- constructive steps of the doubling argument ------------------------------

/// Doubling-argument parameters for G_{m,n,s} with m = 2 m0, n = 2 n0: when n0
/// is odd and s even, s is replaced by the odd s + n0.
struct DoublingParams {
  MetacyclicParams params;
  bool shifted = false;
  long original_s = 0;
};

DoublingParams doubling_params(long m, long n, long s);

/// H = <x^2, y^2> in G_{m,n,s}, its quotient, and a check that G/H is C2 x C2.
struct DoublingSubgroup {
  GroupPtr group;
  Subgroup h;
  Quotient quotient;
};

DoublingSubgroup doubling_subgroup(const GroupPtr& group);

struct PairRecord {
  Element first;
  Element second;
  Element product;                 // first * second
  std::vector<Element> products;   // pi of the pair
};

struct PairExtraction {
  std::vector<PairRecord> pairs;
  GroupSequence remainder;
};

/// Pairs terms with equal image in G/H (classes in code order, terms in
/// canonical order) until the remaining images are pairwise distinct. All
/// invariants are checked before returning.
PairExtraction pigeonhole_pairs(const GroupSequence& s, const Subgroup& h);

nlohmann::json pairs_to_json(const PairExtraction& p);

/// k in [1, n0] with k = (b - a)^{-1} (b r/2 - t) mod n0; the identity
/// (y^{2a})^{n0-k} (y^{2b})^{n0+k-r/2} y^{2t} = 1 in C_n is verified before
/// returning.
long k_solver(long a, long b, long t, long r, long n0, long n);

struct CyclicHit {
  GroupSequence subsequence;
  Element product;
  std::vector<Element> ordering;
};

/// Smallest (by weight, then lattice order) non-empty T | R3 with an ordered
/// product in C. Throws if none exists.
CyclicHit find_subsequence_into_cyclic(const GroupSequence& r3, const Subgroup& c);

/// True iff the four terms of R hit all four classes of G/<x^2, y^2>.
bool remainder_parity_check(const GroupSequence& r);

}  // namespace zerosum

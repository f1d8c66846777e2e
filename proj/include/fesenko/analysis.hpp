#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fesenko/filtration.hpp"
#include "json.hpp"

namespace fesenko {

// ---------------------------------------------------------------------------
// Closed-form depth sets

/// Two readings of the p-divisible family B_n: `verbatim` keeps every
/// beta >= p((n-1)p+2) with p^2 not dividing beta; `alternate` also demands
/// p | beta.
enum class BReading { verbatim, alternate };

/// Exact p-adic part split used throughout: part 0 holds depths prime to p,
/// part s (1 <= s < r) depths of exact valuation s, part r all depths
/// divisible by q.
int depth_part(int depth, const GroupParams& params);

/// {lambda prime to p : lambda >= (n-1)q + 2} for n >= 2; every depth prime
/// to p for n = 1.
DepthSet predicted_gamma_minus(int n, const GroupParams& params);

/// Predicted members of gamma_n in part s. For r = 1 this is the family
/// built from C, A_n and B_n; for r >= 2 the valuation-s and q-divisible
/// closed forms. Row n = 1 is all of the part.
DepthSet predicted_epsilon(int n, int s, const GroupParams& params, BReading reading = BReading::verbatim);

/// r = 1 building blocks: C = {gamma p : gamma >= 2(p^2+p)+1},
/// A_n = {alpha p : alpha >= (n-1)p+2, p !| alpha} and
/// B_n = {beta p : beta >= p((n-1)p+2), p^2 !| beta}.
DepthSet family_c(const GroupParams& params);
DepthSet family_a(int n, const GroupParams& params);
DepthSet family_b(int n, const GroupParams& params, BReading reading);

struct PredictedSets {
  int n;
  DepthSet gamma_minus;
  /// epsilon[s-1] for s = 1..r, verbatim B_n reading.
  std::vector<DepthSet> epsilon;
  std::vector<DepthSet> epsilon_alternate;
  /// Which closed form produced the divisible part.
  std::string rule;
  std::optional<DepthSet> c, a_n, b_n, b_n_alternate;

  DepthSet gamma_zero() const;
  DepthSet gamma() const;
};

PredictedSets predicted_sets(int n, const GroupParams& params);

// ---------------------------------------------------------------------------
// Comparison

enum class DiscrepancyKind { in_computed_only, in_predicted_only };
std::string_view to_string(DiscrepancyKind k);

/// Known ambiguities a discrepancy can be attributed to. `b_reading`: the
/// other B_n reading predicts the computed membership. `item3_range`: rows
/// 4 <= n <= p+2 where the competing closed form (C u A_n against the
/// large-n interval) predicts it. `eventual_width`: the eventual-index
/// claim, used by width claims only.
enum class Zone { unflagged, b_reading, item3_range, eventual_width };
std::string_view to_string(Zone z);

struct Discrepancy {
  int depth;
  DiscrepancyKind kind;
  Zone zone = Zone::unflagged;
};

struct DepthSetReport {
  int n = 0;
  std::string part;
  DepthSet computed;
  DepthSet predicted;
  int stable_below;
  /// stable_below <= 0: nothing can be compared.
  bool unstable;
  /// Computed and predicted agree on [1, agree_below).
  int agree_below;
  std::vector<Discrepancy> discrepancies;
};

/// Symmetric difference of the two sets restricted to [1, stable_below).
DepthSetReport compare_depth_sets(const DepthSet& computed, const DepthSet& predicted, int stable_below);

nlohmann::json to_json(const DepthSetReport& r);

struct LcsRow {
  int n;
  DepthSet computed;
  /// Gamma_n \ Gamma_{n+1}; absent for the last computed level.
  std::optional<DepthSet> delta;
  bool stable;
  PredictedSets predicted;
  /// One report per part: "gamma_minus", then "epsilon_s" for s = 1..r.
  std::vector<DepthSetReport> parts;
};

struct LcsReport {
  GroupParams params;
  std::vector<LcsRow> rows;

  std::size_t discrepancy_count(bool unflagged_only) const;
};

/// Compares gamma_1..gamma_{n_max} against the closed forms on [1, NT - q).
/// Rows n = 1 are compared with the definitional sets.
LcsReport lcs_report(const std::vector<EchelonBasis>& series);
LcsReport lcs_report(const GroupParams& params, int n_max);

nlohmann::json to_json(const LcsReport& r);

// ---------------------------------------------------------------------------
// Width

struct WidthRow {
  int n;
  DepthSet delta;
  std::size_t delta_size;
  std::size_t delta_minus_size;
  std::size_t delta_zero_size;
  /// |Delta_n| restricted to part s, s = 1..r.
  std::vector<std::size_t> delta_part_sizes;
  /// log_p |gamma_n : gamma_{n+1}| in T/T_NT from the echelon slot counts.
  std::size_t log_p_index;
  /// Per part (index 0 = prime to p): the guard band [NT-q, NT) meets
  /// Gamma_n in this part and no member of Delta_n in this part lies there.
  std::vector<bool> part_stable;
  bool stable;
};

struct ClaimCheck {
  std::string name;
  long long claimed;
  std::optional<long long> computed;
  bool match;
  Zone zone = Zone::unflagged;
};

struct WidthSummary {
  std::optional<std::size_t> max_over_stable;
  /// Constancy is tested on stable rows n >= eventual_from (q + 2); at least
  /// two such rows are required.
  int eventual_from;
  std::size_t stable_rows_considered;
  bool eventually_constant;
  std::optional<std::size_t> eventual_value;
};

struct WidthReport {
  GroupParams params;
  std::vector<WidthRow> rows;
  WidthSummary summary;
  std::vector<ClaimCheck> claims;
};

/// Rows n = 1..len-1 (the last level only bounds the previous row).
WidthReport width_table(const std::vector<EchelonBasis>& series);
WidthReport width_table(const GroupParams& params, int n_max);

nlohmann::json to_json(const WidthReport& r);
/// Columns n, delta_size, delta_minus, delta_zero, stable.
std::string to_csv(const WidthReport& r);

// ---------------------------------------------------------------------------
// Obliquity witnesses

struct ObliquityRow {
  int n;
  /// m(n) = p(n-1)q + 1; H_n is the congruence subgroup of depth >= m(n).
  int threshold;
  int witness_depth;
  bool witness_in_hn;
  bool witness_in_gamma_next;
  /// |Gamma_{n+1} cap [1, m(n))|, i.e. log_p |gamma_{n+1} : gamma_{n+1} cap H_n|.
  std::size_t index_exponent;
  std::optional<int> min_depth;
  int predicted_min_depth;
  bool fact_one;
  std::optional<int> min_divisible_depth;
  int predicted_min_divisible_depth;
  bool fact_two;
};

struct ObliquityReport {
  GroupParams params;
  std::vector<ObliquityRow> rows;
  bool monotone_increasing;
  bool fact_one_holds;
  bool fact_two_holds;
};

/// Rows n = 2..len-1. Throws Error(out_of_horizon) when a row's witness depth
/// is not below NT - q.
ObliquityReport obliquity_table(const std::vector<EchelonBasis>& series);
ObliquityReport obliquity_table(const GroupParams& params, int n_max);

nlohmann::json to_json(const ObliquityReport& r);
std::string to_csv(const ObliquityReport& r);

// ---------------------------------------------------------------------------
// Truncation stability

struct StabilityMismatch {
  int n;
  std::vector<int> only_small;
  std::vector<int> only_large;
};

struct StabilityReport {
  GroupParams small;
  GroupParams large;
  int n_max;
  int compared_below;
  bool agree;
  std::vector<StabilityMismatch> mismatches;
};

/// Compares gamma_n depth sets of two horizons on [1, NT_small - q).
StabilityReport stability_check(const std::vector<EchelonBasis>& small, const std::vector<EchelonBasis>& large);
StabilityReport stability_check(const GroupParams& small, const GroupParams& large, int n_max);

nlohmann::json to_json(const StabilityReport& r);

}  // namespace fesenko

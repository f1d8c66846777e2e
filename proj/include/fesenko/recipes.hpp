#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fesenko/tgroup.hpp"
#include "fesenko/word.hpp"
#include "json.hpp"

namespace fesenko {

/// Leading units of [t + t^{3*2+1}, t + t^{3*1+1}] at p = 3 under both
/// product conventions, computed on Nottingham-scale series with the naive
/// substitution kernel. The leading-term formula for commutators predicts
/// unit i*a*b = 2; `chosen` is the convention that produces it.
struct ConventionCalibration {
  Residue unit_u_of_v;
  Residue unit_v_of_u;
  Convention chosen;
};

ConventionCalibration calibrate_convention();

enum class VerdictStatus { pass, fail, inapplicable };
std::string_view to_string(VerdictStatus s);

/// Outcome of checking a leading-term commutator formula on one instance
/// u = t + a t^{qi+1}, v = t + b t^{qj+1}.
struct RecipeVerdict {
  int recipe;  // 1: coprime i, 2: p | i
  int i, j;
  Residue a, b;
  VerdictStatus status;
  std::string reason;  // why an instance is inapplicable
  int predicted_depth = 0;
  Residue predicted_unit = 0;
  Depth actual_depth = Depth::infinity();
  Residue actual_unit = 0;
  Convention convention;
};

/// Coprime case: predicts depth qj + i and unit i*a*b.
/// Inapplicable unless i > j >= 1, p does not divide i, a and b are nonzero
/// and qj + i < NT.
RecipeVerdict check_recipe_one(int i, int j, long long a, long long b, const GroupParams& params);

/// Divisible case i = i0 * p^n, n >= 1: predicts depth q p^n j + i and unit
/// i0*a*b. Requires i (q - 1) > j (q p^n - 1), compared exactly.
RecipeVerdict check_recipe_two(int i, int j, long long a, long long b, const GroupParams& params);

/// Exact form of the divisible-case hypothesis.
bool recipe_two_hypothesis(int i, int j, int p, int q);

nlohmann::json to_json(const RecipeVerdict& v);

enum class RealizationStatus { verified, unrealized, precondition };
std::string_view to_string(RealizationStatus s);

/// One commutator factor [u, v] of a certificate with the depths of u and v.
struct FactorRecord {
  int u_depth;
  int v_depth;
  bool in_window;
};

struct RealizationResult {
  int i, j, s;
  int target_depth;
  RealizationStatus status;
  std::string message;
  CommutatorWord word;
  std::vector<FactorRecord> constraints_log;
  /// True when re-evaluating `word` gives exactly t + t^{q*target_depth + 1}
  /// modulo the horizon.
  bool verified = false;
  std::size_t candidates_used = 0;

  std::size_t factor_count() const { return constraints_log.size(); }
};

/// Realizes t + t^{q(qj + p^s i) + 1} as a product of commutators [u, v] with
/// depth(u) >= i, j - q <= depth(v) <= j and p not dividing
/// depth(u) (depth(u) - depth(v)).
///
/// Candidates are commutators of generators inside these windows, inserted
/// into a word-tracked echelon basis; the inverse target is sifted and the
/// reduction word, rewritten with positive exponents only, is the
/// certificate. Preconditions:
/// i > j >= q^2 + q, p divides neither i nor i - j, p^s <= q, and the target
/// depth lies below NT - q.
RealizationResult realize_recipe_three(int i, int j, int s, const GroupParams& params);

nlohmann::json to_json(const RealizationResult& r);

// Samplers draw from std::mt19937_64, whose output sequence is fixed by the
// standard, and map draws to ranges by modulo so results are identical across
// standard libraries.

/// `count` instances (i, j, a, b) satisfying the coprime-case preconditions.
std::vector<RecipeVerdict> random_recipe_one_trials(const GroupParams& params, int count, std::uint64_t seed);

/// Every (i, j) with p | i, i <= i_max, j <= j_max, for which the divisible
/// case applies at this horizon, with units a = b = 1 and a second seeded
/// unit pair.
std::vector<RecipeVerdict> exhaustive_recipe_two_trials(const GroupParams& params, int i_max, int j_max,
                                                        std::uint64_t seed);

/// `count` seeded applicable instances of the divisible case.
std::vector<RecipeVerdict> random_recipe_two_trials(const GroupParams& params, int count, std::uint64_t seed);

}  // namespace fesenko

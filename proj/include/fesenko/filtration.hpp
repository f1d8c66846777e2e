#pragma once

#include <optional>
#include <vector>

#include "fesenko/tgroup.hpp"
#include "fesenko/word.hpp"
#include "json.hpp"

namespace fesenko {

/// Sorted set of depths below a horizon NT.
class DepthSet {
 public:
  explicit DepthSet(int horizon, std::vector<int> members = {});

  int horizon() const { return horizon_; }
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int d) const;
  /// Number of members strictly below m.
  std::size_t count_below(int m) const;
  std::optional<int> min() const;
  std::optional<int> max() const;

  template <class Pred>
  DepthSet filter(Pred pred) const {
    std::vector<int> out;
    for (int d : members_)
      if (pred(d)) out.push_back(d);
    return DepthSet(horizon_, std::move(out));
  }

  friend DepthSet set_union(const DepthSet& a, const DepthSet& b);
  friend DepthSet set_difference(const DepthSet& a, const DepthSet& b);
  friend bool operator==(const DepthSet&, const DepthSet&) = default;

 private:
  int horizon_;
  std::vector<int> members_;
};

/// {"depths": [...], "horizon": NT, "stable_below": NT - q}
nlohmann::json to_json(const DepthSet& s, int stable_below);

struct Slot {
  TElement element;
  Residue unit;
  CommutatorWord word;
  /// element^-m for m = 0..p-1, cached for single-multiplication reduction steps.
  std::vector<TElement> inverse_powers;
  TElement inverse;
};

struct Reduction {
  TElement residual;
  CommutatorWord residual_word;
};

/// Depth-indexed echelon generating data for a subgroup of T(r)/T_NT: at most
/// one slot per depth, each slot's element having exactly that depth.
class EchelonBasis {
 public:
  explicit EchelonBasis(const GroupParams& params);

  const GroupParams& params() const { return params_; }
  const Slot* slot(int depth) const;
  std::vector<int> depths() const;
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  /// Smallest m such that every depth in [m, NT) is occupied (NT if none).
  int tail_start() const { return tail_; }

  /// Sifts x through the slots. Each step multiplies the residual by the
  /// inverse slot power that cancels its leading unit, so the depth strictly
  /// grows and a slot's own element sifts to the identity.
  Reduction reduce(const TElement& x, const CommutatorWord& w) const;
  /// Reduces x and stores the residual at its depth unless it is the
  /// identity. Returns whether a slot was added.
  bool insert(const TElement& x, const CommutatorWord& w);
  /// As insert, returning the depth of the new slot.
  std::optional<int> add(const TElement& x, const CommutatorWord& w);
  /// True when x sifts to the identity.
  bool spans(const TElement& x) const;

 private:
  // Shared loop for reduce/insert/spans. With early_exit, stops as soon as the
  // residual reaches the fully occupied tail, where sifting always succeeds.
  std::optional<Reduction> sift(const TElement& x, const CommutatorWord& w, bool early_exit) const;
  void store(Reduction r);

  GroupParams params_;
  std::vector<std::optional<Slot>> slots_;
  std::size_t count_ = 0;
  int tail_;
};

Reduction reduce(const EchelonBasis& basis, const TElement& x, const CommutatorWord& w);
bool insert(EchelonBasis& basis, const TElement& x, const CommutatorWord& w);

/// Closes the basis to the normal closure (under the given conjugators) of the
/// subgroup its slots generate. New elements come from p-th powers of slots
/// and commutators of slots with slots and with conjugators; since
/// a^g = a[a,g], adding [a,g] is equivalent to adding a^g once a is in.
EchelonBasis close(EchelonBasis basis, const std::vector<TElement>& conjugators);

/// All generators t + t^{qk+1}, 1 <= k < NT, with their words.
std::vector<TElement> t_generators(const GroupParams& params);

/// The basis of T itself: one generator per depth.
EchelonBasis full_group_basis(const GroupParams& params);

/// gamma_{n+1} = [gamma_n, T] as a closed basis.
EchelonBasis lcs_next(const EchelonBasis& gamma_n, const std::vector<TElement>& t_gens);

/// [gamma_1, ..., gamma_{n_max}].
std::vector<EchelonBasis> lcs_series(const GroupParams& params, int n_max);

DepthSet depth_set(const EchelonBasis& basis);

/// Index exponent of {x in span : depth(x) >= m} in the span: the number of
/// occupied depths below m.
std::size_t index_exponent_below(const EchelonBasis& basis, int m);

/// Largest quotient order accepted by brute_lcs.
inline constexpr long long brute_force_order_limit = 20000;

/// Independent oracle: enumerates T/T_NT element by element (Nottingham-scale
/// series), forms gamma_{n+1} as the subgroup generated by all [x, g] with
/// x in gamma_n and g in T, and returns the depth sets of gamma_1..gamma_{n_max}.
/// Throws Error(size_guard) when p^{NT-1} exceeds brute_force_order_limit.
std::vector<DepthSet> brute_lcs(const GroupParams& params, int n_max);

struct BruteLcs {
  std::vector<DepthSet> depth_sets;
  /// |gamma_n| in T/T_NT, counted by the enumeration.
  std::vector<long long> orders;
};

/// As brute_lcs, also reporting the subgroup orders.
BruteLcs brute_lcs_with_orders(const GroupParams& params, int n_max);

}  // namespace fesenko

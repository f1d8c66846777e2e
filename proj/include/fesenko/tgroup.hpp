#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fesenko/field.hpp"
#include "fesenko/series.hpp"
#include "json.hpp"

namespace fesenko {

/// Arithmetic context for the truncated Fesenko group T(r)/T_NT.
///
/// Elements of T are t + sum_k a_k t^{qk+1}. Working modulo t^{q*NT+1} is
/// exactly the quotient by T_NT, so the series precision is NS = q*NT.
class GroupParams {
 public:
  GroupParams(long long p, int r, int nt, Convention convention = calibrated_convention);

  FieldPrime field() const { return field_; }
  int p() const { return field_.value(); }
  int r() const { return r_; }
  int q() const { return q_; }
  /// Depth horizon: depths 1..nt-1 are tracked.
  int nt() const { return nt_; }
  int ns() const { return q_ * nt_; }
  Convention convention() const { return convention_; }
  /// Depths below this are outside the guard band of width q.
  int stable_below() const { return nt_ - q_; }

  GroupParams with_horizon(int nt) const { return GroupParams(p(), r_, nt, convention_); }

  friend bool operator==(const GroupParams&, const GroupParams&) = default;

 private:
  FieldPrime field_;
  int r_;
  int q_;
  int nt_;
  Convention convention_;
};

nlohmann::json to_json(const GroupParams& params);

/// An element of T(r)/T_NT.
///
/// Stored compressed: u = t * A(t^q) with A = 1 + sum_k a_k x^k, and a_k kept
/// for k < NT. Under this encoding substitution reduces to
///   A_{f(g)}(x) = A_g(x) * A_f(x * A_g(x^q))
/// because g(t)^q = t^q A_g(t^{q^2}) over F_p.
class TElement {
 public:
  static TElement identity(const GroupParams& params);
  /// From (depth k, coefficient) pairs, k in [1, NT).
  static TElement from_terms(const GroupParams& params, std::span<const std::pair<int, long long>> terms);
  static TElement from_terms(const GroupParams& params, std::initializer_list<std::pair<int, long long>> terms);

  const GroupParams& params() const { return params_; }
  /// Coefficient of t^{qk+1}; coeff(0) = 1.
  Residue coeff(int k) const { return (k >= 0 && k < int(a_.size())) ? a_[k] : Residue{0}; }
  std::span<const Residue> compressed() const { return a_; }
  bool is_identity() const;
  /// The Nottingham-scale series (precision q*NT).
  Series series() const;

  friend bool operator==(const TElement&, const TElement&) = default;

 private:
  TElement(GroupParams params, std::vector<Residue> a) : params_(params), a_(std::move(a)) {}
  friend TElement make_t(const Series&, const GroupParams&);
  friend TElement compose(const TElement&, const TElement&);
  friend TElement comp_inverse(const TElement&);

  GroupParams params_;
  std::vector<Residue> a_;
};

/// Validates that a series lies in T. Throws SupportViolation(e) for the first
/// exponent e != 1 mod q, Error(context_mismatch) for a foreign p or NS.
TElement make_t(const Series& series, const GroupParams& params);

/// t + unit * t^{qk+1}; throws Error(out_of_horizon) unless 1 <= k < NT.
TElement gen(int k, const GroupParams& params, long long unit = 1);

Depth tdepth(const TElement& u);
/// Leading coefficient u_{qk+1}; throws Error(identity_input) on the identity.
Residue leading_unit(const TElement& u);

/// Raw substitution f(g(t)).
TElement compose(const TElement& f, const TElement& g);
TElement comp_inverse(const TElement& u);
TElement group_mul(const TElement& u, const TElement& v);
TElement group_pow(const TElement& u, long long m);
/// [u, v] = u^-1 v^-1 u v.
TElement commutator(const TElement& u, const TElement& v);
/// [u, v] from precomputed inverses; three compositions, no inversion.
TElement commutator(const TElement& u, const TElement& u_inv, const TElement& v, const TElement& v_inv);
/// g^-1 u g.
TElement conjugate(const TElement& u, const TElement& g);
/// True iff u lies in T_m, i.e. tdepth(u) >= m.
bool in_congruence(const TElement& u, int m);

nlohmann::json to_json(const TElement& u);

}  // namespace fesenko

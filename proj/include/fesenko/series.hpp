#pragma once

#include <climits>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fesenko/field.hpp"
#include "json.hpp"

namespace fesenko {

/// A depth value that may be infinite (the truncated identity).
class Depth {
 public:
  constexpr explicit Depth(int k) : k_(k) {}
  static constexpr Depth infinity() { return Depth(INT_MAX); }

  constexpr bool is_infinite() const { return k_ == INT_MAX; }
  constexpr bool is_finite() const { return k_ != INT_MAX; }
  /// The integer depth; only meaningful when finite.
  constexpr int value() const { return k_; }

  friend constexpr auto operator<=>(const Depth&, const Depth&) = default;

 private:
  int k_;
};

std::string to_string(Depth d);
nlohmann::json to_json(Depth d);

/// Which way round a product of substitutions is read.
///
/// u_of_v:  (uv)(t) = u(v(t))
/// v_of_u:  (uv)(t) = v(u(t))
enum class Convention { u_of_v, v_of_u };

/// The convention fixed by calibrating against the leading unit of the
/// commutator [t+t^7, t+t^4] at p = 3 (see calibrate_convention).
inline constexpr Convention calibrated_convention = Convention::u_of_v;

std::string_view to_string(Convention c);
Convention convention_from_string(std::string_view s);

/// A normalized truncated power series t + sum_{e=2}^{NS} c_e t^e over F_p.
///
/// Storage is dense over exponents 0..NS with c_0 = 0 and c_1 = 1 pinned,
/// so two equal series are equal vectors.
class Series {
 public:
  static Series identity(FieldPrime p, int precision);
  /// Builds from sparse (exponent, value) pairs; values are reduced mod p and
  /// zeros dropped. Exponents outside [2, precision] are rejected.
  static Series from_terms(FieldPrime p, int precision, std::span<const std::pair<int, long long>> terms);
  static Series from_terms(FieldPrime p, int precision, std::initializer_list<std::pair<int, long long>> terms);
  /// Takes a dense vector of length precision + 1; entries 0 and 1 must be 0 and 1.
  static Series from_dense(FieldPrime p, std::vector<Residue> dense);

  FieldPrime prime() const { return p_; }
  int precision() const { return static_cast<int>(c_.size()) - 1; }
  Residue coeff(int e) const { return (e >= 0 && e < int(c_.size())) ? c_[e] : Residue{0}; }
  std::span<const Residue> dense() const { return c_; }
  /// Nonzero (exponent, value) pairs for exponents >= 2, ascending.
  std::vector<std::pair<int, int>> terms() const;
  bool is_identity() const;

  friend bool operator==(const Series&, const Series&) = default;

 private:
  Series(FieldPrime p, std::vector<Residue> c) : p_(p), c_(std::move(c)) {}

  FieldPrime p_;
  std::vector<Residue> c_;
};

/// f(g(t)) truncated at the shared precision.
Series substitute(const Series& f, const Series& g);

/// Reference substitution by repeated multiplication; used as a test oracle.
Series substitute_naive(const Series& f, const Series& g);

/// Two-sided compositional inverse.
Series comp_inverse(const Series& f);

Series group_mul(const Series& u, const Series& v, Convention c = calibrated_convention);
/// m-fold product; negative m multiplies inverses, m = 0 gives t.
Series group_pow(const Series& u, long long m, Convention c = calibrated_convention);

/// Nottingham depth: smallest k >= 1 with a nonzero coefficient at t^{k+1}.
Depth j_depth(const Series& u);

/// "t + 2*t^4 + t^7 (mod t^17, p=3)"
std::string to_string(const Series& s);
nlohmann::json to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);

}  // namespace fesenko

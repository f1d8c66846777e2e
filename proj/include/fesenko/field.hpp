#pragma once

#include <cstdint>

namespace fesenko {

/// Residues of F_p are stored as 16-bit words; p <= 2^15 keeps every
/// product below 2^30.
using Residue = std::uint16_t;

/// Deterministic trial-division primality check.
bool is_prime(long long n);

/// The coefficient field F_p for an odd prime p.
class FieldPrime {
 public:
  static constexpr int max_prime = 1 << 15;

  /// Throws Error(nonprime) for p composite or p = 2, Error(invalid_parameter)
  /// for p > 2^15.
  explicit FieldPrime(long long p);

  int value() const noexcept { return p_; }

  Residue reduce(long long x) const noexcept {
    long long r = x % p_;
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    unsigned s = unsigned(a) + b;
    return static_cast<Residue>(s >= unsigned(p_) ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(a >= b ? a - b : a + p_ - b);
  }
  Residue neg(Residue a) const noexcept { return static_cast<Residue>(a == 0 ? 0 : p_ - a); }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((std::uint32_t(a) * b) % unsigned(p_));
  }
  /// Multiplicative inverse; a must be nonzero.
  Residue inv(Residue a) const;

  friend bool operator==(const FieldPrime&, const FieldPrime&) = default;

 private:
  int p_;
};

/// Exact p-adic valuation of a positive integer.
int padic_valuation(long long n, int p);

}  // namespace fesenko

#include "fesenko/field.hpp"

#include <string>

#include "fesenko/error.hpp"

namespace fesenko {

bool is_prime(long long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldPrime::FieldPrime(long long p) : p_(0) {
  if (!is_prime(p)) throw Error(ErrorCode::nonprime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorCode::nonprime, "p = 2 is not supported; p must be an odd prime");
  if (p > max_prime)
    throw Error(ErrorCode::invalid_parameter, "p = " + std::to_string(p) + " exceeds 2^15");
  p_ = static_cast<int>(p);
}

Residue FieldPrime::inv(Residue a) const {
  if (a % p_ == 0) throw Error(ErrorCode::invalid_parameter, "zero has no inverse in F_p");
  // Fermat: a^(p-2)
  std::uint32_t result = 1, base = a % p_;
  for (int e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % unsigned(p_);
    base = base * base % unsigned(p_);
  }
  return static_cast<Residue>(result);
}

int padic_valuation(long long n, int p) {
  if (n <= 0) throw Error(ErrorCode::invalid_parameter, "valuation of a non-positive integer");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace fesenko

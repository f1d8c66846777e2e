#pragma once

// Truncated polynomial arithmetic over F_p on dense coefficient vectors.
// Index i holds the coefficient of x^i. These are the hot loops behind both
// the Nottingham-scale Series and the compressed T-scale elements.

#include <cstddef>
#include <span>
#include <vector>

#include "fesenko/field.hpp"

namespace fesenko::kernel {

using Coeffs = std::vector<Residue>;

/// a * b mod x^n. Zero entries of `a` are skipped, so pass the sparser
/// operand first.
Coeffs mul_trunc(std::span<const Residue> a, std::span<const Residue> b, std::size_t n, int p);

/// f(y) mod x^n for y with zero constant term.
///
/// Uses the Frobenius split f(y) = sum_{j<p} y^j f_j(y^p) together with
/// y(x)^p = y(x^p) over F_p, so each f_j is composed with the same y at
/// precision ceil(n/p). Small problems fall back to Horner.
Coeffs compose(std::span<const Residue> f, std::span<const Residue> y, std::size_t n, int p);

/// Horner-only composition; kept separate so tests can pit the two paths
/// against each other.
Coeffs compose_horner(std::span<const Residue> f, std::span<const Residue> y, std::size_t n, int p);

/// Reference kernel: accumulates f_e * y^e with y^e formed by repeated
/// multiplication. O(n^3); tests and small oracles only.
Coeffs compose_naive(std::span<const Residue> f, std::span<const Residue> y, std::size_t n, int p);

}  // namespace fesenko::kernel

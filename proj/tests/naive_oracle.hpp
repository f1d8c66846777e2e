#pragma once

// Test-only reference arithmetic on dense coefficient vectors, written
// independently of the library kernels.

#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "fesenko/series.hpp"
#include "fesenko/word.hpp"

namespace oracle {

using Poly = std::vector<int>;

// a * b mod x^n.
inline Poly mul(const Poly& a, const Poly& b, int n, int p) {
  Poly out(n, 0);
  for (int i = 0; i < n && i < int(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j < n && j < int(b.size()); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return out;
}

// sum_e f_e g^e mod x^n, g^e by repeated multiplication. Exponents of f are
// assumed to lie in {1, 1 + step, 1 + 2 step, ...} so only those powers are
// formed; step = 1 handles general f.
inline Poly compose(const Poly& f, const Poly& g, int n, int p, int step = 1) {
  Poly out(n, 0);
  Poly g_step(n, 0);
  g_step[0] = 1;
  for (int k = 0; k < step; ++k) g_step = mul(g_step, g, n, p);
  Poly power = g;
  for (int e = 1; e < int(f.size()) && e < n; e += step) {
    if (e > 1) power = mul(power, g_step, n, p);
    if (f[e] == 0) continue;
    for (int i = 0; i < n; ++i) out[i] = (out[i] + f[e] * power[i]) % p;
  }
  return out;
}

inline Poly dense(const fesenko::Series& s) {
  Poly out;
  for (auto c : s.dense()) out.push_back(c);
  return out;
}

inline fesenko::Series to_series(const Poly& a, fesenko::FieldPrime f) {
  std::vector<fesenko::Residue> c;
  for (int v : a) c.push_back(static_cast<fesenko::Residue>(v));
  return fesenko::Series::from_dense(f, std::move(c));
}

// Evaluates a word on Nottingham-scale series with the u(v(t)) product,
// using oracle::compose for every substitution. Inverses come from the
// library but each one is checked by back-substitution here.
struct WordEvaluator {
  fesenko::FieldPrime field;
  int ns;
  int q;
  std::map<const void*, Poly> memo;

  int n() const { return ns + 1; }

  Poly mul_group(const Poly& u, const Poly& v) { return compose(u, v, n(), field.value(), q); }

  Poly inverse(const Poly& u) {
    Poly inv = dense(fesenko::comp_inverse(to_series(u, field)));
    Poly t(n(), 0);
    t[1] = 1;
    EXPECT_EQ(compose(u, inv, n(), field.value(), q), t) << "library inverse failed back-substitution";
    return inv;
  }

  Poly eval(const fesenko::CommutatorWord& w) {
    using K = fesenko::CommutatorWord::Kind;
    if (auto it = memo.find(w.id()); it != memo.end()) return it->second;
    Poly r(n(), 0);
    r[1] = 1;
    switch (w.kind()) {
      case K::identity: break;
      case K::gen: r[q * w.gen_depth() + 1] = 1; break;
      case K::product: r = mul_group(eval(w.left()), eval(w.right())); break;
      case K::inverse: r = inverse(eval(w.left())); break;
      case K::commutator: {
        Poly a = eval(w.left()), b = eval(w.right());
        r = mul_group(mul_group(inverse(a), inverse(b)), mul_group(a, b));
        break;
      }
      case K::power: {
        Poly a = eval(w.left());
        long long m = w.exponent();
        if (m < 0) {
          a = inverse(a);
          m = -m;
        }
        for (long long k = 0; k < m; ++k) r = mul_group(r, a);
        break;
      }
    }
    memo.emplace(w.id(), r);
    return r;
  }
};

// Smallest e >= 2 with a nonzero coefficient, minus one; -1 for t.
inline int j_depth(const Poly& u) {
  for (int e = 2; e < int(u.size()); ++e)
    if (u[e] != 0) return e - 1;
  return -1;
}

}  // namespace oracle

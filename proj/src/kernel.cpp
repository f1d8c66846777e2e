#include "fesenko/kernel.hpp"

#include <algorithm>
#include <cstdint>

namespace fesenko::kernel {

namespace {

constexpr std::size_t horner_cutoff = 24;

std::size_t effective_length(std::span<const Residue> f, std::size_t n) {
  std::size_t len = std::min(f.size(), n);
  while (len > 0 && f[len - 1] == 0) --len;
  return len;
}

// Nonzero positions of y below n, so repeated products by y touch only its
// support (y is sparse for T-elements: one entry in q).
struct Support {
  std::vector<std::uint32_t> index;
  std::vector<std::uint32_t> value;
};

Support support_of(std::span<const Residue> y, std::size_t n) {
  Support s;
  const std::size_t lim = std::min(y.size(), n);
  for (std::size_t i = 0; i < lim; ++i)
    if (y[i] != 0) {
      s.index.push_back(static_cast<std::uint32_t>(i));
      s.value.push_back(y[i]);
    }
  return s;
}

// out = y * r + add  (mod x^n, mod p); out must not alias r.
void mul_add(const Support& y, const Coeffs& r, const Residue* add, std::size_t n, int p,
             std::vector<std::uint64_t>& acc, Coeffs& out) {
  acc.assign(n, 0);
  if (add)
    for (std::size_t k = 0; k < n; ++k) acc[k] = add[k];
  for (std::size_t t = 0; t < y.index.size(); ++t) {
    const std::size_t i = y.index[t];
    if (i >= n) break;
    const std::uint64_t yi = y.value[t];
    const std::size_t lim = n - i;
    const Residue* src = r.data();
    std::uint64_t* dst = acc.data() + i;
    for (std::size_t j = 0; j < lim; ++j) dst[j] += yi * src[j];
  }
  out.resize(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<Residue>(acc[k] % std::uint64_t(p));
}

Coeffs horner(std::span<const Residue> f, const Support& y, std::size_t n, int p, std::vector<std::uint64_t>& acc) {
  Coeffs r(n, 0);
  const std::size_t len = effective_length(f, n);
  if (len == 0) return r;
  r[0] = f[len - 1];
  Coeffs next;
  for (std::size_t k = len - 1; k-- > 0;) {
    mul_add(y, r, nullptr, n, p, acc, next);
    next[0] = static_cast<Residue>((next[0] + f[k]) % p);
    std::swap(r, next);
  }
  return r;
}

Coeffs compose_split(std::span<const Residue> f, const Support& y, std::size_t n, int p,
                     std::vector<std::uint64_t>& acc) {
  const std::size_t len = effective_length(f, n);
  const std::size_t up = static_cast<std::size_t>(p);
  if (n <= horner_cutoff || len <= 2 * up) return horner(f, y, n, p, acc);

  // f = sum_j x^j f_j(x^p); each f_j only matters below ceil(n/p).
  const std::size_t sub_n = (n + up - 1) / up;
  std::vector<Coeffs> parts(up);
  Coeffs fj;
  for (std::size_t j = 0; j < up; ++j) {
    fj.clear();
    for (std::size_t m = 0; j + up * m < len && m < sub_n; ++m) fj.push_back(f[j + up * m]);
    Coeffs cj = compose_split(fj, y, sub_n, p, acc);
    Coeffs inflated(n, 0);
    for (std::size_t m = 0; m < cj.size() && up * m < n; ++m) inflated[up * m] = cj[m];
    parts[j] = std::move(inflated);
  }
  Coeffs r = std::move(parts[up - 1]);
  Coeffs next;
  for (std::size_t j = up - 1; j-- > 0;) {
    mul_add(y, r, parts[j].data(), n, p, acc, next);
    std::swap(r, next);
  }
  return r;
}

}  // namespace

Coeffs mul_trunc(std::span<const Residue> a, std::span<const Residue> b, std::size_t n, int p) {
  std::vector<std::uint64_t> acc(n, 0);
  const std::size_t na = std::min(a.size(), n);
  const std::size_t nb = std::min(b.size(), n);
  for (std::size_t i = 0; i < na; ++i) {
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    const std::size_t lim = std::min(nb, n - i);
    std::uint64_t* out = acc.data() + i;
    for (std::size_t j = 0; j < lim; ++j) out[j] += ai * b[j];
  }
  Coeffs c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = static_cast<Residue>(acc[k] % std::uint64_t(p));
  return c;
}

Coeffs compose_horner(std::span<const Residue> f, std::span<const Residue> y, std::size_t n, int p) {
  std::vector<std::uint64_t> acc;
  return horner(f, support_of(y, n), n, p, acc);
}

Coeffs compose(std::span<const Residue> f, std::span<const Residue> y, std::size_t n, int p) {
  std::vector<std::uint64_t> acc;
  return compose_split(f, support_of(y, n), n, p, acc);
}

Coeffs compose_naive(std::span<const Residue> f, std::span<const Residue> y, std::size_t n, int p) {
  Coeffs r(n, 0);
  Coeffs power(n, 0);
  if (n == 0) return r;
  power[0] = 1;
  const std::size_t len = std::min(f.size(), n);
  for (std::size_t e = 0; e < len; ++e) {
    if (e > 0) power = mul_trunc(power, y, n, p);
    if (f[e] == 0) continue;
    for (std::size_t k = 0; k < n; ++k)
      r[k] = static_cast<Residue>((r[k] + std::uint32_t(f[e]) * power[k]) % unsigned(p));
  }
  return r;
}

}  // namespace fesenko::kernel

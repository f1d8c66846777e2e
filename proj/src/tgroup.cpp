#include "fesenko/tgroup.hpp"

#include <string>

#include "fesenko/error.hpp"
#include "fesenko/kernel.hpp"

namespace fesenko {

GroupParams::GroupParams(long long p, int r, int nt, Convention convention)
    : field_(p), r_(r), q_(1), nt_(nt), convention_(convention) {
  if (r < 1) throw Error(ErrorCode::invalid_parameter, "r must be at least 1");
  if (nt < 4) throw Error(ErrorCode::invalid_parameter, "depth horizon NT must be at least 4");
  long long q = 1;
  for (int i = 0; i < r; ++i) {
    q *= p;
    if (q * nt > (1LL << 24)) throw Error(ErrorCode::invalid_parameter, "q*NT exceeds the supported precision");
  }
  q_ = static_cast<int>(q);
}

nlohmann::json to_json(const GroupParams& params) {
  return {{"p", params.p()},   {"r", params.r()},
          {"q", params.q()},   {"NT", params.nt()},
          {"NS", params.ns()}, {"convention", std::string(to_string(params.convention()))}};
}

namespace {

void check_context(const TElement& a, const TElement& b) {
  if (a.params() != b.params()) throw Error(ErrorCode::context_mismatch, "elements belong to different parameter sets");
}

}  // namespace

TElement TElement::identity(const GroupParams& params) {
  std::vector<Residue> a(std::size_t(params.nt()), 0);
  a[0] = 1;
  return TElement(params, std::move(a));
}

TElement TElement::from_terms(const GroupParams& params, std::span<const std::pair<int, long long>> terms) {
  TElement u = identity(params);
  for (auto [k, v] : terms) {
    if (k < 1 || k >= params.nt())
      throw Error(ErrorCode::out_of_horizon,
                  "depth " + std::to_string(k) + " outside [1, " + std::to_string(params.nt()) + ")");
    u.a_[k] = params.field().add(u.a_[k], params.field().reduce(v));
  }
  return u;
}

TElement TElement::from_terms(const GroupParams& params, std::initializer_list<std::pair<int, long long>> terms) {
  return from_terms(params, std::span<const std::pair<int, long long>>(terms.begin(), terms.size()));
}

bool TElement::is_identity() const {
  for (std::size_t k = 1; k < a_.size(); ++k)
    if (a_[k] != 0) return false;
  return true;
}

Series TElement::series() const {
  const int q = params_.q();
  std::vector<Residue> dense(std::size_t(params_.ns()) + 1, 0);
  dense[1] = 1;
  for (std::size_t k = 1; k < a_.size(); ++k) dense[q * k + 1] = a_[k];
  return Series::from_dense(params_.field(), std::move(dense));
}

TElement make_t(const Series& series, const GroupParams& params) {
  if (series.prime() != params.field() || series.precision() != params.ns())
    throw Error(ErrorCode::context_mismatch, "series context (p=" + std::to_string(series.prime().value()) +
                                                 ", NS=" + std::to_string(series.precision()) +
                                                 ") does not match the group parameters");
  std::vector<Residue> a(std::size_t(params.nt()), 0);
  a[0] = 1;
  for (auto [e, v] : series.terms()) {
    if ((e - 1) % params.q() != 0) throw SupportViolation(e);
    a[(e - 1) / params.q()] = static_cast<Residue>(v);
  }
  return TElement(params, std::move(a));
}

TElement gen(int k, const GroupParams& params, long long unit) {
  if (k < 1 || k >= params.nt())
    throw Error(ErrorCode::out_of_horizon,
                "generator depth " + std::to_string(k) + " outside [1, " + std::to_string(params.nt()) + ")");
  return TElement::from_terms(params, {{k, unit}});
}

Depth tdepth(const TElement& u) {
  auto a = u.compressed();
  for (std::size_t k = 1; k < a.size(); ++k)
    if (a[k] != 0) return Depth(static_cast<int>(k));
  return Depth::infinity();
}

Residue leading_unit(const TElement& u) {
  Depth d = tdepth(u);
  if (d.is_infinite()) throw Error(ErrorCode::identity_input, "the identity has no leading unit");
  return u.coeff(d.value());
}

namespace {

// A_f(x * A_g(x^q)) * A_g(x) mod x^n, with f and g given by their first n
// compressed coefficients.
kernel::Coeffs compose_compressed(std::span<const Residue> af, std::span<const Residue> ag, std::size_t n, int p,
                                  int q) {
  kernel::Coeffs y(n, 0);
  for (std::size_t k = 0; 1 + std::size_t(q) * k < n && k < ag.size(); ++k) y[1 + q * k] = ag[k];
  kernel::Coeffs inner = kernel::compose(af.first(std::min(af.size(), n)), y, n, p);
  return kernel::mul_trunc(ag.first(std::min(ag.size(), n)), inner, n, p);
}

}  // namespace

TElement compose(const TElement& f, const TElement& g) {
  check_context(f, g);
  const auto& params = f.params();
  auto out = compose_compressed(f.a_, g.a_, std::size_t(params.nt()), params.p(), params.q());
  return TElement(params, std::move(out));
}

TElement comp_inverse(const TElement& u) {
  // Newton-style doubling: if u(g) = t*(1 + d) with d = O(x^e), then
  // u(g(t*(1 - d))) = t*(1 + O(x^{2e})). Each round runs at the precision it
  // can certify, so the total cost is a small multiple of one composition.
  const auto& params = u.params();
  const int p = params.p();
  const int q = params.q();
  const std::size_t full = std::size_t(params.nt());
  kernel::Coeffs g{1};
  std::size_t correct = 1;
  while (correct < full) {
    const std::size_t n = std::min(full, 2 * correct);
    g.resize(n, 0);
    kernel::Coeffs h = compose_compressed(u.a_, g, n, p, q);
    kernel::Coeffs k(n, 0);
    k[0] = 1;
    for (std::size_t i = 1; i < n; ++i) k[i] = params.field().neg(h[i]);
    g = compose_compressed(g, k, n, p, q);
    correct = n;
  }
  g.resize(full, 0);
  return TElement(params, std::move(g));
}

TElement group_mul(const TElement& u, const TElement& v) {
  return u.params().convention() == Convention::u_of_v ? compose(u, v) : compose(v, u);
}

TElement group_pow(const TElement& u, long long m) {
  TElement base = m < 0 ? comp_inverse(u) : u;
  unsigned long long e = m < 0 ? 0ULL - static_cast<unsigned long long>(m) : static_cast<unsigned long long>(m);
  TElement result = TElement::identity(u.params());
  while (e > 0) {
    if (e & 1ULL) result = group_mul(result, base);
    e >>= 1;
    if (e > 0) base = group_mul(base, base);
  }
  return result;
}

TElement commutator(const TElement& u, const TElement& v) {
  check_context(u, v);
  // u^-1 v^-1 u v = (vu)^-1 (uv): one inversion instead of two.
  return group_mul(comp_inverse(group_mul(v, u)), group_mul(u, v));
}

TElement commutator(const TElement& u, const TElement& u_inv, const TElement& v, const TElement& v_inv) {
  check_context(u, v);
  return group_mul(group_mul(u_inv, v_inv), group_mul(u, v));
}

TElement conjugate(const TElement& u, const TElement& g) {
  check_context(u, g);
  return group_mul(group_mul(comp_inverse(g), u), g);
}

bool in_congruence(const TElement& u, int m) { return tdepth(u) >= Depth(m); }

nlohmann::json to_json(const TElement& u) {
  nlohmann::json j = to_json(u.series());
  j["r"] = u.params().r();
  return j;
}

}  // namespace fesenko

#include "fesenko/series.hpp"

#include <sstream>

#include "fesenko/error.hpp"
#include "fesenko/kernel.hpp"

namespace fesenko {

std::string to_string(Depth d) { return d.is_infinite() ? "INFINITY" : std::to_string(d.value()); }

nlohmann::json to_json(Depth d) {
  if (d.is_infinite()) return "INFINITY";
  return d.value();
}

std::string_view to_string(Convention c) { return c == Convention::u_of_v ? "u(v(t))" : "v(u(t))"; }

Convention convention_from_string(std::string_view s) {
  if (s == "u_of_v" || s == "u(v(t))") return Convention::u_of_v;
  if (s == "v_of_u" || s == "v(u(t))") return Convention::v_of_u;
  throw Error(ErrorCode::invalid_parameter, "unknown convention '" + std::string(s) + "'");
}

namespace {

void check_precision(int precision) {
  if (precision < 1) throw Error(ErrorCode::invalid_parameter, "series precision must be positive");
}

void check_context(const Series& a, const Series& b) {
  if (a.prime() != b.prime() || a.precision() != b.precision())
    throw Error(ErrorCode::context_mismatch,
                "series contexts differ (p=" + std::to_string(a.prime().value()) +
                    ", NS=" + std::to_string(a.precision()) + " vs p=" + std::to_string(b.prime().value()) +
                    ", NS=" + std::to_string(b.precision()) + ")");
}

}  // namespace

Series Series::identity(FieldPrime p, int precision) {
  check_precision(precision);
  std::vector<Residue> c(std::size_t(precision) + 1, 0);
  c[1] = 1;
  return Series(p, std::move(c));
}

Series Series::from_terms(FieldPrime p, int precision, std::span<const std::pair<int, long long>> terms) {
  Series s = identity(p, precision);
  for (auto [e, v] : terms) {
    if (e < 2 || e > precision)
      throw Error(ErrorCode::invalid_parameter,
                  "exponent " + std::to_string(e) + " outside [2, " + std::to_string(precision) + "]");
    s.c_[e] = p.add(s.c_[e], p.reduce(v));
  }
  return s;
}

Series Series::from_terms(FieldPrime p, int precision, std::initializer_list<std::pair<int, long long>> terms) {
  return from_terms(p, precision, std::span<const std::pair<int, long long>>(terms.begin(), terms.size()));
}

Series Series::from_dense(FieldPrime p, std::vector<Residue> dense) {
  if (dense.size() < 2 || dense[0] != 0 || dense[1] != 1)
    throw Error(ErrorCode::invalid_parameter, "series is not normalized (need c0 = 0, c1 = 1)");
  for (Residue& r : dense) r = static_cast<Residue>(r % p.value());
  return Series(p, std::move(dense));
}

std::vector<std::pair<int, int>> Series::terms() const {
  std::vector<std::pair<int, int>> out;
  for (int e = 2; e < int(c_.size()); ++e)
    if (c_[e] != 0) out.emplace_back(e, c_[e]);
  return out;
}

bool Series::is_identity() const {
  for (std::size_t e = 2; e < c_.size(); ++e)
    if (c_[e] != 0) return false;
  return true;
}

Series substitute(const Series& f, const Series& g) {
  check_context(f, g);
  const int p = f.prime().value();
  auto out = kernel::compose(f.dense(), g.dense(), f.dense().size(), p);
  return Series::from_dense(f.prime(), std::move(out));
}

Series substitute_naive(const Series& f, const Series& g) {
  check_context(f, g);
  auto out = kernel::compose_naive(f.dense(), g.dense(), f.dense().size(), f.prime().value());
  return Series::from_dense(f.prime(), std::move(out));
}

Series comp_inverse(const Series& f) {
  // If f(g) = t + d with d = O(t^e), then f(g(2t - f(g))) = t + O(t^{2e-1}),
  // so the number of correct terms roughly doubles per round.
  const FieldPrime p = f.prime();
  Series g = Series::identity(p, f.precision());
  for (;;) {
    Series h = substitute(f, g);
    if (h.is_identity()) return g;
    std::vector<Residue> k(h.dense().begin(), h.dense().end());
    for (std::size_t e = 2; e < k.size(); ++e) k[e] = p.neg(k[e]);
    g = substitute(g, Series::from_dense(p, std::move(k)));
  }
}

Series group_mul(const Series& u, const Series& v, Convention c) {
  return c == Convention::u_of_v ? substitute(u, v) : substitute(v, u);
}

Series group_pow(const Series& u, long long m, Convention c) {
  Series base = m < 0 ? comp_inverse(u) : u;
  unsigned long long e = m < 0 ? 0ULL - static_cast<unsigned long long>(m) : static_cast<unsigned long long>(m);
  Series result = Series::identity(u.prime(), u.precision());
  // Powers of a single element commute, so the convention cannot matter here.
  while (e > 0) {
    if (e & 1ULL) result = group_mul(result, base, c);
    e >>= 1;
    if (e > 0) base = group_mul(base, base, c);
  }
  return result;
}

Depth j_depth(const Series& u) {
  auto d = u.dense();
  for (std::size_t e = 2; e < d.size(); ++e)
    if (d[e] != 0) return Depth(static_cast<int>(e) - 1);
  return Depth::infinity();
}

std::string to_string(const Series& s) {
  std::ostringstream os;
  os << "t";
  for (auto [e, v] : s.terms()) {
    os << " + ";
    if (v != 1) os << v << "*";
    os << "t^" << e;
  }
  os << " (mod t^" << s.precision() + 1 << ", p=" << s.prime().value() << ")";
  return os.str();
}

nlohmann::json to_json(const Series& s) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (auto [e, v] : s.terms()) coeffs[std::to_string(e)] = v;
  return {{"p", s.prime().value()}, {"NS", s.precision()}, {"coeffs", coeffs}};
}

Series series_from_json(const nlohmann::json& j) {
  try {
    FieldPrime p(j.at("p").get<long long>());
    int ns = j.at("NS").get<int>();
    std::vector<std::pair<int, long long>> terms;
    for (auto& [key, value] : j.at("coeffs").items()) terms.emplace_back(std::stoi(key), value.get<long long>());
    return Series::from_terms(p, ns, terms);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_parameter, std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace fesenko

#include "fesenko/recipes.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>
#include <unordered_map>

#include "fesenko/error.hpp"
#include "fesenko/filtration.hpp"

namespace fesenko {

namespace {

Series naive_mul(const Series& u, const Series& v, Convention c) {
  return c == Convention::u_of_v ? substitute_naive(u, v) : substitute_naive(v, u);
}

Residue naive_commutator_unit(Convention c) {
  // p = 3, q = 3: u = t + t^7 (depth 2), v = t + t^4 (depth 1). The predicted
  // commutator depth is qj + i = 5, i.e. exponent 16.
  const FieldPrime f(3);
  const int ns = 24;
  const Series u = Series::from_terms(f, ns, {{7, 1}});
  const Series v = Series::from_terms(f, ns, {{4, 1}});
  const Series ui = comp_inverse(u);
  const Series vi = comp_inverse(v);
  const Series comm = naive_mul(naive_mul(naive_mul(ui, vi, c), u, c), v, c);
  return comm.coeff(16);
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

RecipeVerdict base_verdict(int recipe, int i, int j, long long a, long long b, const GroupParams& params) {
  RecipeVerdict v;
  v.recipe = recipe;
  v.i = i;
  v.j = j;
  v.a = params.field().reduce(a);
  v.b = params.field().reduce(b);
  v.status = VerdictStatus::inapplicable;
  v.convention = params.convention();
  return v;
}

void evaluate_verdict(RecipeVerdict& v, const GroupParams& params) {
  const TElement u = gen(v.i, params, v.a);
  const TElement w = gen(v.j, params, v.b);
  const TElement c = commutator(u, w);
  v.actual_depth = tdepth(c);
  v.actual_unit = v.actual_depth.is_finite() ? leading_unit(c) : Residue{0};
  const bool ok = v.actual_depth == Depth(v.predicted_depth) && v.actual_unit == v.predicted_unit;
  v.status = ok ? VerdictStatus::pass : VerdictStatus::fail;
}

// Rewrites a word without inverses or negative powers: every element of
// T/T_NT has p-power order, so x^-m = x^(ord(x) - m).
struct PositiveRewriter {
  struct Entry {
    CommutatorWord word;
    TElement element;
  };
  const GroupParams& params;
  std::unordered_map<const void*, Entry> memo;

  long long order(const TElement& x) const {
    long long ord = 1;
    for (TElement y = x; !y.is_identity(); y = group_pow(y, params.p())) ord *= params.p();
    return ord;
  }

  CommutatorWord positive_power(const Entry& e, long long m) const {
    const long long ord = order(e.element);
    return CommutatorWord::power(e.word, ((m % ord) + ord) % ord);
  }

  const Entry& rewrite(const CommutatorWord& w) {
    if (auto it = memo.find(w.id()); it != memo.end()) return it->second;
    using K = CommutatorWord::Kind;
    Entry out = [&]() -> Entry {
      switch (w.kind()) {
        case K::product: {
          const Entry& a = rewrite(w.left());
          const Entry& b = rewrite(w.right());
          return {CommutatorWord::product(a.word, b.word), group_mul(a.element, b.element)};
        }
        case K::inverse: {
          const Entry& a = rewrite(w.left());
          return {positive_power(a, -1), comp_inverse(a.element)};
        }
        case K::power: {
          const Entry& a = rewrite(w.left());
          return {positive_power(a, w.exponent()), group_pow(a.element, w.exponent())};
        }
        default: return {w, evaluate(w, params)};
      }
    }();
    return memo.emplace(w.id(), std::move(out)).first->second;
  }
};

}  // namespace

ConventionCalibration calibrate_convention() {
  ConventionCalibration c;
  c.unit_u_of_v = naive_commutator_unit(Convention::u_of_v);
  c.unit_v_of_u = naive_commutator_unit(Convention::v_of_u);
  c.chosen = c.unit_u_of_v == 2 ? Convention::u_of_v : Convention::v_of_u;
  return c;
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return "PASS";
    case VerdictStatus::fail: return "FAIL";
    case VerdictStatus::inapplicable: return "INAPPLICABLE";
  }
  return "?";
}

RecipeVerdict check_recipe_one(int i, int j, long long a, long long b, const GroupParams& params) {
  RecipeVerdict v = base_verdict(1, i, j, a, b, params);
  const int p = params.p();
  const int q = params.q();
  if (!(i > j && j >= 1)) {
    v.reason = "requires i > j >= 1";
    return v;
  }
  if (i % p == 0) {
    v.reason = "requires p not dividing i";
    return v;
  }
  if (v.a == 0 || v.b == 0) {
    v.reason = "units must be nonzero mod p";
    return v;
  }
  if (static_cast<long long>(q) * j + i >= params.nt()) {
    v.reason = "predicted depth beyond the horizon";
    return v;
  }
  v.predicted_depth = q * j + i;
  v.predicted_unit = params.field().mul(params.field().reduce(i), params.field().mul(v.a, v.b));
  evaluate_verdict(v, params);
  return v;
}

bool recipe_two_hypothesis(int i, int j, int p, int q) {
  const int n = padic_valuation(i, p);
  // i > j (q p^n - 1) / (q - 1), cross-multiplied.
  return static_cast<long long>(i) * (q - 1) > static_cast<long long>(j) * (q * ipow(p, n) - 1);
}

namespace {

// Empty when the divisible case applies to (i, j) at this horizon.
std::string recipe_two_obstruction(int i, int j, const GroupParams& params) {
  const int p = params.p();
  const int q = params.q();
  if (i < 1 || j < 1) return "requires i, j >= 1";
  const int n = padic_valuation(i, p);
  if (n < 1) return "requires p dividing i";
  if (!recipe_two_hypothesis(i, j, p, q)) return "hypothesis i(q-1) > j(q p^n - 1) fails";
  if (q * ipow(p, n) * j + i >= params.nt()) return "predicted depth beyond the horizon";
  return {};
}

}  // namespace

RecipeVerdict check_recipe_two(int i, int j, long long a, long long b, const GroupParams& params) {
  RecipeVerdict v = base_verdict(2, i, j, a, b, params);
  v.reason = recipe_two_obstruction(i, j, params);
  if (v.reason.empty() && (v.a == 0 || v.b == 0)) v.reason = "units must be nonzero mod p";
  if (!v.reason.empty()) return v;
  const int p = params.p();
  const int n = padic_valuation(i, p);
  const long long i0 = i / ipow(p, n);
  v.predicted_depth = static_cast<int>(params.q() * ipow(p, n) * j + i);
  v.predicted_unit = params.field().mul(params.field().reduce(i0), params.field().mul(v.a, v.b));
  evaluate_verdict(v, params);
  return v;
}

nlohmann::json to_json(const RecipeVerdict& v) {
  nlohmann::json j = {{"recipe", v.recipe}, {"i", v.i},
                      {"j", v.j},           {"a", v.a},
                      {"b", v.b},           {"status", std::string(to_string(v.status))},
                      {"convention", std::string(to_string(v.convention))}};
  if (v.status == VerdictStatus::inapplicable) {
    j["reason"] = v.reason;
  } else {
    j["predicted_depth"] = v.predicted_depth;
    j["predicted_unit"] = v.predicted_unit;
    j["actual_depth"] = to_json(v.actual_depth);
    j["actual_unit"] = v.actual_unit;
  }
  return j;
}

std::string_view to_string(RealizationStatus s) {
  switch (s) {
    case RealizationStatus::verified: return "VERIFIED";
    case RealizationStatus::unrealized: return "UNREALIZED";
    case RealizationStatus::precondition: return "PRECONDITION";
  }
  return "?";
}

RealizationResult realize_recipe_three(int i, int j, int s, const GroupParams& params) {
  const int p = params.p();
  const int q = params.q();
  const int nt = params.nt();
  RealizationResult res{i, j, s, 0, RealizationStatus::precondition, {}, CommutatorWord(), {}, false, 0};

  auto fail = [&](std::string msg) {
    res.status = RealizationStatus::precondition;
    res.message = std::move(msg);
    return res;
  };
  if (!(i > j && j >= q * q + q)) return fail("requires i > j >= q^2 + q");
  if (i % p == 0 || (i - j) % p == 0) return fail("requires p dividing neither i nor i - j");
  if (s < 0 || s > params.r()) return fail("requires 0 <= s with p^s <= q");
  const long long target = static_cast<long long>(q) * j + ipow(p, s) * i;
  if (target >= params.stable_below()) return fail("target depth " + std::to_string(target) + " not below NT - q");
  res.target_depth = static_cast<int>(target);

  auto in_window = [&](int du, int dv) {
    return du >= i && dv >= j - q && dv <= j && (static_cast<long long>(du) * (du - dv)) % p != 0;
  };

  struct Candidate {
    int depth, du, dv;
    TElement element;
  };
  std::vector<Candidate> candidates;
  for (int du = i; du < nt; ++du)
    for (int dv = std::max(1, j - q); dv <= j; ++dv) {
      if (!in_window(du, dv)) continue;
      TElement c = commutator(gen(du, params), gen(dv, params));
      const Depth d = tdepth(c);
      if (d.is_infinite()) continue;
      candidates.push_back({d.value(), du, dv, std::move(c)});
    }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.depth, x.du, x.dv) < std::tie(y.depth, y.du, y.dv);
  });

  // First pass keeps one raw commutator per depth; the rest are inserted
  // only if the target is not spanned without them.
  EchelonBasis basis(params);
  std::vector<const Candidate*> leftovers;
  auto word_of = [](const Candidate& c) {
    return CommutatorWord::commutator(CommutatorWord::gen(c.du), CommutatorWord::gen(c.dv));
  };
  for (const Candidate& c : candidates) {
    if (basis.slot(c.depth)) {
      leftovers.push_back(&c);
      continue;
    }
    basis.insert(c.element, word_of(c));
    ++res.candidates_used;
  }

  const TElement target_element = gen(res.target_depth, params);
  const TElement target_inverse = comp_inverse(target_element);
  Reduction red = basis.reduce(target_inverse, CommutatorWord());
  if (!red.residual.is_identity()) {
    for (const Candidate* c : leftovers)
      if (basis.insert(c->element, word_of(*c))) ++res.candidates_used;
    red = basis.reduce(target_inverse, CommutatorWord());
  }
  if (!red.residual.is_identity()) {
    res.status = RealizationStatus::unrealized;
    res.message = "residual of depth " + to_string(tdepth(red.residual)) + " left after sifting the target";
    return res;
  }
  res.word = PositiveRewriter{params, {}}.rewrite(red.residual_word).word;

  bool windows_ok = true;
  for (const CommutatorWord& f : flatten_factors(res.word)) {
    if (f.kind() != CommutatorWord::Kind::commutator || f.left().kind() != CommutatorWord::Kind::gen ||
        f.right().kind() != CommutatorWord::Kind::gen)
      throw Error(ErrorCode::precondition, "certificate factor is not a commutator of generators");
    const int du = f.left().gen_depth();
    const int dv = f.right().gen_depth();
    const bool ok = in_window(du, dv);
    windows_ok = windows_ok && ok;
    res.constraints_log.push_back({du, dv, ok});
  }
  res.verified = windows_ok && evaluate(res.word, params) == target_element;
  res.status = res.verified ? RealizationStatus::verified : RealizationStatus::unrealized;
  if (!res.verified) res.message = "certificate failed re-evaluation";
  return res;
}

nlohmann::json to_json(const RealizationResult& r) {
  nlohmann::json log = nlohmann::json::array();
  for (const FactorRecord& f : r.constraints_log)
    log.push_back({{"u_depth", f.u_depth}, {"v_depth", f.v_depth}, {"in_window", f.in_window}});
  nlohmann::json j = {{"i", r.i},
                      {"j", r.j},
                      {"s", r.s},
                      {"target_depth", r.target_depth},
                      {"status", std::string(to_string(r.status))},
                      {"verified", r.verified},
                      {"factor_count", r.factor_count()},
                      {"candidates_used", r.candidates_used},
                      {"constraints_log", std::move(log)}};
  if (!r.message.empty()) j["message"] = r.message;
  if (r.verified) j["word"] = to_json(r.word);
  return j;
}

namespace {

long long draw(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

std::vector<RecipeVerdict> random_recipe_one_trials(const GroupParams& params, int count, std::uint64_t seed) {
  const int p = params.p();
  const int q = params.q();
  const int nt = params.nt();
  if (q + 2 >= nt) throw Error(ErrorCode::invalid_parameter, "horizon too small for any coprime-case instance");
  std::mt19937_64 rng(seed);
  std::vector<RecipeVerdict> out;
  while (static_cast<int>(out.size()) < count) {
    // j first, then i in (j, NT - qj) coprime to p.
    const int j = static_cast<int>(draw(rng, 1, (nt - 3) / q));
    const int i_hi = nt - 1 - q * j;
    if (i_hi <= j) continue;
    const int i = static_cast<int>(draw(rng, j + 1, i_hi));
    if (i % p == 0) continue;
    const long long a = draw(rng, 1, p - 1);
    const long long b = draw(rng, 1, p - 1);
    out.push_back(check_recipe_one(i, j, a, b, params));
  }
  return out;
}

std::vector<RecipeVerdict> exhaustive_recipe_two_trials(const GroupParams& params, int i_max, int j_max,
                                                        std::uint64_t seed) {
  const int p = params.p();
  std::mt19937_64 rng(seed);
  std::vector<RecipeVerdict> out;
  for (int i = p; i <= i_max; i += p)
    for (int j = 1; j <= j_max; ++j) {
      if (!recipe_two_obstruction(i, j, params).empty()) continue;
      out.push_back(check_recipe_two(i, j, 1, 1, params));
      out.push_back(check_recipe_two(i, j, draw(rng, 1, p - 1), draw(rng, 1, p - 1), params));
    }
  return out;
}

std::vector<RecipeVerdict> random_recipe_two_trials(const GroupParams& params, int count, std::uint64_t seed) {
  const int p = params.p();
  std::vector<std::pair<int, int>> applicable;
  for (int i = p; i < params.nt(); i += p)
    for (int j = 1; j < params.nt(); ++j)
      if (recipe_two_obstruction(i, j, params).empty()) applicable.emplace_back(i, j);
  if (applicable.empty()) throw Error(ErrorCode::invalid_parameter, "no applicable divisible-case instance below NT");
  std::mt19937_64 rng(seed);
  std::vector<RecipeVerdict> out;
  for (int n = 0; n < count; ++n) {
    const auto [i, j] = applicable[static_cast<std::size_t>(draw(rng, 0, static_cast<long long>(applicable.size()) - 1))];
    out.push_back(check_recipe_two(i, j, draw(rng, 1, p - 1), draw(rng, 1, p - 1), params));
  }
  return out;
}

}  // namespace fesenko

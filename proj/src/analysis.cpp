#include "fesenko/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "fesenko/error.hpp"

namespace fesenko {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// {scale * x : x >= lo, pred(x)} below the horizon.
template <class Pred>
DepthSet multiples(long long scale, long long lo, int nt, Pred pred) {
  std::vector<int> out;
  for (long long x = std::max(1LL, lo); scale * x < nt; ++x)
    if (pred(x)) out.push_back(static_cast<int>(scale * x));
  return DepthSet(nt, std::move(out));
}

DepthSet all_of_part(int s, const GroupParams& params) {
  std::vector<int> out;
  for (int d = 1; d < params.nt(); ++d)
    if (depth_part(d, params) == s) out.push_back(d);
  return DepthSet(params.nt(), std::move(out));
}

DepthSet part_of(const DepthSet& set, int s, const GroupParams& params) {
  return set.filter([&](int d) { return depth_part(d, params) == s; });
}

std::string part_name(int s) { return s == 0 ? "gamma_minus" : "epsilon_" + std::to_string(s); }

// r = 1 only: the interval form used for large n.
DepthSet large_n_form(int n, const GroupParams& params) {
  const long long p = params.p();
  return multiples(p, p * p + p + n * p + 2, params.nt(), [](long long) { return true; });
}

DepthSet middle_form(int n, const GroupParams& params) { return set_union(family_c(params), family_a(n, params)); }

nlohmann::json discrepancies_json(const std::vector<Discrepancy>& ds) {
  nlohmann::json a = nlohmann::json::array();
  for (const Discrepancy& d : ds)
    a.push_back({{"depth", d.depth}, {"kind", std::string(to_string(d.kind))}, {"zone", std::string(to_string(d.zone))}});
  return a;
}

nlohmann::json params_json(const GroupParams& params) {
  nlohmann::json j = to_json(params);
  j["stable_below"] = params.stable_below();
  return j;
}

}  // namespace

int depth_part(int depth, const GroupParams& params) { return std::min(padic_valuation(depth, params.p()), params.r()); }

DepthSet predicted_gamma_minus(int n, const GroupParams& params) {
  if (n < 1) throw Error(ErrorCode::invalid_parameter, "n must be at least 1");
  if (n == 1) return all_of_part(0, params);
  const long long lo = static_cast<long long>(n - 1) * params.q() + 2;
  const int p = params.p();
  return multiples(1, lo, params.nt(), [p](long long x) { return x % p != 0; });
}

DepthSet family_c(const GroupParams& params) {
  const long long p = params.p();
  return multiples(p, 2 * (p * p + p) + 1, params.nt(), [](long long) { return true; });
}

DepthSet family_a(int n, const GroupParams& params) {
  const long long p = params.p();
  return multiples(p, (n - 1) * p + 2, params.nt(), [p](long long a) { return a % p != 0; });
}

DepthSet family_b(int n, const GroupParams& params, BReading reading) {
  const long long p = params.p();
  return multiples(p, p * ((n - 1) * p + 2), params.nt(), [p, reading](long long b) {
    if (b % (p * p) == 0) return false;
    return reading == BReading::verbatim || b % p == 0;
  });
}

DepthSet predicted_epsilon(int n, int s, const GroupParams& params, BReading reading) {
  if (n < 1) throw Error(ErrorCode::invalid_parameter, "n must be at least 1");
  if (s < 1 || s > params.r()) throw Error(ErrorCode::invalid_parameter, "part index s must lie in [1, r]");
  if (n == 1) return all_of_part(s, params);
  const long long p = params.p();
  const long long q = params.q();
  const int nt = params.nt();

  if (params.r() == 1) {
    if (n == 2) return set_union(middle_form(n, params), family_b(n, params, reading));
    if (n == 3) return set_union(middle_form(n, params), DepthSet(nt, {static_cast<int>(p * 2 * p * (p + 1))}));
    if (n <= p + 1) return middle_form(n, params);
    return large_n_form(n, params);
  }
  if (s < params.r())
    return multiples(ipow(p, s), (n - 1) * q + 1, nt, [p](long long l) { return l % p != 0; });
  if (n < q + 2) return multiples(q, 2 * q * q + 2 * q + 1, nt, [](long long) { return true; });
  return multiples(q, q * q + q + n * q + 2, nt, [](long long) { return true; });
}

DepthSet PredictedSets::gamma_zero() const {
  DepthSet out(gamma_minus.horizon());
  for (const DepthSet& e : epsilon) out = set_union(out, e);
  return out;
}

DepthSet PredictedSets::gamma() const { return set_union(gamma_minus, gamma_zero()); }

PredictedSets predicted_sets(int n, const GroupParams& params) {
  PredictedSets ps{n, predicted_gamma_minus(n, params), {}, {}, {}, {}, {}, {}, {}};
  for (int s = 1; s <= params.r(); ++s) {
    ps.epsilon.push_back(predicted_epsilon(n, s, params, BReading::verbatim));
    ps.epsilon_alternate.push_back(predicted_epsilon(n, s, params, BReading::alternate));
  }
  const int p = params.p();
  const int q = params.q();
  if (n == 1) {
    ps.rule = "all depths";
  } else if (params.r() == 1) {
    ps.c = family_c(params);
    ps.a_n = family_a(n, params);
    if (n == 2) {
      ps.b_n = family_b(n, params, BReading::verbatim);
      ps.b_n_alternate = family_b(n, params, BReading::alternate);
      ps.rule = "C+A_n+B_n";
    } else if (n == 3) {
      ps.rule = "C+A_n+{2p^2(p+1)}";
    } else if (n <= p + 1) {
      ps.rule = "C+A_n";
    } else {
      ps.rule = "interval gamma >= p^2+p+np+2";
    }
  } else {
    ps.rule = n < q + 2 ? "q-divisible: gamma >= 2q^2+2q+1" : "q-divisible: gamma >= q^2+q+nq+2";
  }
  return ps;
}

// ---------------------------------------------------------------------------

std::string_view to_string(DiscrepancyKind k) {
  return k == DiscrepancyKind::in_computed_only ? "IN_COMPUTED_ONLY" : "IN_PREDICTED_ONLY";
}

std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::unflagged: return "UNFLAGGED";
    case Zone::b_reading: return "B_READING";
    case Zone::item3_range: return "ITEM3_RANGE";
    case Zone::eventual_width: return "EVENTUAL_WIDTH";
  }
  return "?";
}

DepthSetReport compare_depth_sets(const DepthSet& computed, const DepthSet& predicted, int stable_below) {
  if (computed.horizon() != predicted.horizon())
    throw Error(ErrorCode::context_mismatch, "depth sets have different horizons");
  DepthSetReport r{0, {}, computed, predicted, stable_below, stable_below <= 0, std::max(stable_below, 0), {}};
  if (r.unstable) return r;
  const DepthSet only_computed = set_difference(computed, predicted);
  const DepthSet only_predicted = set_difference(predicted, computed);
  for (int d : only_computed.members())
    if (d < stable_below) r.discrepancies.push_back({d, DiscrepancyKind::in_computed_only});
  for (int d : only_predicted.members())
    if (d < stable_below) r.discrepancies.push_back({d, DiscrepancyKind::in_predicted_only});
  std::sort(r.discrepancies.begin(), r.discrepancies.end(),
            [](const Discrepancy& a, const Discrepancy& b) { return a.depth < b.depth; });
  if (!r.discrepancies.empty()) r.agree_below = r.discrepancies.front().depth;
  return r;
}

nlohmann::json to_json(const DepthSetReport& r) {
  return {{"n", r.n},
          {"part", r.part},
          {"computed", r.computed.members()},
          {"predicted", r.predicted.members()},
          {"stable_below", r.stable_below},
          {"unstable", r.unstable},
          {"agree_below", r.agree_below},
          {"discrepancies", discrepancies_json(r.discrepancies)}};
}

namespace {

// Attributes an r = 1 divisible-part discrepancy to a known ambiguity when
// the competing reading predicts the computed membership.
Zone classify(int n, int depth, bool computed_has, const PredictedSets& ps, const GroupParams& params) {
  if (params.r() != 1 || n < 2) return Zone::unflagged;
  const int p = params.p();
  if (n == 2 && ps.epsilon_alternate[0].contains(depth) == computed_has) return Zone::b_reading;
  if (n >= 4 && n <= p + 2) {
    const DepthSet competing = n <= p + 1 ? large_n_form(n, params) : middle_form(n, params);
    if (competing.contains(depth) == computed_has) return Zone::item3_range;
  }
  return Zone::unflagged;
}

bool delta_part_stable(const DepthSet& gamma, const DepthSet& delta, int s, const GroupParams& params) {
  bool meets = false;
  for (int d = std::max(1, params.stable_below()); d < params.nt(); ++d) {
    if (depth_part(d, params) != s) continue;
    if (delta.contains(d)) return false;
    meets = meets || gamma.contains(d);
  }
  return meets;
}

void require_series(const std::vector<EchelonBasis>& series, std::size_t min_len) {
  if (series.size() < min_len)
    throw Error(ErrorCode::invalid_parameter, "need at least " + std::to_string(min_len) + " lower central terms");
}

}  // namespace

LcsReport lcs_report(const std::vector<EchelonBasis>& series) {
  require_series(series, 1);
  const GroupParams& params = series.front().params();
  LcsReport report{params, {}};
  for (std::size_t idx = 0; idx < series.size(); ++idx) {
    const int n = static_cast<int>(idx) + 1;
    LcsRow row{n, depth_set(series[idx]), std::nullopt, false, predicted_sets(n, params), {}};
    if (idx + 1 < series.size()) {
      row.delta = set_difference(row.computed, depth_set(series[idx + 1]));
      row.stable = true;
      for (int s = 0; s <= params.r(); ++s)
        row.stable = row.stable && delta_part_stable(row.computed, *row.delta, s, params);
    }
    for (int s = 0; s <= params.r(); ++s) {
      const DepthSet predicted = s == 0 ? row.predicted.gamma_minus : row.predicted.epsilon[s - 1];
      DepthSetReport part = compare_depth_sets(part_of(row.computed, s, params), predicted, params.stable_below());
      part.n = n;
      part.part = part_name(s);
      if (s > 0)
        for (Discrepancy& d : part.discrepancies)
          d.zone = classify(n, d.depth, d.kind == DiscrepancyKind::in_computed_only, row.predicted, params);
      row.parts.push_back(std::move(part));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

LcsReport lcs_report(const GroupParams& params, int n_max) { return lcs_report(lcs_series(params, n_max)); }

std::size_t LcsReport::discrepancy_count(bool unflagged_only) const {
  std::size_t c = 0;
  for (const LcsRow& row : rows)
    for (const DepthSetReport& part : row.parts)
      for (const Discrepancy& d : part.discrepancies)
        if (!unflagged_only || d.zone == Zone::unflagged) ++c;
  return c;
}

nlohmann::json to_json(const LcsReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t flagged = 0;
  for (const LcsRow& row : r.rows) {
    nlohmann::json predicted = {{"rule", row.predicted.rule},
                                {"gamma_minus", row.predicted.gamma_minus.members()},
                                {"gamma_zero", row.predicted.gamma_zero().members()}};
    nlohmann::json eps = nlohmann::json::object();
    for (std::size_t s = 0; s < row.predicted.epsilon.size(); ++s)
      eps[std::to_string(s + 1)] = row.predicted.epsilon[s].members();
    predicted["epsilon"] = std::move(eps);
    if (row.predicted.c) predicted["C"] = row.predicted.c->members();
    if (row.predicted.a_n) predicted["A_n"] = row.predicted.a_n->members();
    if (row.predicted.b_n) predicted["B_n"] = row.predicted.b_n->members();
    if (row.predicted.b_n_alternate) predicted["B_n_alternate"] = row.predicted.b_n_alternate->members();

    nlohmann::json discrepancies = nlohmann::json::array();
    for (const DepthSetReport& part : row.parts)
      for (const Discrepancy& d : part.discrepancies) {
        discrepancies.push_back({{"part", part.part},
                                 {"depth", d.depth},
                                 {"kind", std::string(to_string(d.kind))},
                                 {"zone", std::string(to_string(d.zone))}});
        if (d.zone != Zone::unflagged) ++flagged;
      }
    nlohmann::json j = {{"n", row.n},
                        {"computed", row.computed.members()},
                        {"predicted", std::move(predicted)},
                        {"discrepancies", std::move(discrepancies)},
                        {"stable", row.stable}};
    if (row.delta) j["delta"] = row.delta->members();
    rows.push_back(std::move(j));
  }
  const std::size_t unflagged = r.discrepancy_count(true);
  return {{"params", params_json(r.params)},
          {"rows", std::move(rows)},
          {"summary",
           {{"discrepancies", unflagged + flagged}, {"flagged", flagged}, {"unflagged", unflagged}}}};
}

// ---------------------------------------------------------------------------

WidthReport width_table(const std::vector<EchelonBasis>& series) {
  require_series(series, 2);
  const GroupParams& params = series.front().params();
  const int p = params.p();
  WidthReport report{params, {}, {}, {}};
  for (std::size_t idx = 0; idx + 1 < series.size(); ++idx) {
    const DepthSet gamma = depth_set(series[idx]);
    const DepthSet delta = set_difference(gamma, depth_set(series[idx + 1]));
    WidthRow row{static_cast<int>(idx) + 1, delta, delta.size(), 0, 0, {}, 0, {}, true};
    row.delta_minus_size = part_of(delta, 0, params).size();
    row.delta_zero_size = row.delta_size - row.delta_minus_size;
    for (int s = 1; s <= params.r(); ++s) row.delta_part_sizes.push_back(part_of(delta, s, params).size());
    row.log_p_index = series[idx].size() - series[idx + 1].size();
    for (int s = 0; s <= params.r(); ++s) {
      const bool ok = delta_part_stable(gamma, delta, s, params);
      row.part_stable.push_back(ok);
      row.stable = row.stable && ok;
    }
    report.rows.push_back(std::move(row));
  }

  WidthSummary& sum = report.summary;
  sum.eventual_from = params.q() + 2;
  sum.stable_rows_considered = 0;
  std::vector<std::size_t> tail;
  for (const WidthRow& row : report.rows) {
    if (!row.stable) continue;
    sum.max_over_stable = std::max(sum.max_over_stable.value_or(0), row.delta_size);
    if (row.n >= sum.eventual_from) tail.push_back(row.delta_size);
  }
  sum.stable_rows_considered = tail.size();
  sum.eventually_constant =
      tail.size() >= 2 && std::all_of(tail.begin(), tail.end(), [&](std::size_t v) { return v == tail.front(); });
  if (sum.eventually_constant) sum.eventual_value = tail.front();

  if (params.r() == 1) {
    std::optional<long long> first;
    if (!report.rows.empty() && report.rows.front().stable) first = static_cast<long long>(report.rows.front().delta_size);
    std::optional<long long> max, eventual;
    if (sum.max_over_stable) max = static_cast<long long>(*sum.max_over_stable);
    if (sum.eventual_value) eventual = static_cast<long long>(*sum.eventual_value);
    auto claim = [](std::string name, long long claimed, std::optional<long long> computed, Zone zone) {
      return ClaimCheck{std::move(name), claimed, computed, computed && *computed == claimed, zone};
    };
    report.claims.push_back(claim("width w(T) = 3p", 3LL * p, max, Zone::unflagged));
    report.claims.push_back(claim("log_p |gamma_1 : gamma_2| = 3p", 3LL * p, first, Zone::unflagged));
    report.claims.push_back(claim("eventual index p^(2p), log_p = 2p", 2LL * p, eventual, Zone::eventual_width));
    report.claims.push_back(claim("eventual |Delta_n| = (p-1) + p = 2p-1", 2LL * p - 1, eventual, Zone::unflagged));
  }
  return report;
}

WidthReport width_table(const GroupParams& params, int n_max) {
  if (n_max < 2) throw Error(ErrorCode::invalid_parameter, "n_max must be at least 2");
  return width_table(lcs_series(params, n_max + 1));
}

nlohmann::json to_json(const WidthReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const WidthRow& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"delta", row.delta.members()},
                    {"delta_size", row.delta_size},
                    {"delta_minus_size", row.delta_minus_size},
                    {"delta_zero_size", row.delta_zero_size},
                    {"delta_part_sizes", row.delta_part_sizes},
                    {"log_p_index", row.log_p_index},
                    {"part_stable", row.part_stable},
                    {"stable", row.stable}});
  nlohmann::json claims = nlohmann::json::array();
  for (const ClaimCheck& c : r.claims)
    claims.push_back({{"claim", c.name},
                      {"claimed", c.claimed},
                      {"computed", c.computed ? nlohmann::json(*c.computed) : nlohmann::json(nullptr)},
                      {"match", c.match},
                      {"zone", std::string(to_string(c.zone))}});
  const WidthSummary& s = r.summary;
  auto opt = [](const std::optional<std::size_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"params", params_json(r.params)},
          {"rows", std::move(rows)},
          {"summary",
           {{"max_over_stable", opt(s.max_over_stable)},
            {"eventual_from", s.eventual_from},
            {"stable_rows_considered", s.stable_rows_considered},
            {"eventually_constant", s.eventually_constant},
            {"eventual_value", opt(s.eventual_value)}}},
          {"claims", std::move(claims)}};
}

std::string to_csv(const WidthReport& r) {
  std::ostringstream out;
  out << "n,delta_size,delta_minus,delta_zero,stable\n";
  for (const WidthRow& row : r.rows)
    out << row.n << ',' << row.delta_size << ',' << row.delta_minus_size << ',' << row.delta_zero_size << ','
        << (row.stable ? "true" : "false") << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

ObliquityReport obliquity_table(const std::vector<EchelonBasis>& series) {
  require_series(series, 3);
  const GroupParams& params = series.front().params();
  const int p = params.p();
  const int q = params.q();
  ObliquityReport report{params, {}, true, true, true};
  for (std::size_t idx = 1; idx + 1 < series.size(); ++idx) {
    const int n = static_cast<int>(idx) + 1;
    ObliquityRow row{};
    row.n = n;
    row.threshold = p * (n - 1) * q + 1;
    row.witness_depth = p * ((n - 1) * q + 1);
    if (row.witness_depth >= params.stable_below())
      throw Error(ErrorCode::out_of_horizon, "witness depth " + std::to_string(row.witness_depth) + " for n = " +
                                                 std::to_string(n) + " is not below NT - q");
    const DepthSet gamma = depth_set(series[idx]);
    const DepthSet next = depth_set(series[idx + 1]);
    row.witness_in_hn = row.witness_depth >= row.threshold;
    row.witness_in_gamma_next = next.contains(row.witness_depth);
    row.index_exponent = index_exponent_below(series[idx + 1], row.threshold);

    row.min_depth = gamma.min();
    row.predicted_min_depth = (n - 1) * q + 2;
    row.fact_one = row.min_depth == row.predicted_min_depth;
    row.min_divisible_depth = gamma.filter([p](int d) { return d % p == 0; }).min();
    row.predicted_min_divisible_depth = row.witness_depth;
    row.fact_two = row.min_divisible_depth == row.predicted_min_divisible_depth;

    if (!report.rows.empty() && row.index_exponent <= report.rows.back().index_exponent)
      report.monotone_increasing = false;
    report.fact_one_holds = report.fact_one_holds && row.fact_one;
    report.fact_two_holds = report.fact_two_holds && row.fact_two;
    report.rows.push_back(row);
  }
  return report;
}

ObliquityReport obliquity_table(const GroupParams& params, int n_max) {
  if (n_max < 2) throw Error(ErrorCode::invalid_parameter, "n_max must be at least 2");
  return obliquity_table(lcs_series(params, n_max + 1));
}

nlohmann::json to_json(const ObliquityReport& r) {
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json rows = nlohmann::json::array();
  for (const ObliquityRow& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"threshold", row.threshold},
                    {"witness_depth", row.witness_depth},
                    {"witness_in_Hn", row.witness_in_hn},
                    {"witness_in_gamma_next", row.witness_in_gamma_next},
                    {"index_exponent", row.index_exponent},
                    {"min_depth", opt(row.min_depth)},
                    {"predicted_min_depth", row.predicted_min_depth},
                    {"fact_one", row.fact_one},
                    {"min_divisible_depth", opt(row.min_divisible_depth)},
                    {"predicted_min_divisible_depth", row.predicted_min_divisible_depth},
                    {"fact_two", row.fact_two}});
  return {{"params", params_json(r.params)},
          {"rows", std::move(rows)},
          {"summary",
           {{"monotone_increasing", r.monotone_increasing},
            {"fact_one_holds", r.fact_one_holds},
            {"fact_two_holds", r.fact_two_holds}}}};
}

std::string to_csv(const ObliquityReport& r) {
  std::ostringstream out;
  out << "n,threshold,witness_depth,witness_in_Hn,witness_in_gamma_next,index_exponent,fact_one,fact_two\n";
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const ObliquityRow& row : r.rows)
    out << row.n << ',' << row.threshold << ',' << row.witness_depth << ',' << b(row.witness_in_hn) << ','
        << b(row.witness_in_gamma_next) << ',' << row.index_exponent << ',' << b(row.fact_one) << ','
        << b(row.fact_two) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

StabilityReport stability_check(const std::vector<EchelonBasis>& small, const std::vector<EchelonBasis>& large) {
  require_series(small, 1);
  require_series(large, 1);
  const GroupParams& ps = small.front().params();
  const GroupParams& pl = large.front().params();
  if (ps.p() != pl.p() || ps.r() != pl.r() || ps.convention() != pl.convention())
    throw Error(ErrorCode::context_mismatch, "stability check needs the same p, r and convention");
  if (ps.nt() > pl.nt()) throw Error(ErrorCode::invalid_parameter, "first horizon must not exceed the second");
  const int below = ps.stable_below();
  const std::size_t levels = std::min(small.size(), large.size());
  StabilityReport report{ps, pl, static_cast<int>(levels), below, true, {}};
  for (std::size_t idx = 0; idx < levels; ++idx) {
    auto cut = [below](const DepthSet& s) { return s.filter([below](int d) { return d < below; }); };
    const DepthSet a = cut(depth_set(small[idx]));
    const DepthSet b = DepthSet(ps.nt(), cut(depth_set(large[idx])).members());
    StabilityMismatch m{static_cast<int>(idx) + 1, set_difference(a, b).members(), set_difference(b, a).members()};
    if (!m.only_small.empty() || !m.only_large.empty()) {
      report.agree = false;
      report.mismatches.push_back(std::move(m));
    }
  }
  return report;
}

StabilityReport stability_check(const GroupParams& small, const GroupParams& large, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::invalid_parameter, "n_max must be at least 1");
  if (small == large) {
    auto s = lcs_series(small, n_max);
    return stability_check(s, s);
  }
  return stability_check(lcs_series(small, n_max), lcs_series(large, n_max));
}

nlohmann::json to_json(const StabilityReport& r) {
  nlohmann::json mm = nlohmann::json::array();
  for (const StabilityMismatch& m : r.mismatches)
    mm.push_back({{"n", m.n}, {"only_small", m.only_small}, {"only_large", m.only_large}});
  return {{"params_small", params_json(r.small)},
          {"params_large", params_json(r.large)},
          {"n_max", r.n_max},
          {"compared_below", r.compared_below},
          {"agree", r.agree},
          {"mismatches", std::move(mm)}};
}

}  // namespace fesenko

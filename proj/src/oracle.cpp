#include <cstdint>
#include <string>

#include "fesenko/error.hpp"
#include "fesenko/filtration.hpp"

namespace fesenko {

namespace {

// T/T_NT with elements numbered by their base-p digit strings: digit k-1 is
// the coefficient of t^{qk+1}. All products go through Series substitution.
class EnumeratedQuotient {
 public:
  explicit EnumeratedQuotient(const GroupParams& params) : params_(params) {
    const int p = params.p();
    order_ = 1;
    for (int k = 1; k < params.nt(); ++k) {
      order_ *= p;
      if (order_ > brute_force_order_limit)
        throw Error(ErrorCode::size_guard, "quotient order p^(NT-1) exceeds " +
                                               std::to_string(brute_force_order_limit));
    }
    elements_.reserve(std::size_t(order_));
    for (long long idx = 0; idx < order_; ++idx) {
      std::vector<std::pair<int, long long>> terms;
      long long rest = idx;
      for (int k = 1; k < params.nt(); ++k, rest /= p)
        if (rest % p) terms.emplace_back(params.q() * k + 1, rest % p);
      elements_.push_back(Series::from_terms(params.field(), params.ns(), terms));
    }
    inverse_.resize(std::size_t(order_));
    for (long long i = 0; i < order_; ++i) inverse_[i] = index_of(comp_inverse(elements_[i]));
    if (order_ <= table_limit) {
      table_.resize(std::size_t(order_ * order_));
      for (long long i = 0; i < order_; ++i)
        for (long long j = 0; j < order_; ++j) table_[i * order_ + j] = compute_mul(i, j);
    }
  }

  long long order() const { return order_; }

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    return table_.empty() ? compute_mul(i, j) : table_[std::size_t(i) * order_ + j];
  }
  std::uint32_t inv(std::uint32_t i) const { return inverse_[i]; }

  int depth(std::uint32_t i) const {
    // Lowest nonzero digit.
    int k = 1;
    for (long long rest = i; rest != 0; rest /= params_.p(), ++k)
      if (rest % params_.p()) return k;
    return 0;
  }

 private:
  static constexpr long long table_limit = 2187;

  std::uint32_t compute_mul(long long i, long long j) const {
    return index_of(group_mul(elements_[i], elements_[j], params_.convention()));
  }

  std::uint32_t index_of(const Series& s) const {
    long long idx = 0, place = 1;
    for (int k = 1; k < params_.nt(); ++k, place *= params_.p()) idx += place * s.coeff(params_.q() * k + 1);
    for (auto [e, v] : s.terms())
      if ((e - 1) % params_.q() != 0) throw SupportViolation(e);
    return static_cast<std::uint32_t>(idx);
  }

  GroupParams params_;
  long long order_;
  std::vector<Series> elements_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> table_;
};

}  // namespace

BruteLcs brute_lcs_with_orders(const GroupParams& params, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::invalid_parameter, "n_max must be at least 1");
  const EnumeratedQuotient g(params);
  const auto order = static_cast<std::uint32_t>(g.order());

  auto depths_of = [&](const std::vector<char>& member) {
    std::vector<int> ds;
    for (std::uint32_t i = 0; i < order; ++i)
      if (member[i] && i != 0) ds.push_back(g.depth(i));
    return DepthSet(params.nt(), std::move(ds));
  };

  std::vector<char> gamma(order, 1);
  BruteLcs out;
  out.depth_sets.push_back(depths_of(gamma));
  out.orders.push_back(g.order());
  for (int n = 2; n <= n_max; ++n) {
    // Generators: every commutator [x, h] with x in gamma_n, h in T.
    std::vector<char> is_gen(order, 0);
    for (std::uint32_t x = 0; x < order; ++x) {
      if (!gamma[x]) continue;
      for (std::uint32_t h = 0; h < order; ++h) {
        const std::uint32_t c = g.mul(g.mul(g.inv(x), g.inv(h)), g.mul(x, h));
        is_gen[c] = 1;
      }
    }
    std::vector<std::uint32_t> gens;
    for (std::uint32_t i = 1; i < order; ++i)
      if (is_gen[i]) gens.push_back(i);

    // Subgroup they generate: breadth-first closure from the identity.
    std::vector<char> next(order, 0);
    std::vector<std::uint32_t> queue{0};
    next[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::uint32_t s : gens) {
        const std::uint32_t y = g.mul(queue[head], s);
        if (!next[y]) {
          next[y] = 1;
          queue.push_back(y);
        }
      }
    gamma = std::move(next);
    out.depth_sets.push_back(depths_of(gamma));
    out.orders.push_back(static_cast<long long>(queue.size()));
  }
  return out;
}

std::vector<DepthSet> brute_lcs(const GroupParams& params, int n_max) {
  return brute_lcs_with_orders(params, n_max).depth_sets;
}

}  // namespace fesenko

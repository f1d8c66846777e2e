#include "fesenko/filtration.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "fesenko/error.hpp"

namespace fesenko {

DepthSet::DepthSet(int horizon, std::vector<int> members) : horizon_(horizon), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  std::erase_if(members_, [&](int d) { return d < 1 || d >= horizon_; });
}

bool DepthSet::contains(int d) const { return std::binary_search(members_.begin(), members_.end(), d); }

std::size_t DepthSet::count_below(int m) const {
  return static_cast<std::size_t>(std::lower_bound(members_.begin(), members_.end(), m) - members_.begin());
}

std::optional<int> DepthSet::min() const {
  if (members_.empty()) return std::nullopt;
  return members_.front();
}

std::optional<int> DepthSet::max() const {
  if (members_.empty()) return std::nullopt;
  return members_.back();
}

DepthSet set_union(const DepthSet& a, const DepthSet& b) {
  std::vector<int> out;
  std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(), std::back_inserter(out));
  return DepthSet(std::min(a.horizon_, b.horizon_), std::move(out));
}

DepthSet set_difference(const DepthSet& a, const DepthSet& b) {
  std::vector<int> out;
  std::set_difference(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                      std::back_inserter(out));
  return DepthSet(a.horizon_, std::move(out));
}

nlohmann::json to_json(const DepthSet& s, int stable_below) {
  return {{"depths", s.members()}, {"horizon", s.horizon()}, {"stable_below", stable_below}};
}

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(const GroupParams& params)
    : params_(params), slots_(std::size_t(params.nt())), tail_(params.nt()) {}

const Slot* EchelonBasis::slot(int depth) const {
  if (depth < 1 || depth >= params_.nt() || !slots_[depth]) return nullptr;
  return &*slots_[depth];
}

std::vector<int> EchelonBasis::depths() const {
  std::vector<int> out;
  for (int k = 1; k < params_.nt(); ++k)
    if (slots_[k]) out.push_back(k);
  return out;
}

std::optional<Reduction> EchelonBasis::sift(const TElement& x, const CommutatorWord& w, bool early_exit) const {
  if (x.params() != params_) throw Error(ErrorCode::context_mismatch, "element does not belong to this basis");
  const FieldPrime f = params_.field();
  Reduction r{x, w};
  for (;;) {
    const Depth d = tdepth(r.residual);
    if (d.is_infinite()) return r;
    const int k = d.value();
    if (early_exit && k >= tail_) return std::nullopt;
    const auto& s = slots_[k];
    if (!s) return r;
    // residual * slot^-e has a zero coefficient at depth k.
    const Residue e = f.mul(leading_unit(r.residual), f.inv(s->unit));
    r.residual = group_mul(r.residual, s->inverse_powers[e]);
    r.residual_word = CommutatorWord::product(r.residual_word, CommutatorWord::power(s->word, -static_cast<long long>(e)));
  }
}

Reduction EchelonBasis::reduce(const TElement& x, const CommutatorWord& w) const { return *sift(x, w, false); }

bool EchelonBasis::spans(const TElement& x) const {
  auto r = sift(x, CommutatorWord(), true);
  return !r || r->residual.is_identity();
}

void EchelonBasis::store(Reduction r) {
  const int k = tdepth(r.residual).value();
  const Residue unit = leading_unit(r.residual);
  TElement inverse = comp_inverse(r.residual);
  std::vector<TElement> inverse_powers;
  inverse_powers.reserve(std::size_t(params_.p()));
  inverse_powers.push_back(TElement::identity(params_));
  for (int m = 1; m < params_.p(); ++m) inverse_powers.push_back(group_mul(inverse_powers.back(), inverse));
  slots_[k] = Slot{std::move(r.residual), unit, std::move(r.residual_word), std::move(inverse_powers), std::move(inverse)};
  ++count_;
  while (tail_ > 1 && slots_[tail_ - 1]) --tail_;
}

std::optional<int> EchelonBasis::add(const TElement& x, const CommutatorWord& w) {
  auto r = sift(x, w, true);
  if (!r || r->residual.is_identity()) return std::nullopt;
  const int k = tdepth(r->residual).value();
  store(std::move(*r));
  return k;
}

bool EchelonBasis::insert(const TElement& x, const CommutatorWord& w) { return add(x, w).has_value(); }

Reduction reduce(const EchelonBasis& basis, const TElement& x, const CommutatorWord& w) { return basis.reduce(x, w); }

bool insert(EchelonBasis& basis, const TElement& x, const CommutatorWord& w) { return basis.insert(x, w); }

// ---------------------------------------------------------------------------

namespace {

struct Worded {
  TElement element;
  TElement inverse;
  CommutatorWord word;
  int depth;
};

// Writes g as a product of generator powers by sifting g^-1 through the
// basis of T: g^-1 * P = 1 means P = g.
std::vector<Worded> with_words(const std::vector<TElement>& elements, const GroupParams& params) {
  std::vector<Worded> out;
  EchelonBasis full = full_group_basis(params);
  for (const TElement& g : elements) {
    if (g.params() != params) throw Error(ErrorCode::context_mismatch, "conjugator from another parameter set");
    const Depth d = tdepth(g);
    if (d.is_infinite()) continue;
    TElement inv = comp_inverse(g);
    Reduction r = full.reduce(inv, CommutatorWord());
    out.push_back({g, std::move(inv), r.residual_word, d.value()});
  }
  return out;
}

}  // namespace

EchelonBasis close(EchelonBasis basis, const std::vector<TElement>& conjugators) {
  const GroupParams params = basis.params();
  const int p = params.p();
  const std::vector<Worded> conj = with_words(conjugators, params);

  std::deque<int> work;
  for (int k : basis.depths()) work.push_back(k);
  std::vector<int> processed;

  while (!work.empty()) {
    const int k = work.front();
    work.pop_front();
    const Slot& a = *basis.slot(k);

    if (auto d = basis.add(group_pow(a.element, p), CommutatorWord::power(a.word, p))) work.push_back(*d);
    // [a, b] has depth >= depth(a) + depth(b); anything at or past the
    // occupied tail is already spanned. The tail is re-read before each
    // evaluation since every insertion can lower it.
    for (int k2 : processed) {
      if (k + k2 >= basis.tail_start()) continue;
      const Slot& b = *basis.slot(k2);
      if (auto d = basis.add(commutator(a.element, a.inverse, b.element, b.inverse),
                             CommutatorWord::commutator(a.word, b.word)))
        work.push_back(*d);
    }
    for (const Worded& g : conj) {
      if (k + g.depth >= basis.tail_start()) continue;
      if (auto d = basis.add(commutator(a.element, a.inverse, g.element, g.inverse),
                             CommutatorWord::commutator(a.word, g.word)))
        work.push_back(*d);
    }
    processed.push_back(k);
  }
  return basis;
}

std::vector<TElement> t_generators(const GroupParams& params) {
  std::vector<TElement> gens;
  for (int k = 1; k < params.nt(); ++k) gens.push_back(gen(k, params));
  return gens;
}

EchelonBasis full_group_basis(const GroupParams& params) {
  EchelonBasis b(params);
  for (int k = 1; k < params.nt(); ++k) b.insert(gen(k, params), CommutatorWord::gen(k));
  return b;
}

EchelonBasis lcs_next(const EchelonBasis& gamma_n, const std::vector<TElement>& t_gens) {
  const GroupParams& params = gamma_n.params();
  const std::vector<Worded> gens = with_words(t_gens, params);
  EchelonBasis next(params);

  // Seeds [b, g] grouped by generator depth, shallow generators first and
  // deep b first within a group. [b, t + t^{q+1}] lands just past depth(b),
  // so this order fills the occupied tail quickly and most deep seeds are
  // then skipped without evaluation. Order affects speed only.
  std::vector<std::tuple<int, int, std::size_t>> seeds;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int k : gamma_n.depths())
      if (k + gens[i].depth < params.nt()) seeds.emplace_back(gens[i].depth, -k, i);
  std::sort(seeds.begin(), seeds.end());

  for (const auto& [gd, neg_k, i] : seeds) {
    const int k = -neg_k;
    if (k + gd >= next.tail_start()) continue;
    const Slot* b = gamma_n.slot(k);
    next.insert(commutator(b->element, b->inverse, gens[i].element, gens[i].inverse),
                CommutatorWord::commutator(b->word, gens[i].word));
  }
  return close(std::move(next), t_gens);
}

std::vector<EchelonBasis> lcs_series(const GroupParams& params, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::invalid_parameter, "n_max must be at least 1");
  const std::vector<TElement> gens = t_generators(params);
  std::vector<EchelonBasis> out;
  out.push_back(full_group_basis(params));
  for (int n = 2; n <= n_max; ++n) out.push_back(lcs_next(out.back(), gens));
  return out;
}

DepthSet depth_set(const EchelonBasis& basis) { return DepthSet(basis.params().nt(), basis.depths()); }

std::size_t index_exponent_below(const EchelonBasis& basis, int m) {
  std::size_t n = 0;
  for (int k : basis.depths())
    if (k < m) ++n;
  return n;
}

}  // namespace fesenko

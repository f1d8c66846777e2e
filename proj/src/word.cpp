#include "fesenko/word.hpp"

#include <limits>
#include <unordered_map>

#include "fesenko/error.hpp"

namespace fesenko {

struct CommutatorWord::Node {
  Kind kind = Kind::identity;
  int k = 0;
  long long m = 0;
  std::vector<CommutatorWord> children;
  std::uint64_t size = 1;
};

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

CommutatorWord::CommutatorWord() {
  static const auto empty = std::make_shared<const Node>();
  node_ = empty;
}

CommutatorWord CommutatorWord::gen(int k) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::gen;
  n->k = k;
  return CommutatorWord(std::move(n));
}

CommutatorWord CommutatorWord::product(const CommutatorWord& a, const CommutatorWord& b) {
  if (a.kind() == Kind::identity) return b;
  if (b.kind() == Kind::identity) return a;
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  n->children = {a, b};
  n->size = saturating_add(1, saturating_add(a.size(), b.size()));
  return CommutatorWord(std::move(n));
}

CommutatorWord CommutatorWord::inverse(const CommutatorWord& a) {
  if (a.kind() == Kind::identity) return a;
  auto n = std::make_shared<Node>();
  n->kind = Kind::inverse;
  n->children = {a};
  n->size = saturating_add(1, a.size());
  return CommutatorWord(std::move(n));
}

CommutatorWord CommutatorWord::commutator(const CommutatorWord& a, const CommutatorWord& b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::commutator;
  n->children = {a, b};
  n->size = saturating_add(1, saturating_add(a.size(), b.size()));
  return CommutatorWord(std::move(n));
}

CommutatorWord CommutatorWord::power(const CommutatorWord& a, long long m) {
  if (m == 1) return a;
  if (m == 0 || a.kind() == Kind::identity) return CommutatorWord();
  auto n = std::make_shared<Node>();
  n->kind = Kind::power;
  n->m = m;
  n->children = {a};
  n->size = saturating_add(1, a.size());
  return CommutatorWord(std::move(n));
}

CommutatorWord::Kind CommutatorWord::kind() const { return node_->kind; }
int CommutatorWord::gen_depth() const { return node_->k; }
long long CommutatorWord::exponent() const { return node_->m; }
const CommutatorWord& CommutatorWord::left() const { return node_->children.at(0); }
const CommutatorWord& CommutatorWord::right() const { return node_->children.at(1); }
std::uint64_t CommutatorWord::size() const { return node_->size; }

TElement evaluate(const CommutatorWord& w, const GroupParams& params) {
  // Iterative post-order so deep reduction chains cannot overflow the stack.
  std::unordered_map<const void*, TElement> memo;
  std::vector<std::pair<const CommutatorWord*, bool>> stack{{&w, false}};
  while (!stack.empty()) {
    auto [cur, expanded] = stack.back();
    stack.pop_back();
    if (memo.contains(cur->id())) continue;
    using K = CommutatorWord::Kind;
    const K kind = cur->kind();
    if (kind == K::identity) {
      memo.emplace(cur->id(), TElement::identity(params));
      continue;
    }
    if (kind == K::gen) {
      memo.emplace(cur->id(), fesenko::gen(cur->gen_depth(), params));
      continue;
    }
    const bool binary = kind == K::product || kind == K::commutator;
    if (!expanded) {
      stack.push_back({cur, true});
      stack.push_back({&cur->left(), false});
      if (binary) stack.push_back({&cur->right(), false});
      continue;
    }
    const TElement& a = memo.at(cur->left().id());
    switch (kind) {
      case K::product: memo.emplace(cur->id(), group_mul(a, memo.at(cur->right().id()))); break;
      case K::commutator: memo.emplace(cur->id(), commutator(a, memo.at(cur->right().id()))); break;
      case K::inverse: memo.emplace(cur->id(), comp_inverse(a)); break;
      case K::power: memo.emplace(cur->id(), group_pow(a, cur->exponent())); break;
      default: break;
    }
  }
  return memo.at(w.id());
}

std::vector<CommutatorWord> flatten_factors(const CommutatorWord& w, std::size_t max_factors) {
  std::vector<CommutatorWord> out;
  // Right-to-left traversal with an explicit stack keeps factor order.
  std::vector<CommutatorWord> stack{w};
  while (!stack.empty()) {
    CommutatorWord cur = stack.back();
    stack.pop_back();
    switch (cur.kind()) {
      case CommutatorWord::Kind::identity: break;
      case CommutatorWord::Kind::product:
        stack.push_back(cur.right());
        stack.push_back(cur.left());
        break;
      case CommutatorWord::Kind::power:
        if (cur.exponent() > 0) {
          for (long long i = 0; i < cur.exponent(); ++i) stack.push_back(cur.left());
          break;
        }
        [[fallthrough]];
      default:
        out.push_back(cur);
        if (out.size() > max_factors) throw Error(ErrorCode::size_guard, "word expands past the factor limit");
    }
  }
  return out;
}

nlohmann::json to_json(const CommutatorWord& w) {
  using K = CommutatorWord::Kind;
  switch (w.kind()) {
    case K::identity: return {{"id", true}};
    case K::gen: return {{"gen", w.gen_depth()}};
    case K::inverse: return {{"inv", to_json(w.left())}};
    case K::product: return {{"mul", {to_json(w.left()), to_json(w.right())}}};
    case K::commutator: return {{"comm", {to_json(w.left()), to_json(w.right())}}};
    case K::power: return {{"pow", {to_json(w.left()), w.exponent()}}};
  }
  return nullptr;
}

}  // namespace fesenko

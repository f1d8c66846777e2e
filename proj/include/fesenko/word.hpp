#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fesenko/tgroup.hpp"
#include "json.hpp"

namespace fesenko {

/// A symbolic expression over the generators t + t^{qk+1}.
///
/// Nodes are immutable and shared, so words built by repeated reduction form
/// a DAG; size() counts the expanded tree (saturating).
class CommutatorWord {
 public:
  enum class Kind { identity, gen, product, inverse, commutator, power };

  /// The empty product. Product(identity, w) collapses to w.
  CommutatorWord();
  static CommutatorWord gen(int k);
  static CommutatorWord product(const CommutatorWord& a, const CommutatorWord& b);
  static CommutatorWord inverse(const CommutatorWord& a);
  static CommutatorWord commutator(const CommutatorWord& a, const CommutatorWord& b);
  static CommutatorWord power(const CommutatorWord& a, long long m);

  Kind kind() const;
  int gen_depth() const;
  long long exponent() const;
  const CommutatorWord& left() const;
  const CommutatorWord& right() const;
  std::uint64_t size() const;

  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit CommutatorWord(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Evaluates a word in T(r)/T_NT. Shared subwords are evaluated once.
TElement evaluate(const CommutatorWord& w, const GroupParams& params);

/// Expands products and non-negative powers into the ordered list of factors
/// whose product is w. Throws Error(size_guard) past max_factors.
std::vector<CommutatorWord> flatten_factors(const CommutatorWord& w, std::size_t max_factors = 100000);

/// Nested tree: {"gen":k}, {"id":true}, {"inv":w}, {"mul":[a,b]}, {"comm":[a,b]}, {"pow":[w,m]}.
nlohmann::json to_json(const CommutatorWord& w);

}  // namespace fesenko

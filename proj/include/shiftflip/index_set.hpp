#pragma once

// Symbolic subsets of the integers: a small expression grammar closed under
// translation, negation, symmetric difference, complement and union, plus the
// half-period sets H(n) = U_k { i : nk < i < n(k + 1/2) }.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "shiftflip/error.hpp"
#include "shiftflip/words.hpp"

namespace shiftflip {

class IndexSet {
 public:
  static IndexSet all() { return IndexSet(All{}); }
  static IndexSet empty() { return IndexSet(Empty{}); }

  static IndexSet half_period(std::int64_t n) {
    if (n <= 0) throw DomainError("H(n) requires n >= 1");
    return IndexSet(Half{n});
  }

  /// m + A
  static IndexSet translate(std::int64_t m, IndexSet a) { return IndexSet(Translate{m, std::move(a.node_)}); }
  /// -A
  static IndexSet negate(IndexSet a) { return IndexSet(Negate{std::move(a.node_)}); }
  static IndexSet symmdiff(IndexSet a, IndexSet b) { return IndexSet(SymmDiff{std::move(a.node_), std::move(b.node_)}); }
  static IndexSet complement(IndexSet a) { return IndexSet(Complement{std::move(a.node_)}); }
  static IndexSet set_union(IndexSet a, IndexSet b) { return IndexSet(Union{std::move(a.node_), std::move(b.node_)}); }

  /// Z \ (H(n) u -H(n)): nZ for odd n, nZ + {0, n/2} for even n.
  static IndexSet half_period_complement(std::int64_t n) {
    auto h = half_period(n);
    return complement(set_union(h, negate(h)));
  }

  bool contains(std::int64_t i) const { return eval(*node_, i); }

  std::string to_string() const { return show(*node_); }

 private:
  struct Node;
  using Ptr = std::shared_ptr<const Node>;
  struct All {};
  struct Empty {};
  struct Half { std::int64_t n; };
  struct Translate { std::int64_t m; Ptr a; };
  struct Negate { Ptr a; };
  struct SymmDiff { Ptr a, b; };
  struct Complement { Ptr a; };
  struct Union { Ptr a, b; };
  struct Node {
    std::variant<All, Empty, Half, Translate, Negate, SymmDiff, Complement, Union> v;
  };

  template <class T>
  explicit IndexSet(T t) : node_(std::make_shared<const Node>(Node{std::move(t)})) {}

  static bool eval(const Node& node, std::int64_t i) {
    struct Visitor {
      std::int64_t i;
      bool operator()(const All&) const { return true; }
      bool operator()(const Empty&) const { return false; }
      bool operator()(const Half& h) const {
        // nk < i < nk + n/2  <=>  0 < 2r < n  with r = i mod n
        auto r = floor_mod(i, h.n);
        return r != 0 && 2 * r < h.n;
      }
      bool operator()(const Translate& t) const { return eval(*t.a, i - t.m); }
      bool operator()(const Negate& t) const { return eval(*t.a, -i); }
      bool operator()(const SymmDiff& t) const { return eval(*t.a, i) != eval(*t.b, i); }
      bool operator()(const Complement& t) const { return !eval(*t.a, i); }
      bool operator()(const Union& t) const { return eval(*t.a, i) || eval(*t.b, i); }
    };
    return std::visit(Visitor{i}, node.v);
  }

  static std::string show(const Node& node) {
    struct Visitor {
      std::string operator()(const All&) const { return "ALL"; }
      std::string operator()(const Empty&) const { return "EMPTY"; }
      std::string operator()(const Half& h) const { return "H(" + std::to_string(h.n) + ")"; }
      std::string operator()(const Translate& t) const {
        return "TRANSLATE(" + std::to_string(t.m) + ", " + show(*t.a) + ")";
      }
      std::string operator()(const Negate& t) const { return "NEGATE(" + show(*t.a) + ")"; }
      std::string operator()(const SymmDiff& t) const { return "SYMMDIFF(" + show(*t.a) + ", " + show(*t.b) + ")"; }
      std::string operator()(const Complement& t) const { return "COMPLEMENT(" + show(*t.a) + ")"; }
      std::string operator()(const Union& t) const { return "UNION(" + show(*t.a) + ", " + show(*t.b) + ")"; }
    };
    return std::visit(Visitor{}, node.v);
  }

  Ptr node_;
};

}  // namespace shiftflip

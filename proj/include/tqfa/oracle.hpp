#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tqfa/automaton.hpp"
#include "tqfa/error.hpp"
#include "tqfa/semiring.hpp"
#include "tqfa/word.hpp"

// Brute-force semantics that do not touch the matrix code: sums over all
// label-preserving maps of a chain or circle graph into the automaton graph,
// and a regular-expression matcher. Used to cross-check the evaluator.

namespace tqfa {

struct OracleCaps {
  std::size_t max_word = 8;
  std::size_t max_states = 8;
};

namespace detail {

// adjacency[letter][q] = successors of q along that letter, read straight
// from the transition list.
inline std::vector<std::vector<std::vector<std::size_t>>> labelled_successors(const Nfa& a) {
  std::vector<std::vector<std::vector<std::size_t>>> adj(a.alphabet().size(),
                                                         std::vector<std::vector<std::size_t>>(a.size()));
  for (const auto& t : a.transitions())
    adj[a.letter_index(t.letter)][a.state_index(t.from)].push_back(a.state_index(t.to));
  return adj;
}

inline void check_caps(const Nfa& a, const Word& w, const OracleCaps& caps) {
  if (w.size() > caps.max_word)
    throw CapacityError("word length " + std::to_string(w.size()) + " exceeds oracle cap " +
                        std::to_string(caps.max_word));
  if (a.size() > caps.max_states)
    throw CapacityError("automaton has " + std::to_string(a.size()) + " states, oracle cap is " +
                        std::to_string(caps.max_states));
}

}  // namespace detail

/// Sum over maps of the chain graph I(w) (vertices v0..vn, edge i labelled
/// w[i]) into the automaton graph. A map contributes one when v0 is initial
/// and vn accepting. Vertices are assigned depth first; a branch is pruned as
/// soon as a labelled edge is missing, since such maps contribute zero.
template <Semiring S = Boolean>
typename S::value_type chain_map_sum(const Nfa& a, const Word& w, const OracleCaps& caps = {}) {
  detail::check_caps(a, w, caps);
  const auto code = a.encode(w);
  const auto adj = detail::labelled_successors(a);
  auto total = S::zero();
  std::vector<std::size_t> assignment(w.size() + 1);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == w.size()) {
      if (a.is_accepting(assignment[i])) total = S::add(total, S::one());
      return;
    }
    for (auto next : adj[code[i]][assignment[i]]) {
      assignment[i + 1] = next;
      self(self, i + 1);
    }
  };
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (!a.is_initial(q)) continue;
    assignment[0] = q;
    rec(rec, 0);
  }
  return total;
}

/// Sum over maps of the circle graph S(w) into the automaton graph. The
/// circle has |w| vertices and edge i from v_i to v_{i+1 mod |w|} labelled
/// w[i]; enumeration starts at vertex `basepoint` and walks once around.
/// The undecorated circle is a single vertex, so it has |Q| maps.
template <Semiring S = Boolean>
typename S::value_type circle_map_sum(const Nfa& a, const Word& w, std::size_t basepoint = 0,
                                      const OracleCaps& caps = {}) {
  detail::check_caps(a, w, caps);
  const auto code = a.encode(w);
  const auto n = w.size();
  auto total = S::zero();
  if (n == 0) {
    for (std::size_t q = 0; q < a.size(); ++q) total = S::add(total, S::one());
    return total;
  }
  basepoint %= n;
  const auto adj = detail::labelled_successors(a);
  std::vector<std::size_t> assignment(n);
  auto rec = [&](auto&& self, std::size_t step) -> void {
    const auto v = (basepoint + step) % n;
    for (auto next : adj[code[v]][assignment[v]]) {
      const auto u = (v + 1) % n;
      if (step + 1 == n) {
        if (next == assignment[u]) total = S::add(total, S::one());
      } else {
        assignment[u] = next;
        self(self, step + 1);
      }
    }
  };
  for (std::size_t q = 0; q < a.size(); ++q) {
    assignment[basepoint] = q;
    rec(rec, 0);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Regular expressions
//
//   expr   := term ('+' term)*
//   term   := factor*             (juxtaposition; empty term is eps)
//   factor := atom '*'*
//   atom   := letter | 'eps' | 'empty' | '(' expr ')'
//
// Letters are single alphanumeric characters; whitespace is ignored. The
// keywords 'eps' and 'empty' take precedence over letters.
// ---------------------------------------------------------------------------

class Regex {
 public:
  enum class Kind { empty, eps, letter, concat, alt, star };

  static Regex parse(std::string_view pattern);

  static Regex empty() { return Regex(make(Kind::empty)); }
  static Regex eps() { return Regex(make(Kind::eps)); }
  static Regex letter(std::string l) {
    auto n = make(Kind::letter);
    n->letter = std::move(l);
    return Regex(n);
  }

  bool nullable() const { return nullable(node_); }

  /// Brzozowski derivative by one letter.
  Regex derive(const Letter& a) const { return Regex(derive(node_, a)); }

  bool matches(const Word& w) const {
    NodePtr n = node_;
    for (const auto& a : w) {
      n = derive(n, a);
      if (n->kind == Kind::empty) return false;
    }
    return nullable(n);
  }

  /// Some rotation of w matches.
  bool matches_circular(const Word& w) const {
    const std::size_t k = w.empty() ? 1 : w.size();
    for (std::size_t s = 0; s < k; ++s)
      if (matches(rotate_word(w, s))) return true;
    return false;
  }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    std::string letter;
    NodePtr left;
    NodePtr right;
  };

  explicit Regex(NodePtr n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
  }

  static bool same(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->letter != b->letter) return false;
    if (a->left && !same(a->left, b->left)) return false;
    if (a->right && !same(a->right, b->right)) return false;
    return true;
  }

  // Smart constructors keep derivatives small.
  static NodePtr cat(NodePtr a, NodePtr b) {
    if (a->kind == Kind::empty || b->kind == Kind::empty) return make(Kind::empty);
    if (a->kind == Kind::eps) return b;
    if (b->kind == Kind::eps) return a;
    auto n = make(Kind::concat);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
  }

  static NodePtr alt(NodePtr a, NodePtr b) {
    if (a->kind == Kind::empty) return b;
    if (b->kind == Kind::empty) return a;
    if (same(a, b)) return a;
    auto n = make(Kind::alt);
    n->left = std::move(a);
    n->right = std::move(b);
    return n;
  }

  static NodePtr star(NodePtr a) {
    if (a->kind == Kind::star) return a;
    if (a->kind == Kind::empty || a->kind == Kind::eps) return make(Kind::eps);
    auto n = make(Kind::star);
    n->left = std::move(a);
    return n;
  }

  static bool nullable(const NodePtr& n) {
    switch (n->kind) {
      case Kind::empty:
      case Kind::letter: return false;
      case Kind::eps:
      case Kind::star: return true;
      case Kind::concat: return nullable(n->left) && nullable(n->right);
      case Kind::alt: return nullable(n->left) || nullable(n->right);
    }
    return false;
  }

  static NodePtr derive(const NodePtr& n, const Letter& a) {
    switch (n->kind) {
      case Kind::empty:
      case Kind::eps: return make(Kind::empty);
      case Kind::letter: return n->letter == a ? make(Kind::eps) : make(Kind::empty);
      case Kind::alt: return alt(derive(n->left, a), derive(n->right, a));
      case Kind::star: return cat(derive(n->left, a), n);
      case Kind::concat: {
        auto first = cat(derive(n->left, a), n->right);
        return nullable(n->left) ? alt(std::move(first), derive(n->right, a)) : first;
      }
    }
    return make(Kind::empty);
  }

  class Parser;

  NodePtr node_;
};

class Regex::Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    auto e = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError("regex: " + what, 1, pos_ + 1); }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  NodePtr expr() {
    auto e = term();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '+') {
      ++pos_;
      e = alt(e, term());
      skip();
    }
    return e;
  }

  NodePtr term() {
    NodePtr t = make(Kind::eps);
    while (starts_atom()) t = cat(t, factor());
    return t;
  }

  NodePtr factor() {
    auto a = atom();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      a = star(a);
      skip();
    }
    return a;
  }

  NodePtr atom() {
    skip();
    if (s_.substr(pos_, 5) == "empty") {
      pos_ += 5;
      return make(Kind::empty);
    }
    if (s_.substr(pos_, 3) == "eps") {
      pos_ += 3;
      return make(Kind::eps);
    }
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return e;
    }
    ++pos_;
    auto n = make(Kind::letter);
    n->letter = std::string(1, c);
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline Regex Regex::parse(std::string_view pattern) { return Regex(Parser(pattern).parse()); }

inline bool regex_match(std::string_view pattern, const Word& w) { return Regex::parse(pattern).matches(w); }

}  // namespace tqfa

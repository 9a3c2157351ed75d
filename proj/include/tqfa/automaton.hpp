#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tqfa/error.hpp"
#include "tqfa/semiring.hpp"
#include "tqfa/word.hpp"

namespace tqfa {

using StateId = std::string;

/// A transition by name, as it appears in files.
struct Transition {
  StateId from;
  Letter letter;
  StateId to;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Nondeterministic finite automaton (Q, delta, Q_in, Q_t).
///
/// States and letters are interned: the order of `states()` and `alphabet()`
/// fixes the row/column order of every matrix built from the automaton.
/// Instances are immutable.
class Nfa {
 public:
  /// Interned transition.
  struct Edge {
    std::size_t from;
    std::size_t letter;
    std::size_t to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  /// The empty automaton: no states, no letters.
  Nfa() = default;

  Nfa(std::vector<StateId> states, std::vector<Letter> alphabet,
      const std::vector<Transition>& transitions, const std::vector<StateId>& initial,
      const std::vector<StateId>& accepting)
      : states_(std::move(states)), alphabet_(std::move(alphabet)) {
    index_names();
    std::set<Edge> edges;
    for (const auto& t : transitions)
      edges.insert(Edge{lookup_state(t.from), lookup_letter(t.letter), lookup_state(t.to)});
    edges_.assign(edges.begin(), edges.end());
    initial_.assign(states_.size(), false);
    accepting_.assign(states_.size(), false);
    for (const auto& q : initial) initial_[lookup_state(q)] = true;
    for (const auto& q : accepting) accepting_[lookup_state(q)] = true;
    build_matrices();
  }

  /// Index-level constructor; edges are deduplicated and sorted.
  static Nfa from_indices(std::vector<StateId> states, std::vector<Letter> alphabet,
                          std::vector<Edge> edges, std::vector<bool> initial,
                          std::vector<bool> accepting) {
    Nfa a;
    a.states_ = std::move(states);
    a.alphabet_ = std::move(alphabet);
    a.index_names();
    const auto n = a.states_.size();
    if (initial.size() != n || accepting.size() != n)
      throw ValidationError("decoration masks must have one entry per state");
    for (const auto& e : edges)
      if (e.from >= n || e.to >= n || e.letter >= a.alphabet_.size())
        throw ValidationError("edge index out of range");
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& x, const Edge& y) { return !(x < y) && !(y < x); }),
                edges.end());
    a.edges_ = std::move(edges);
    a.initial_ = std::move(initial);
    a.accepting_ = std::move(accepting);
    a.build_matrices();
    return a;
  }

  std::size_t size() const noexcept { return states_.size(); }
  bool empty() const noexcept { return states_.empty(); }
  const std::vector<StateId>& states() const noexcept { return states_; }
  const std::vector<Letter>& alphabet() const noexcept { return alphabet_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<bool>& initial_mask() const noexcept { return initial_; }
  const std::vector<bool>& accepting_mask() const noexcept { return accepting_; }
  bool is_initial(std::size_t q) const { return initial_.at(q); }
  bool is_accepting(std::size_t q) const { return accepting_.at(q); }

  std::size_t state_index(const StateId& q) const { return lookup_state(q); }
  std::size_t letter_index(const Letter& a) const { return lookup_letter(a); }
  bool has_state(const StateId& q) const { return state_pos_.count(q) != 0; }
  bool has_letter(const Letter& a) const { return letter_pos_.count(a) != 0; }

  std::vector<StateId> initial() const { return names_of(initial_); }
  std::vector<StateId> accepting() const { return names_of(accepting_); }

  std::vector<Transition> transitions() const {
    std::vector<Transition> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back({states_[e.from], alphabet_[e.letter], states_[e.to]});
    return out;
  }

  /// Letters of `w` as alphabet indices.
  std::vector<std::size_t> encode(const Word& w) const {
    std::vector<std::size_t> out;
    out.reserve(w.size());
    for (const auto& a : w) out.push_back(lookup_letter(a));
    return out;
  }

  /// M_a by letter index: M_a[q][q'] = 1 iff q' in delta(q, a).
  const Matrix<Boolean>& matrix(std::size_t letter) const { return matrices_.at(letter); }

  /// Same automaton with different initial/accepting sets.
  Nfa with_decorations(std::vector<bool> initial, std::vector<bool> accepting) const {
    return from_indices(states_, alphabet_, edges_, std::move(initial), std::move(accepting));
  }

  friend bool operator==(const Nfa& a, const Nfa& b) {
    return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ && a.edges_ == b.edges_ &&
           a.initial_ == b.initial_ && a.accepting_ == b.accepting_;
  }

 private:
  void index_names() {
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (!state_pos_.emplace(states_[i], i).second)
        throw ValidationError("duplicate state '" + states_[i] + "'");
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (!letter_pos_.emplace(alphabet_[i], i).second)
        throw ValidationError("duplicate letter '" + alphabet_[i] + "'");
  }

  void build_matrices() {
    matrices_.assign(alphabet_.size(), Matrix<Boolean>(states_.size(), states_.size()));
    for (const auto& e : edges_) matrices_[e.letter].set(e.from, e.to, true);
  }

  std::size_t lookup_state(const StateId& q) const {
    auto it = state_pos_.find(q);
    if (it == state_pos_.end()) throw LookupError("unknown state '" + q + "'");
    return it->second;
  }

  std::size_t lookup_letter(const Letter& a) const {
    auto it = letter_pos_.find(a);
    if (it == letter_pos_.end()) throw LookupError("unknown letter '" + a + "'");
    return it->second;
  }

  std::vector<StateId> names_of(const std::vector<bool>& mask) const {
    std::vector<StateId> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) out.push_back(states_[i]);
    return out;
  }

  std::vector<StateId> states_;
  std::vector<Letter> alphabet_;
  std::vector<Edge> edges_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
  std::unordered_map<StateId, std::size_t> state_pos_;
  std::unordered_map<Letter, std::size_t> letter_pos_;
  std::vector<Matrix<Boolean>> matrices_;
};

template <Semiring S = Boolean>
Matrix<S> letter_matrix(const Nfa& a, const Letter& letter) {
  return convert<S>(a.matrix(a.letter_index(letter)));
}

/// M_w = M_{a1} ... M_{an}; the identity for the empty word.
template <Semiring S = Boolean>
Matrix<S> word_matrix(const Nfa& a, const Word& w) {
  const auto code = a.encode(w);
  auto m = Matrix<S>::identity(a.size());
  for (auto l : code) m = mat_mul(m, convert<S>(a.matrix(l)));
  return m;
}

/// Q_t^*(Q_in . M_w): does some path spelling w lead from an initial to an
/// accepting state?
inline bool interval_eval(const Nfa& a, const Word& w) {
  const auto code = a.encode(w);
  auto v = Matrix<Boolean>::row(a.initial_mask());
  for (auto l : code) v = mat_mul(v, a.matrix(l));
  for (std::size_t q = 0; q < a.size(); ++q)
    if (v(0, q) && a.is_accepting(q)) return true;
  return false;
}

/// Boolean trace of M_w: does some state carry a closed path spelling w?
inline bool trace_eval(const Nfa& a, const Word& w) {
  return mat_trace(word_matrix<Boolean>(a, w));
}

inline bool trace_eval(const Nfa& a, const CircularWord& w) { return trace_eval(a, w.canonical()); }

namespace detail {

inline std::vector<bool> forward_closure(const Nfa& a, std::vector<bool> seed) {
  std::vector<std::vector<std::size_t>> succ(a.size());
  for (const auto& e : a.edges()) succ[e.from].push_back(e.to);
  std::vector<std::size_t> stack;
  for (std::size_t q = 0; q < seed.size(); ++q)
    if (seed[q]) stack.push_back(q);
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    for (auto r : succ[q])
      if (!seed[r]) {
        seed[r] = true;
        stack.push_back(r);
      }
  }
  return seed;
}

inline std::vector<bool> backward_closure(const Nfa& a, std::vector<bool> seed) {
  std::vector<std::vector<std::size_t>> pred(a.size());
  for (const auto& e : a.edges()) pred[e.to].push_back(e.from);
  std::vector<std::size_t> stack;
  for (std::size_t q = 0; q < seed.size(); ++q)
    if (seed[q]) stack.push_back(q);
  while (!stack.empty()) {
    const auto q = stack.back();
    stack.pop_back();
    for (auto r : pred[q])
      if (!seed[r]) {
        seed[r] = true;
        stack.push_back(r);
      }
  }
  return seed;
}

}  // namespace detail

/// States kept by trimming (Q'') and the states reachable from them (Q').
struct TrimSets {
  std::vector<bool> core;       // on an accepting path or on an oriented loop
  std::vector<bool> reachable;  // reachable from core
};

inline TrimSets trim_sets(const Nfa& a) {
  const auto n = a.size();
  const auto from_initial = detail::forward_closure(a, a.initial_mask());
  const auto to_accepting = detail::backward_closure(a, a.accepting_mask());
  TrimSets sets{std::vector<bool>(n, false), {}};
  for (std::size_t q = 0; q < n; ++q) {
    if (from_initial[q] && to_accepting[q]) {
      sets.core[q] = true;
      continue;
    }
    // q lies on a loop iff q is reachable from one of its successors.
    std::vector<bool> seed(n, false);
    for (const auto& e : a.edges())
      if (e.from == q) seed[e.to] = true;
    sets.core[q] = detail::forward_closure(a, std::move(seed))[q];
  }
  sets.reachable = detail::forward_closure(a, sets.core);
  return sets;
}

/// Restriction to the states on accepting paths or oriented loops. Edges
/// leaving that set are dropped; both languages are preserved.
inline Nfa trim(const Nfa& a) {
  const auto keep = trim_sets(a).core;
  std::vector<std::size_t> remap(a.size(), 0);
  std::vector<StateId> states;
  std::vector<bool> initial, accepting;
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (!keep[q]) continue;
    remap[q] = states.size();
    states.push_back(a.states()[q]);
    initial.push_back(a.is_initial(q));
    accepting.push_back(a.is_accepting(q));
  }
  std::vector<Nfa::Edge> edges;
  for (const auto& e : a.edges())
    if (keep[e.from] && keep[e.to]) edges.push_back({remap[e.from], e.letter, remap[e.to]});
  return Nfa::from_indices(std::move(states), a.alphabet(), std::move(edges), std::move(initial),
                           std::move(accepting));
}

/// Disjoint union. States of `b` whose names clash with a state of `a` get
/// primes appended until unique. Alphabets must agree as sets; the result
/// uses the order of `a` (an empty automaton adopts the other's alphabet).
inline Nfa disjoint_union(const Nfa& a, const Nfa& b) {
  auto alphabet = a.alphabet();
  {
    auto x = a.alphabet(), y = b.alphabet();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) {
      if (a.empty() && a.alphabet().empty())
        alphabet = b.alphabet();
      else if (!(b.empty() && b.alphabet().empty()))
        throw ValidationError("disjoint_union: alphabets differ");
    }
  }
  std::set<StateId> used(a.states().begin(), a.states().end());
  std::vector<StateId> states = a.states();
  std::vector<StateId> b_names;
  for (const auto& q : b.states()) {
    StateId name = q;
    while (used.count(name)) name += '\'';
    used.insert(name);
    b_names.push_back(name);
    states.push_back(name);
  }
  auto letter_in = [&](const Nfa& src, std::size_t l) {
    return static_cast<std::size_t>(
        std::find(alphabet.begin(), alphabet.end(), src.alphabet()[l]) - alphabet.begin());
  };
  std::vector<Nfa::Edge> edges;
  for (const auto& e : a.edges()) edges.push_back({e.from, letter_in(a, e.letter), e.to});
  const auto off = a.size();
  for (const auto& e : b.edges()) edges.push_back({e.from + off, letter_in(b, e.letter), e.to + off});
  auto initial = a.initial_mask();
  auto accepting = a.accepting_mask();
  initial.insert(initial.end(), b.initial_mask().begin(), b.initial_mask().end());
  accepting.insert(accepting.end(), b.accepting_mask().begin(), b.accepting_mask().end());
  return Nfa::from_indices(std::move(states), std::move(alphabet), std::move(edges),
                           std::move(initial), std::move(accepting));
}

/// One-letter automaton over {a}: simple a-loops of the given lengths plus a
/// flower, i.e. loops of lengths N, N+n, ..., N+(m-1)n glued at one vertex.
/// No initial or accepting states.
inline Nfa flower_automaton(const std::vector<std::size_t>& short_cycles, std::size_t N,
                            std::size_t n, std::size_t m) {
  if (N == 0 || n == 0 || m == 0) throw ValidationError("flower_automaton: N, n, m must be >= 1");
  std::vector<StateId> states;
  std::vector<Nfa::Edge> edges;
  auto add_loop = [&](std::size_t hub, std::size_t length, const std::string& prefix) {
    // hub -> p1 -> ... -> p_{length-1} -> hub
    std::size_t prev = hub;
    for (std::size_t k = 1; k < length; ++k) {
      states.push_back(prefix + std::to_string(k));
      edges.push_back({prev, 0, states.size() - 1});
      prev = states.size() - 1;
    }
    edges.push_back({prev, 0, hub});
  };
  for (std::size_t c = 0; c < short_cycles.size(); ++c) {
    if (short_cycles[c] == 0) throw ValidationError("flower_automaton: zero-length cycle");
    const std::string prefix = "c" + std::to_string(c) + "_";
    states.push_back(prefix + "0");
    add_loop(states.size() - 1, short_cycles[c], prefix);
  }
  states.push_back("f");
  const auto hub = states.size() - 1;
  for (std::size_t t = 0; t < m; ++t) add_loop(hub, N + t * n, "f" + std::to_string(t) + "_");
  const auto count = states.size();
  return Nfa::from_indices(std::move(states), {"a"}, std::move(edges),
                           std::vector<bool>(count, false), std::vector<bool>(count, false));
}

/// Is there a closed path spelling (a rotation of) w that visits a marked
/// state? Sums q^*(q . M_{w'}) over marked q and all rotations w'.
inline bool circular_through_subset(const Nfa& a, const std::vector<StateId>& marked, const Word& w) {
  std::vector<std::size_t> idx;
  for (const auto& q : marked) idx.push_back(a.state_index(q));
  const std::size_t rotations = std::max<std::size_t>(w.size(), 1);
  for (std::size_t s = 0; s < rotations; ++s) {
    const auto m = word_matrix<Boolean>(a, rotate_word(w, s));
    for (auto q : idx)
      if (m(q, q)) return true;
  }
  return false;
}

}  // namespace tqfa

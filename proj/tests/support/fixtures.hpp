#pragma once

#include "tqfa/tqfa.hpp"

namespace tqfa::testing {

// Two states; a swaps them, b loops on q2.
inline Nfa swap_with_loop() {
  return Nfa({"q1", "q2"}, {"a", "b"}, {{"q1", "a", "q2"}, {"q2", "a", "q1"}, {"q2", "b", "q2"}}, {"q1"}, {"q2"});
}

// An a-labelled 2-cycle whose start state is both initial and accepting.
inline Nfa even_cycle() {
  return Nfa({"p0", "p1"}, {"a"}, {{"p0", "a", "p1"}, {"p1", "a", "p0"}}, {"p0"}, {"p0"});
}

// b swaps q0 and q1, a loops on q1; no decorations.
inline Nfa b_swap() {
  return Nfa({"q0", "q1"}, {"a", "b"}, {{"q0", "b", "q1"}, {"q1", "b", "q0"}, {"q1", "a", "q1"}}, {}, {});
}

inline Word w(const char* s) { return parse_word(s); }

inline Word a_power(std::size_t n) { return Word(n, "a"); }

}  // namespace tqfa::testing

#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace tqfa;
using namespace tqfa::testing;

TEST_CASE("construction validates names") {
  CHECK_THROWS_AS(Nfa({"q", "q"}, {"a"}, {}, {}, {}), ValidationError);
  CHECK_THROWS_AS(Nfa({"q"}, {"a", "a"}, {}, {}, {}), ValidationError);
  CHECK_THROWS_AS(Nfa({"q"}, {"a"}, {{"q", "b", "q"}}, {}, {}), LookupError);
  CHECK_THROWS_AS(Nfa({"q"}, {"a"}, {{"q", "a", "r"}}, {}, {}), LookupError);
  CHECK_THROWS_AS(Nfa({"q"}, {"a"}, {}, {"r"}, {}), LookupError);
  const Nfa dup({"q"}, {"a"}, {{"q", "a", "q"}, {"q", "a", "q"}}, {}, {});
  CHECK(dup.edges().size() == 1);
}

TEST_CASE("letter and word matrices of the two-state example") {
  const auto sw = swap_with_loop();
  CHECK(letter_matrix(sw, "a") == Matrix<Boolean>::from_rows({{0, 1}, {1, 0}}));
  CHECK(letter_matrix(sw, "b") == Matrix<Boolean>::from_rows({{0, 0}, {0, 1}}));
  CHECK(word_matrix<Boolean>(sw, {}) == Matrix<Boolean>::identity(2));
  const auto mab = word_matrix<Boolean>(sw, w("ab"));
  CHECK(mab == Matrix<Boolean>::from_rows({{0, 1}, {0, 0}}));
  CHECK_THROWS_AS(letter_matrix(sw, "c"), LookupError);
  CHECK_THROWS_AS(interval_eval(sw, w("ac")), LookupError);
}

TEST_CASE("interval and trace evaluation examples") {
  const auto sw = swap_with_loop();
  CHECK(interval_eval(sw, w("a")));
  CHECK_FALSE(interval_eval(sw, w("aa")));
  CHECK(interval_eval(sw, w("abb")));
  CHECK(trace_eval(sw, w("aba")));
  CHECK(trace_eval(sw, Word{}));
  CHECK_FALSE(trace_eval(sw, w("a")));
  CHECK(trace_eval(sw, CircularWord(w("baa"))));
  const Nfa eps({"q"}, {"a"}, {}, {"q"}, {"q"});
  CHECK(interval_eval(eps, Word{}));
}

TEST_CASE("the empty automaton has empty languages") {
  const Nfa empty;
  CHECK_FALSE(interval_eval(empty, Word{}));
  CHECK_FALSE(trace_eval(empty, Word{}));
  const Nfa with_letters({}, {"a"}, {}, {}, {});
  CHECK_FALSE(trace_eval(with_letters, w("a")));
}

TEST_CASE("monoid action and decomposition of identity") {
  Rng rng(10);
  for (int t = 0; t < 40; ++t) {
    const auto a = random_nfa(rng, 4);
    for (const auto& u : all_words(a.alphabet(), 3))
      for (const auto& v : all_words(a.alphabet(), 2)) {
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        REQUIRE(word_matrix<Boolean>(a, uv) == word_matrix<Boolean>(a, u) * word_matrix<Boolean>(a, v));
        REQUIRE(word_matrix<Natural>(a, uv) == word_matrix<Natural>(a, u) * word_matrix<Natural>(a, v));
      }
    Matrix<Boolean> sum(a.size(), a.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
      std::vector<bool> e(a.size(), false);
      e[q] = true;
      sum = sum + Matrix<Boolean>::column(e) * Matrix<Boolean>::row(e);
    }
    REQUIRE(sum == Matrix<Boolean>::identity(a.size()));
  }
}

TEST_CASE("trace evaluation is strongly circular and ignores decorations") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const auto a = random_nfa(rng, 4);
    CHECK(trace_eval(a, Word{}));
    std::vector<bool> in(a.size()), acc(a.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
      in[q] = coin(rng);
      acc[q] = coin(rng);
    }
    const auto b = a.with_decorations(in, acc);
    for (const auto& x : all_words(a.alphabet(), 6)) {
      const bool tr = trace_eval(a, x);
      REQUIRE(trace_eval(b, x) == tr);
      for (std::size_t s = 1; s < x.size(); ++s) REQUIRE(trace_eval(a, rotate_word(x, s)) == tr);
      if (tr && x.size() <= 3)
        for (std::size_t n = 2; n <= 4; ++n) REQUIRE(trace_eval(a, power(x, n)));
    }
  }
}

TEST_CASE("trim") {
  const auto sw = swap_with_loop();
  CHECK(trim(sw) == sw);

  const Nfa dangling({"q1", "q2", "z"}, {"a", "b"},
                     {{"q1", "a", "q2"}, {"q2", "a", "q1"}, {"q2", "b", "q2"}, {"z", "a", "q1"}}, {"q1"}, {"q2"});
  const auto t = trim(dangling);
  CHECK(t.states() == std::vector<StateId>{"q1", "q2"});
  CHECK(t.edges().size() == 3);

  // a state only reachable from a loop, leading nowhere, is dropped
  const Nfa tail({"l", "x"}, {"a"}, {{"l", "a", "l"}, {"l", "a", "x"}}, {}, {});
  const auto sets = trim_sets(tail);
  CHECK(sets.core == std::vector<bool>{true, false});
  CHECK(sets.reachable == std::vector<bool>{true, true});
  CHECK(trim(tail).states() == std::vector<StateId>{"l"});

  // no loops and no accepting path: nothing survives, so the bare circle
  // drops from |Q| to 0 while every nonempty word is unaffected
  const Nfa isolated({"z"}, {"a"}, {}, {}, {});
  CHECK(trim(isolated).empty());
  CHECK(trace_eval(isolated, Word{}));
  CHECK_FALSE(trace_eval(trim(isolated), Word{}));

  Rng rng(12);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_nfa(rng, 5, {"a", "b"}, 0.2);
    const auto b = trim(a);
    CHECK(trim(b) == b);
    CHECK(trace_eval(b, Word{}) == !b.empty());
    for (const auto& x : all_words(a.alphabet(), 6)) {
      REQUIRE(interval_eval(b, x) == interval_eval(a, x));
      if (!x.empty()) REQUIRE(trace_eval(b, x) == trace_eval(a, x));
    }
  }
}

TEST_CASE("disjoint union") {
  const auto sw = swap_with_loop();
  const auto u0 = disjoint_union(sw, Nfa());
  CHECK(u0 == sw);
  CHECK(disjoint_union(Nfa(), sw) == sw);

  const Nfa aloop({"q1"}, {"b", "a"}, {{"q1", "a", "q1"}}, {}, {});
  const auto u = disjoint_union(sw, aloop);
  CHECK(u.states() == std::vector<StateId>{"q1", "q2", "q1'"});
  CHECK_FALSE(trace_eval(sw, w("a")));
  CHECK(trace_eval(u, w("a")));
  for (const auto& x : all_words({"a", "b"}, 6)) REQUIRE(interval_eval(u, x) == interval_eval(sw, x));

  CHECK_THROWS_AS(disjoint_union(sw, even_cycle()), ValidationError);

  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_nfa(rng, 3), b = random_nfa(rng, 3);
    const auto ab = disjoint_union(a, b);
    for (const auto& x : all_words(a.alphabet(), 6)) {
      REQUIRE(trace_eval(ab, x) == (trace_eval(a, x) || trace_eval(b, x)));
      REQUIRE(interval_eval(ab, x) == (interval_eval(a, x) || interval_eval(b, x)));
    }
  }
}

TEST_CASE("flower automata") {
  const auto single = flower_automaton({}, 1, 1, 1);
  CHECK(single.size() == 1);
  for (std::size_t k = 0; k <= 12; ++k) CHECK(trace_eval(single, a_power(k)));

  // Membership computed by the circle-map oracle, then frozen.
  const auto f = flower_automaton({2}, 3, 3, 1);
  const std::vector<bool> frozen{true, false, true, true, true, false, true, false, true, true, true, false, true};
  for (std::size_t k = 0; k <= 8; ++k) REQUIRE(circle_map_sum<Boolean>(f, a_power(k)) == frozen[k]);
  for (std::size_t k = 0; k <= 12; ++k) REQUIRE(trace_eval(f, a_power(k)) == frozen[k]);
  CHECK(trace_eval(f, a_power(2)));
  CHECK(trace_eval(f, a_power(3)));
  CHECK(trace_eval(f, a_power(6)));

  CHECK_THROWS_AS(flower_automaton({0}, 1, 1, 1), ValidationError);
  CHECK_THROWS_AS(flower_automaton({}, 0, 1, 1), ValidationError);

  for (const auto& params : std::vector<std::vector<std::size_t>>{{2, 3, 3, 1}, {5, 4, 2, 3}, {1, 6, 1, 2}}) {
    const auto fl = flower_automaton({params[0]}, params[1], params[2], params[3]);
    for (std::size_t k = 1; k <= 12; ++k)
      if (trace_eval(fl, a_power(k)))
        for (std::size_t n = 2; k * n <= 12; ++n) REQUIRE(trace_eval(fl, a_power(k * n)));
  }
}

TEST_CASE("circular language through marked states") {
  const auto bs = b_swap();
  CHECK(circular_through_subset(bs, {"q0"}, w("bb")));
  CHECK_FALSE(circular_through_subset(bs, {"q0"}, w("a")));
  CHECK(circular_through_subset(bs, {"q0"}, Word{}));
  CHECK(circular_through_subset(bs, {"q1"}, w("a")));
  CHECK(circular_through_subset(bs, {"q0"}, w("abab")) == false);
  CHECK(circular_through_subset(bs, {"q0"}, w("abb")));
  CHECK_THROWS_AS(circular_through_subset(bs, {"zz"}, w("b")), LookupError);
}

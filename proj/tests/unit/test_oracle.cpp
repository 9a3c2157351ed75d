#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace tqfa;
using namespace tqfa::testing;

TEST_CASE("map sums on the two-state automaton") {
  const auto sw = swap_with_loop();
  CHECK(chain_map_sum<Natural>(sw, w("a")) == 1);
  CHECK(circle_map_sum<Natural>(sw, w("aba")) == 1);
  CHECK(circle_map_sum<Natural>(sw, {}) == 2);
  CHECK(circle_map_sum<Natural>(sw, w("bb")) == 1);
  CHECK(chain_map_sum<Boolean>(sw, w("aa")) == false);
  CHECK(chain_map_sum<Natural>(sw, {}) == 0);
  const Nfa loops({"p", "q", "r"}, {"a"}, {{"p", "a", "p"}, {"p", "a", "q"}, {"q", "a", "q"}},
                  {"p", "q"}, {"p", "q", "r"});
  CHECK(chain_map_sum<Natural>(loops, {}) == 2);
  CHECK(chain_map_sum<Natural>(loops, w("aa")) == 4);  // ppp, ppq, pqq, qqq
}

TEST_CASE("capacity limits") {
  const auto sw = swap_with_loop();
  CHECK_THROWS_AS(chain_map_sum<Boolean>(sw, a_power(9)), CapacityError);
  CHECK_NOTHROW(chain_map_sum<Boolean>(sw, a_power(9), {9, 8}));
  std::vector<StateId> many;
  for (int i = 0; i < 9; ++i) many.push_back("s" + std::to_string(i));
  const Nfa big(many, {"a"}, {}, {}, {});
  CHECK_THROWS_AS(circle_map_sum<Boolean>(big, w("a")), CapacityError);
}

TEST_CASE("oracle sums equal the matrix evaluations") {
  Rng rng(70);
  for (int t = 0; t < 60; ++t) {
    const auto a = random_nfa(rng, 4);
    for (const auto& x : all_words(a.alphabet(), 5)) {
      REQUIRE(chain_map_sum<Boolean>(a, x) == interval_eval(a, x));
      REQUIRE(circle_map_sum<Boolean>(a, x) == trace_eval(a, x));
      const auto m = word_matrix<Natural>(a, x);
      std::uint64_t paths = 0;
      for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = 0; q < a.size(); ++q)
          if (a.is_initial(p) && a.is_accepting(q)) paths += m(p, q);
      REQUIRE(chain_map_sum<Natural>(a, x) == paths);
      // the counted value does not depend on the basepoint of the circle
      REQUIRE(circle_map_sum<Natural>(a, x, 0) == mat_trace(m));
      if (!x.empty()) REQUIRE(circle_map_sum<Natural>(a, x, x.size() - 1) == mat_trace(m));
    }
  }
}

TEST_CASE("regular expressions") {
  CHECK(regex_match("(a a)*", a_power(4)));
  CHECK_FALSE(regex_match("(a a)*", a_power(3)));
  CHECK_FALSE(regex_match("(ab*a)*ab*", w("aa")));
  CHECK(regex_match("(ab*a)*ab*", w("abbaab")));
  CHECK(regex_match("(ba*b)* + (a*+bb)*bb(a*+bb)*", w("bb")));
  CHECK(regex_match("eps", {}));
  CHECK_FALSE(regex_match("empty", {}));
  CHECK_FALSE(regex_match("empty*a", w("b")));
  CHECK(regex_match("empty*a", w("a")));
  CHECK(regex_match("", {}));
  CHECK(regex_match("a + eps", {}));
  CHECK(regex_match("(a+b)*c", w("abbac")));
  CHECK(regex_match("a**", a_power(3)));
  CHECK_THROWS_AS(Regex::parse("(ab"), ParseError);
  CHECK_THROWS_AS(Regex::parse("a)"), ParseError);
  CHECK_THROWS_AS(Regex::parse("*a"), ParseError);
  const auto r = Regex::parse("ab");
  CHECK(r.matches_circular(w("ba")));
  CHECK_FALSE(r.matches(w("ba")));
  CHECK_FALSE(r.matches_circular(w("aa")));
}

TEST_CASE("regex oracle agrees with automata for known languages") {
  const auto cyc = even_cycle();
  for (std::size_t k = 0; k <= 12; ++k) REQUIRE(regex_match("(aa)*", a_power(k)) == interval_eval(cyc, a_power(k)));

  // brute-force regex check against an independent membership test
  const auto re = Regex::parse("(a+b)*abb");
  for (const auto& x : all_words({"a", "b"}, 8)) {
    const bool ends = x.size() >= 3 && x[x.size() - 3] == "a" && x[x.size() - 2] == "b" && x.back() == "b";
    REQUIRE(re.matches(x) == ends);
  }
}

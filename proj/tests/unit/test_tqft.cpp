#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace tqfa;
using namespace tqfa::testing;

namespace {

const Sign P = Sign::plus;
const Sign M = Sign::minus;

template <class S>
Matrix<S> nfa_matrix(const Nfa& a, const std::string& text) {
  return eval_nfa<S>(a, parse_diagram(text)).matrix;
}

Matrix<Boolean> top_matrix(const TAutomaton& t, const std::string& text) {
  return eval_tautomaton(t, parse_diagram(text)).matrix;
}

// Product of literal slice images, starting from the domain idempotent.
template <class Model>
Matrix<typename Model::semiring> reference_eval(const Model& model, const Diagram& d) {
  auto acc = boundary_identity(model, d.domain());
  for (const auto& s : d.slices()) acc = slice_matrix(model, s) * acc;
  return acc;
}

}  // namespace

TEST_CASE("closed examples on the two-state automaton") {
  const auto sw = swap_with_loop();
  const auto iv = eval_nfa<Boolean>(sw, parse_diagram("birth+ ; dot(a)+ ; death+"));
  CHECK(iv.closed());
  CHECK(iv.matrix.rows() == 1);
  CHECK(iv.scalar());
  CHECK_FALSE(eval_nfa<Boolean>(sw, parse_diagram("cup+ ; dot(a)+ id- ; cap+")).scalar());
  CHECK(eval_nfa<Natural>(sw, parse_diagram("cup+ ; cap+")).scalar() == 2);
  CHECK(eval_nfa<Natural>(sw, parse_diagram("cup- ; cap-")).scalar() == 2);
  CHECK(eval_interval(sw, w("a")));
  CHECK(eval_circle(sw, w("aba")));
  CHECK_FALSE(eval_circle(sw, w("a")));
  CHECK_FALSE(eval_nfa<Boolean>(sw, parse_diagram("birth+ ; death+")).scalar());
}

TEST_CASE("generator images of an automaton") {
  const auto sw = swap_with_loop();
  const auto ma = letter_matrix(sw, "a"), mb = letter_matrix(sw, "b");
  CHECK(nfa_matrix<Boolean>(sw, "dot(b)+") == mat_transpose(mb));
  CHECK(nfa_matrix<Boolean>(sw, "dot(b)-") == mb);
  CHECK(nfa_matrix<Boolean>(sw, "birth+") == Matrix<Boolean>::column({true, false}));
  CHECK(nfa_matrix<Boolean>(sw, "birth-") == Matrix<Boolean>::column({false, true}));
  CHECK(nfa_matrix<Boolean>(sw, "death+") == Matrix<Boolean>::row({false, true}));
  CHECK(nfa_matrix<Boolean>(sw, "death-") == Matrix<Boolean>::row({true, false}));
  CHECK(nfa_matrix<Boolean>(sw, "birth+(q2)") == Matrix<Boolean>::column({false, true}));
  CHECK(nfa_matrix<Boolean>(sw, "swap(+-)") * nfa_matrix<Boolean>(sw, "swap(-+)") == Matrix<Boolean>::identity(4));
  // dot(a)+ then dot(b)+ reads "ab"
  CHECK(nfa_matrix<Boolean>(sw, "dot(a)+ ; dot(b)+") == mat_transpose(ma * mb));
  // reading backwards on a '-' strand
  CHECK(nfa_matrix<Boolean>(sw, "dot(a)- ; dot(b)-") == mb * ma);
}

TEST_CASE("intervals and circles agree with the matrix semantics") {
  Rng rng(40);
  for (int t = 0; t < 40; ++t) {
    const auto a = random_nfa(rng, 4);
    for (const auto& x : all_words(a.alphabet(), 5)) {
      REQUIRE(eval_interval(a, x) == interval_eval(a, x));
      REQUIRE(eval_circle(a, x) == trace_eval(a, x));
      REQUIRE(eval_circle<Natural>(a, x) == mat_trace(word_matrix<Natural>(a, x)));
    }
    REQUIRE(eval_circle<Natural>(a, {}) == a.size());
  }
}

TEST_CASE("local evaluation matches the literal slice product") {
  Rng rng(41);
  DiagramOptions opt;
  opt.labels = {"s0", "s1"};
  for (int t = 0; t < 200; ++t) {
    const auto a = random_nfa(rng, 3, {"a", "b"}, 0.3, 2);
    const auto d = random_diagram(rng, opt);
    INFO(print_diagram(d));
    REQUIRE(eval_nfa<Natural>(a, d).matrix == reference_eval(NfaModel<Natural>(a), d));
    REQUIRE(eval_nfa<Boolean>(a, d).matrix == reference_eval(NfaModel<Boolean>(a), d));
  }
  DiagramOptions fopt;
  fopt.foam = true;
  fopt.labels = {"x0", "x1"};
  for (int t = 0; t < 200; ++t) {
    const auto x = random_space(rng, testing::uniform(rng, 2, 3));
    const auto ta = random_tautomaton(rng, x);
    const auto d = random_diagram(rng, fopt);
    INFO(print_diagram(d));
    REQUIRE(eval_tautomaton(ta, d).matrix == reference_eval(TopologyModel(ta), d));
  }
}

TEST_CASE("evaluation shapes and errors") {
  const auto sw = swap_with_loop();
  const auto e = eval_nfa<Boolean>(sw, parse_diagram("cup+ id+"));
  CHECK(e.domain_dims == std::vector<std::size_t>{2});
  CHECK(e.codomain_dims == std::vector<std::size_t>{2, 2, 2});
  CHECK(e.matrix.rows() == 8);
  CHECK(e.matrix.cols() == 2);
  CHECK_THROWS_AS(e.scalar(), ShapeError);
  CHECK_THROWS_AS(eval_nfa<Boolean>(sw, parse_diagram("unit ; counit")), UnsupportedError);
  CHECK_THROWS_AS(eval_nfa<Boolean>(sw, parse_diagram("dot(c)+")), LookupError);
  CHECK_THROWS_AS(eval_nfa<Boolean>(sw, parse_diagram("birth+(zz)")), LookupError);
  std::vector<Slice> wide{identity_slice(SignSeq(21, P))};
  CHECK_THROWS_AS(eval_nfa<Boolean>(sw, Diagram::from_slices(wide)), CapacityError);
  // an empty diagram evaluates to the 1x1 identity
  CHECK(eval_nfa<Boolean>(sw, Diagram()).scalar());
}

TEST_CASE("zig-zag identities and dot slides") {
  Rng rng(42);
  const std::vector<std::pair<std::string, std::string>> equal{
      {"id+ cup- ; cap+ id+", "id+"},
      {"cup+ id+ ; id+ cap-", "id+"},
      {"id- cup+ ; cap- id-", "id-"},
      {"cup- id- ; id- cap+", "id-"},
      {"cup+ ; dot(a)+ id-", "cup+ ; id+ dot(a)-"},
      {"cup- ; dot(a)- id+", "cup- ; id- dot(a)+"},
      {"dot(a)+ id- ; cap+", "id+ dot(a)- ; cap+"},
      {"dot(a)- id+ ; cap-", "id- dot(a)+ ; cap-"},
      {"swap(+-) ; swap(-+)", "id+ id-"},
      {"dot(a)+ dot(b)- ; swap(+-)", "swap(+-) ; dot(b)- dot(a)+"},
  };
  for (int t = 0; t < 50; ++t) {
    const auto a = random_nfa(rng, 4);
    const auto x = random_space(rng, testing::uniform(rng, 1, 4));
    const auto ta = random_tautomaton(rng, x);
    for (const auto& [lhs, rhs] : equal) {
      INFO(lhs << " = " << rhs);
      REQUIRE(nfa_matrix<Natural>(a, lhs) == nfa_matrix<Natural>(a, rhs));
      REQUIRE(top_matrix(ta, lhs) == top_matrix(ta, rhs));
    }
  }
}

TEST_CASE("decomposition of the identity by labelled endpoints") {
  Rng rng(43);
  for (int t = 0; t < 30; ++t) {
    const auto a = random_nfa(rng, 4);
    Matrix<Natural> sum(a.size(), a.size());
    for (const auto& q : a.states()) sum = sum + nfa_matrix<Natural>(a, "death+(" + q + ") ; birth+(" + q + ")");
    REQUIRE(sum == Matrix<Natural>::identity(a.size()));

    const auto x = random_space(rng, testing::uniform(rng, 1, 4));
    const auto ta = random_tautomaton(rng, x);
    Matrix<Boolean> plus(x.size(), x.size()), minus(x.size(), x.size());
    for (const auto& p : x.points()) {
      plus = plus + top_matrix(ta, "death+(" + p + ") ; birth+(" + p + ")");
      minus = minus + top_matrix(ta, "death-(" + p + ") ; birth-(" + p + ")");
    }
    REQUIRE(plus == top_matrix(ta, "id+"));
    REQUIRE(minus == top_matrix(ta, "id-"));
  }
}

TEST_CASE("functoriality under compose and tensor") {
  Rng rng(44);
  DiagramOptions opt;
  opt.max_width = 3;
  opt.max_slices = 3;
  opt.labels = {"s0", "s1"};
  for (int t = 0; t < 150; ++t) {
    const auto a = random_nfa(rng, 3, {"a", "b"}, 0.3, 2);
    const auto d1 = random_diagram(rng, opt);
    const auto d2 = random_diagram_from(rng, d1.codomain(), opt);
    const auto d3 = random_diagram(rng, opt);
    INFO(print_diagram(d1) << " | " << print_diagram(d2) << " | " << print_diagram(d3));
    const auto e1 = eval_nfa<Natural>(a, d1).matrix, e2 = eval_nfa<Natural>(a, d2).matrix,
               e3 = eval_nfa<Natural>(a, d3).matrix;
    REQUIRE(eval_nfa<Natural>(a, compose(d1, d2)).matrix == e2 * e1);
    REQUIRE(eval_nfa<Natural>(a, tensor(d1, d3)).matrix == mat_kron(e1, e3));
  }
}

TEST_CASE("T-automaton generator images are balanced") {
  Rng rng(45);
  const std::vector<Gen> gens{Gen::id(P),       Gen::id(M),        Gen::cup(P),        Gen::cup(M),
                              Gen::cap(P),      Gen::cap(M),       Gen::swap(P, M),    Gen::swap(M, M),
                              Gen::dot("a", P), Gen::dot("b", M),  Gen::birth(P),      Gen::birth(M),
                              Gen::death(P),    Gen::death(M),     Gen::birth(P, "x0"), Gen::death(M, "x0"),
                              Gen::merge(),     Gen::split(),      Gen::unit(),        Gen::counit()};
  for (int t = 0; t < 40; ++t) {
    const auto x = random_space(rng, testing::uniform(rng, 1, 4));
    const auto ta = random_tautomaton(rng, x);
    const TopologyModel model(ta);
    for (const auto& g : gens) {
      INFO(format_gen(g));
      const auto img = model.image(g);
      REQUIRE(boundary_identity(model, g.outputs()) * img * boundary_identity(model, g.inputs()) == img);
    }
  }
}

TEST_CASE("T-automaton intervals and circles") {
  Rng rng(46);
  for (int t = 0; t < 40; ++t) {
    const auto x = random_space(rng, testing::uniform(rng, 1, 4));
    const auto ta = random_tautomaton(rng, x);
    for (const auto& v : all_words(ta.alphabet(), 4)) {
      REQUIRE(eval_tautomaton(ta, interval_diagram(v)).scalar() == t_interval_eval(ta, v));
      REQUIRE(eval_tautomaton(ta, circle_diagram(v)).scalar() == t_trace_eval(ta, v));
    }
    const bool meets = ta.initial_open().intersects(ta.accepting_closed());
    REQUIRE(top_matrix(ta, "birth+ ; death+").is_zero() == !meets);
    REQUIRE(top_matrix(ta, "birth- ; death-").is_zero() == !meets);
  }
}

TEST_CASE("discrete spaces reproduce the automaton functor") {
  Rng rng(47);
  DiagramOptions opt;
  opt.labels = {"s0", "s1"};
  for (int t = 0; t < 100; ++t) {
    const auto a = random_nfa(rng, 3, {"a", "b"}, 0.3, 2);
    const auto d = discrete_tautomaton(a);
    const auto diagram = random_diagram(rng, opt);
    INFO(print_diagram(diagram));
    REQUIRE(eval_tautomaton(d, diagram).matrix == eval_nfa<Boolean>(a, diagram).matrix);
  }
}

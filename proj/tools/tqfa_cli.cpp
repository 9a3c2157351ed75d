#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tqfa/tqfa.hpp"

namespace {

using namespace tqfa;

enum Exit : int { kOk = 0, kMismatch = 1, kInput = 2, kType = 3, kCapacity = 4 };

template <class S>
void print_matrix(const Matrix<S>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) std::cout << ' ';
      std::cout << static_cast<std::uint64_t>(m(i, j));
    }
    std::cout << '\n';
  }
}

template <class S>
void print_evaluation(const Evaluation<S>& e) {
  if (e.closed())
    std::cout << static_cast<std::uint64_t>(e.scalar()) << '\n';
  else
    print_matrix(e.matrix);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Compares the oracle sums against the matrix and diagram evaluations over
// both semirings. Reports each mismatch on stderr.
int oracle_sweep(const Nfa& a, std::size_t max_len) {
  const OracleCaps caps;
  std::size_t words = 0, mismatches = 0;
  auto report = [&](const char* what, const Word& w) {
    ++mismatches;
    std::cerr << "mismatch: " << what << " on \"" << format_word(w) << "\"\n";
  };
  for (const auto& w : all_words(a.alphabet(), max_len)) {
    ++words;
    const bool interval = interval_eval(a, w);
    const bool trace = trace_eval(a, w);
    if (chain_map_sum<Boolean>(a, w, caps) != interval) report("chain_map_sum vs interval_eval", w);
    if (eval_interval<Boolean>(a, w) != interval) report("interval diagram vs interval_eval", w);
    if (circle_map_sum<Boolean>(a, w, 0, caps) != trace) report("circle_map_sum vs trace_eval", w);
    if (eval_circle<Boolean>(a, w) != trace) report("circle diagram vs trace_eval", w);
    const auto m = word_matrix<Natural>(a, w);
    std::uint64_t paths = 0;
    for (std::size_t p = 0; p < a.size(); ++p)
      for (std::size_t q = 0; q < a.size(); ++q)
        if (a.is_initial(p) && a.is_accepting(q)) paths += m(p, q);
    if (chain_map_sum<Natural>(a, w, caps) != paths) report("chain count vs path matrix", w);
    if (eval_interval<Natural>(a, w) != paths) report("interval diagram count vs path matrix", w);
    if (circle_map_sum<Natural>(a, w, 0, caps) != mat_trace(m)) report("circle count vs trace", w);
    if (eval_circle<Natural>(a, w) != mat_trace(m)) report("circle diagram count vs trace", w);
  }
  std::cout << "words " << words << " mismatches " << mismatches << '\n';
  return mismatches == 0 ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automata as one-dimensional Boolean TQFTs: evaluate, query, cover, trim, export."};
  app.require_subcommand(1);

  std::string automaton, tautomaton, diagram, semiring = "bool", word, out, order, map_file, cover_file, base_file,
                                              voltages, map_out;
  std::size_t n = 1, max_len = 5;
  bool weak = false;

  auto* eval = app.add_subcommand("eval", "Evaluate a diagram; closed diagrams print one element");
  auto* eval_a = eval->add_option("--automaton", automaton, "NFA JSON file")->check(CLI::ExistingFile);
  auto* eval_t = eval->add_option("--tautomaton", tautomaton, "T-automaton JSON file")->check(CLI::ExistingFile);
  eval_a->excludes(eval_t);
  eval->add_option("--diagram", diagram, "Slice text or .json diagram")->required()->check(CLI::ExistingFile);
  eval->add_option("--semiring", semiring, "bool or nat")->check(CLI::IsMember({"bool", "nat"}));

  auto* member = app.add_subcommand("member", "Interval membership of a word (0/1)");
  auto* trace_member = app.add_subcommand("trace-member", "Trace membership of a circular word (0/1)");
  for (auto* sub : {member, trace_member}) {
    sub->add_option("--automaton", automaton)->required()->check(CLI::ExistingFile);
    sub->add_option("--word", word, "letters, or comma-separated multi-character letters")->required();
  }
  auto* t_member = app.add_subcommand("t-member", "Interval membership for a T-automaton (0/1)");
  auto* t_trace = app.add_subcommand("t-trace", "Trace membership for a T-automaton (0/1)");
  for (auto* sub : {t_member, t_trace}) {
    sub->add_option("--tautomaton", tautomaton)->required()->check(CLI::ExistingFile);
    sub->add_option("--word", word)->required();
  }

  auto* cover = app.add_subcommand("cover", "Covering constructions and checks");
  cover->require_subcommand(1);
  auto* cyclic = cover->add_subcommand("cyclic", "n-fold cyclic cover for a circular state order");
  cyclic->add_option("--automaton", automaton)->required()->check(CLI::ExistingFile);
  cyclic->add_option("--order", order, "comma-separated states")->required();
  cyclic->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  auto* voltage = cover->add_subcommand("voltage", "Cover from permutation voltages");
  voltage->add_option("--automaton", automaton)->required()->check(CLI::ExistingFile);
  voltage->add_option("--voltages", voltages, "JSON list of {from, letter, to, perm}")
      ->required()
      ->check(CLI::ExistingFile);
  voltage->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  for (auto* sub : {cyclic, voltage}) {
    sub->add_option("--out", out, "cover JSON (stdout if omitted)");
    sub->add_option("--map-out", map_out, "projection as graph-map JSON");
  }
  auto* check = cover->add_subcommand("check", "Is the map a covering (0/1)?");
  check->add_option("--map", map_file)->required()->check(CLI::ExistingFile);
  check->add_option("--cover", cover_file)->required()->check(CLI::ExistingFile);
  check->add_option("--base", base_file)->required()->check(CLI::ExistingFile);
  check->add_flag("--weak", weak, "check the weak-covering conditions instead");

  auto* trim_cmd = app.add_subcommand("trim", "Trim to states on accepting paths or oriented loops");
  trim_cmd->add_option("--automaton", automaton)->required()->check(CLI::ExistingFile);
  trim_cmd->add_option("--out", out, "JSON output (stdout if omitted)");

  auto* dot = app.add_subcommand("dot", "Graphviz DOT of the transition graph");
  dot->add_option("--automaton", automaton)->required()->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle", "Brute-force cross-checks");
  oracle->require_subcommand(1);
  auto* sweep = oracle->add_subcommand("sweep", "Oracle vs. evaluator on all words up to --max-len");
  sweep->add_option("--automaton", automaton)->required()->check(CLI::ExistingFile);
  sweep->add_option("--max-len", max_len)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*eval) {
      if (automaton.empty() && tautomaton.empty()) throw ValidationError("eval needs --automaton or --tautomaton");
      const auto d = load_diagram(diagram);
      if (!tautomaton.empty()) {
        if (semiring != "bool") throw ValidationError("T-automata evaluate over bool only");
        print_evaluation(eval_tautomaton(load_tautomaton(tautomaton), d));
      } else if (semiring == "nat") {
        print_evaluation(eval_nfa<Natural>(load_nfa(automaton), d));
      } else {
        print_evaluation(eval_nfa<Boolean>(load_nfa(automaton), d));
      }
    } else if (*member) {
      std::cout << interval_eval(load_nfa(automaton), parse_word(word)) << '\n';
    } else if (*trace_member) {
      std::cout << trace_eval(load_nfa(automaton), parse_word(word)) << '\n';
    } else if (*t_member) {
      std::cout << t_interval_eval(load_tautomaton(tautomaton), parse_word(word)) << '\n';
    } else if (*t_trace) {
      std::cout << t_trace_eval(load_tautomaton(tautomaton), parse_word(word)) << '\n';
    } else if (*cyclic || *voltage) {
      const auto a = load_nfa(automaton);
      const auto c = *cyclic ? cyclic_cover(a, split_list(order), n)
                             : voltage_cover(a, n, voltages_from_json(parse_json(read_file(voltages)), a));
      emit(out, dump(nfa_to_json(c.automaton)));
      if (!map_out.empty()) write_file(map_out, dump(graph_map_to_json(c.projection, c.automaton, a)));
    } else if (*check) {
      const auto c = load_nfa(cover_file);
      const auto b = load_nfa(base_file);
      const auto p = graph_map_from_json(parse_json(read_file(map_file)), c, b);
      std::cout << (weak ? is_weak_covering(p, c, b) : is_covering(p, c, b)) << '\n';
    } else if (*trim_cmd) {
      emit(out, dump(nfa_to_json(trim(load_nfa(automaton)))));
    } else if (*dot) {
      std::cout << to_dot(load_nfa(automaton));
    } else if (*sweep) {
      return oracle_sweep(load_nfa(automaton), max_len);
    }
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << '\n';
    return kType;
  } catch (const ShapeError& e) {
    std::cerr << "type error: " << e.what() << '\n';
    return kType;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}

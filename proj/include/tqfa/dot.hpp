#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "tqfa/automaton.hpp"

namespace tqfa {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Graphviz rendering of the transition graph. Accepting states are drawn
/// as double circles; each initial state gets an arrow from an invisible
/// point node. Parallel edges are merged into one comma-labelled edge.
inline std::string to_dot(const Nfa& a, const std::string& name = "automaton") {
  std::ostringstream out;
  out << "digraph " << detail::dot_quote(name) << " {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t q = 0; q < a.size(); ++q) {
    out << "  " << detail::dot_quote(a.states()[q])
        << " [shape=" << (a.is_accepting(q) ? "doublecircle" : "circle") << "];\n";
  }
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (!a.is_initial(q)) continue;
    const auto entry = detail::dot_quote("__start_" + a.states()[q]);
    out << "  " << entry << " [shape=point, label=\"\"];\n";
    out << "  " << entry << " -> " << detail::dot_quote(a.states()[q]) << ";\n";
  }
  std::map<std::pair<std::size_t, std::size_t>, std::string> labels;
  for (const auto& e : a.edges()) {
    auto& l = labels[{e.from, e.to}];
    if (!l.empty()) l += ",";
    l += a.alphabet()[e.letter];
  }
  for (const auto& [ends, label] : labels)
    out << "  " << detail::dot_quote(a.states()[ends.first]) << " -> " << detail::dot_quote(a.states()[ends.second])
        << " [label=" << detail::dot_quote(label) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace tqfa

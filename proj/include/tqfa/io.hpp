#pragma once

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tqfa/automaton.hpp"
#include "tqfa/cobordism.hpp"
#include "tqfa/covers.hpp"
#include "tqfa/error.hpp"
#include "tqfa/topology.hpp"

// JSON and file I/O. Objects keep their key order on output so that
// serialized artifacts are byte-stable; unknown keys are rejected on input.
//
//   Nfa        {"states", "alphabet", "transitions":[{"from","letter","to"}],
//               "initial", "accepting"}
//   FinTop     {"points", "min_open":{x:[...]}}
//   TAutomaton FinTop keys + {"initial_open", "accepting_closed",
//               "letters":{a:{x:[...]}}}       (m_a(U_x) for every x)
//   Diagram    {"slices":[[{"gen","sign","signs","letter","label"}]]}
//   GraphMap   {"vertex_map":{q':q}, "edge_map":[{"cover":T, "base":T}]}
//   Voltages   [{"from","letter","to","perm":[...]}]

namespace tqfa {

using Json = nlohmann::ordered_json;

namespace detail {

inline void require_object(const Json& j, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + ": expected a JSON object");
}

inline void check_keys(const Json& j, const std::string& what, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) {
  require_object(j, what);
  for (const char* k : required)
    if (!j.contains(k)) throw ValidationError(what + ": missing key \"" + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto match = [&](const char* k) { return it.key() == k; };
    if (std::none_of(required.begin(), required.end(), match) &&
        std::none_of(optional.begin(), optional.end(), match))
      throw ValidationError(what + ": unknown key \"" + it.key() + "\"");
  }
}

inline std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ValidationError(what + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::string string_field(const Json& j, const char* key, const std::string& what) {
  const auto& v = j.at(key);
  if (!v.is_string()) throw ValidationError(what + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline Sign sign_field(const Json& j, const std::string& what) {
  const auto s = string_field(j, "sign", what);
  if (s == "+") return Sign::plus;
  if (s == "-") return Sign::minus;
  throw ValidationError(what + ": sign must be \"+\" or \"-\"");
}

inline Transition transition_from_json(const Json& j, const std::string& what) {
  check_keys(j, what, {"from", "letter", "to"});
  return {string_field(j, "from", what), string_field(j, "letter", what), string_field(j, "to", what)};
}

inline Json transition_to_json(const Transition& t) {
  Json j = Json::object();
  j["from"] = t.from;
  j["letter"] = t.letter;
  j["to"] = t.to;
  return j;
}

inline std::size_t edge_position(const Nfa& a, const Transition& t, const std::string& what) {
  if (!a.has_state(t.from) || !a.has_state(t.to) || !a.has_letter(t.letter))
    throw ValidationError(what + ": transition " + t.from + " -" + t.letter + "-> " + t.to + " not in automaton");
  const Nfa::Edge e{a.state_index(t.from), a.letter_index(t.letter), a.state_index(t.to)};
  auto it = std::lower_bound(a.edges().begin(), a.edges().end(), e);
  if (it == a.edges().end() || *it != e)
    throw ValidationError(what + ": transition " + t.from + " -" + t.letter + "-> " + t.to + " not in automaton");
  return static_cast<std::size_t>(it - a.edges().begin());
}

}  // namespace detail

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 1, e.byte);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

// --- Nfa -------------------------------------------------------------------

inline Nfa nfa_from_json(const Json& j) {
  const std::string what = "automaton";
  detail::check_keys(j, what, {"states", "alphabet", "transitions", "initial", "accepting"});
  if (!j["transitions"].is_array()) throw ValidationError(what + ": \"transitions\" must be an array");
  std::vector<Transition> ts;
  for (const auto& t : j["transitions"]) ts.push_back(detail::transition_from_json(t, what + " transition"));
  try {
    return Nfa(detail::string_list(j["states"], what + " states"), detail::string_list(j["alphabet"], what + " alphabet"),
               ts, detail::string_list(j["initial"], what + " initial"),
               detail::string_list(j["accepting"], what + " accepting"));
  } catch (const LookupError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

inline Json nfa_to_json(const Nfa& a) {
  Json j = Json::object();
  j["states"] = a.states();
  j["alphabet"] = a.alphabet();
  j["transitions"] = Json::array();
  for (const auto& t : a.transitions()) j["transitions"].push_back(detail::transition_to_json(t));
  j["initial"] = a.initial();
  j["accepting"] = a.accepting();
  return j;
}

inline Nfa load_nfa(const std::string& path) { return nfa_from_json(parse_json(read_file(path))); }

// --- FinTop / TAutomaton ---------------------------------------------------

namespace detail {

inline FinTop fintop_fields(const Json& j, const std::string& what) {
  auto points = string_list(j["points"], what + " points");
  const auto& mo = j["min_open"];
  require_object(mo, what + " min_open");
  std::map<PointId, std::vector<PointId>> min_open;
  for (auto it = mo.begin(); it != mo.end(); ++it)
    min_open[it.key()] = string_list(it.value(), what + " min_open." + it.key());
  try {
    return FinTop(std::move(points), min_open);
  } catch (const LookupError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

inline void fintop_fields_to(Json& j, const FinTop& x) {
  j["points"] = x.points();
  j["min_open"] = Json::object();
  for (std::size_t i = 0; i < x.size(); ++i) j["min_open"][x.points()[i]] = x.names_of(x.min_open(i));
}

}  // namespace detail

inline FinTop fintop_from_json(const Json& j) {
  detail::check_keys(j, "space", {"points", "min_open"});
  return detail::fintop_fields(j, "space");
}

inline Json fintop_to_json(const FinTop& x) {
  Json j = Json::object();
  detail::fintop_fields_to(j, x);
  return j;
}

inline TAutomaton tautomaton_from_json(const Json& j) {
  const std::string what = "T-automaton";
  detail::check_keys(j, what, {"points", "min_open", "initial_open", "accepting_closed", "letters"});
  auto x = detail::fintop_fields(j, what);
  const auto& letters = j["letters"];
  detail::require_object(letters, what + " letters");
  try {
    std::vector<Letter> alphabet;
    std::vector<Endo> endos;
    for (auto it = letters.begin(); it != letters.end(); ++it) {
      const auto where = what + " letters." + it.key();
      detail::require_object(it.value(), where);
      std::vector<PointSet> images(x.size());
      std::vector<bool> seen(x.size(), false);
      for (auto p = it.value().begin(); p != it.value().end(); ++p) {
        const auto i = x.point_index(p.key());
        images[i] = x.set_of(detail::string_list(p.value(), where + "." + p.key()));
        seen[i] = true;
      }
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!seen[i]) throw ValidationError(where + ": no image for point '" + x.points()[i] + "'");
      alphabet.push_back(it.key());
      endos.emplace_back(x, std::move(images));
    }
    auto in = x.set_of(detail::string_list(j["initial_open"], what + " initial_open"));
    auto acc = x.set_of(detail::string_list(j["accepting_closed"], what + " accepting_closed"));
    return TAutomaton(x, std::move(alphabet), std::move(in), std::move(acc), std::move(endos));
  } catch (const LookupError& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

inline Json tautomaton_to_json(const TAutomaton& t) {
  const auto& x = t.space();
  Json j = Json::object();
  detail::fintop_fields_to(j, x);
  j["initial_open"] = x.names_of(t.initial_open());
  j["accepting_closed"] = x.names_of(t.accepting_closed());
  j["letters"] = Json::object();
  for (std::size_t a = 0; a < t.alphabet().size(); ++a) {
    Json m = Json::object();
    for (std::size_t i = 0; i < x.size(); ++i) m[x.points()[i]] = x.names_of(t.letters()[a].image(i));
    j["letters"][t.alphabet()[a]] = std::move(m);
  }
  return j;
}

inline TAutomaton load_tautomaton(const std::string& path) {
  return tautomaton_from_json(parse_json(read_file(path)));
}

// --- Diagram ---------------------------------------------------------------

inline Gen gen_from_json(const Json& j) {
  const std::string what = "generator";
  detail::require_object(j, what);
  const auto gen = detail::string_field(j, "gen", what);
  if (gen == "merge" || gen == "split" || gen == "unit" || gen == "counit") {
    detail::check_keys(j, what, {"gen"});
    if (gen == "merge") return Gen::merge();
    if (gen == "split") return Gen::split();
    if (gen == "unit") return Gen::unit();
    return Gen::counit();
  }
  if (gen == "swap") {
    detail::check_keys(j, what, {"gen", "signs"});
    const auto s = detail::string_field(j, "signs", what);
    auto sign = [&](char c) {
      if (c == '+') return Sign::plus;
      if (c == '-') return Sign::minus;
      throw ValidationError(what + ": swap signs must be two of '+'/'-'");
    };
    if (s.size() != 2) throw ValidationError(what + ": swap signs must be two of '+'/'-'");
    return Gen::swap(sign(s[0]), sign(s[1]));
  }
  if (gen == "dot") {
    detail::check_keys(j, what, {"gen", "sign", "letter"});
    return Gen::dot(detail::string_field(j, "letter", what), detail::sign_field(j, what));
  }
  if (gen == "birth" || gen == "death") {
    detail::check_keys(j, what, {"gen", "sign"}, {"label"});
    std::string label = j.contains("label") ? detail::string_field(j, "label", what) : std::string();
    const auto s = detail::sign_field(j, what);
    return gen == "birth" ? Gen::birth(s, std::move(label)) : Gen::death(s, std::move(label));
  }
  if (gen == "id" || gen == "cup" || gen == "cap") {
    detail::check_keys(j, what, {"gen", "sign"});
    const auto s = detail::sign_field(j, what);
    if (gen == "id") return Gen::id(s);
    return gen == "cup" ? Gen::cup(s) : Gen::cap(s);
  }
  throw ValidationError(what + ": unknown generator \"" + gen + "\"");
}

inline Json gen_to_json(const Gen& g) {
  Json j = Json::object();
  const std::string s(1, sign_char(g.sign));
  switch (g.kind) {
    case GenKind::id: j["gen"] = "id"; j["sign"] = s; break;
    case GenKind::cup: j["gen"] = "cup"; j["sign"] = s; break;
    case GenKind::cap: j["gen"] = "cap"; j["sign"] = s; break;
    case GenKind::swap: j["gen"] = "swap"; j["signs"] = s + sign_char(g.sign2); break;
    case GenKind::dot: j["gen"] = "dot"; j["letter"] = g.label; j["sign"] = s; break;
    case GenKind::birth:
    case GenKind::death:
      j["gen"] = g.kind == GenKind::birth ? "birth" : "death";
      j["sign"] = s;
      if (!g.label.empty()) j["label"] = g.label;
      break;
    case GenKind::merge: j["gen"] = "merge"; break;
    case GenKind::split: j["gen"] = "split"; break;
    case GenKind::unit: j["gen"] = "unit"; break;
    case GenKind::counit: j["gen"] = "counit"; break;
  }
  return j;
}

inline Diagram diagram_from_json(const Json& j) {
  detail::check_keys(j, "diagram", {"slices"});
  if (!j["slices"].is_array()) throw ValidationError("diagram: \"slices\" must be an array");
  std::vector<Slice> slices;
  for (const auto& s : j["slices"]) {
    if (!s.is_array()) throw ValidationError("diagram: each slice must be an array");
    Slice slice;
    for (const auto& g : s) slice.push_back(gen_from_json(g));
    if (!slice.empty()) slices.push_back(std::move(slice));
  }
  return Diagram::from_slices(std::move(slices));
}

inline Json diagram_to_json(const Diagram& d) {
  Json j = Json::object();
  j["slices"] = Json::array();
  for (const auto& s : d.slices()) {
    Json slice = Json::array();
    for (const auto& g : s) slice.push_back(gen_to_json(g));
    j["slices"].push_back(std::move(slice));
  }
  return j;
}

/// A ".json" file holds the JSON mirror; anything else is slice text.
inline Diagram load_diagram(const std::string& path) {
  const auto text = read_file(path);
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return is_json ? diagram_from_json(parse_json(text)) : parse_diagram(text);
}

// --- Covers ----------------------------------------------------------------

inline GraphMap graph_map_from_json(const Json& j, const Nfa& cover, const Nfa& base) {
  const std::string what = "graph map";
  detail::check_keys(j, what, {"vertex_map"}, {"edge_map"});
  const auto& vm = j["vertex_map"];
  detail::require_object(vm, what + " vertex_map");
  std::vector<std::size_t> vertex_map(cover.size(), base.size());
  for (auto it = vm.begin(); it != vm.end(); ++it) {
    if (!cover.has_state(it.key())) throw ValidationError(what + ": unknown cover state '" + it.key() + "'");
    if (!it.value().is_string()) throw ValidationError(what + ": vertex_map values must be strings");
    const auto q = it.value().get<std::string>();
    if (!base.has_state(q)) throw ValidationError(what + ": unknown base state '" + q + "'");
    vertex_map[cover.state_index(it.key())] = base.state_index(q);
  }
  for (std::size_t q = 0; q < cover.size(); ++q)
    if (vertex_map[q] == base.size()) throw ValidationError(what + ": vertex map is not total on the cover");
  if (!j.contains("edge_map")) return GraphMap::induced(cover, base, std::move(vertex_map));

  const auto& em = j["edge_map"];
  if (!em.is_array()) throw ValidationError(what + ": \"edge_map\" must be an array");
  std::vector<std::size_t> edge_map(cover.edges().size(), base.edges().size());
  for (const auto& e : em) {
    detail::check_keys(e, what + " edge", {"cover", "base"});
    const auto c = detail::edge_position(cover, detail::transition_from_json(e["cover"], what), what + " cover");
    const auto b = detail::edge_position(base, detail::transition_from_json(e["base"], what), what + " base");
    edge_map[c] = b;
  }
  for (auto b : edge_map)
    if (b == base.edges().size()) throw ValidationError(what + ": edge map is not total on the cover");
  return {std::move(vertex_map), std::move(edge_map)};
}

inline Json graph_map_to_json(const GraphMap& p, const Nfa& cover, const Nfa& base) {
  Json j = Json::object();
  j["vertex_map"] = Json::object();
  for (std::size_t q = 0; q < cover.size(); ++q) j["vertex_map"][cover.states()[q]] = base.states()[p.vertex_map[q]];
  j["edge_map"] = Json::array();
  const auto ct = cover.transitions();
  const auto bt = base.transitions();
  for (std::size_t i = 0; i < ct.size(); ++i) {
    Json e = Json::object();
    e["cover"] = detail::transition_to_json(ct[i]);
    e["base"] = detail::transition_to_json(bt[p.edge_map[i]]);
    j["edge_map"].push_back(std::move(e));
  }
  return j;
}

/// Voltages indexed like a.edges(); every transition needs exactly one entry.
inline std::vector<std::vector<std::size_t>> voltages_from_json(const Json& j, const Nfa& a) {
  const std::string what = "voltages";
  if (!j.is_array()) throw ValidationError(what + ": expected an array");
  std::vector<std::vector<std::size_t>> out(a.edges().size());
  std::vector<bool> seen(a.edges().size(), false);
  for (const auto& v : j) {
    detail::check_keys(v, what + " entry", {"from", "letter", "to", "perm"});
    const Transition t{detail::string_field(v, "from", what), detail::string_field(v, "letter", what),
                       detail::string_field(v, "to", what)};
    const auto i = detail::edge_position(a, t, what);
    if (seen[i]) throw ValidationError(what + ": duplicate entry for " + t.from + " -" + t.letter + "-> " + t.to);
    seen[i] = true;
    if (!v["perm"].is_array()) throw ValidationError(what + ": \"perm\" must be an array of integers");
    for (const auto& k : v["perm"]) {
      if (!k.is_number_unsigned()) throw ValidationError(what + ": \"perm\" must be an array of integers");
      out[i].push_back(k.get<std::size_t>());
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ValidationError(what + ": missing permutation for a transition");
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tqfa

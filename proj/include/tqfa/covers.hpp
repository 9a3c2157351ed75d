#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tqfa/automaton.hpp"
#include "tqfa/error.hpp"

namespace tqfa {

/// Map of labelled graphs from a cover automaton to a base automaton, by
/// index: vertex_map[q'] is a base state, edge_map[e'] a base edge index
/// (positions in Nfa::edges()).
struct GraphMap {
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;

  friend bool operator==(const GraphMap&, const GraphMap&) = default;

  /// Edge map induced by the vertex map; every cover edge must land on an
  /// existing base edge with the same letter.
  static GraphMap induced(const Nfa& cover, const Nfa& base, std::vector<std::size_t> vertex_map) {
    if (vertex_map.size() != cover.size()) throw ValidationError("vertex map is not total on the cover");
    for (auto v : vertex_map)
      if (v >= base.size()) throw ValidationError("vertex map points outside the base");
    GraphMap p{std::move(vertex_map), {}};
    for (const auto& e : cover.edges()) {
      const auto& letter = cover.alphabet()[e.letter];
      if (!base.has_letter(letter)) throw ValidationError("letter '" + letter + "' not in base alphabet");
      const Nfa::Edge image{p.vertex_map[e.from], base.letter_index(letter), p.vertex_map[e.to]};
      auto it = std::lower_bound(base.edges().begin(), base.edges().end(), image);
      if (it == base.edges().end() || *it != image)
        throw ValidationError("cover edge " + cover.states()[e.from] + " -" + letter + "-> " + cover.states()[e.to] +
                              " has no image in the base");
      p.edge_map.push_back(static_cast<std::size_t>(it - base.edges().begin()));
    }
    return p;
  }
};

/// A cover automaton together with its projection onto the base.
struct Covering {
  Nfa automaton;
  GraphMap projection;
};

namespace detail {

inline std::string fiber_name(const StateId& q, std::size_t k) { return q + "@" + std::to_string(k); }

/// States q@k (base-state major), decorations lifted to full preimages.
inline Covering lift(const Nfa& base, std::size_t n, const std::vector<std::vector<std::size_t>>& edge_perm) {
  std::vector<StateId> states;
  std::vector<bool> initial, accepting;
  std::vector<std::size_t> vertex_map;
  for (std::size_t q = 0; q < base.size(); ++q)
    for (std::size_t k = 0; k < n; ++k) {
      states.push_back(fiber_name(base.states()[q], k));
      initial.push_back(base.is_initial(q));
      accepting.push_back(base.is_accepting(q));
      vertex_map.push_back(q);
    }
  std::vector<Nfa::Edge> edges;
  for (std::size_t i = 0; i < base.edges().size(); ++i) {
    const auto& e = base.edges()[i];
    for (std::size_t k = 0; k < n; ++k) edges.push_back({e.from * n + k, e.letter, e.to * n + edge_perm[i][k]});
  }
  auto cover = Nfa::from_indices(std::move(states), base.alphabet(), std::move(edges), std::move(initial),
                                 std::move(accepting));
  auto p = GraphMap::induced(cover, base, std::move(vertex_map));
  return {std::move(cover), std::move(p)};
}

}  // namespace detail

/// Winding of each base edge for a circular arrangement `order` of the
/// states: 1 if pos(target) <= pos(source) (self-loops included), else 0.
inline std::vector<std::size_t> windings(const Nfa& a, const std::vector<StateId>& order) {
  if (order.size() != a.size()) throw ValidationError("order is not a permutation of the states");
  std::vector<std::size_t> pos(a.size(), a.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto q = a.state_index(order[i]);
    if (pos[q] != a.size()) throw ValidationError("order repeats state '" + order[i] + "'");
    pos[q] = i;
  }
  std::vector<std::size_t> w;
  for (const auto& e : a.edges()) w.push_back(pos[e.to] <= pos[e.from] ? 1 : 0);
  return w;
}

/// n-fold cyclic cover: edge (q, k) -> (q', k + winding mod n).
inline Covering cyclic_cover(const Nfa& a, const std::vector<StateId>& order, std::size_t n) {
  if (n == 0) throw ValidationError("cyclic_cover: n must be >= 1");
  const auto w = windings(a, order);
  std::vector<std::vector<std::size_t>> perm;
  for (auto wind : w) {
    std::vector<std::size_t> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = (k + wind) % n;
    perm.push_back(std::move(p));
  }
  return detail::lift(a, n, perm);
}

/// Cover from a permutation voltage per edge (indexed like Nfa::edges()):
/// edge (q, i) -> (q', sigma_e(i)).
inline Covering voltage_cover(const Nfa& a, std::size_t n, const std::vector<std::vector<std::size_t>>& voltages) {
  if (n == 0) throw ValidationError("voltage_cover: n must be >= 1");
  if (voltages.size() != a.edges().size()) throw ValidationError("voltage_cover: one permutation per transition");
  for (const auto& p : voltages) {
    if (p.size() != n) throw ValidationError("voltage_cover: permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (auto v : p) {
      if (v >= n || seen[v]) throw ValidationError("voltage_cover: malformed permutation");
      seen[v] = true;
    }
  }
  return detail::lift(a, n, voltages);
}

namespace detail {

inline void require_total(const GraphMap& p, const Nfa& cover, const Nfa& base) {
  if (p.vertex_map.size() != cover.size() || p.edge_map.size() != cover.edges().size())
    throw ValidationError("graph map is not total on the cover");
  for (auto v : p.vertex_map)
    if (v >= base.size()) throw ValidationError("graph map points outside the base");
  for (auto e : p.edge_map)
    if (e >= base.edges().size()) throw ValidationError("graph map points outside the base");
}

/// Conditions shared by coverings and weak coverings: surjective, label and
/// incidence preserving, decorations equal to full preimages.
inline bool is_graph_surjection(const GraphMap& p, const Nfa& cover, const Nfa& base) {
  std::vector<bool> hit_v(base.size(), false), hit_e(base.edges().size(), false);
  for (auto v : p.vertex_map) hit_v[v] = true;
  for (std::size_t i = 0; i < cover.edges().size(); ++i) {
    const auto& e = cover.edges()[i];
    const auto& img = base.edges()[p.edge_map[i]];
    if (cover.alphabet()[e.letter] != base.alphabet()[img.letter]) return false;
    if (p.vertex_map[e.from] != img.from || p.vertex_map[e.to] != img.to) return false;
    hit_e[p.edge_map[i]] = true;
  }
  if (std::find(hit_v.begin(), hit_v.end(), false) != hit_v.end()) return false;
  if (std::find(hit_e.begin(), hit_e.end(), false) != hit_e.end()) return false;
  for (std::size_t q = 0; q < cover.size(); ++q) {
    if (cover.is_initial(q) != base.is_initial(p.vertex_map[q])) return false;
    if (cover.is_accepting(q) != base.is_accepting(p.vertex_map[q])) return false;
  }
  return true;
}

// lifts[q'][gamma] = number of cover edges out of (resp. into) q' over base edge gamma.
inline std::vector<std::vector<std::size_t>> lift_counts(const GraphMap& p, const Nfa& cover, std::size_t base_edges,
                                                         bool outgoing) {
  std::vector<std::vector<std::size_t>> c(cover.size(), std::vector<std::size_t>(base_edges, 0));
  for (std::size_t i = 0; i < cover.edges().size(); ++i) {
    const auto& e = cover.edges()[i];
    ++c[outgoing ? e.from : e.to][p.edge_map[i]];
  }
  return c;
}

}  // namespace detail

/// Locally trivial covering: every base edge at p(q') lifts to exactly one
/// edge at q', both for outgoing and incoming edges.
inline bool is_covering(const GraphMap& p, const Nfa& cover, const Nfa& base) {
  detail::require_total(p, cover, base);
  if (!detail::is_graph_surjection(p, cover, base)) return false;
  const auto out = detail::lift_counts(p, cover, base.edges().size(), true);
  const auto in = detail::lift_counts(p, cover, base.edges().size(), false);
  for (std::size_t q = 0; q < cover.size(); ++q)
    for (std::size_t g = 0; g < base.edges().size(); ++g) {
      const auto& e = base.edges()[g];
      if (e.from == p.vertex_map[q] && out[q][g] != 1) return false;
      if (e.to == p.vertex_map[q] && in[q][g] != 1) return false;
    }
  return true;
}

/// Weak covering: every base edge out of p(q') has at least one lift out of q'.
inline bool is_weak_covering(const GraphMap& p, const Nfa& cover, const Nfa& base) {
  detail::require_total(p, cover, base);
  if (!detail::is_graph_surjection(p, cover, base)) return false;
  const auto out = detail::lift_counts(p, cover, base.edges().size(), true);
  for (std::size_t q = 0; q < cover.size(); ++q)
    for (std::size_t g = 0; g < base.edges().size(); ++g)
      if (base.edges()[g].from == p.vertex_map[q] && out[q][g] == 0) return false;
  return true;
}

}  // namespace tqfa

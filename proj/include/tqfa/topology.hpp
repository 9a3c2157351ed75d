#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tqfa/automaton.hpp"
#include "tqfa/error.hpp"
#include "tqfa/word.hpp"

namespace tqfa {

using PointId = std::string;
using PointSet = boost::dynamic_bitset<>;

/// Finite topological space stored by its minimal open sets U_x.
///
/// Invariants: x in U_x; y in U_x implies U_y subset U_x; and the space is
/// minimal (U_x != U_y for x != y). V_x = {y : x in U_y} is the smallest
/// closed set containing x. Copies share the underlying data.
class FinTop {
 public:
  enum class Minimality { require, reduce };

  FinTop() : data_(std::make_shared<Data>()) {}

  FinTop(std::vector<PointId> points, const std::map<PointId, std::vector<PointId>>& min_open,
         Minimality policy = Minimality::require) {
    std::unordered_map<PointId, std::size_t> pos;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (!pos.emplace(points[i], i).second)
        throw ValidationError("duplicate point '" + points[i] + "'");
    std::vector<PointSet> basis(points.size(), PointSet(points.size()));
    for (const auto& [x, members] : min_open) {
      auto it = pos.find(x);
      if (it == pos.end()) throw LookupError("unknown point '" + x + "' in min_open");
      for (const auto& y : members) {
        auto jt = pos.find(y);
        if (jt == pos.end()) throw LookupError("unknown point '" + y + "' in min_open");
        basis[it->second].set(jt->second);
      }
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      if (!min_open.count(points[i]))
        throw ValidationError("min_open is missing point '" + points[i] + "'");
    *this = from_basis(std::move(points), std::move(basis), policy);
  }

  static FinTop from_basis(std::vector<PointId> points, std::vector<PointSet> basis,
                           Minimality policy = Minimality::require) {
    const auto n = points.size();
    if (basis.size() != n) throw ValidationError("one minimal open set per point is required");
    for (std::size_t x = 0; x < n; ++x) {
      if (basis[x].size() != n) throw ValidationError("minimal open set has wrong universe size");
      if (!basis[x].test(x))
        throw ValidationError("point '" + points[x] + "' is not in its minimal open set");
      for (auto y = basis[x].find_first(); y != PointSet::npos; y = basis[x].find_next(y))
        if (!basis[y].is_subset_of(basis[x]))
          throw ValidationError("'" + points[y] + "' is in U_" + points[x] + " but U_" + points[y] +
                                " is not contained in U_" + points[x]);
    }
    // Duplicate minimal opens: reject, or keep the first point of each class.
    std::vector<std::size_t> keep;
    for (std::size_t x = 0; x < n; ++x) {
      auto dup = std::find_if(keep.begin(), keep.end(), [&](std::size_t k) { return basis[k] == basis[x]; });
      if (dup == keep.end()) {
        keep.push_back(x);
      } else if (policy == Minimality::require) {
        throw ValidationError("space is not minimal: U_" + points[*dup] + " = U_" + points[x]);
      }
    }
    FinTop out;
    auto data = std::make_shared<Data>();
    for (auto k : keep) data->points.push_back(points[k]);
    const auto m = keep.size();
    data->open.assign(m, PointSet(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (basis[keep[i]].test(keep[j])) data->open[i].set(j);
    data->closed.assign(m, PointSet(m));
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (data->open[y].test(x)) data->closed[x].set(y);
    for (std::size_t i = 0; i < m; ++i) data->pos.emplace(data->points[i], i);
    out.data_ = std::move(data);
    return out;
  }

  static FinTop discrete(std::vector<PointId> points) {
    std::vector<PointSet> basis(points.size(), PointSet(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) basis[i].set(i);
    return from_basis(std::move(points), std::move(basis));
  }

  std::size_t size() const noexcept { return data_->points.size(); }
  const std::vector<PointId>& points() const noexcept { return data_->points; }

  std::size_t point_index(const PointId& x) const {
    auto it = data_->pos.find(x);
    if (it == data_->pos.end()) throw LookupError("unknown point '" + x + "'");
    return it->second;
  }

  /// U_x
  const PointSet& min_open(std::size_t x) const { return data_->open.at(x); }
  /// V_x
  const PointSet& min_closed(std::size_t x) const { return data_->closed.at(x); }

  PointSet empty_set() const { return PointSet(size()); }
  PointSet full_set() const { return ~PointSet(size()); }

  PointSet set_of(const std::vector<PointId>& names) const {
    PointSet s(size());
    for (const auto& x : names) s.set(point_index(x));
    return s;
  }

  std::vector<PointId> names_of(const PointSet& s) const {
    std::vector<PointId> out;
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(points()[i]);
    return out;
  }

  bool is_open(const PointSet& s) const {
    check_universe(s);
    for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x))
      if (!min_open(x).is_subset_of(s)) return false;
    return true;
  }

  bool is_closed(const PointSet& s) const { return is_open(~s); }

  /// Smallest open set containing s (union of U_x over x in s).
  PointSet open_hull(const PointSet& s) const {
    check_universe(s);
    PointSet out(size());
    for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x)) out |= min_open(x);
    return out;
  }

  PointSet closed_hull(const PointSet& s) const {
    check_universe(s);
    PointSet out(size());
    for (auto x = s.find_first(); x != PointSet::npos; x = s.find_next(x)) out |= min_closed(x);
    return out;
  }

  void check_universe(const PointSet& s) const {
    if (s.size() != size()) throw ValidationError("point set belongs to a different space");
  }

  friend bool operator==(const FinTop& a, const FinTop& b) {
    return a.data_ == b.data_ || (a.data_->points == b.data_->points && a.data_->open == b.data_->open);
  }

 private:
  struct Data {
    std::vector<PointId> points;
    std::vector<PointSet> open;
    std::vector<PointSet> closed;
    std::unordered_map<PointId, std::size_t> pos;
  };

  std::shared_ptr<const Data> data_;
};

/// Space whose opens are the closed sets of `x`: minimal opens become V_x.
inline FinTop dual_space(const FinTop& x) {
  std::vector<PointSet> basis;
  for (std::size_t i = 0; i < x.size(); ++i) basis.push_back(x.min_closed(i));
  return FinTop::from_basis(x.points(), std::move(basis));
}

/// An element of the lattice U(X).
class OpenSet {
 public:
  OpenSet(FinTop space, PointSet members) : space_(std::move(space)), members_(std::move(members)) {
    if (!space_.is_open(members_)) throw ValidationError("set is not open");
  }

  OpenSet(const FinTop& space, const std::vector<PointId>& names) : OpenSet(space, space.set_of(names)) {}

  static OpenSet minimal(const FinTop& space, std::size_t x) { return OpenSet(space, space.min_open(x)); }
  static OpenSet empty(const FinTop& space) { return OpenSet(space, space.empty_set()); }
  static OpenSet whole(const FinTop& space) { return OpenSet(space, space.full_set()); }

  const FinTop& space() const noexcept { return space_; }
  const PointSet& members() const noexcept { return members_; }
  bool is_empty() const { return members_.none(); }
  std::vector<PointId> names() const { return space_.names_of(members_); }

  friend bool operator==(const OpenSet& a, const OpenSet& b) {
    return a.members_ == b.members_ && a.space_ == b.space_;
  }

 private:
  FinTop space_;
  PointSet members_;
};

namespace detail {

inline void require_same_space(const OpenSet& u, const OpenSet& v) {
  if (!(u.space() == v.space())) throw ValidationError("open sets live in different spaces");
}

}  // namespace detail

inline OpenSet meet(const OpenSet& u, const OpenSet& v) {
  detail::require_same_space(u, v);
  return OpenSet(u.space(), u.members() & v.members());
}

inline OpenSet join(const OpenSet& u, const OpenSet& v) {
  detail::require_same_space(u, v);
  return OpenSet(u.space(), u.members() | v.members());
}

inline bool is_open(const FinTop& x, const std::vector<PointId>& names) { return x.is_open(x.set_of(names)); }

/// Streams every open set of `x` to `visit`, each exactly once. Points are
/// decided in order of increasing |U_x| so that U_x \ {x} is settled before x.
inline void for_each_open(const FinTop& x, const std::function<void(const PointSet&)>& visit) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x.min_open(a).count() < x.min_open(b).count();
  });
  PointSet current(x.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      visit(current);
      return;
    }
    const auto p = order[k];
    rec(k + 1);
    PointSet below = x.min_open(p);
    below.reset(p);
    if (below.is_subset_of(current)) {
      current.set(p);
      rec(k + 1);
      current.reset(p);
    }
  };
  rec(0);
}

/// All open sets, refusing when there are more than `cap`.
inline std::vector<OpenSet> opens(const FinTop& x, std::size_t cap = std::size_t{1} << 16) {
  std::vector<OpenSet> out;
  struct Overflow {};
  try {
    for_each_open(x, [&](const PointSet& s) {
      if (out.size() == cap) throw Overflow{};
      out.emplace_back(x, s);
    });
  } catch (const Overflow&) {
    throw CapacityError("open-set enumeration exceeds cap of " + std::to_string(cap));
  }
  return out;
}

/// Boolean tensor expansion of the comultiplication: {(U_x, U_x) : U_x subset U}.
inline std::vector<std::pair<OpenSet, OpenSet>> comult(const OpenSet& u) {
  std::vector<std::pair<OpenSet, OpenSet>> out;
  const auto& members = u.members();
  for (auto x = members.find_first(); x != PointSet::npos; x = members.find_next(x))
    out.emplace_back(OpenSet::minimal(u.space(), x), OpenSet::minimal(u.space(), x));
  return out;
}

inline bool counit(const OpenSet& u) { return !u.is_empty(); }

/// Endomorphism of U(X) given by the images T(U_x) of the minimal opens.
class Endo {
 public:
  Endo() = default;

  /// Throws ValidationError naming the offending pair if the images are not
  /// open or not monotone.
  Endo(const FinTop& space, std::vector<PointSet> images);

  static Endo identity(const FinTop& space) {
    std::vector<PointSet> images;
    for (std::size_t x = 0; x < space.size(); ++x) images.push_back(space.min_open(x));
    return Endo(space, std::move(images));
  }

  static Endo zero(const FinTop& space) { return Endo(space, std::vector<PointSet>(space.size(), space.empty_set())); }

  /// T(U_x)
  const PointSet& image(std::size_t x) const { return images_.at(x); }
  const std::vector<PointSet>& images() const noexcept { return images_; }
  std::size_t size() const noexcept { return images_.size(); }

  friend bool operator==(const Endo&, const Endo&) = default;

 private:
  std::vector<PointSet> images_;
};

/// First violation of the Endo invariants, or nullopt.
inline std::optional<std::string> endo_violation(const FinTop& space, const std::vector<PointSet>& images) {
  if (images.size() != space.size()) return "endomorphism must give an image for every point";
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (images[x].size() != space.size()) return "image of U_" + space.points()[x] + " has wrong universe size";
    if (!space.is_open(images[x])) return "image of U_" + space.points()[x] + " is not open";
  }
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto& ux = space.min_open(x);
    for (auto y = ux.find_first(); y != PointSet::npos; y = ux.find_next(y))
      if (!images[y].is_subset_of(images[x]))
        return "not monotone: " + space.points()[y] + " in U_" + space.points()[x] + " but T(U_" +
               space.points()[y] + ") is not contained in T(U_" + space.points()[x] + ")";
  }
  return std::nullopt;
}

inline Endo::Endo(const FinTop& space, std::vector<PointSet> images) : images_(std::move(images)) {
  if (auto why = endo_violation(space, images_)) throw ValidationError(*why);
}

inline bool endo_validate(const FinTop& space, const Endo& t) { return !endo_violation(space, t.images()); }

/// T(U) = union of T(U_x) over x in U.
inline PointSet endo_apply(const Endo& t, const PointSet& u) {
  PointSet out(u.size());
  for (auto x = u.find_first(); x != PointSet::npos; x = u.find_next(x)) out |= t.image(x);
  return out;
}

inline OpenSet endo_apply(const Endo& t, const OpenSet& u) {
  return OpenSet(u.space(), endo_apply(t, u.members()));
}

/// outer o inner
inline Endo endo_compose(const FinTop& space, const Endo& outer, const Endo& inner) {
  std::vector<PointSet> images;
  for (std::size_t x = 0; x < space.size(); ++x) images.push_back(endo_apply(outer, inner.image(x)));
  return Endo(space, std::move(images));
}

inline Endo endo_power(const FinTop& space, const Endo& t, std::size_t n) {
  Endo acc = Endo::identity(space);
  for (std::size_t i = 0; i < n; ++i) acc = endo_compose(space, t, acc);
  return acc;
}

/// 1 iff x in T(U_x) for some x.
inline bool endo_trace(const FinTop& space, const Endo& t) {
  for (std::size_t x = 0; x < space.size(); ++x)
    if (t.image(x).test(x)) return true;
  return false;
}

/// Automaton whose state module is U(X): (X, X_in, X_t, {m_a}).
class TAutomaton {
 public:
  TAutomaton() = default;

  TAutomaton(FinTop space, std::vector<Letter> alphabet, PointSet initial_open, PointSet accepting_closed,
             std::vector<Endo> letters)
      : space_(std::move(space)),
        alphabet_(std::move(alphabet)),
        initial_(std::move(initial_open)),
        accepting_(std::move(accepting_closed)),
        letters_(std::move(letters)) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (!letter_pos_.emplace(alphabet_[i], i).second)
        throw ValidationError("duplicate letter '" + alphabet_[i] + "'");
    if (letters_.size() != alphabet_.size()) throw ValidationError("one endomorphism per letter is required");
    if (!space_.is_open(initial_)) throw ValidationError("initial set is not open");
    if (!space_.is_closed(accepting_)) throw ValidationError("accepting set is not closed");
    for (std::size_t i = 0; i < letters_.size(); ++i)
      if (auto why = endo_violation(space_, letters_[i].images()))
        throw ValidationError("letter '" + alphabet_[i] + "': " + *why);
  }

  /// No letters, empty initial and accepting sets: the bare foam model of X.
  static TAutomaton bare(const FinTop& space) {
    return TAutomaton(space, {}, space.empty_set(), space.empty_set(), {});
  }

  const FinTop& space() const noexcept { return space_; }
  const std::vector<Letter>& alphabet() const noexcept { return alphabet_; }
  const PointSet& initial_open() const noexcept { return initial_; }
  const PointSet& accepting_closed() const noexcept { return accepting_; }
  const std::vector<Endo>& letters() const noexcept { return letters_; }

  std::size_t letter_index(const Letter& a) const {
    auto it = letter_pos_.find(a);
    if (it == letter_pos_.end()) throw LookupError("unknown letter '" + a + "'");
    return it->second;
  }

  const Endo& letter(const Letter& a) const { return letters_[letter_index(a)]; }

  /// m_w, letters acting in reading order (a1 first).
  Endo word_endo(const Word& w) const {
    Endo acc = Endo::identity(space_);
    for (const auto& a : w) acc = endo_compose(space_, letter(a), acc);
    return acc;
  }

 private:
  FinTop space_;
  std::vector<Letter> alphabet_;
  PointSet initial_;
  PointSet accepting_;
  std::vector<Endo> letters_;
  std::unordered_map<Letter, std::size_t> letter_pos_;
};

/// X_t meets m_w(X_in).
inline bool t_interval_eval(const TAutomaton& t, const Word& w) {
  PointSet u = t.initial_open();
  for (const auto& a : w) u = endo_apply(t.letter(a), u);
  return u.intersects(t.accepting_closed());
}

/// x in m_w(U_x) for some x.
inline bool t_trace_eval(const TAutomaton& t, const Word& w) {
  std::vector<const Endo*> seq;
  for (const auto& a : w) seq.push_back(&t.letter(a));
  for (std::size_t x = 0; x < t.space().size(); ++x) {
    PointSet u = t.space().min_open(x);
    for (auto* e : seq) u = endo_apply(*e, u);
    if (u.test(x)) return true;
  }
  return false;
}

inline bool t_trace_eval(const TAutomaton& t, const CircularWord& w) { return t_trace_eval(t, w.canonical()); }

/// The T-automaton on the discrete space of states: m_a(U_q) = delta(q, a).
inline TAutomaton discrete_tautomaton(const Nfa& a) {
  const auto space = FinTop::discrete(a.states());
  const auto n = a.size();
  std::vector<Endo> letters;
  for (std::size_t l = 0; l < a.alphabet().size(); ++l) {
    std::vector<PointSet> images(n, PointSet(n));
    for (const auto& e : a.edges())
      if (e.letter == l) images[e.from].set(e.to);
    letters.emplace_back(space, std::move(images));
  }
  PointSet initial(n), accepting(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (a.is_initial(q)) initial.set(q);
    if (a.is_accepting(q)) accepting.set(q);
  }
  return TAutomaton(space, a.alphabet(), std::move(initial), std::move(accepting), std::move(letters));
}

}  // namespace tqfa

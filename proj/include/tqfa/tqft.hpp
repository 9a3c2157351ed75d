#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tqfa/automaton.hpp"
#include "tqfa/cobordism.hpp"
#include "tqfa/error.hpp"
#include "tqfa/semiring.hpp"
#include "tqfa/topology.hpp"

// Conventions shared by every evaluation:
//  * matrices act on column vectors; a morphism A -> B is a
//    dim(B) x dim(A) matrix;
//  * a wire carries the ambient free module S^n (n = |Q| or |X|) on either
//    orientation; a sign sequence carries the Kronecker product of its wires,
//    leftmost wire most significant (see mat_kron);
//  * slices compose bottom to top, so eval(d1 then d2) = eval(d2) * eval(d1).
//
// For a T-automaton the module U(X) is the retract of B^X given by
// iota(U) = indicator of U and p(x) = U_x; morphisms are represented by
// iota o f o p. The identity of a '+' wire is therefore the idempotent
// E[y][x] = [y in U_x], and of a '-' wire its transpose (the idempotent of
// the dual space). On a discrete space E is the identity matrix and every
// image below reduces to the plain automaton image.

namespace tqfa {

/// Size guard: no boundary may carry more than this many basis tuples.
inline constexpr std::size_t kMaxBasisTuples = std::size_t{1} << 20;

template <Semiring S>
struct Evaluation {
  Matrix<S> matrix;
  std::vector<std::size_t> domain_dims;
  std::vector<std::size_t> codomain_dims;

  bool closed() const noexcept { return domain_dims.empty() && codomain_dims.empty(); }

  /// The single entry of a closed evaluation.
  typename S::value_type scalar() const {
    if (matrix.rows() != 1 || matrix.cols() != 1) throw ShapeError("evaluation is not 1x1");
    return matrix(0, 0);
  }
};

namespace detail {

inline std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > kMaxBasisTuples / base)
      throw CapacityError("evaluation would exceed 2^20 basis tuples on a boundary");
    out *= base;
  }
  return out;
}

template <Semiring S>
Matrix<S> permutation_swap(std::size_t n) {
  Matrix<S> m(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(j * n + i, i * n + j, S::one());
  return m;
}

}  // namespace detail

/// Generator images for an NFA (free state module S^Q).
template <Semiring S>
class NfaModel {
 public:
  using semiring = S;

  explicit NfaModel(const Nfa& a) : a_(a) {}

  std::size_t dim() const noexcept { return a_.size(); }

  Matrix<S> wire_identity(Sign) const { return Matrix<S>::identity(dim()); }

  Matrix<S> image(const Gen& g) const {
    const auto n = dim();
    switch (g.kind) {
      case GenKind::id: return wire_identity(g.sign);
      case GenKind::dot: {
        // '+': right action q -> q.a written on columns, i.e. M_a^T.
        // '-': the dual operator, M_a.
        const auto m = convert<S>(a_.matrix(a_.letter_index(g.label)));
        return g.sign == Sign::plus ? mat_transpose(m) : m;
      }
      case GenKind::cup:
      case GenKind::cap: {
        // sum_q q (x) q^*, resp. the Kronecker-delta pairing.
        Matrix<S> v(n * n, 1);
        for (std::size_t q = 0; q < n; ++q) v.set(q * n + q, 0, S::one());
        return g.kind == GenKind::cup ? v : mat_transpose(v);
      }
      case GenKind::swap: return detail::permutation_swap<S>(n);
      case GenKind::birth: {
        // birth+ : Q_in, birth- : Q_t (dual of the accepting functional).
        if (!g.label.empty()) return basis_vector(g.label);
        return Matrix<S>::column(g.sign == Sign::plus ? a_.initial_mask() : a_.accepting_mask());
      }
      case GenKind::death: {
        // death+ : Q_t^*, death- : Q_in^*.
        if (!g.label.empty()) return mat_transpose(basis_vector(g.label));
        return Matrix<S>::row(g.sign == Sign::plus ? a_.accepting_mask() : a_.initial_mask());
      }
      case GenKind::merge:
      case GenKind::split:
      case GenKind::unit:
      case GenKind::counit:
        throw UnsupportedError("foam vertex '" + format_gen(g) +
                               "' needs a T-automaton; convert the NFA with discrete_tautomaton");
    }
    return {};
  }

 private:
  Matrix<S> basis_vector(const std::string& state) const {
    Matrix<S> v(dim(), 1);
    v.set(a_.state_index(state), 0, S::one());
    return v;
  }

  const Nfa& a_;
};

/// Generator images for a T-automaton, in the ambient free modules B^X.
class TopologyModel {
 public:
  using semiring = Boolean;

  explicit TopologyModel(const TAutomaton& t) : t_(t), x_(t.space()) {
    const auto n = x_.size();
    e_ = Matrix<Boolean>(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (x_.min_open(x).test(y)) e_.set(y, x, true);
    e_dual_ = mat_transpose(e_);
  }

  std::size_t dim() const noexcept { return x_.size(); }

  /// E for '+', E^T for '-'.
  const Matrix<Boolean>& wire_identity(Sign s) const { return s == Sign::plus ? e_ : e_dual_; }

  Matrix<Boolean> image(const Gen& g) const {
    const auto n = dim();
    switch (g.kind) {
      case GenKind::id: return wire_identity(g.sign);
      case GenKind::dot: {
        // '+': column x is iota(m_a(U_x)). '-': the dual m_a^*, which in the
        // ambient pairing is the transpose.
        const auto& endo = t_.letter(g.label);
        Matrix<Boolean> m(n, n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            if (endo.image(x).test(y)) m.set(y, x, true);
        return g.sign == Sign::plus ? m : mat_transpose(m);
      }
      case GenKind::cup: {
        // coev: 1 -> sum_x U_x (x) V_x; entry (u, v) is [u in U_v] on (+,-)
        // and, for the mirrored cup on (-,+), entry (v, u) is [u in U_v].
        Matrix<Boolean> v(n * n, 1);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            const bool on = g.sign == Sign::plus ? x_.min_open(b).test(a) : x_.min_open(a).test(b);
            if (on) v.set(a * n + b, 0, true);
          }
        return v;
      }
      case GenKind::cap: {
        // ev: V (x) U -> [U meets V]; on (-,+) entry (v, u) is [v in U_u],
        // on (+,-) entry (u, v) is [v in U_u].
        Matrix<Boolean> r(1, n * n);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            const bool on = g.sign == Sign::minus ? x_.min_open(b).test(a) : x_.min_open(a).test(b);
            if (on) r.set(0, a * n + b, true);
          }
        return r;
      }
      case GenKind::swap: {
        const auto p = detail::permutation_swap<Boolean>(n);
        return mat_mul(p, mat_kron(wire_identity(g.sign), wire_identity(g.sign2)));
      }
      case GenKind::birth: {
        PointSet s(n);
        if (!g.label.empty()) {
          // labelled in-endpoint x: U_x on '+', V_x on '-'
          const auto x = x_.point_index(g.label);
          s = g.sign == Sign::plus ? x_.min_open(x) : x_.min_closed(x);
        } else {
          // X_in on '+', X_t (open in the dual space) on '-'
          s = g.sign == Sign::plus ? t_.initial_open() : t_.accepting_closed();
        }
        Matrix<Boolean> v(n, 1);
        for (std::size_t y = 0; y < n; ++y)
          if (s.test(y)) v.set(y, 0, true);
        return v;
      }
      case GenKind::death: {
        // Functional U -> [U meets W] with W = X_t ('+') or X_in ('-'); a label
        // y gives W = V_y ('+') or U_y ('-'). Ambient entry x is [W meets U_x]
        // ('+') or [W meets V_x] ('-').
        PointSet w(n);
        if (!g.label.empty()) {
          const auto y = x_.point_index(g.label);
          w = g.sign == Sign::plus ? x_.min_closed(y) : x_.min_open(y);
        } else {
          w = g.sign == Sign::plus ? t_.accepting_closed() : t_.initial_open();
        }
        Matrix<Boolean> r(1, n);
        for (std::size_t x = 0; x < n; ++x) {
          const auto& basis = g.sign == Sign::plus ? x_.min_open(x) : x_.min_closed(x);
          if (basis.intersects(w)) r.set(0, x, true);
        }
        return r;
      }
      case GenKind::merge: {
        // U (x) V -> U cap V; column (x, y) is iota(U_x cap U_y).
        Matrix<Boolean> m(n, n * n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) {
            const auto both = x_.min_open(x) & x_.min_open(y);
            for (auto z = both.find_first(); z != PointSet::npos; z = both.find_next(z)) m.set(z, x * n + y, true);
          }
        return m;
      }
      case GenKind::split: {
        // Delta(U_x) = U_x (x) U_x; column x is the indicator of U_x x U_x.
        Matrix<Boolean> m(n * n, n);
        for (std::size_t x = 0; x < n; ++x) {
          const auto& ux = x_.min_open(x);
          for (auto u = ux.find_first(); u != PointSet::npos; u = ux.find_next(u))
            for (auto v = ux.find_first(); v != PointSet::npos; v = ux.find_next(v)) m.set(u * n + v, x, true);
        }
        return m;
      }
      case GenKind::unit: {
        Matrix<Boolean> v(n, 1);
        for (std::size_t y = 0; y < n; ++y) v.set(y, 0, true);
        return v;
      }
      case GenKind::counit: {
        Matrix<Boolean> r(1, n);
        for (std::size_t x = 0; x < n; ++x) r.set(0, x, true);
        return r;
      }
    }
    return {};
  }

 private:
  const TAutomaton& t_;
  FinTop x_;
  Matrix<Boolean> e_;
  Matrix<Boolean> e_dual_;
};

/// Kronecker product of the images of one slice (identity wires included).
/// This is the literal monoidal image; `evaluate` computes the same
/// composite without materializing it.
template <class Model>
Matrix<typename Model::semiring> slice_matrix(const Model& model, const Slice& slice) {
  using S = typename Model::semiring;
  Matrix<S> acc = Matrix<S>::identity(1);
  for (const auto& g : slice) acc = mat_kron(acc, model.image(g));
  return acc;
}

/// Image of the identity on a sign sequence: the Kronecker product of the
/// wire idempotents.
template <class Model>
Matrix<typename Model::semiring> boundary_identity(const Model& model, const SignSeq& signs) {
  using S = typename Model::semiring;
  detail::checked_power(model.dim(), signs.size());
  Matrix<S> acc = Matrix<S>::identity(1);
  for (auto s : signs) acc = mat_kron(acc, Matrix<S>(model.wire_identity(s)));
  return acc;
}

/// Evaluates a well-typed diagram. Starts from the identity of the domain
/// and applies each non-identity generator to its own tensor factors only;
/// identity generators are skipped because every image already absorbs the
/// wire idempotents.
template <class Model>
Evaluation<typename Model::semiring> evaluate(const Model& model, const Diagram& d) {
  using S = typename Model::semiring;
  const std::size_t n = model.dim();
  for (std::size_t k = 0; k <= d.slices().size(); ++k) detail::checked_power(n, d.boundary(k).size());

  Matrix<S> current = boundary_identity(model, d.domain());
  const std::size_t cols = current.cols();
  std::size_t width = d.domain().size();

  for (const auto& slice : d.slices()) {
    std::size_t offset = 0;  // wires of the new boundary produced so far
    for (const auto& g : slice) {
      const std::size_t in = g.inputs().size();
      const std::size_t out = g.outputs().size();
      if (g.kind == GenKind::id) {
        offset += 1;
        continue;
      }
      const Matrix<S> image = model.image(g);
      const std::size_t left = detail::checked_power(n, offset);
      const std::size_t right = detail::checked_power(n, width - offset - in);
      const std::size_t mid_in = detail::checked_power(n, in);
      const std::size_t mid_out = detail::checked_power(n, out);
      Matrix<S> next(left * mid_out * right, cols);
      for (std::size_t l = 0; l < left; ++l)
        for (std::size_t mo = 0; mo < mid_out; ++mo)
          for (std::size_t mi = 0; mi < mid_in; ++mi) {
            const auto coeff = image(mo, mi);
            if (coeff == S::zero()) continue;
            for (std::size_t r = 0; r < right; ++r)
              next.add_scaled_row((l * mid_out + mo) * right + r, coeff, current, (l * mid_in + mi) * right + r);
          }
      current = std::move(next);
      width = width - in + out;
      offset += out;
    }
  }

  Evaluation<S> ev;
  ev.matrix = std::move(current);
  ev.domain_dims.assign(d.domain().size(), n);
  ev.codomain_dims.assign(d.codomain().size(), n);
  return ev;
}

/// The functor of an NFA over S; foam vertices are rejected.
template <Semiring S = Boolean>
Evaluation<S> eval_nfa(const Nfa& a, const Diagram& d) {
  return evaluate(NfaModel<S>(a), d);
}

inline Evaluation<Boolean> eval_tautomaton(const TAutomaton& t, const Diagram& d) {
  return evaluate(TopologyModel(t), d);
}

/// birth+ ; dot(a1)+ ; ... ; dot(an)+ ; death+
inline Diagram interval_diagram(const Word& w) {
  std::vector<Slice> slices{{Gen::birth(Sign::plus)}};
  for (const auto& a : w) slices.push_back({Gen::dot(a, Sign::plus)});
  slices.push_back({Gen::death(Sign::plus)});
  return Diagram::from_slices(std::move(slices));
}

/// cup+ ; dot(a1)+ id- ; ... ; cap+
inline Diagram circle_diagram(const Word& w) {
  std::vector<Slice> slices{{Gen::cup(Sign::plus)}};
  for (const auto& a : w) slices.push_back({Gen::dot(a, Sign::plus), Gen::id(Sign::minus)});
  slices.push_back({Gen::cap(Sign::plus)});
  return Diagram::from_slices(std::move(slices));
}

template <Semiring S = Boolean>
typename S::value_type eval_interval(const Nfa& a, const Word& w) {
  a.encode(w);
  return eval_nfa<S>(a, interval_diagram(w)).scalar();
}

template <Semiring S = Boolean>
typename S::value_type eval_circle(const Nfa& a, const Word& w) {
  a.encode(w);
  return eval_nfa<S>(a, circle_diagram(w)).scalar();
}

}  // namespace tqfa

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tqfa/error.hpp"

namespace tqfa {

enum class Sign { plus, minus };

inline Sign opposite(Sign s) noexcept { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline char sign_char(Sign s) noexcept { return s == Sign::plus ? '+' : '-'; }

using SignSeq = std::vector<Sign>;

inline std::string format_signs(const SignSeq& s) {
  if (s.empty()) return "()";
  std::string out = "(";
  for (auto x : s) out += sign_char(x);
  return out + ")";
}

enum class GenKind {
  id,
  cup,    // () -> (s, -s)
  cap,    // (s, -s) -> ()
  swap,   // (s1, s2) -> (s2, s1)
  dot,    // (s) -> (s), labelled by a letter
  birth,  // () -> (s), inner endpoint; optional point/state label on '+'
  death,  // (s) -> ()
  merge,  // (+, +) -> (+)
  split,  // (+) -> (+, +)
  unit,   // () -> (+)
  counit  // (+) -> ()
};

/// One generating cobordism. `sign` is the (left) wire sign for id, cup,
/// cap, dot, birth, death and the first input sign for swap.
struct Gen {
  GenKind kind = GenKind::id;
  Sign sign = Sign::plus;
  Sign sign2 = Sign::plus;  // second input sign of swap
  std::string label;         // letter of a dot, optional endpoint label

  static Gen id(Sign s) { return {GenKind::id, s, Sign::plus, {}}; }
  static Gen cup(Sign s) { return {GenKind::cup, s, Sign::plus, {}}; }
  static Gen cap(Sign s) { return {GenKind::cap, s, Sign::plus, {}}; }
  static Gen swap(Sign a, Sign b) { return {GenKind::swap, a, b, {}}; }
  static Gen dot(std::string letter, Sign s) { return {GenKind::dot, s, Sign::plus, std::move(letter)}; }
  static Gen birth(Sign s, std::string label = {}) { return {GenKind::birth, s, Sign::plus, std::move(label)}; }
  static Gen death(Sign s, std::string label = {}) { return {GenKind::death, s, Sign::plus, std::move(label)}; }
  static Gen merge() { return {GenKind::merge, Sign::plus, Sign::plus, {}}; }
  static Gen split() { return {GenKind::split, Sign::plus, Sign::plus, {}}; }
  static Gen unit() { return {GenKind::unit, Sign::plus, Sign::plus, {}}; }
  static Gen counit() { return {GenKind::counit, Sign::plus, Sign::plus, {}}; }

  bool is_foam() const noexcept {
    return kind == GenKind::merge || kind == GenKind::split || kind == GenKind::unit || kind == GenKind::counit;
  }

  SignSeq inputs() const {
    switch (kind) {
      case GenKind::id:
      case GenKind::dot:
      case GenKind::death: return {sign};
      case GenKind::cup:
      case GenKind::birth:
      case GenKind::unit: return {};
      case GenKind::cap: return {sign, opposite(sign)};
      case GenKind::swap: return {sign, sign2};
      case GenKind::merge: return {Sign::plus, Sign::plus};
      case GenKind::split:
      case GenKind::counit: return {Sign::plus};
    }
    return {};
  }

  SignSeq outputs() const {
    switch (kind) {
      case GenKind::id:
      case GenKind::dot:
      case GenKind::birth: return {sign};
      case GenKind::cap:
      case GenKind::death:
      case GenKind::counit: return {};
      case GenKind::cup: return {sign, opposite(sign)};
      case GenKind::swap: return {sign2, sign};
      case GenKind::merge:
      case GenKind::unit: return {Sign::plus};
      case GenKind::split: return {Sign::plus, Sign::plus};
    }
    return {};
  }

  friend bool operator==(const Gen& a, const Gen& b) {
    return a.kind == b.kind && a.sign == b.sign && a.label == b.label &&
           (a.kind != GenKind::swap || a.sign2 == b.sign2);
  }
};

using Slice = std::vector<Gen>;

inline SignSeq slice_inputs(const Slice& s) {
  SignSeq out;
  for (const auto& g : s) {
    auto in = g.inputs();
    out.insert(out.end(), in.begin(), in.end());
  }
  return out;
}

inline SignSeq slice_outputs(const Slice& s) {
  SignSeq out;
  for (const auto& g : s) {
    auto o = g.outputs();
    out.insert(out.end(), o.begin(), o.end());
  }
  return out;
}

inline Slice identity_slice(const SignSeq& signs) {
  Slice s;
  for (auto x : signs) s.push_back(Gen::id(x));
  return s;
}

/// A morphism of the cobordism/foam category as a stack of slices read
/// bottom to top: slices[0] sits on the domain, the last slice produces the
/// codomain. Within a slice generators are listed left to right.
class Diagram {
 public:
  Diagram() = default;

  /// Typechecks on construction.
  Diagram(SignSeq domain, SignSeq codomain, std::vector<Slice> slices)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), slices_(std::move(slices)) {
    check();
  }

  /// Domain is taken from the first slice (empty if there are none), the
  /// codomain by threading the boundary through all slices.
  static Diagram from_slices(std::vector<Slice> slices) {
    SignSeq dom = slices.empty() ? SignSeq{} : slice_inputs(slices.front());
    SignSeq cod = dom;
    for (const auto& s : slices) cod = slice_outputs(s);
    return Diagram(std::move(dom), std::move(cod), std::move(slices));
  }

  static Diagram identity(const SignSeq& signs) {
    if (signs.empty()) return Diagram();
    return Diagram(signs, signs, {identity_slice(signs)});
  }

  const SignSeq& domain() const noexcept { return domain_; }
  const SignSeq& codomain() const noexcept { return codomain_; }
  const std::vector<Slice>& slices() const noexcept { return slices_; }
  bool closed() const noexcept { return domain_.empty() && codomain_.empty(); }

  /// Boundary below slice k (k == slices().size() gives the codomain).
  SignSeq boundary(std::size_t k) const { return k == 0 ? domain_ : slice_outputs(slices_.at(k - 1)); }

  std::size_t max_width() const {
    std::size_t w = domain_.size();
    for (const auto& s : slices_) w = std::max(w, slice_outputs(s).size());
    return w;
  }

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  void check() const;

  SignSeq domain_;
  SignSeq codomain_;
  std::vector<Slice> slices_;
};

/// Threads the boundary through every slice; returns (domain, codomain) or
/// throws TypeError at the first slice that does not fit.
inline std::pair<SignSeq, SignSeq> typecheck(const SignSeq& domain, const std::vector<Slice>& slices) {
  SignSeq boundary = domain;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const auto in = slice_inputs(slices[i]);
    if (in != boundary)
      throw TypeError("slice " + std::to_string(i) + " expects " + format_signs(in) + " but boundary is " +
                          format_signs(boundary),
                      i);
    boundary = slice_outputs(slices[i]);
  }
  return {domain, boundary};
}

inline void Diagram::check() const {
  const auto [dom, cod] = typecheck(domain_, slices_);
  if (cod != codomain_)
    throw TypeError("diagram ends at " + format_signs(cod) + " but codomain is " + format_signs(codomain_),
                    TypeError::npos);
}

inline std::pair<SignSeq, SignSeq> typecheck(const Diagram& d) { return {d.domain(), d.codomain()}; }

/// d1 below d2.
inline Diagram compose(const Diagram& d1, const Diagram& d2) {
  if (d1.codomain() != d2.domain())
    throw TypeError("compose: codomain " + format_signs(d1.codomain()) + " does not match domain " +
                        format_signs(d2.domain()),
                    TypeError::npos);
  auto slices = d1.slices();
  slices.insert(slices.end(), d2.slices().begin(), d2.slices().end());
  return Diagram(d1.domain(), d2.codomain(), std::move(slices));
}

/// d1 to the left of d2; the shorter stack is padded with identity slices.
inline Diagram tensor(const Diagram& d1, const Diagram& d2) {
  const auto n = std::max(d1.slices().size(), d2.slices().size());
  std::vector<Slice> slices;
  for (std::size_t k = 0; k < n; ++k) {
    Slice s = k < d1.slices().size() ? d1.slices()[k] : identity_slice(d1.codomain());
    const Slice right = k < d2.slices().size() ? d2.slices()[k] : identity_slice(d2.codomain());
    s.insert(s.end(), right.begin(), right.end());
    slices.push_back(std::move(s));
  }
  auto cat = [](SignSeq a, const SignSeq& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  return Diagram(cat(d1.domain(), d2.domain()), cat(d1.codomain(), d2.codomain()), std::move(slices));
}

// ---------------------------------------------------------------------------
// Slice text format
//
//   diagram := slice (';' slice)*
//   slice   := gen*            (whitespace separated; an empty slice is skipped)
//   gen     := id± | cup± | cap± | swap(±±) | dot(L)± | birth±['(' x ')']
//            | death±['(' x ')'] | merge | split | unit | counit
//
// '#' starts a comment that runs to the end of the line.
// ---------------------------------------------------------------------------

inline std::string format_gen(const Gen& g) {
  auto s = [&](Sign x) { return std::string(1, sign_char(x)); };
  auto labelled = [&](std::string base) {
    base += s(g.sign);
    if (!g.label.empty()) base += "(" + g.label + ")";
    return base;
  };
  switch (g.kind) {
    case GenKind::id: return "id" + s(g.sign);
    case GenKind::cup: return "cup" + s(g.sign);
    case GenKind::cap: return "cap" + s(g.sign);
    case GenKind::swap: return "swap(" + s(g.sign) + s(g.sign2) + ")";
    case GenKind::dot: return "dot(" + g.label + ")" + s(g.sign);
    case GenKind::birth: return labelled("birth");
    case GenKind::death: return labelled("death");
    case GenKind::merge: return "merge";
    case GenKind::split: return "split";
    case GenKind::unit: return "unit";
    case GenKind::counit: return "counit";
  }
  return {};
}

/// Prints a diagram so that parse_diagram gives it back. A diagram without
/// slices on a nonempty domain prints as one identity slice.
inline std::string print_diagram(const Diagram& d) {
  std::vector<Slice> slices = d.slices();
  if (slices.empty() && !d.domain().empty()) slices.push_back(identity_slice(d.domain()));
  std::string out;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (i) out += " ; ";
    for (std::size_t j = 0; j < slices[i].size(); ++j) {
      if (j) out += ' ';
      out += format_gen(slices[i][j]);
    }
  }
  return out;
}

namespace detail {

class SliceParser {
 public:
  explicit SliceParser(std::string_view text) : text_(text) {}

  Diagram parse() {
    std::vector<Slice> slices;
    Slice current;
    while (true) {
      skip_space();
      if (at_end()) break;
      if (peek() == ';') {
        advance();
        if (!current.empty()) slices.push_back(std::move(current));
        current.clear();
        continue;
      }
      current.push_back(parse_gen());
    }
    if (!current.empty()) slices.push_back(std::move(current));
    return Diagram::from_slices(std::move(slices));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end()) {
      if (peek() == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what, std::size_t line, std::size_t col) const {
    throw ParseError(what, line, col);
  }

  std::string read_word() {
    std::string w;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      w += peek();
      advance();
    }
    return w;
  }

  Sign read_sign(std::size_t line, std::size_t col, const std::string& token) {
    if (at_end() || (peek() != '+' && peek() != '-')) fail("expected '+' or '-' after '" + token + "'", line, col);
    const Sign s = peek() == '+' ? Sign::plus : Sign::minus;
    advance();
    return s;
  }

  // Text between '(' and ')'; nonempty, no whitespace, ';' or parentheses.
  std::string read_argument(std::size_t line, std::size_t col, const std::string& token) {
    if (at_end() || peek() != '(') fail("expected '(' after '" + token + "'", line, col);
    advance();
    std::string arg;
    while (!at_end() && peek() != ')') {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ';' || c == '(' || c == '#')
        fail("malformed argument of '" + token + "'", line_, col_);
      arg += c;
      advance();
    }
    if (at_end()) fail("unterminated argument of '" + token + "'", line, col);
    advance();
    if (arg.empty()) fail("empty argument of '" + token + "'", line, col);
    return arg;
  }

  void expect_boundary(std::size_t line, std::size_t col, const std::string& token) {
    if (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ';' && peek() != '#')
      fail("unexpected character after '" + token + "'", line, col);
  }

  Gen parse_gen() {
    const auto line = line_, col = col_;
    const std::string word = read_word();
    if (word.empty()) fail(std::string("unexpected character '") + peek() + "'", line, col);
    Gen g;
    if (word == "id" || word == "cup" || word == "cap") {
      const Sign s = read_sign(line, col, word);
      g = word == "id" ? Gen::id(s) : word == "cup" ? Gen::cup(s) : Gen::cap(s);
    } else if (word == "swap") {
      const auto arg = read_argument(line, col, word);
      if (arg.size() != 2 || (arg[0] != '+' && arg[0] != '-') || (arg[1] != '+' && arg[1] != '-'))
        fail("swap expects two signs, e.g. swap(+-)", line, col);
      g = Gen::swap(arg[0] == '+' ? Sign::plus : Sign::minus, arg[1] == '+' ? Sign::plus : Sign::minus);
    } else if (word == "dot") {
      auto letter = read_argument(line, col, word);
      g = Gen::dot(std::move(letter), read_sign(line, col, word));
    } else if (word == "birth" || word == "death") {
      const Sign s = read_sign(line, col, word);
      std::string label;
      if (!at_end() && peek() == '(') label = read_argument(line, col, word);
      g = word == "birth" ? Gen::birth(s, std::move(label)) : Gen::death(s, std::move(label));
    } else if (word == "merge") {
      g = Gen::merge();
    } else if (word == "split") {
      g = Gen::split();
    } else if (word == "unit") {
      g = Gen::unit();
    } else if (word == "counit") {
      g = Gen::counit();
    } else {
      fail("unknown token '" + word + "'", line, col);
    }
    expect_boundary(line, col, word);
    return g;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

/// Parses the slice language; throws ParseError (with line/column) on bad
/// tokens and TypeError if the slices do not stack.
inline Diagram parse_diagram(std::string_view text) { return detail::SliceParser(text).parse(); }

}  // namespace tqfa

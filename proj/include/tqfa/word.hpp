#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tqfa {

using Letter = std::string;
using Word = std::vector<Letter>;

/// Command-line word syntax: letters separated by ',' if the text contains a
/// comma, otherwise one letter per character. The empty string is the empty
/// word.
inline Word parse_word(std::string_view text) {
  Word w;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto end = text.find(',', start);
      const auto piece = text.substr(start, end == std::string_view::npos ? end : end - start);
      if (!piece.empty()) w.emplace_back(piece);
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  } else {
    for (char c : text) w.emplace_back(1, c);
  }
  return w;
}

inline std::string format_word(const Word& w) {
  const bool multi = std::any_of(w.begin(), w.end(), [](const Letter& l) { return l.size() != 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (multi && i) out += ',';
    out += w[i];
  }
  return out;
}

inline Word rotate_word(const Word& w, std::size_t shift) {
  Word out(w.size());
  if (w.empty()) return out;
  shift %= w.size();
  std::rotate_copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(shift), w.end(), out.begin());
  return out;
}

inline Word power(const Word& w, std::size_t n) {
  Word out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

/// Lexicographically least rotation (letters compared as strings).
inline Word least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word r = rotate_word(w, s);
    if (r < best) best = std::move(r);
  }
  return best;
}

/// A word up to rotation, stored by its least rotation.
class CircularWord {
 public:
  CircularWord() = default;
  explicit CircularWord(const Word& w) : canonical_(least_rotation(w)) {}

  const Word& canonical() const noexcept { return canonical_; }
  std::size_t size() const noexcept { return canonical_.size(); }
  bool empty() const noexcept { return canonical_.empty(); }

  friend bool operator==(const CircularWord&, const CircularWord&) = default;
  friend auto operator<=>(const CircularWord&, const CircularWord&) = default;

 private:
  Word canonical_;
};

/// All words of length <= max_len over `alphabet`, shortest first and in
/// alphabet order within each length. Starts with the empty word.
inline std::vector<Word> all_words(const std::vector<Letter>& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_len && !alphabet.empty(); ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (const auto& a : alphabet) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    layer_begin = layer_end;
  }
  return out;
}

}  // namespace tqfa

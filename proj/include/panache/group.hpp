#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "panache/errors.hpp"

namespace panache {

/// One letter of a word: a generator or its inverse.
struct Letter {
  std::size_t generator;
  bool inverse;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Words are strings of letters: lowercase is a generator, uppercase its
/// inverse, the empty string the identity.
using Word = std::string;

/// Finitely presented group on single-letter generators.
class GroupPresentation {
 public:
  GroupPresentation() = default;

  GroupPresentation(std::vector<char> generators, std::vector<Word> relators)
      : generators_(std::move(generators)), relators_(std::move(relators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const char g = generators_[i];
      if (!std::islower(static_cast<unsigned char>(g))) {
        throw ParseError(std::string("generator name must be a lowercase letter: '") + g + "'");
      }
      if (std::count(generators_.begin(), generators_.end(), g) != 1) {
        throw ParseError(std::string("duplicate generator '") + g + "'");
      }
    }
    for (const auto& r : relators_) parse(r);
  }

  /// Free group on the given letters.
  static GroupPresentation free(std::string_view letters) {
    return {std::vector<char>(letters.begin(), letters.end()), {}};
  }

  const std::vector<char>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t generator_count() const { return generators_.size(); }

  std::size_t index_of(char lower) const {
    auto it = std::find(generators_.begin(), generators_.end(), lower);
    if (it == generators_.end()) {
      throw ParseError(std::string("unknown letter '") + lower + "'");
    }
    return static_cast<std::size_t>(it - generators_.begin());
  }

  std::vector<Letter> parse(std::string_view word) const {
    std::vector<Letter> out;
    out.reserve(word.size());
    for (char c : word) {
      if (!std::isalpha(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("invalid character '") + c + "' in word '" +
                         std::string(word) + "'");
      }
      const bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
      out.push_back({index_of(static_cast<char>(std::tolower(static_cast<unsigned char>(c)))), inv});
    }
    return out;
  }

  /// Letter alphabet in enumeration order: a, A, b, B, ...
  std::vector<Letter> alphabet() const {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      out.push_back({i, false});
      out.push_back({i, true});
    }
    return out;
  }

  char letter_char(Letter l) const {
    const char g = generators_.at(l.generator);
    return l.inverse ? static_cast<char>(std::toupper(static_cast<unsigned char>(g))) : g;
  }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  std::vector<char> generators_;
  std::vector<Word> relators_;
};

/// Inverse word: reversed with case swapped.
inline Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& c : out) {
    c = std::isupper(static_cast<unsigned char>(c))
            ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
            : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace panache

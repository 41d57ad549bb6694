#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace grips {

// One letter of a word: generator index plus an inversion flag.
struct Gen {
  std::uint16_t index = 0;
  bool inverse = false;

  friend bool operator==(const Gen& a, const Gen& b) {
    return a.index == b.index && a.inverse == b.inverse;
  }
  friend bool operator!=(const Gen& a, const Gen& b) { return !(a == b); }
  // Plain generators sort before their inverses; indices ascend.
  friend bool operator<(const Gen& a, const Gen& b) {
    if (a.index != b.index) return a.index < b.index;
    return a.inverse < b.inverse;
  }
};

inline Gen inverse(Gen g) { return Gen{g.index, !g.inverse}; }

// Symbol ids pack (index, inverse) into one int: 2*index + inverse.
inline int sym_id(Gen g) { return 2 * g.index + (g.inverse ? 1 : 0); }
inline Gen sym_gen(int id) {
  return Gen{static_cast<std::uint16_t>(id / 2), (id & 1) != 0};
}

using Word = std::vector<Gen>;

Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);

// Shortlex: length first, then lexicographic on (index, inverse).
bool shortlex_less(const Word& a, const Word& b);

// Generator i is written names[i] (a lowercase letter); its inverse is the
// corresponding uppercase letter.  The empty word prints as "e".
std::string word_to_string(const Word& w, const std::string& names);
Word parse_word(const std::string& s, const std::string& names);

struct WordHash {
  std::size_t operator()(const Word& w) const {
    // FNV-1a over the packed symbols.
    std::size_t h = 1469598103934665603ull;
    for (const Gen& g : w) {
      h ^= static_cast<std::size_t>(sym_id(g)) + 1;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace grips

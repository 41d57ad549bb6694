#include "grips/word.hpp"

#include <algorithm>
#include <cctype>

#include "grips/errors.hpp"

namespace grips {

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string word_to_string(const Word& w, const std::string& names) {
  if (w.empty()) return "e";
  std::string s;
  s.reserve(w.size());
  for (const Gen& g : w) {
    char c = g.index < names.size() ? names[g.index] : '?';
    s.push_back(g.inverse ? static_cast<char>(std::toupper(c)) : c);
  }
  return s;
}

Word parse_word(const std::string& s, const std::string& names) {
  if (s == "e" || s == "1") return {};
  Word w;
  w.reserve(s.size());
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    bool inv = std::isupper(static_cast<unsigned char>(c)) != 0;
    char low = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto pos = names.find(low);
    if (pos == std::string::npos)
      throw input_error("unknown generator letter '" + std::string(1, c) +
                        "' in word \"" + s + "\"");
    w.push_back(Gen{static_cast<std::uint16_t>(pos), inv});
  }
  return w;
}

}  // namespace grips

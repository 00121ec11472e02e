#include "wfa/core.hpp"

#include <algorithm>
#include <cctype>

namespace wfa {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ValidationError("alphabet must not be empty");
  std::sort(symbols_.begin(), symbols_.end());
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& s = symbols_[i];
    if (s.empty()) throw ValidationError("alphabet symbols must be non-empty strings");
    if (i > 0 && symbols_[i - 1] == s) throw ValidationError("duplicate alphabet symbol '" + s + "'");
    if (s == "ε" || s == "<eps>") throw ValidationError("'" + s + "' is reserved for the empty word");
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
        throw ValidationError("alphabet symbol '" + s + "' contains a separator character");
    }
    if (s.size() != 1) single_char_ = false;
  }
}

Symbol Alphabet::index_of(std::string_view name) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end() || *it != name)
    throw ValidationError("unknown symbol '" + std::string(name) + "'");
  return static_cast<Symbol>(it - symbols_.begin());
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (text.empty() || text == "ε" || text == "<eps>") return w;
  auto is_sep = [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; };
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    if (single_char_) {
      w.push_back(index_of(text.substr(i, 1)));
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !is_sep(text[j])) ++j;
      w.push_back(index_of(text.substr(i, j - i)));
      i = j;
    }
  }
  return w;
}

std::string Alphabet::format(std::span<const Symbol> word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single_char_ && i > 0) out += ' ';
    out += symbols_.at(word[i]);
  }
  return out;
}

std::vector<Word> words_up_to(std::size_t alphabet_size, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Symbol s = 0; s < alphabet_size; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace wfa

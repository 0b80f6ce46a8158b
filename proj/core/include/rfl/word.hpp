#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "rfl/rng.hpp"

namespace rfl {

// Sign words travel as ASCII strings over {R, L}; R codes '+', L codes '-'.

inline bool is_word(std::string_view w) {
  for (char c : w)
    if (c != 'R' && c != 'L') return false;
  return true;
}

inline void require_word(std::string_view w) {
  if (!is_word(w))
    throw std::domain_error("word must use only the letters R and L");
}

inline char flip_letter(char c) { return c == 'R' ? 'L' : 'R'; }

// i.i.d. letters, R with probability p.
inline std::string random_word(long long n, double p, SplitMix64& rng) {
  std::string w;
  w.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) w += rng.bernoulli(p) ? 'R' : 'L';
  return w;
}

}  // namespace rfl

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rfl/word.hpp"

namespace rfl {

// Result of rewriting a word until it contains no factor R L^{k-1}.
//
// In the linear rewriting each deletion flips the letter appended next and
// costs a sign; `pending_flip` is set when the last processed letter ended
// with a deletion, in which case one diag(1,-1) factor is still unconsumed.
// The defining identity, with D = diag(1,-1) and letters read as matrices:
//
//   matrix(word) = sign * matrix(letters) * D^{pending_flip}
struct ReducedWord {
  std::string letters;
  int sign = 1;
  bool pending_flip = false;
  long long deletions = 0;
};

// Streaming reducer: one letter in, amortized O(1) work. The stack is kept
// as a run-length encoding because only the trailing L-run and its preceding
// R can participate in a deletion.
class Reducer {
 public:
  // flip_mode: linear rewriting (flip after deletion, track sign);
  // otherwise the non-linear rewriting, which appends letters unchanged.
  Reducer(int k, bool flip_mode);

  struct Step {
    char appended;  // letter that actually entered the stack
    bool flipped;   // appended != raw (linear mode only)
    bool deleted;   // this letter completed and removed an R L^{k-1}
  };

  Step push(char raw);

  long long size() const { return size_; }
  int sign() const { return sign_; }
  bool pending_flip() const { return pending_; }
  long long deletions() const { return deletions_; }
  // True when the stack is empty or consists solely of L's (the leading
  // L-run is all there is).
  bool all_l() const { return runs_.empty() || (runs_.size() == 1 && runs_[0].letter == 'L'); }
  long long r_count() const { return r_count_; }

  // Materializes the stack; O(size).
  std::string letters() const;
  ReducedWord take() const;

 private:
  struct Run {
    char letter;
    long long len;
  };
  int k_;
  bool flip_mode_;
  std::vector<Run> runs_;
  long long size_ = 0;
  long long r_count_ = 0;
  bool pending_ = false;
  int sign_ = 1;
  long long deletions_ = 0;
};

ReducedWord reduce_linear(std::string_view word, int k);
ReducedWord reduce_nonlinear(std::string_view word, int k);

// Decomposition of a reduced word as L^s B_1 B_2 ... with blocks
// B = R L^j, 0 <= j <= k-2. `partial_tail` marks that the final block is
// still open on the right (a later L would extend it).
struct BlockSeq {
  long long leading_ls = 0;
  std::vector<int> blocks;  // the j of each R L^j, in order
  bool partial_tail = false;

  std::string recompose() const;
};

BlockSeq block_decompose(const ReducedWord& rw, int k);

// Per-appended-R survival trace: an R survives (so far) if no later letter
// removed it. The survival frequency over a long i.i.d. word estimates the
// survival probability.
struct SurvivalRecord {
  long long append_index;  // 0-based position in the input word
  bool alive;              // still on the stack when the word ended
};

std::vector<SurvivalRecord> survival_trace(std::string_view word, int k);

// Enumerates every word w with |w| <= max_len whose linear reduction is
// empty, in lexicographic (R < L) DFS order. max_len is capped at 30; the
// search space is 2^max_len.
void for_each_excursion(int k, int max_len,
                        const std::function<void(std::string_view)>& visit);
std::vector<std::string> enumerate_excursions(int k, int max_len);

}  // namespace rfl

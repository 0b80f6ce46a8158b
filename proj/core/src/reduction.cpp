#include "rfl/reduction.hpp"

#include <stdexcept>

#include "rfl/errors.hpp"

namespace rfl {

Reducer::Reducer(int k, bool flip_mode) : k_(k), flip_mode_(flip_mode) {
  if (k < 3) throw std::domain_error("Reducer: k must be >= 3");
}

Reducer::Step Reducer::push(char raw) {
  if (raw != 'R' && raw != 'L')
    throw std::domain_error("Reducer: letters must be R or L");

  char c = raw;
  bool flipped = false;
  if (flip_mode_ && pending_) {
    c = flip_letter(raw);
    flipped = true;
    sign_ = -sign_;
  }
  pending_ = false;

  if (!runs_.empty() && runs_.back().letter == c)
    ++runs_.back().len;
  else
    runs_.push_back(Run{c, 1});
  ++size_;
  if (c == 'R') ++r_count_;

  bool deleted = false;
  // The trailing L-run can reach k-1 only on an L append; a preceding R
  // completes the factor R L^{k-1}.
  if (c == 'L' && runs_.back().len == k_ - 1 && runs_.size() >= 2 &&
      runs_[runs_.size() - 2].letter == 'R') {
    runs_.pop_back();
    if (--runs_.back().len == 0) runs_.pop_back();
    size_ -= k_;
    --r_count_;
    ++deletions_;
    pending_ = true;
    deleted = true;
  }
  return Step{c, flipped, deleted};
}

std::string Reducer::letters() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(size_));
  for (const Run& r : runs_) out.append(static_cast<std::size_t>(r.len), r.letter);
  return out;
}

ReducedWord Reducer::take() const {
  return ReducedWord{letters(), sign_, pending_, deletions_};
}

namespace {

ReducedWord reduce_impl(std::string_view word, int k, bool flip_mode) {
  require_word(word);
  Reducer red(k, flip_mode);
  for (char c : word) red.push(c);
  return red.take();
}

}  // namespace

ReducedWord reduce_linear(std::string_view word, int k) {
  return reduce_impl(word, k, true);
}

ReducedWord reduce_nonlinear(std::string_view word, int k) {
  return reduce_impl(word, k, false);
}

BlockSeq block_decompose(const ReducedWord& rw, int k) {
  BlockSeq seq;
  const std::string& w = rw.letters;
  std::size_t i = 0;
  while (i < w.size() && w[i] == 'L') {
    ++seq.leading_ls;
    ++i;
  }
  while (i < w.size()) {
    // Each block starts with an R.
    ++i;
    int j = 0;
    while (i < w.size() && w[i] == 'L') {
      ++j;
      ++i;
    }
    if (j > k - 2)
      throw std::domain_error("block_decompose: input contains R L^{k-1}");
    seq.blocks.push_back(j);
  }
  seq.partial_tail = !seq.blocks.empty();
  return seq;
}

std::string BlockSeq::recompose() const {
  std::string w(static_cast<std::size_t>(leading_ls), 'L');
  for (int j : blocks) {
    w += 'R';
    w.append(static_cast<std::size_t>(j), 'L');
  }
  return w;
}

std::vector<SurvivalRecord> survival_trace(std::string_view word, int k) {
  require_word(word);
  Reducer red(k, true);
  std::vector<SurvivalRecord> recs;
  std::vector<std::size_t> r_stack;  // indices into recs of R's still on the stack
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Reducer::Step st = red.push(word[i]);
    if (st.appended == 'R') {
      r_stack.push_back(recs.size());
      recs.push_back(SurvivalRecord{static_cast<long long>(i), true});
    }
    if (st.deleted) {
      // A deletion removes exactly the most recent surviving R.
      recs[r_stack.back()].alive = false;
      r_stack.pop_back();
    }
  }
  return recs;
}

void for_each_excursion(int k, int max_len,
                        const std::function<void(std::string_view)>& visit) {
  if (k < 3) throw std::domain_error("for_each_excursion: k must be >= 3");
  if (max_len < 0) throw std::domain_error("for_each_excursion: max_len must be >= 0");
  if (max_len > 30)
    throw resource_error("for_each_excursion: max_len is capped at 30");

  // Iterative DFS over raw letters with an undoable reduction stack. A node
  // is an excursion exactly when the stack is empty (only a deletion can
  // empty it).
  std::string word;    // raw letters along the current path
  std::string stack;   // current reduced word
  bool pending = false;

  struct Frame {
    char raw;
    bool was_pending;
    bool deleted;
  };
  std::vector<Frame> frames;

  const auto ends_with_pattern = [&]() {
    const std::size_t n = stack.size();
    if (n < static_cast<std::size_t>(k)) return false;
    if (stack[n - k] != 'R') return false;
    for (std::size_t i = n - k + 1; i < n; ++i)
      if (stack[i] != 'L') return false;
    return true;
  };

  const auto push = [&](char raw) {
    Frame f{raw, pending, false};
    char c = pending ? flip_letter(raw) : raw;
    pending = false;
    stack += c;
    if (ends_with_pattern()) {
      stack.erase(stack.size() - k);
      pending = true;
      f.deleted = true;
    }
    frames.push_back(f);
    word += raw;
  };

  const auto pop = [&]() {
    const Frame f = frames.back();
    frames.pop_back();
    word.pop_back();
    if (f.deleted) {
      stack += 'R';
      stack.append(static_cast<std::size_t>(k - 1), 'L');
    }
    stack.pop_back();
    pending = f.was_pending;
  };

  // Depth-first over {R, L}^{<= max_len}, pruning branches whose stack can
  // no longer be emptied (each letter shrinks the stack by at most k-1).
  const std::function<void(int)> dfs = [&](int depth) {
    if (depth > 0 && stack.empty()) visit(word);
    if (depth == max_len) return;
    if (static_cast<long long>(stack.size()) >
        static_cast<long long>(max_len - depth) * (k - 1))
      return;
    for (char c : {'R', 'L'}) {
      push(c);
      dfs(depth + 1);
      pop();
    }
  };
  dfs(0);
}

std::vector<std::string> enumerate_excursions(int k, int max_len) {
  std::vector<std::string> out;
  for_each_excursion(k, max_len,
                     [&](std::string_view w) { out.emplace_back(w); });
  return out;
}

}  // namespace rfl

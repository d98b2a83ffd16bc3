#pragma once

// Exhaustive depth-first search for maximum-length circuit codes.
//
// Words are grown in first-occurrence label order (label m+1 may appear only
// after 1..m), which keeps one relabeling of every rotation in the tree.  A
// child is pruned as soon as a segment ending at the new transition is too
// close in the cube for every completion of the word; see prune_ok().
//
// Parallel runs split the tree into disjoint prefixes handed out to workers.
// Workers share only the node counter, the stop flags and the best length
// seen so far; results are merged and sorted afterwards, so the output does
// not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "ccode/canon.hpp"
#include "ccode/core.hpp"
#include "ccode/verifier.hpp"

namespace ccode {

enum class SearchMode { general, symmetric, family };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::general: return "general";
    case SearchMode::symmetric: return "symmetric";
    case SearchMode::family: return "family";
  }
  return "?";
}

struct SearchOptions {
  SearchMode mode = SearchMode::general;
  int family_l = 0;                          // family mode only
  std::optional<std::size_t> target;         // stop once a code of length >= target is found
  std::optional<std::uint64_t> node_budget;
  std::optional<double> time_limit;          // seconds
  unsigned workers = 1;
  std::optional<std::size_t> length_cap;     // never build codes longer than this
  bool collect_all_lengths = false;          // keep every accepted code in SearchRecord::all_codes

  void validate() const {
    if (mode == SearchMode::family && family_l < 2)
      throw InputError("family mode needs l >= 2");
    if (mode != SearchMode::family && family_l != 0)
      throw InputError("l is only meaningful in family mode");
    if (target && (*target % 2 != 0 || *target < 4))
      throw InputError("target length must be even and >= 4");
    if (workers < 1) throw InputError("need at least one worker");
    if (time_limit && *time_limit <= 0) throw InputError("time limit must be positive");
  }
};

struct SearchRecord {
  CodeParams params;
  SearchOptions options;
  std::size_t max_length = 0;                   // 0 when no code was accepted
  bool exhaustive = false;                      // whole tree traversed
  bool target_reached = false;
  std::vector<TransitionSequence> witnesses;    // canonical, sorted, one per class
  std::vector<std::size_t> witness_counts;      // accepted words per witness class
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::map<TransitionSequence, std::size_t> all_codes;  // collect_all_lengths only
};

/// Thrown when an enumeration is requested but the search was cut short.
struct IncompleteEnumeration : Error {
  using Error::Error;
};

namespace detail {

struct SharedState {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::size_t> best{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> truncated{false};
  std::atomic<bool> reached{false};
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

class Kernel {
 public:
  Kernel(const CodeParams& params, const SearchOptions& opts, SharedState& shared)
      : params_(params), opts_(opts), shared_(shared) {
    half_ = opts.mode != SearchMode::general;
    word_.reserve(256);
    verts_.reserve(257);
    verts_.push_back(0);
  }

  void load(const std::vector<Label>& prefix) {
    word_.clear();
    verts_.assign(1, 0);
    used_ = 0;
    for (Label a : prefix) push(a);
  }

  void dfs() {
    if (!visit()) return;
    std::array<Label, kMaxDimension> kids{};
    const int nk = children(kids);
    for (int c = 0; c < nk && !shared_.stop.load(std::memory_order_relaxed); ++c) {
      push(kids[c]);
      dfs();
      pop();
    }
  }

  /// Count the node and try to accept it.  False when the node has no children.
  bool visit() {
    ++local_nodes_;
    if ((local_nodes_ & 0xff) == 0) flush();
    if (shared_.stop.load(std::memory_order_relaxed)) return false;
    const std::size_t len = word_.size();
    if (!half_) {
      if (verts_[len] == 0 && len > 0) {
        if (len >= 4) accept(word_);
        return false;
      }
    } else if (len >= 2 && cross_ok()) {
      std::vector<Label> doubled(word_);
      doubled.insert(doubled.end(), word_.begin(), word_.end());
      accept(doubled);
    }
    return true;
  }

  int children(std::array<Label, kMaxDimension>& kids) const {
    int nk = 0;
    const int top = std::min(used_ + 1, params_.d);
    for (int a = 1; a <= top; ++a)
      if (prune_ok(static_cast<Label>(a))) kids[nk++] = static_cast<Label>(a);
    return nk;
  }

  void push(Label a) {
    word_.push_back(a);
    verts_.push_back(verts_.back() ^ (std::uint64_t{1} << (a - 1)));
    used_ = std::max<int>(used_, a);
  }

  void pop() {
    word_.pop_back();
    verts_.pop_back();
    used_ = 0;
    for (Label a : word_) used_ = std::max<int>(used_, a);
  }

  void flush() {
    const auto total = shared_.nodes.fetch_add(local_nodes_ - flushed_) + (local_nodes_ - flushed_);
    flushed_ = local_nodes_;
    if (opts_.node_budget && total >= *opts_.node_budget) halt();
    if (opts_.time_limit) {
      const std::chrono::duration<double> el = std::chrono::steady_clock::now() - shared_.start;
      if (el.count() >= *opts_.time_limit) halt();
    }
  }

  std::size_t best() const { return best_; }
  const std::map<TransitionSequence, std::size_t>& best_codes() const { return best_codes_; }
  const std::map<TransitionSequence, std::size_t>& all_codes() const { return all_codes_; }

 private:
  void halt() {
    shared_.truncated.store(true);
    shared_.stop.store(true);
  }

  // A segment of length s ending at the new transition lies inside every
  // completion.  In a cycle of final length N it needs delta >= min(s, k, N-s).
  // Half-word mode: N = 2m >= 2s, so the bound is min(s, k).  Full-word mode:
  // N is at least the current length plus the distance back to the origin.
  bool prune_ok(Label a) const {
    const std::size_t len = word_.size() + 1;
    const std::uint64_t nx = verts_.back() ^ (std::uint64_t{1} << (a - 1));
    const std::size_t k = static_cast<std::size_t>(params_.k);
    std::size_t least_n = 0;
    if (half_) {
      if (opts_.length_cap && 2 * len > *opts_.length_cap) return false;
    } else {
      if (nx == 0 && len < 4) return false;
      least_n = len + static_cast<std::size_t>(std::popcount(nx));
      if (opts_.length_cap && least_n > *opts_.length_cap) return false;
    }
    for (std::size_t i = len; i-- > 0;) {
      const std::size_t s = len - i;
      std::size_t req = std::min(s, k);
      if (!half_) req = std::min(req, least_n - s);
      if (static_cast<std::size_t>(std::popcount(verts_[i] ^ nx)) < req) return false;
    }
    return true;
  }

  // Pairs straddling the two copies of the half word; pairs within one copy
  // were already enforced by prune_ok.
  bool cross_ok() const {
    const std::size_t m = word_.size();
    const std::size_t n = 2 * m;
    const std::uint64_t c = verts_[m];
    const std::size_t k = static_cast<std::size_t>(params_.k);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t diff = m + j - i;
        const std::size_t req = std::min({diff, n - diff, k});
        if (static_cast<std::size_t>(std::popcount(verts_[i] ^ c ^ verts_[j])) < req) return false;
      }
    }
    return true;
  }

  void accept(const std::vector<Label>& w) {
    TransitionSequence t(w);
    if (check_spread(t, params_)) return;
    if (opts_.mode == SearchMode::family &&
        bit_runs(t).longest < static_cast<std::size_t>(params_.k + opts_.family_l))
      return;
    const std::size_t n = t.size();
    if (opts_.collect_all_lengths) ++all_codes_[canonical_form(t).sequence];
    if (opts_.target && n >= *opts_.target) {
      shared_.reached.store(true);
      shared_.stop.store(true);
    }
    if (n < best_) return;
    if (!opts_.collect_all_lengths && n < shared_.best.load(std::memory_order_relaxed)) return;
    if (n > best_) {
      best_ = n;
      best_codes_.clear();
      std::size_t seen = shared_.best.load();
      while (seen < n && !shared_.best.compare_exchange_weak(seen, n)) {
      }
    }
    ++best_codes_[canonical_form(t).sequence];
  }

  const CodeParams params_;
  const SearchOptions& opts_;
  SharedState& shared_;
  bool half_ = false;
  std::vector<Label> word_;
  std::vector<std::uint64_t> verts_;
  int used_ = 0;
  std::uint64_t local_nodes_ = 0;
  std::uint64_t flushed_ = 0;
  std::size_t best_ = 0;
  std::map<TransitionSequence, std::size_t> best_codes_;
  std::map<TransitionSequence, std::size_t> all_codes_;
};

}  // namespace detail

/// Maximum code length under `opts.mode`, with one canonical witness per
/// isomorphism class of maximum-length codes.
inline SearchRecord max_length(const CodeParams& params, SearchOptions opts) {
  opts.validate();
  detail::SharedState shared;
  SearchRecord rec;
  rec.params = params;
  rec.options = opts;

  // Split the top of the tree breadth-first until there is enough work.
  std::vector<std::unique_ptr<detail::Kernel>> kernels;
  kernels.push_back(std::make_unique<detail::Kernel>(params, opts, shared));
  detail::Kernel& splitter = *kernels.front();
  std::vector<std::vector<Label>> frontier{{}};
  const std::size_t want = opts.workers == 1 ? 1 : 16 * std::size_t{opts.workers};
  while (frontier.size() < want && !frontier.empty() && !shared.stop) {
    std::vector<std::vector<Label>> next;
    for (const auto& prefix : frontier) {
      splitter.load(prefix);
      if (!splitter.visit()) continue;
      std::array<Label, kMaxDimension> kids{};
      const int nk = splitter.children(kids);
      for (int c = 0; c < nk; ++c) {
        next.push_back(prefix);
        next.back().push_back(kids[c]);
      }
    }
    frontier = std::move(next);
  }

  std::atomic<std::size_t> task{0};
  auto work = [&](detail::Kernel& kern) {
    for (std::size_t t; (t = task.fetch_add(1)) < frontier.size() && !shared.stop;) {
      kern.load(frontier[t]);
      kern.dfs();
    }
    kern.flush();
  };
  if (opts.workers == 1) {
    work(splitter);
  } else {
    splitter.flush();
    for (unsigned w = 0; w < opts.workers; ++w)
      kernels.push_back(std::make_unique<detail::Kernel>(params, opts, shared));
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < opts.workers; ++w)
      threads.emplace_back([&, w] { work(*kernels[w + 1]); });
  }

  for (const auto& k : kernels) rec.max_length = std::max(rec.max_length, k->best());
  std::map<TransitionSequence, std::size_t> merged;
  for (const auto& k : kernels) {
    if (k->best() == rec.max_length)
      for (const auto& [code, count] : k->best_codes()) merged[code] += count;
    for (const auto& [code, count] : k->all_codes()) rec.all_codes[code] += count;
  }
  if (rec.max_length == 0) merged.clear();
  for (const auto& [code, count] : merged) {
    rec.witnesses.push_back(code);
    rec.witness_counts.push_back(count);
  }
  rec.nodes = shared.nodes.load();
  rec.target_reached = shared.reached.load();
  rec.exhaustive = !shared.truncated.load() && !rec.target_reached;
  rec.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - shared.start).count();
  return rec;
}

inline SearchRecord symmetric_max(const CodeParams& params, SearchOptions opts) {
  opts.mode = SearchMode::symmetric;
  opts.family_l = 0;
  return max_length(params, opts);
}

inline SearchRecord family_symmetric_max(const CodeParams& params, int l, SearchOptions opts) {
  opts.mode = SearchMode::family;
  opts.family_l = l;
  return max_length(params, opts);
}

/// Isomorphism classes of all maximum-length codes (rotation + relabeling).
/// Throws IncompleteEnumeration unless the search was exhaustive.
inline std::vector<IsomorphismClass> enumerate_max(const SearchRecord& rec) {
  if (!rec.exhaustive)
    throw IncompleteEnumeration("search did not finish; enumeration would be partial");
  std::vector<IsomorphismClass> out;
  for (std::size_t i = 0; i < rec.witnesses.size(); ++i)
    out.push_back({canonical_form(rec.witnesses[i]), rec.witness_counts[i]});
  return out;
}

inline std::vector<IsomorphismClass> enumerate_max(const CodeParams& params,
                                                   const SearchOptions& opts) {
  return enumerate_max(max_length(params, opts));
}

}  // namespace ccode

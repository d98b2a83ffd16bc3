#pragma once

// Canonical forms of cyclic transition words under rotation and label
// permutation (optionally also traversal reversal).

#include <array>
#include <map>
#include <vector>

#include "ccode/core.hpp"

namespace ccode {

struct CanonicalForm {
  TransitionSequence sequence;
  std::size_t shift = 0;            // canonical = relabel(rotate(oriented input, shift))
  std::vector<Label> permutation;   // permutation[old] = new; bijection on 1..max label
  bool reversed = false;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct IsomorphismClass {
  CanonicalForm representative;
  std::size_t count = 0;
};

namespace detail {

/// Relabel rotation `s` of `w` by first occurrence and compare against `best`
/// as it is built.  Returns true and overwrites `best` when strictly smaller.
inline bool improve_canonical(std::span<const Label> w, std::size_t s, std::vector<Label>& best) {
  const std::size_t n = w.size();
  std::array<Label, kMaxDimension + 1> map{};
  Label next = 1;
  std::size_t t = 0;
  for (; t < n; ++t) {
    Label& m = map[w[(s + t) % n]];
    if (!m) m = next++;
    if (m != best[t]) {
      if (m > best[t]) return false;
      break;
    }
  }
  if (t == n) return false;  // tie: keep earlier candidate
  for (; t < n; ++t) {
    Label& m = map[w[(s + t) % n]];
    if (!m) m = next++;
    best[t] = m;
  }
  return true;
}

inline std::vector<Label> first_occurrence_perm(std::span<const Label> w, std::size_t s) {
  const std::size_t n = w.size();
  Label top = 0;
  for (Label l : w) top = std::max(top, l);
  std::vector<Label> perm(static_cast<std::size_t>(top) + 1, 0);
  Label next = 1;
  for (std::size_t t = 0; t < n; ++t) {
    Label& m = perm[w[(s + t) % n]];
    if (!m) m = next++;
  }
  for (std::size_t l = 1; l <= top; ++l)
    if (!perm[l]) perm[l] = next++;
  return perm;
}

}  // namespace detail

/// Lexicographically smallest first-occurrence relabeling over all rotations
/// (and rotations of the reversed word when `include_reversal`).  Ties go to
/// the smaller shift, then the forward orientation.
inline CanonicalForm canonical_form(const TransitionSequence& t, bool include_reversal = false) {
  CanonicalForm cf;
  const std::size_t n = t.size();
  if (n == 0) return cf;

  const std::vector<Label> fwd = t.vec();
  const std::vector<Label> rev(fwd.rbegin(), fwd.rend());
  std::vector<Label> best(n, Label{0xff});
  std::size_t best_shift = 0;
  bool best_rev = false;
  for (std::size_t s = 0; s < n; ++s) {
    if (detail::improve_canonical(fwd, s, best)) {
      best_shift = s;
      best_rev = false;
    }
  }
  if (include_reversal) {
    for (std::size_t s = 0; s < n; ++s) {
      if (detail::improve_canonical(rev, s, best)) {
        best_shift = s;
        best_rev = true;
      }
    }
  }
  cf.sequence = TransitionSequence(std::move(best));
  cf.shift = best_shift;
  cf.reversed = best_rev;
  cf.permutation = detail::first_occurrence_perm(best_rev ? rev : fwd, best_shift);
  return cf;
}

inline bool are_isomorphic(const TransitionSequence& a, const TransitionSequence& b,
                           bool include_reversal = false) {
  if (a.size() != b.size()) return false;
  return canonical_form(a, include_reversal).sequence ==
         canonical_form(b, include_reversal).sequence;
}

/// Partition by canonical sequence.  Classes come back sorted by
/// representative; each representative is the canonical form of the first
/// input member of its class.
inline std::vector<IsomorphismClass> classify(const std::vector<TransitionSequence>& codes,
                                              bool include_reversal = false) {
  std::map<TransitionSequence, IsomorphismClass> by_canon;
  for (const auto& c : codes) {
    CanonicalForm cf = canonical_form(c, include_reversal);
    auto [it, fresh] = by_canon.try_emplace(cf.sequence);
    if (fresh) it->second.representative = std::move(cf);
    ++it->second.count;
  }
  std::vector<IsomorphismClass> out;
  out.reserve(by_canon.size());
  for (auto& [key, cls] : by_canon) out.push_back(std::move(cls));
  return out;
}

}  // namespace ccode

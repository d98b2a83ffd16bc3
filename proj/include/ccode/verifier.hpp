#pragma once

// Spread verification and structural audits for (d,k) circuit codes.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccode/core.hpp"

namespace ccode {

/// Witness that a pair of cycle vertices is too close in the cube.
/// Vertices are 1-based with i < j; `segment` is tau_i..tau_{j-1}.
struct ViolationReport {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t code_dist = 0;
  int cube_dist = 0;
  int required = 0;
  std::vector<Label> segment;

  friend bool operator==(const ViolationReport&, const ViolationReport&) = default;
};

/// Single-line form: "violation i=1 j=4 code_dist=3 cube_dist=1 required=2 segment=1,2,1"
inline std::string to_string(const ViolationReport& v) {
  std::ostringstream os;
  os << "violation i=" << v.i << " j=" << v.j << " code_dist=" << v.code_dist
     << " cube_dist=" << v.cube_dist << " required=" << v.required
     << " segment=" << format_labels(v.segment);
  return os.str();
}

namespace detail {

inline void require_cycle(const TransitionSequence& t, const CodeParams& params) {
  validate_labels(t, params.d);
  if (t.size() < 4)
    throw StructuralError("sequence of length " + std::to_string(t.size()) +
                          " cannot be a cycle (minimum length 4)");
  if (!is_closed(t)) throw StructuralError("sequence is not closed: the walk does not return to the origin");
}

inline ViolationReport make_violation(const TransitionSequence& t, std::size_t i, std::size_t j,
                                      int cube, int k) {
  const std::size_t n = t.size();
  ViolationReport v;
  v.i = i;
  v.j = j;
  v.code_dist = cyclic_code_distance(i, j, n);
  v.cube_dist = cube;
  v.required = static_cast<int>(std::min<std::size_t>(v.code_dist, static_cast<std::size_t>(k)));
  v.segment = segment_labels(t, Segment{i, j - i});
  return v;
}

}  // namespace detail

/// Decide the distance requirement d_cube(x,y) >= min(d_cycle(x,y), k).
///
/// Scans only segments of length <= N/2 from every start, using
/// delta(segment) = delta(complement).  Repeated vertices show up as
/// cube_dist = 0.  Returns nullopt when valid, otherwise the violating pair
/// that is smallest in (i, j) order.
inline std::optional<ViolationReport> check_spread(const TransitionSequence& t,
                                                   const CodeParams& params) {
  detail::require_cycle(t, params);
  const std::size_t n = t.size();
  std::optional<std::pair<std::size_t, std::size_t>> first;
  int first_cube = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    ParitySet p;
    for (std::size_t len = 1; len <= n / 2; ++len) {
      p.toggle(t.at(i + len - 1));
      const int required = static_cast<int>(std::min<std::size_t>(len, params.k));
      if (p.size() >= required) continue;
      std::size_t a = i, b = (i + len - 1) % n + 1;
      if (a > b) std::swap(a, b);
      if (!first || std::make_pair(a, b) < *first) {
        first = std::make_pair(a, b);
        first_cube = p.size();
      }
    }
  }
  if (!first) return std::nullopt;
  return detail::make_violation(t, first->first, first->second, first_cube, params.k);
}

/// Independent oracle for check_spread: every vertex pair of the expanded
/// walk, cube distance by symmetric difference.
inline std::optional<ViolationReport> brute_force_check(const TransitionSequence& t,
                                                        const CodeParams& params) {
  detail::require_cycle(t, params);
  const VertexWalk walk = expand_vertices(t, params.d);
  const std::size_t n = walk.size();
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const int cube = hamming_distance(walk[i - 1], walk[j - 1]);
      const auto code = cyclic_code_distance(i, j, n);
      if (static_cast<std::size_t>(cube) < std::min<std::size_t>(code, params.k))
        return detail::make_violation(t, i, j, cube, params.k);
    }
  }
  return std::nullopt;
}

inline bool is_valid_code(const TransitionSequence& t, const CodeParams& params) {
  return !check_spread(t, params).has_value();
}

inline bool is_symmetric(const TransitionSequence& t) {
  const std::size_t n = t.size();
  if (n % 2 != 0) return false;
  for (std::size_t i = 0; i < n / 2; ++i)
    if (t[i] != t[i + n / 2]) return false;
  return true;
}

// Bit runs

struct BitRunReport {
  std::vector<Segment> maximal;   // ordered by start
  std::size_t longest = 0;
  std::vector<std::size_t> longest_starts;
};

/// Length of the longest bit run starting at each 1-based position, capped at N.
inline std::vector<std::size_t> run_lengths(const TransitionSequence& t) {
  const std::size_t n = t.size();
  std::vector<std::size_t> r(n + 1, 0);
  if (n == 0) return r;
  // Two pointers over the doubled word.
  std::vector<int> seen(kMaxDimension + 1, 0);
  std::size_t hi = 0;  // exclusive end, offset from 0
  for (std::size_t lo = 0; lo < n; ++lo) {
    if (hi < lo) hi = lo;
    while (hi - lo < n && !seen[t[hi % n]]) {
      seen[t[hi % n]] = 1;
      ++hi;
    }
    r[lo + 1] = hi - lo;
    seen[t[lo]] = 0;
  }
  return r;
}

/// All maximal bit runs of the cyclic word.  A word with all labels
/// distinct is reported as the single run starting at 1.
inline BitRunReport bit_runs(const TransitionSequence& t) {
  BitRunReport rep;
  const std::size_t n = t.size();
  if (n == 0) return rep;
  const auto r = run_lengths(t);
  if (r[1] == n) {
    rep.maximal.push_back({1, n});
    rep.longest = n;
    rep.longest_starts.push_back(1);
    return rep;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t prev = i == 1 ? n : i - 1;
    if (r[prev] != r[i] + 1) rep.maximal.push_back({i, r[i]});
    rep.longest = std::max(rep.longest, r[i]);
  }
  for (std::size_t i = 1; i <= n; ++i)
    if (r[i] == rep.longest) rep.longest_starts.push_back(i);
  return rep;
}

/// Membership in the family of (d,k) codes having a bit run of length >= k+l.
inline bool in_family(const TransitionSequence& t, const CodeParams& params, int l) {
  if (l < 2) throw InputError("family parameter l must be >= 2");
  if (auto v = check_spread(t, params))
    throw InapplicableError("not a valid (d,k) code: " + to_string(*v));
  return bit_runs(t).longest >= static_cast<std::size_t>(params.k + l);
}

/// For N > 2(k+1): every segment of length k+3 has its first or its last
/// k+2 transitions distinct.  Returns the first offending segment.
inline std::optional<Segment> check_singleton_property(const TransitionSequence& t,
                                                       const CodeParams& params) {
  detail::require_cycle(t, params);
  const std::size_t n = t.size();
  const std::size_t k = static_cast<std::size_t>(params.k);
  if (n <= 2 * (k + 1))
    throw InapplicableError("run property needs N > 2(k+1); N=" + std::to_string(n) +
                            ", k=" + std::to_string(k));
  const auto r = run_lengths(t);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t second = i % n + 1;
    if (r[i] < k + 2 && r[second] < k + 2) return Segment{i, k + 3};
  }
  return std::nullopt;
}

struct DeltaOffence {
  Segment segment;
  int delta = 0;
  int bound = 0;       // required value (equality) or lower bound
  bool equality = false;

  friend bool operator==(const DeltaOffence&, const DeltaOffence&) = default;
};

inline std::string to_string(const TransitionSequence& t, const DeltaOffence& o) {
  std::ostringstream os;
  os << "segment start=" << o.segment.start << " len=" << o.segment.len << " ("
     << format_labels(segment_labels(t, o.segment)) << ") delta=" << o.delta
     << (o.equality ? " expected == " : " expected >= ") << o.bound;
  return os.str();
}

/// Audit delta(w) = |w| for |w| <= k+1 and delta(w) >= k for k <= |w| <= N-k,
/// over every cyclic segment (scanned by start, then length).  Also checks
/// that every one-step extension moves delta by exactly one.  Does not
/// assume the input is a valid code; breaches are returned, not thrown.
inline std::vector<DeltaOffence> audit_delta_inequalities(const TransitionSequence& t,
                                                          const CodeParams& params) {
  detail::require_cycle(t, params);
  const std::size_t n = t.size();
  const std::size_t k = static_cast<std::size_t>(params.k);
  if (n <= 2 * k)
    throw InapplicableError("delta inequalities need N > 2k; N=" + std::to_string(n) +
                            ", k=" + std::to_string(k));
  std::vector<DeltaOffence> out;
  for (std::size_t i = 1; i <= n; ++i) {
    ParitySet p;
    for (std::size_t len = 1; len <= n - k; ++len) {
      const int before = p.size();
      p.toggle(t.at(i + len - 1));
      if (p.size() != before + 1 && p.size() != before - 1)
        throw ConsistencyError("delta did not move by one on extension");
      const int dv = p.size();
      if (len <= k + 1 && dv != static_cast<int>(len))
        out.push_back({Segment{i, len}, dv, static_cast<int>(len), true});
      else if (len >= k && dv < static_cast<int>(k))
        out.push_back({Segment{i, len}, dv, static_cast<int>(k), false});
    }
  }
  return out;
}

// Normal form around a (k+2)-bit run for symmetric codes of length 4k+6
// with k even and d = (3k+4)/2.

struct BetaBreach {
  std::size_t index = 0;   // 1-based position in beta
  Label value = 0;
  std::string rule;
};

struct BitRunNormalForm {
  TransitionSequence sequence;        // omega1, x, omega2, omega1, x, omega2
  std::size_t shift = 0;              // rotation applied to the input
  std::vector<Label> permutation;     // permutation[old] = new
  std::vector<Label> omega1;          // 1, 2, ..., k+2
  Label x = 0;
  std::vector<Label> beta;            // omega2, length k
  std::vector<BetaBreach> breaches;   // empty when the beta constraints hold
};

inline bool lemma_shape_applies(const CodeParams& p, std::size_t n) {
  return p.k % 2 == 0 && p.k >= 4 && 2 * p.d == 3 * p.k + 4 &&
         n == static_cast<std::size_t>(4 * p.k + 6);
}

inline BitRunNormalForm normalize_to_bitrun_form(const TransitionSequence& t,
                                                 const CodeParams& params) {
  validate_labels(t, params.d);
  const int k = params.k;
  if (k % 2 != 0 || 2 * params.d != 3 * k + 4)
    throw InapplicableError("normal form needs k even and d = (3k+4)/2");
  const std::size_t n = t.size();
  if (n != static_cast<std::size_t>(4 * k + 6))
    throw InapplicableError("normal form needs N = 4k+6 = " + std::to_string(4 * k + 6) +
                            ", got " + std::to_string(n));
  if (!is_symmetric(t)) throw InapplicableError("normal form needs a symmetric sequence");
  if (auto v = check_spread(t, params))
    throw InapplicableError("not a valid (d,k) code: " + to_string(*v));
  const auto r = run_lengths(t);
  const std::size_t run = static_cast<std::size_t>(k + 2);

  std::optional<BitRunNormalForm> best;
  for (std::size_t start = 1; start <= n; ++start) {
    if (r[start] < run) continue;
    const TransitionSequence rot = rotate(t, start - 1);
    // omega1 gets 1..k+2, remaining labels follow in first-occurrence order.
    std::vector<Label> perm(kMaxDimension + 1, 0);
    Label next = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (!perm[rot[i]]) perm[rot[i]] = next++;
    for (int l = 1; l <= params.d; ++l)
      if (!perm[l]) perm[l] = next++;
    perm.resize(static_cast<std::size_t>(params.d) + 1);
    TransitionSequence cand = relabel(rot, perm);
    if (!best || cand < best->sequence) {
      best.emplace();
      best->sequence = std::move(cand);
      best->shift = start - 1;
      best->permutation = std::move(perm);
    }
  }
  if (!best) throw InapplicableError("no bit run of length k+2 = " + std::to_string(run));

  BitRunNormalForm& nf = *best;
  const auto& s = nf.sequence;
  nf.omega1.assign(s.vec().begin(), s.vec().begin() + static_cast<std::ptrdiff_t>(run));
  nf.x = s[run];
  nf.beta.assign(s.vec().begin() + static_cast<std::ptrdiff_t>(run + 1),
                 s.vec().begin() + static_cast<std::ptrdiff_t>(n / 2));
  for (std::size_t i = 1; i <= static_cast<std::size_t>(k); ++i) {
    const Label b = nf.beta[i - 1];
    if (b <= i) nf.breaches.push_back({i, b, "beta_i > i"});
    if (i <= static_cast<std::size_t>(k - 1) && b >= i + 3 && b <= run)
      nf.breaches.push_back({i, b, "beta_j not in {j+3..k+2}"});
  }
  return nf;
}

}  // namespace ccode

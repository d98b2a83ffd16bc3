#pragma once

// Transition-sequence algebra for hypercube circuit codes.
//
// A cycle in the d-cube is stored as its transition word: entry i is the
// coordinate (1-based label) flipped between vertex i and vertex i+1.  The
// vertex reached after a prefix is the set of labels seen an odd number of
// times in that prefix, so vertices, parity sets and delta() are one concept.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccode {

using Label = std::uint8_t;

/// Widest supported cube; vertices are packed into one 64-bit word.
inline constexpr int kMaxDimension = 64;

// Error categories.  Each maps to one CLI exit status.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Malformed user input: bad labels, bad parameters, unparsable text.
struct InputError : Error {
  using Error::Error;
};
/// Not a cycle at all (open walk, fewer than 4 transitions).
struct StructuralError : Error {
  using Error::Error;
};
/// An operation's precondition does not hold for this input.
struct InapplicableError : Error {
  using Error::Error;
};
/// A proven structural property failed on concrete data; indicates a bug.
struct ConsistencyError : Error {
  using Error::Error;
};

struct CodeParams {
  int d = 2;
  int k = 1;

  CodeParams() = default;
  CodeParams(int dim, int spread) : d(dim), k(spread) {
    if (d < 2 || d > kMaxDimension)
      throw InputError("dimension d=" + std::to_string(d) + " outside 2.." +
                       std::to_string(kMaxDimension));
    if (k < 1) throw InputError("spread k=" + std::to_string(k) + " must be >= 1");
  }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Cyclic word over labels 1..d.  Indexing through operator[] is 0-based;
/// at() takes a 1-based index and wraps modulo N.
class TransitionSequence {
 public:
  TransitionSequence() = default;
  explicit TransitionSequence(std::vector<Label> elems) : elems_(std::move(elems)) {}
  TransitionSequence(std::initializer_list<int> elems) {
    elems_.reserve(elems.size());
    for (int e : elems) {
      if (e < 1 || e > kMaxDimension)
        throw InputError("label " + std::to_string(e) + " outside 1.." +
                         std::to_string(kMaxDimension));
      elems_.push_back(static_cast<Label>(e));
    }
  }

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  Label operator[](std::size_t i) const { return elems_[i]; }
  Label at(std::size_t one_based) const {
    return elems_[(one_based - 1) % elems_.size()];
  }
  std::span<const Label> elems() const noexcept { return elems_; }
  const std::vector<Label>& vec() const noexcept { return elems_; }

  Label max_label() const {
    return elems_.empty() ? Label{0} : *std::max_element(elems_.begin(), elems_.end());
  }

  friend bool operator==(const TransitionSequence&, const TransitionSequence&) = default;
  friend auto operator<=>(const TransitionSequence& a, const TransitionSequence& b) {
    return a.elems_ <=> b.elems_;
  }

 private:
  std::vector<Label> elems_;
};

/// Cyclically consecutive run of `len` transitions starting at 1-based `start`.
struct Segment {
  std::size_t start = 1;
  std::size_t len = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Set of labels with odd multiplicity.  Doubles as a cube vertex.
class ParitySet {
 public:
  ParitySet() = default;
  static ParitySet from_mask(std::uint64_t mask) {
    ParitySet p;
    p.mask_ = mask;
    p.odd_ = std::popcount(mask);
    return p;
  }

  /// Flip one label.  The odd count moves by exactly one.
  void toggle(Label label) {
    const int before = odd_;
    const std::uint64_t bit = std::uint64_t{1} << (label - 1);
    odd_ += (mask_ & bit) ? -1 : 1;
    mask_ ^= bit;
    assert(odd_ == before + 1 || odd_ == before - 1);
    (void)before;
  }

  int size() const noexcept { return odd_; }
  bool empty() const noexcept { return odd_ == 0; }
  bool contains(Label label) const noexcept {
    return (mask_ >> (label - 1)) & 1u;
  }
  std::uint64_t mask() const noexcept { return mask_; }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    for (int b = 0; b < kMaxDimension; ++b)
      if ((mask_ >> b) & 1u) out.push_back(static_cast<Label>(b + 1));
    return out;
  }

  friend bool operator==(const ParitySet& a, const ParitySet& b) { return a.mask_ == b.mask_; }

 private:
  std::uint64_t mask_ = 0;
  int odd_ = 0;
};

using Vertex = ParitySet;
using VertexWalk = std::vector<Vertex>;

inline void validate_labels(const TransitionSequence& t, int d) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 1 || t[i] > d)
      throw InputError("label " + std::to_string(int(t[i])) + " at position " +
                       std::to_string(i + 1) + " outside 1.." + std::to_string(d));
  }
}

/// Vertices x_1..x_N of the walk; x_1 is the origin.  The closing vertex
/// x_{N+1} is not included.  An empty word yields just the origin.
inline VertexWalk expand_vertices(const TransitionSequence& t, int d = kMaxDimension) {
  validate_labels(t, d);
  VertexWalk walk;
  walk.reserve(t.size() + 1);
  Vertex v;
  walk.push_back(v);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    v.toggle(t[i]);
    walk.push_back(v);
  }
  return walk;
}

inline bool is_closed(const TransitionSequence& t) {
  ParitySet p;
  for (Label l : t.elems()) p.toggle(l);
  return p.empty();
}

/// Number of labels occurring an odd number of times in the segment.
inline int delta(const TransitionSequence& t, Segment s) {
  assert(s.len <= t.size());
  ParitySet p;
  for (std::size_t i = 0; i < s.len; ++i) p.toggle(t.at(s.start + i));
  return p.size();
}

/// Same quantity as delta() by explicit multiplicity count; used as a cross-check.
inline int delta_by_count(const TransitionSequence& t, Segment s) {
  std::map<Label, std::size_t> mult;
  for (std::size_t i = 0; i < s.len; ++i) ++mult[t.at(s.start + i)];
  return static_cast<int>(
      std::count_if(mult.begin(), mult.end(), [](const auto& e) { return e.second % 2 == 1; }));
}

inline std::size_t cyclic_code_distance(std::size_t i, std::size_t j, std::size_t n) {
  const std::size_t diff = i > j ? i - j : j - i;
  return std::min(diff, n - diff);
}

inline int hamming_distance(const Vertex& u, const Vertex& v) {
  return std::popcount(u.mask() ^ v.mask());
}

/// (tau_{s+1}, ..., tau_N, tau_1, ..., tau_s)
inline TransitionSequence rotate(const TransitionSequence& t, std::size_t s) {
  if (t.empty()) return t;
  std::vector<Label> out(t.vec());
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(s % out.size()), out.end());
  return TransitionSequence(std::move(out));
}

inline TransitionSequence reversed(const TransitionSequence& t) {
  std::vector<Label> out(t.vec().rbegin(), t.vec().rend());
  return TransitionSequence(std::move(out));
}

/// Apply perm (perm[old] = new, index 0 unused) to every label.
inline TransitionSequence relabel(const TransitionSequence& t, std::span<const Label> perm) {
  std::vector<Label> out;
  out.reserve(t.size());
  for (Label l : t.elems()) out.push_back(perm[l]);
  return TransitionSequence(std::move(out));
}

inline std::vector<Label> segment_labels(const TransitionSequence& t, Segment s) {
  std::vector<Label> out;
  out.reserve(s.len);
  for (std::size_t i = 0; i < s.len; ++i) out.push_back(t.at(s.start + i));
  return out;
}

// Plain-text syntax: "1,2,1,2".

inline std::string format_labels(std::span<const Label> labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(int(labels[i]));
  }
  return out;
}

inline std::string format_sequence(const TransitionSequence& t) { return format_labels(t.elems()); }

/// Parse "l1,l2,..." with every label in 1..d.  Whitespace around labels is
/// ignored; an empty (or all-blank) string is the empty word.  Errors name
/// the element index and character column.
inline TransitionSequence parse_sequence(std::string_view text, int d = kMaxDimension) {
  auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  if (std::all_of(text.begin(), text.end(), blank)) return {};

  std::vector<Label> out;
  std::size_t pos = 0;
  std::size_t element = 1;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    std::size_t b = pos, e = end;
    while (b < e && blank(text[b])) ++b;
    while (e > b && blank(text[e - 1])) --e;
    auto fail = [&](const std::string& why) {
      throw InputError("element " + std::to_string(element) + " (column " +
                       std::to_string(b + 1) + "): " + why);
    };
    if (b == e) fail("empty label");
    std::string_view tok = text.substr(b, e - b);
    if (tok.front() == '-') fail("negative label '" + std::string(tok) + "'");
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail("not a number '" + std::string(tok) + "'");
    if (tok.size() > 3) fail("label '" + std::string(tok) + "' out of range 1.." + std::to_string(d));
    const int value = std::stoi(std::string(tok));
    if (value < 1 || value > d)
      fail("label " + std::to_string(value) + " out of range 1.." + std::to_string(d));
    out.push_back(static_cast<Label>(value));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    ++element;
  }
  return TransitionSequence(std::move(out));
}

}  // namespace ccode

#pragma once

// JSONL persistence for code and search records, and the table of
// published extremal values consulted for MATCH/MISMATCH reporting.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccode/search.hpp"

namespace ccode {

using ordered_json = nlohmann::ordered_json;

enum class CodeSource { searched, user, table };

inline const char* to_string(CodeSource s) {
  switch (s) {
    case CodeSource::searched: return "searched";
    case CodeSource::user: return "user";
    case CodeSource::table: return "table";
  }
  return "?";
}

struct CodeRecord {
  int d = 2;
  int k = 1;
  TransitionSequence transitions;
  bool symmetric = false;
  bool canonical = false;
  CodeSource source = CodeSource::user;

  std::size_t n() const { return transitions.size(); }
  friend bool operator==(const CodeRecord&, const CodeRecord&) = default;
};

inline CodeRecord make_code_record(const CodeParams& p, const TransitionSequence& t, CodeSource src) {
  CodeRecord r;
  r.d = p.d;
  r.k = p.k;
  r.transitions = t;
  r.symmetric = is_symmetric(t);
  r.canonical = canonical_form(t).sequence == t;
  r.source = src;
  return r;
}

inline std::string to_jsonl(const CodeRecord& r) {
  ordered_json j;
  j["d"] = r.d;
  j["k"] = r.k;
  j["n"] = r.n();
  j["transitions"] = std::vector<int>(r.transitions.vec().begin(), r.transitions.vec().end());
  j["symmetric"] = r.symmetric;
  j["canonical"] = r.canonical;
  j["source"] = to_string(r.source);
  return j.dump();
}

inline CodeRecord code_record_from_json(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad JSON: ") + e.what());
  }
  try {
    CodeRecord r;
    const CodeParams p(j.at("d").get<int>(), j.at("k").get<int>());
    r.d = p.d;
    r.k = p.k;
    std::vector<Label> labels;
    for (const auto& v : j.at("transitions")) {
      const int l = v.get<int>();
      if (l < 1 || l > r.d)
        throw InputError("label " + std::to_string(l) + " outside 1.." + std::to_string(r.d));
      labels.push_back(static_cast<Label>(l));
    }
    r.transitions = TransitionSequence(std::move(labels));
    if (j.at("n").get<std::size_t>() != r.n())
      throw InputError("record n=" + std::to_string(j.at("n").get<std::size_t>()) +
                       " disagrees with transition count " + std::to_string(r.n()));
    r.symmetric = j.value("symmetric", is_symmetric(r.transitions));
    r.canonical = j.value("canonical", false);
    const std::string src = j.value("source", std::string("user"));
    if (src == "searched") r.source = CodeSource::searched;
    else if (src == "user") r.source = CodeSource::user;
    else if (src == "table") r.source = CodeSource::table;
    else throw InputError("unknown source '" + src + "'");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad code record: ") + e.what());
  }
}

inline std::vector<CodeRecord> read_code_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<CodeRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(code_record_from_json(line));
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::string to_jsonl(const SearchRecord& r) {
  ordered_json j;
  j["d"] = r.params.d;
  j["k"] = r.params.k;
  j["mode"] = to_string(r.options.mode);
  if (r.options.mode == SearchMode::family) j["l"] = r.options.family_l;
  else j["l"] = nullptr;
  j["n"] = r.max_length;
  j["exhaustive"] = r.exhaustive;
  auto ws = ordered_json::array();
  for (const auto& w : r.witnesses) ws.push_back(std::vector<int>(w.vec().begin(), w.vec().end()));
  j["witnesses"] = std::move(ws);
  j["nodes"] = r.nodes;
  j["seconds"] = r.seconds;
  return j.dump();
}

/// Append one line; the file is never rewritten.
inline void append_line(const std::string& path, const std::string& line) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw InputError("cannot open " + path + " for append");
  out << line << '\n';
}

// Known values.  Linear forms in k and l: (k*ck + l*cl + c) / div.

struct LinearForm {
  int ck = 0, cl = 0, c = 0, div = 1;
  std::optional<int> eval(int k, int l) const {
    const int num = ck * k + cl * l + c;
    if (num % div != 0) return std::nullopt;
    return num / div;
  }
};

struct KnownValue {
  std::string id;
  SearchMode mode = SearchMode::general;
  std::string k_parity = "any";          // odd | even | any
  int k_min = 1;
  int l_min = 0;
  bool l_opposite_parity = false;
  std::optional<LinearForm> k_min_odd;   // when k is odd: k >= form(l)
  std::optional<LinearForm> k_min_even;  // when k is even: k >= form(l)
  LinearForm d;
  LinearForm n;
  bool unique = false;
  std::vector<int> unique_for_l;
  bool reproducible = true;
  std::string reference;
};

struct KnownMatch {
  const KnownValue* entry = nullptr;
  std::size_t expected_n = 0;
  bool unique = false;
};

namespace detail {
inline LinearForm linear_from_json(const ordered_json& j) {
  LinearForm f;
  f.ck = j.value("k", 0);
  f.cl = j.value("l", 0);
  f.c = j.value("c", 0);
  f.div = j.value("div", 1);
  return f;
}
}  // namespace detail

inline std::vector<KnownValue> parse_known_values(const std::string& text) {
  std::vector<KnownValue> out;
  try {
    const auto doc = ordered_json::parse(text);
    for (const auto& e : doc.at("entries")) {
      KnownValue v;
      v.id = e.at("id").get<std::string>();
      const std::string mode = e.at("mode").get<std::string>();
      if (mode == "general") v.mode = SearchMode::general;
      else if (mode == "symmetric") v.mode = SearchMode::symmetric;
      else if (mode == "family") v.mode = SearchMode::family;
      else throw InputError("known values: unknown mode " + mode);
      v.k_parity = e.value("k_parity", std::string("any"));
      v.k_min = e.value("k_min", 1);
      v.l_min = e.value("l_min", 0);
      v.l_opposite_parity = e.value("l_opposite_parity", false);
      if (e.contains("k_min_if_odd")) v.k_min_odd = detail::linear_from_json(e["k_min_if_odd"]);
      if (e.contains("k_min_if_even")) v.k_min_even = detail::linear_from_json(e["k_min_if_even"]);
      v.d = detail::linear_from_json(e.at("d"));
      v.n = detail::linear_from_json(e.at("n"));
      v.unique = e.value("unique", false);
      v.unique_for_l = e.value("unique_for_l", std::vector<int>{});
      v.reproducible = e.value("reproducible", true);
      v.reference = e.value("reference", std::string());
      out.push_back(std::move(v));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("known values: ") + e.what());
  }
  return out;
}

inline std::vector<KnownValue> load_known_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open known-values table " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_known_values(text);
}

/// First table entry whose preconditions cover (d, k, mode, l).
inline std::optional<KnownMatch> lookup_known(const std::vector<KnownValue>& table, const CodeParams& p,
                                              SearchMode mode, int l = 0) {
  for (const auto& v : table) {
    if (v.mode != mode) continue;
    if (v.k_parity == "odd" && p.k % 2 == 0) continue;
    if (v.k_parity == "even" && p.k % 2 != 0) continue;
    if (p.k < v.k_min) continue;
    if (mode == SearchMode::family) {
      if (l < v.l_min) continue;
      if (v.l_opposite_parity && (p.k + l) % 2 == 0) continue;
      const auto& bound = p.k % 2 ? v.k_min_odd : v.k_min_even;
      if (bound) {
        const auto b = bound->eval(p.k, l);
        if (!b || p.k < *b) continue;
      }
    }
    const auto d = v.d.eval(p.k, l);
    if (!d || *d != p.d) continue;
    const auto n = v.n.eval(p.k, l);
    if (!n) continue;
    KnownMatch m;
    m.entry = &v;
    m.expected_n = static_cast<std::size_t>(*n);
    m.unique = v.unique || std::find(v.unique_for_l.begin(), v.unique_for_l.end(), l) !=
                               v.unique_for_l.end();
    return m;
  }
  return std::nullopt;
}

}  // namespace ccode

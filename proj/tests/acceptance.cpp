// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "ccode/canon.hpp"
#include "ccode/records.hpp"
#include "ccode/search.hpp"
#include "ccode/verifier.hpp"
#include "oracles.hpp"

using namespace ccode;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... Args>
std::string cat(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

// 1. delta-based spread check agrees with the pairwise oracle on every closed
//    word with N <= 10, d <= 4, k in 1..4, within one minute.
Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::size_t words = 0, checks = 0, disagreements = 0;
  for (int d = 2; d <= 4; ++d) {
    for (std::size_t n = 0; n <= 10; ++n) {
      oracle::for_each_word(d, n, [&](const TransitionSequence& t) {
        if (!is_closed(t)) return;
        ++words;
        for (int k = 1; k <= 4; ++k) {
          const CodeParams p(d, k);
          ++checks;
          if (n < 4) {
            bool a = false, b = false;
            try { check_spread(t, p); } catch (const StructuralError&) { a = true; }
            try { brute_force_check(t, p); } catch (const StructuralError&) { b = true; }
            disagreements += !(a && b);
            continue;
          }
          disagreements += check_spread(t, p).has_value() != brute_force_check(t, p).has_value();
        }
      });
    }
  }
  const double s = since(t0);
  return {disagreements == 0 && s < 60.0,
          cat(words, " closed words, ", checks, " verdicts, ", disagreements, " disagreements, ", s, "s")};
}

Outcome exhaustive_max(const CodeParams& p, std::size_t expected, double limit, std::size_t classes = 0) {
  const auto rec = max_length(p, {});
  const bool ok = rec.exhaustive && rec.max_length == expected && rec.seconds < limit &&
                  (classes == 0 || rec.witnesses.size() == classes);
  return {ok, cat("K(", p.d, ",", p.k, ")=", rec.max_length, " expected ", expected,
                  " exhaustive=", rec.exhaustive, " classes=", rec.witnesses.size(),
                  " nodes=", rec.nodes, " ", rec.seconds, "s")};
}

Outcome symmetric_eight_four() {
  const CodeParams p(8, 4);
  SearchOptions one;
  const auto rec = symmetric_max(p, one);
  SearchOptions four;
  four.workers = 4;
  const auto par = symmetric_max(p, four);
  bool ok = rec.exhaustive && rec.max_length == 22 && rec.witnesses.size() == 1 &&
            par.witnesses == rec.witnesses && par.witness_counts == rec.witness_counts &&
            rec.seconds + par.seconds < 1800;
  std::string extra;
  if (rec.witnesses.size() == 1) {
    const auto& code = rec.witnesses[0];
    const auto runs = bit_runs(code);
    const auto nf = normalize_to_bitrun_form(code, p);
    ok = ok && runs.longest >= 7 && nf.breaches.empty() && are_isomorphic(nf.sequence, code) &&
         !check_spread(nf.sequence, p);
    extra = cat(" code=", format_sequence(code), " longest_run=", runs.longest,
                " normal=", format_sequence(nf.sequence), " beta_breaches=", nf.breaches.size());
  }
  return {ok, cat("S(8,4)=", rec.max_length, " classes=", rec.witnesses.size(),
                  " same witnesses with 4 workers=", par.witnesses == rec.witnesses, extra, " ",
                  rec.seconds + par.seconds, "s")};
}

Outcome family_eight_four_three() {
  const auto rec = family_symmetric_max({8, 4}, 3, {});
  return {rec.exhaustive && rec.max_length == 22 && rec.witnesses.size() == 1,
          cat("S(8,4,7)=", rec.max_length, " expected 4k+2l=22 classes=", rec.witnesses.size())};
}

// 7. Audits over every rotation of every enumerated maximum code from 2-5.
Outcome audit_suite() {
  struct Case {
    CodeParams p;
    bool symmetric;
  };
  const std::vector<Case> cases{{{3, 1}, false}, {{5, 2}, false}, {{6, 3}, false}, {{8, 4}, true}};
  std::size_t codes = 0, counterexamples = 0;
  for (const auto& c : cases) {
    const auto rec = c.symmetric ? symmetric_max(c.p, {}) : max_length(c.p, {});
    for (const auto& w : rec.witnesses) {
      for (std::size_t s = 0; s < w.size(); ++s) {
        const auto r = rotate(w, s);
        ++codes;
        if (r.size() > 2u * c.p.k) counterexamples += audit_delta_inequalities(r, c.p).size();
        if (r.size() > 2u * (c.p.k + 1)) counterexamples += check_singleton_property(r, c.p).has_value();
      }
    }
  }
  return {codes > 0 && counterexamples == 0,
          cat(codes, " codes (all rotations), ", counterexamples, " counterexamples")};
}

// 8. Canonical form: idempotence, shift and relabel invariance.
Outcome canon_properties() {
  std::size_t failures = 0, cases = 0;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 10);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = dim(rng);
    const auto t = oracle::random_word(rng, d, len(rng));
    const auto cf = canonical_form(t).sequence;
    std::uniform_int_distribution<std::size_t> shift(0, t.size() - 1);
    failures += canonical_form(cf).sequence != cf;
    failures += canonical_form(rotate(t, shift(rng))).sequence != cf;
    failures += canonical_form(relabel(t, oracle::random_permutation(rng, d))).sequence != cf;
    ++cases;
  }
  std::size_t exhaustive = 0;
  for (int d = 1; d <= 4; ++d) {
    std::vector<std::vector<Label>> perms;
    std::vector<Label> base(static_cast<std::size_t>(d) + 1);
    std::iota(base.begin() + 1, base.end(), Label{1});
    do perms.push_back(base);
    while (std::next_permutation(base.begin() + 1, base.end()));
    for (std::size_t n = 1; n <= 8; ++n) {
      oracle::for_each_word(d, n, [&](const TransitionSequence& t) {
        ++exhaustive;
        const auto cf = canonical_form(t).sequence;
        failures += canonical_form(cf).sequence != cf;
        failures += cf != oracle::naive_canonical(t, d);
        for (std::size_t s = 1; s < n; ++s) failures += canonical_form(rotate(t, s)).sequence != cf;
        for (const auto& pm : perms) failures += canonical_form(relabel(t, pm)).sequence != cf;
      });
    }
  }
  return {failures == 0 && cases >= 10000,
          cat(cases, " random cases (N<=30, d<=10), ", exhaustive, " exhaustive words (N<=8, d<=4), ",
              failures, " failures")};
}

// 9. Pruned search versus unpruned enumeration, d <= 4, k <= 2, N <= 12.
Outcome completeness() {
  std::size_t classes = 0;
  std::string mismatch;
  for (int d = 2; d <= 4; ++d) {
    for (int k = 1; k <= 2; ++k) {
      const CodeParams p(d, k);
      SearchOptions o;
      o.collect_all_lengths = true;
      o.length_cap = 12;
      const auto rec = max_length(p, o);
      std::set<TransitionSequence> searched;
      for (const auto& [code, count] : rec.all_codes) searched.insert(code);
      const auto brute = oracle::unpruned_code_classes(p, 12);
      classes += brute.size();
      if (searched != brute)
        mismatch += cat(" (d=", d, ",k=", k, "): search ", searched.size(), " vs brute ", brute.size());
    }
  }
  return {mismatch.empty(), cat(classes, " classes compared", mismatch)};
}

// 10. Out-of-reach instance reports truncation, never an optimum.
Outcome honest_truncation() {
  const auto table = load_known_values(CCODE_KNOWN_VALUES);
  const auto entry = lookup_known(table, {16, 9}, SearchMode::general);
  SearchOptions o;
  o.time_limit = 2.0;
  const auto rec = max_length({16, 9}, o);
  const bool ok = entry && !entry->entry->reproducible && entry->expected_n == 44 && !rec.exhaustive;
  return {ok, cat("K(16,9): table says ", entry ? entry->expected_n : 0, " (not reproducible), search stopped after ",
                  rec.nodes, " nodes, exhaustive=", rec.exhaustive, ", best so far ", rec.max_length)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    bool blocking = true;
  };
  const std::vector<Criterion> criteria{
      {"C1 spread check equals pairwise oracle (N<=10, d<=4, k<=4)", oracle_equivalence},
      {"C2 K(3,1)=8 in under 1s", [] { return exhaustive_max({3, 1}, 8, 1.0); }},
      {"C3 K(5,2)=14=4k+6", [] { return exhaustive_max({5, 2}, 14, 60.0); }},
      {"C4 K(6,3)=16=4k+4, one class", [] { return exhaustive_max({6, 3}, 16, 600.0, 1); }},
      {"C5 symmetric (8,4) maximum 22, one class, run >= 7, beta audit", symmetric_eight_four},
      {"C6 family (8,4,l=3) maximum 22=4k+2l, one class", family_eight_four_three},
      {"C7 delta inequalities and k+2 run property on all maxima", audit_suite},
      {"C8 canonical form properties", canon_properties},
      {"C9 pruned search complete against unpruned enumeration", completeness},
      {"C10 K(16,9) out of reach: truncation reported", honest_truncation},
      {"C10-stretch symmetric (9,5) maximum 24",
       [] {
         const auto rec = symmetric_max({9, 5}, {});
         return Outcome{rec.exhaustive && rec.max_length == 24,
                        cat("S(9,5)=", rec.max_length, " classes=", rec.witnesses.size())};
       },
       false},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, cat("exception: ", e.what())};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : (c.blocking ? "FAIL" : "WARN"), c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && c.blocking) ++failed;
  }
  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}

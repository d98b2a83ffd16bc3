// ccode: verify, canonicalize, search and audit hypercube circuit codes.
//
// Exit status: 0 ok, 1 input error, 2 spread violation, 3 truncated search,
// 4 internal-consistency failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ccode/canon.hpp"
#include "ccode/core.hpp"
#include "ccode/records.hpp"
#include "ccode/search.hpp"
#include "ccode/verifier.hpp"

#ifndef CCODE_KNOWN_VALUES
#define CCODE_KNOWN_VALUES "data/known_values.json"
#endif

namespace {

enum Exit : int { kOk = 0, kInput = 1, kViolation = 2, kTruncated = 3, kConsistency = 4 };

std::string read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ccode::InputError("cannot open " + path);
  std::string line;
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  return {};
}

struct SearchArgs {
  int d = 0;
  int k = 0;
  bool symmetric = false;
  int family_l = 0;
  std::size_t target = 0;
  unsigned threads = 1;
  double time_limit = 0;
  std::uint64_t node_budget = 0;
  std::string out;
  std::string table = CCODE_KNOWN_VALUES;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--d", d, "cube dimension")->required();
    cmd->add_option("--k", k, "spread")->required();
    cmd->add_flag("--symmetric", symmetric, "only symmetric codes (second half repeats the first)");
    cmd->add_option("--family-l", family_l, "symmetric codes with a bit run of length >= k+l");
    cmd->add_option("--target", target, "stop at the first code of at least this length");
    cmd->add_option("--threads", threads, "worker threads");
    cmd->add_option("--time-limit", time_limit, "wall-clock limit in seconds");
    cmd->add_option("--node-budget", node_budget, "maximum search nodes");
    cmd->add_option("--out", out, "append the search record (JSONL) to this file");
    cmd->add_option("--table", table, "known-values table");
  }

  ccode::SearchOptions options() const {
    ccode::SearchOptions o;
    if (family_l != 0) {
      o.mode = ccode::SearchMode::family;
      o.family_l = family_l;
    } else if (symmetric) {
      o.mode = ccode::SearchMode::symmetric;
    }
    if (target) o.target = target;
    if (node_budget) o.node_budget = node_budget;
    if (time_limit > 0) o.time_limit = time_limit;
    o.workers = threads;
    o.validate();
    return o;
  }
};

void print_comparison(const SearchArgs& a, const ccode::SearchRecord& rec) {
  std::vector<ccode::KnownValue> table;
  try {
    table = ccode::load_known_values(a.table);
  } catch (const ccode::InputError& e) {
    std::cerr << "warning: " << e.what() << "\n";
    return;
  }
  const auto m = ccode::lookup_known(table, rec.params, rec.options.mode, rec.options.family_l);
  if (!m) return;
  if (!rec.exhaustive) {
    std::cout << "UNVERIFIED " << m->entry->id << " expected=" << m->expected_n
              << " found=" << rec.max_length << " (search not exhaustive)\n";
    return;
  }
  const bool ok = rec.max_length == m->expected_n;
  std::cout << (ok ? "MATCH " : "MISMATCH ") << m->entry->id << " expected=" << m->expected_n
            << " found=" << rec.max_length << "\n";
}

int cmd_verify(int d, int k, const std::string& seq, const std::string& file) {
  const ccode::CodeParams p(d, k);
  if (seq.empty() == file.empty()) throw ccode::InputError("give exactly one of --seq or --file");
  const auto t = ccode::parse_sequence(file.empty() ? seq : read_sequence_file(file), p.d);
  if (auto v = ccode::check_spread(t, p)) {
    std::cout << ccode::to_string(*v) << "\n";
    return kViolation;
  }
  std::cout << "valid N=" << t.size() << " longest_bit_run=" << ccode::bit_runs(t).longest
            << " symmetric=" << (ccode::is_symmetric(t) ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_search(const SearchArgs& a) {
  const ccode::CodeParams p(a.d, a.k);
  const auto rec = ccode::max_length(p, a.options());
  const std::string line = ccode::to_jsonl(rec);
  std::cout << line << "\n";
  if (!a.out.empty()) ccode::append_line(a.out, line);
  print_comparison(a, rec);
  return rec.exhaustive || rec.target_reached ? kOk : kTruncated;
}

int cmd_enumerate(const SearchArgs& a, bool classes, const std::string& emit) {
  const ccode::CodeParams p(a.d, a.k);
  if (a.target) throw ccode::InputError("--target is not allowed when enumerating");
  const auto rec = ccode::max_length(p, a.options());
  if (!a.out.empty()) ccode::append_line(a.out, ccode::to_jsonl(rec));
  const auto cls = ccode::enumerate_max(rec);
  std::cout << "n=" << rec.max_length << " classes=" << cls.size() << "\n";
  if (classes)
    for (const auto& c : cls)
      std::cout << ccode::format_sequence(c.representative.sequence) << " " << c.count << "\n";
  if (!emit.empty())
    for (const auto& c : cls)
      ccode::append_line(emit, ccode::to_jsonl(ccode::make_code_record(
                                   p, c.representative.sequence, ccode::CodeSource::searched)));
  return kOk;
}

int cmd_canon(const std::string& seq, bool with_reversal) {
  const auto t = ccode::parse_sequence(seq);
  const auto cf = ccode::canonical_form(t, with_reversal);
  std::cout << ccode::format_sequence(cf.sequence) << "\n";
  std::cout << "shift=" << cf.shift << " reversed=" << (cf.reversed ? "yes" : "no") << " permutation=";
  for (std::size_t l = 1; l < cf.permutation.size(); ++l)
    std::cout << (l > 1 ? "," : "") << l << "->" << int(cf.permutation[l]);
  std::cout << "\n";
  return kOk;
}

// Returns the exit category for one record and prints its report.
int audit_record(std::size_t index, const ccode::CodeRecord& r) {
  const ccode::CodeParams p(r.d, r.k);
  const auto& t = r.transitions;
  const std::size_t n = t.size();
  int status = kOk;
  auto fail = [&](int s) { status = std::max(status, s); };
  std::cout << "record " << index << ": d=" << p.d << " k=" << p.k << " N=" << n << "\n";

  try {
    if (auto v = ccode::check_spread(t, p)) {
      std::cout << "  spread: " << ccode::to_string(*v) << "\n";
      fail(kViolation);
    } else {
      std::cout << "  spread: valid\n";
    }

    if (n > 2 * static_cast<std::size_t>(p.k)) {
      const auto offences = ccode::audit_delta_inequalities(t, p);
      if (offences.empty()) {
        std::cout << "  delta inequalities: pass\n";
      } else {
        std::cout << "  delta inequalities: FAIL " << offences.size() << " segment(s); first "
                  << ccode::to_string(t, offences.front()) << "\n";
        fail(kConsistency);
      }
    } else {
      std::cout << "  delta inequalities: not applicable (N <= 2k)\n";
    }

    if (n > 2 * static_cast<std::size_t>(p.k + 1)) {
      if (auto seg = ccode::check_singleton_property(t, p)) {
        std::cout << "  k+2 run property: FAIL segment start=" << seg->start << " len=" << seg->len
                  << " (" << ccode::format_labels(ccode::segment_labels(t, *seg)) << ")\n";
        fail(kConsistency);
      } else {
        std::cout << "  k+2 run property: pass\n";
      }
    } else {
      std::cout << "  k+2 run property: not applicable (N <= 2(k+1))\n";
    }

    const bool sym = ccode::is_symmetric(t);
    const auto runs = ccode::bit_runs(t);
    std::cout << "  symmetric: " << (sym ? "yes" : "no") << "\n";
    std::cout << "  longest_bit_run=" << runs.longest << "\n";

    if (ccode::lemma_shape_applies(p, n) && sym && status == kOk) {
      const auto nf = ccode::normalize_to_bitrun_form(t, p);
      std::cout << "  normal form: " << ccode::format_sequence(nf.sequence) << " x=" << int(nf.x)
                << " beta=" << ccode::format_labels(nf.beta) << "\n";
      if (nf.breaches.empty()) {
        std::cout << "  beta constraints: pass\n";
      } else {
        for (const auto& b : nf.breaches)
          std::cout << "  beta constraints: FAIL beta_" << b.index << "=" << int(b.value) << " breaks "
                    << b.rule << "\n";
        fail(kConsistency);
      }
      if (runs.longest >= static_cast<std::size_t>(p.k + 3)) {
        std::cout << "  k+3 bit run: pass\n";
      } else {
        std::cout << "  k+3 bit run: FAIL longest " << runs.longest << "\n";
        fail(kConsistency);
      }
    }
  } catch (const ccode::StructuralError& e) {
    std::cout << "  structure: " << e.what() << "\n";
    fail(kInput);
  }
  return status;
}

int cmd_audit(const std::string& file, int d, int k) {
  auto records = ccode::read_code_records(file);
  int status = kOk;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (d) records[i].d = d;
    if (k) records[i].k = k;
    status = std::max(status, audit_record(i + 1, records[i]));
  }
  std::cout << "audited " << records.size() << " record(s)\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercube circuit codes: verify, canonicalize, search, audit"};
  app.require_subcommand(1);

  int vd = 0, vk = 0;
  std::string vseq, vfile;
  auto* verify = app.add_subcommand("verify", "check the spread-k distance requirement");
  verify->add_option("--d", vd, "cube dimension")->required();
  verify->add_option("--k", vk, "spread")->required();
  verify->add_option("--seq", vseq, "transition sequence, e.g. 1,2,1,2");
  verify->add_option("--file", vfile, "file whose first line is a transition sequence");

  SearchArgs sargs;
  auto* search = app.add_subcommand("search", "exhaustive maximum-length search");
  sargs.add_to(search);

  SearchArgs eargs;
  bool classes = false;
  std::string emit;
  auto* enumerate = app.add_subcommand("enumerate", "isomorphism classes of maximum codes");
  eargs.add_to(enumerate);
  enumerate->add_flag("--classes", classes, "print one line per class: representative count");
  enumerate->add_option("--emit", emit, "append class representatives as code records (JSONL)");

  std::string cseq;
  bool with_reversal = false;
  auto* canon = app.add_subcommand("canon", "canonical form under rotation and relabeling");
  canon->add_option("--seq", cseq, "transition sequence")->required();
  canon->add_flag("--with-reversal", with_reversal, "also allow reversing the traversal");

  std::string afile;
  int ad = 0, ak = 0;
  auto* audit = app.add_subcommand("audit", "structural audits over a file of code records");
  audit->add_option("--file", afile, "JSONL code records")->required();
  audit->add_option("--d", ad, "override d for every record");
  audit->add_option("--k", ak, "override k for every record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*verify) return cmd_verify(vd, vk, vseq, vfile);
    if (*search) return cmd_search(sargs);
    if (*enumerate) return cmd_enumerate(eargs, classes, emit);
    if (*canon) return cmd_canon(cseq, with_reversal);
    if (*audit) return cmd_audit(afile, ad, ak);
  } catch (const ccode::IncompleteEnumeration& e) {
    std::cerr << "truncated: " << e.what() << "\n";
    return kTruncated;
  } catch (const ccode::ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const ccode::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}

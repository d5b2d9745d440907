// Command-line front end: single-group checks, proof traces, corpus scans.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fusionkit/fusionkit.hpp"

namespace fs = std::filesystem;
using namespace fusionkit;

namespace {

uint64_t cap_from_env() {
  const char* raw = std::getenv("FUSIONKIT_ELEMENT_CAP");
  if (!raw) return kDefaultElementCap;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0)
    throw ParseError("FUSIONKIT_ELEMENT_CAP must be a positive integer, got \"" +
                     std::string(raw) + "\"");
  return static_cast<uint64_t>(v);
}

Backend backend_from_string(const std::string& s) {
  if (s == "chain" || s == "stabilizer-chain") return Backend::stabilizer_chain;
  if (s == "exhaustive" || s == "oracle") return Backend::exhaustive;
  throw ParseError("unknown backend \"" + s + "\" (use chain or exhaustive)");
}

// "builtin:NAME" resolves against the shipped corpus; anything else is a
// corpus file that must contain exactly one record.
GroupSpec resolve_group(const std::string& arg) {
  if (arg.rfind("builtin:", 0) == 0) {
    std::string name = arg.substr(8);
    for (const GroupSpec& s : shipped_corpus())
      if (s.name == name) return s;
    throw CorpusError("no builtin group named \"" + name + "\"", 0);
  }
  auto specs = parse_corpus_file(arg);
  if (specs.size() != 1)
    throw CorpusError("expected exactly one record in " + arg + ", found " +
                          std::to_string(specs.size()),
                      0);
  return specs.front();
}

std::vector<unsigned> parse_primes(const std::string& list) {
  std::vector<unsigned> primes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = fusionkit::detail::trim(item);
    if (item.empty()) continue;
    char* end = nullptr;
    unsigned long v = std::strtoul(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0' || !is_prime(v))
      throw ParseError("\"" + item + "\" is not a prime");
    primes.push_back(static_cast<unsigned>(v));
  }
  if (primes.empty()) throw ParseError("--primes list is empty");
  return primes;
}

void atomic_write(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

void render_steps_text(std::ostream& os, const std::vector<ProofStep>& steps) {
  for (const ProofStep& s : steps) {
    os << "  [" << to_string(s.status) << "] " << s.name;
    if (!s.detail.empty()) os << "  --  " << s.detail;
    os << "\n";
  }
}

void render_check_text(std::ostream& os, const CheckReport& r) {
  os << "group                   " << r.group_name << "  (degree " << r.degree
     << ", order " << r.group_order << ")\n";
  os << "prime                   " << r.prime << "  ["
     << (r.prime == 2 ? "theorem" : "exploratory") << " mode]\n";
  if (r.skipped) {
    os << "skipped                 " << r.skip_reason << "\n";
    return;
  }
  os << "sylow                   order " << r.sylow_order << ", "
     << to_string(r.sylow_class) << "\n";
  os << "central hypothesis      " << (r.central_hypothesis ? "holds" : "fails");
  if (!r.hypothesis_failures.empty())
    os << "  (first failing element " << r.hypothesis_failures.front() << ")";
  os << "\n";
  os << "camina-herzog           " << (r.camina_herzog_holds ? "holds" : "fails");
  if (!r.camina_failures.empty())
    os << "  (element " << r.camina_failures.front().element << " has index "
       << r.camina_failures.front().index << ")";
  os << "\n";
  os << "criteria agree          " << (r.equivalence_agree ? "yes" : "NO (bug)") << "\n";
  os << "proof steps\n";
  render_steps_text(os, r.steps);
  os << "consistent with theorem " << (r.consistent_with_theorem ? "yes" : "NO") << "\n";
  os << "elapsed                 " << static_cast<long long>(r.elapsed_ms + 0.5) << " ms\n";
}

void render_summary_text(std::ostream& os, const ScanSummary& s) {
  os << "corpus size " << s.corpus_size << "\n";
  for (const PrimeTally& t : s.tallies) {
    os << "p=" << t.prime << ": " << t.reports << " reports, " << t.hypothesis_true
       << " hypothesis-true, " << t.abelian_sylow << " abelian-sylow, "
       << t.counterexamples << " counterexamples, " << t.skips << " skips\n";
  }
  for (const std::string& c : s.counterexamples) os << "COUNTEREXAMPLE: " << c << "\n";
  for (const std::string& k : s.skips) os << "skip: " << k << "\n";
}

int run_check(const std::string& group_arg, unsigned prime, const std::string& format,
              Backend backend, bool strict) {
  GroupSpec spec = resolve_group(group_arg);
  CheckOptions opt;
  opt.backend = backend;
  opt.element_cap = cap_from_env();
  CheckReport report = theorem_verdict(spec, prime, opt);
  if (format == "json")
    std::cout << to_json(report).dump(2) << "\n";
  else
    render_check_text(std::cout, report);
  return exit_status({report}, strict);
}

int run_trace(const std::string& group_arg, const std::string& format, Backend backend,
              bool strict) {
  GroupSpec spec = resolve_group(group_arg);
  CheckOptions opt;
  opt.backend = backend;
  opt.element_cap = cap_from_env();
  try {
    PermGroup g = build_group(spec, backend, opt.element_cap);
    auto steps = proof_trace(g, opt);
    if (format == "json") {
      json rows = json::array();
      for (const auto& s : steps) rows.push_back(to_json(s));
      json j{{"schema_version", 1},
             {"kind", "trace"},
             {"group", json{{"name", spec.name}, {"degree", g.degree()}, {"order", g.order()}}},
             {"prime", 2},
             {"proof_steps", std::move(rows)}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "proof trace for " << spec.name << " at p=2\n";
      render_steps_text(std::cout, steps);
    }
    return 0;
  } catch (const CapExceeded& e) {
    std::cerr << "skipped: " << e.what() << "\n";
    return strict ? 3 : 0;
  }
}

int run_scan(const std::string& corpus_arg, const std::string& primes_arg, unsigned jobs,
             const std::string& out_path, const std::string& format, Backend backend,
             bool strict) {
  std::vector<GroupSpec> corpus;
  if (corpus_arg == "builtin")
    corpus = shipped_corpus();
  else
    corpus = parse_corpus_file(corpus_arg);

  ScanOptions opt;
  opt.primes = parse_primes(primes_arg);
  opt.jobs = jobs;
  opt.backend = backend;
  opt.element_cap = cap_from_env();
  ScanResult result = scan_corpus(corpus, opt);

  if (!out_path.empty()) atomic_write(out_path, to_json(result, backend).dump(2) + "\n");
  if (format == "json")
    std::cout << to_json(result.summary).dump(2) << "\n";
  else
    render_summary_text(std::cout, result.summary);
  return exit_status(result.reports, strict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fusion and Sylow structure checks for finite permutation groups"};
  app.require_subcommand(1);

  std::string group_arg, corpus_arg = "builtin", primes_arg = "2";
  std::string format = "text", backend_arg = "chain", out_path;
  unsigned prime = 2, jobs = 1;
  bool strict = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--backend", backend_arg, "Group engine: chain or exhaustive")
        ->check(CLI::IsMember({"chain", "exhaustive", "oracle", "stabilizer-chain"}));
    cmd->add_flag("--strict", strict, "Exit 3 when any check is skipped on a cap");
  };

  CLI::App* check = app.add_subcommand("check", "Theorem verdict for one group");
  check->add_option("--group", group_arg, "builtin:NAME or a one-record corpus file")
      ->required();
  check->add_option("--prime", prime, "Prime p (2 = theorem mode)");
  add_common(check);

  CLI::App* trace = app.add_subcommand("trace", "Proof-chain table at p=2 for one group");
  trace->add_option("--group", group_arg, "builtin:NAME or a one-record corpus file")
      ->required();
  add_common(trace);

  CLI::App* scan = app.add_subcommand("scan", "Scan a corpus of groups");
  scan->add_option("--corpus", corpus_arg, "\"builtin\" or a corpus file path");
  scan->add_option("--primes", primes_arg, "Comma-separated primes, e.g. 2,3");
  scan->add_option("--jobs", jobs, "Worker threads (does not change output bytes)");
  scan->add_option("--out", out_path, "Write the full JSON report here (atomic)");
  add_common(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(check))
      return run_check(group_arg, prime, format, backend_from_string(backend_arg), strict);
    if (app.got_subcommand(trace))
      return run_trace(group_arg, format, backend_from_string(backend_arg), strict);
    return run_scan(corpus_arg, primes_arg, jobs, out_path, format,
                    backend_from_string(backend_arg), strict);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

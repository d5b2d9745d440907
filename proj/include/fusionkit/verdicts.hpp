#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fusionkit/corpus.hpp"
#include "fusionkit/fusion.hpp"

namespace fusionkit {

enum class StepStatus { holds, fails, skipped };

inline const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::holds: return "holds";
    case StepStatus::fails: return "fails";
    case StepStatus::skipped: return "skipped";
  }
  return "?";
}

/// One proof-chain invariant. `required` marks rows the main theorem forces
/// (p = 2 and the central hypothesis holds); rows on hypothesis-false groups
/// are informational.
struct ProofStep {
  std::string name;
  StepStatus status = StepStatus::skipped;
  bool required = false;
  std::string detail;
  std::optional<std::string> element;  // representative failing element
  std::optional<FusionWitness> witness;
};

struct CaminaFailureRecord {
  std::string element;
  uint64_t index = 0;
};

/// Structured per-(group, prime) verdict.
struct CheckReport {
  std::string group_name;
  unsigned degree = 0;
  uint64_t group_order = 0;
  unsigned prime = 0;
  bool skipped = false;
  std::string skip_reason;
  uint64_t sylow_order = 0;
  Commutativity sylow_class = Commutativity::elementary_abelian;
  bool central_hypothesis = false;
  bool camina_herzog_holds = false;
  bool equivalence_agree = true;
  std::vector<FusionWitness> hypothesis_witnesses;
  std::vector<std::string> hypothesis_failures;
  std::vector<CaminaFailureRecord> camina_failures;
  std::vector<ProofStep> steps;
  bool consistent_with_theorem = true;
  double elapsed_ms = 0.0;  // never serialized into canonical JSON
};

struct CheckOptions {
  Backend backend = Backend::stabilizer_chain;
  uint64_t element_cap = kDefaultElementCap;
  uint64_t control_cap = 16;  // subgroup-order cap for fusion control
};

namespace detail {

inline std::string first_str(const std::vector<Perm>& v) {
  return v.empty() ? std::string() : v.front().str();
}

}  // namespace detail

/// The eight proof-chain rows, in fixed order, evaluated at fs.prime().
inline std::vector<ProofStep> proof_steps(const GroupFusionSystem& fs,
                                          bool hypothesis_holds,
                                          uint64_t control_cap = 16) {
  const bool required = (fs.prime() == 2) && hypothesis_holds;
  std::vector<ProofStep> steps;
  auto push = [&](std::string name, StepStatus status, std::string detail) -> ProofStep& {
    steps.push_back({std::move(name), status, required, std::move(detail), {}, {}});
    return steps.back();
  };

  {
    auto v = cyclic_normalizer_equals_centralizer(fs);
    auto& row = push("normalizer_equals_centralizer",
                     v.holds ? StepStatus::holds : StepStatus::fails,
                     v.holds ? "N_S(<x>) = C_S(x) for all x in S"
                             : std::to_string(v.failures.size()) +
                                   " element(s) with N_S(<x>) != C_S(x)");
    if (!v.holds) row.element = detail::first_str(v.failures);
  }

  auto omega = omega1(fs.sylow().group(), fs.prime());
  {
    auto v = omega1_elementary_abelian(fs);
    push("omega1_elementary_abelian", v.holds ? StepStatus::holds : StepStatus::fails,
         "omega1 has order " + std::to_string(v.omega_order) + ", " +
             to_string(v.classification));
  }

  bool closed_ok = false;
  {
    auto v = strongly_closed(fs, omega);
    closed_ok = v.holds;
    auto& row = push("omega1_strongly_closed",
                     v.holds ? StepStatus::holds : StepStatus::fails,
                     v.holds ? "no conjugate of omega1 escapes into S"
                             : "escape " + v.escape->source.str() + " ^ " +
                                   v.escape->conjugator.str() + " = " +
                                   v.escape->image.str());
    if (!v.holds) row.witness = v.escape;
  }

  if (!closed_ok) {
    push("central_product_fusion", StepStatus::skipped,
         "omega1 is not strongly closed");
  } else {
    auto v = central_product_fusion(fs, omega);
    auto& row = push("central_product_fusion",
                     v.holds ? StepStatus::holds : StepStatus::fails,
                     v.holds ? "every x in S fuses into Z(S)*omega1"
                             : std::to_string(v.failures.size()) +
                                   " element(s) never fuse into Z(S)*omega1");
    if (!v.holds) row.element = detail::first_str(v.failures);
    else if (!v.witnesses.empty()) row.witness = v.witnesses.front();
  }

  {
    auto v = center_omega_covers_sylow(fs);
    push("center_omega1_covers_sylow", v.holds ? StepStatus::holds : StepStatus::fails,
         "|Z(S)*omega1| = " + std::to_string(v.product_size) + ", |S| = " +
             std::to_string(v.sylow_order));
  }

  {
    auto v = extension_witnesses_total(fs);
    auto& row = push("extension_witness_total",
                     v.holds ? StepStatus::holds : StepStatus::fails,
                     v.holds ? "every x in S has a center-reaching conjugator carrying N_S(<x>) into S"
                             : std::to_string(v.failures.size()) +
                                   " element(s) without an extension witness");
    if (!v.holds) row.element = detail::first_str(v.failures);
    else if (!v.witnesses.empty()) row.witness = v.witnesses.front();
  }

  {
    auto v = omega1_central(fs);
    auto& row = push("omega1_central", v.holds ? StepStatus::holds : StepStatus::fails,
                     v.holds ? "omega1 lies in Z(S)"
                             : std::to_string(v.noncentral.size()) +
                                   " noncentral element(s) in omega1");
    if (!v.holds) row.element = detail::first_str(v.noncentral);
  }

  {
    Subgroup n = normalizer(fs.ambient(), omega.group());
    auto v = controls_fusion(fs, n, control_cap);
    std::string detail_text;
    std::optional<std::string> element;
    if (v.holds) {
      detail_text = "N_G(omega1) of order " + std::to_string(n.order()) +
                    " realizes all fusion in S";
    } else if (v.element_failure) {
      detail_text = "pair " + v.element_failure->first.str() + " ~ " +
                    v.element_failure->second.str() + " fused in G but not in N_G(omega1)";
      element = v.element_failure->first.str();
    } else {
      detail_text = "subgroup map by " + v.subgroup_failure->conjugator.str() +
                    " not realized in N_G(omega1)";
      element = detail::first_str(v.subgroup_failure->subgroup);
    }
    auto& row = push("fusion_controlled_by_omega1_normalizer",
                     v.holds ? StepStatus::holds : StepStatus::fails, detail_text);
    row.element = element;
  }

  return steps;
}

/// Full verdict for one (group, prime). Cap overruns surface as a skipped
/// report, never as pass or fail.
inline CheckReport theorem_verdict(const std::string& name, const PermGroup& g,
                                   unsigned p, const CheckOptions& opt = {}) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport r;
  r.group_name = name;
  r.degree = g.degree();
  r.group_order = g.order();
  r.prime = p;
  try {
    auto fs = GroupFusionSystem::on(g, p);
    auto hyp = central_fusion_hypothesis(fs);
    auto ch = camina_herzog(g, p);
    r.sylow_order = fs.sylow().order();
    r.sylow_class = classify_commutativity(fs.sylow().group(), p);
    r.central_hypothesis = hyp.holds;
    r.camina_herzog_holds = ch.holds;
    r.equivalence_agree = (hyp.holds == ch.holds);
    r.hypothesis_witnesses = std::move(hyp.witnesses);
    for (const Perm& x : hyp.failures) r.hypothesis_failures.push_back(x.str());
    for (const auto& f : ch.failures) r.camina_failures.push_back({f.element.str(), f.index});
    r.steps = proof_steps(fs, r.central_hypothesis, opt.control_cap);
    r.consistent_with_theorem =
        !(p == 2 && r.central_hypothesis && r.sylow_class == Commutativity::nonabelian);
  } catch (const CapExceeded& e) {
    r.skipped = true;
    r.skip_reason = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return r;
}

inline CheckReport theorem_verdict(const GroupSpec& spec, unsigned p,
                                   const CheckOptions& opt = {}) {
  return theorem_verdict(spec.name, build_group(spec, opt.backend, opt.element_cap), p, opt);
}

/// Proof-chain table at p = 2.
inline std::vector<ProofStep> proof_trace(const PermGroup& g, const CheckOptions& opt = {}) {
  auto fs = GroupFusionSystem::on(g, 2);
  auto hyp = central_fusion_hypothesis(fs);
  return proof_steps(fs, hyp.holds, opt.control_cap);
}

// -- corpus scans ------------------------------------------------------------

struct PrimeTally {
  unsigned prime = 0;
  uint64_t reports = 0;
  uint64_t hypothesis_true = 0;
  uint64_t abelian_sylow = 0;
  uint64_t counterexamples = 0;
  uint64_t skips = 0;
};

struct ScanSummary {
  uint64_t corpus_size = 0;
  std::vector<unsigned> primes;
  std::vector<PrimeTally> tallies;
  std::vector<std::string> counterexamples;
  std::vector<std::string> skips;
};

struct ScanOptions {
  std::vector<unsigned> primes{2};
  unsigned jobs = 1;
  Backend backend = Backend::stabilizer_chain;
  uint64_t element_cap = kDefaultElementCap;
  uint64_t control_cap = 16;
};

struct ScanResult {
  ScanSummary summary;
  std::vector<CheckReport> reports;
};

/// One report per (group, prime dividing the group order), computed with
/// `jobs` workers and merged into (order, name, prime) order, so the result
/// is byte-identical no matter the parallelism. Parse and cap failures are
/// recorded as skips and the scan continues.
inline ScanResult scan_corpus(const std::vector<GroupSpec>& corpus, const ScanOptions& opt) {
  for (unsigned p : opt.primes)
    if (!is_prime(p)) throw DomainError("scan prime " + std::to_string(p) + " is not prime");

  CheckOptions check_opt{opt.backend, opt.element_cap, opt.control_cap};
  std::vector<std::vector<CheckReport>> slots(corpus.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (size_t i; (i = cursor.fetch_add(1)) < corpus.size();) {
      const GroupSpec& spec = corpus[i];
      try {
        PermGroup g = build_group(spec, opt.backend, opt.element_cap);
        for (unsigned p : opt.primes) {
          if (g.order() % p != 0) continue;
          slots[i].push_back(theorem_verdict(spec.name, g, p, check_opt));
        }
      } catch (const Error& e) {
        for (unsigned p : opt.primes) {
          CheckReport r;
          r.group_name = spec.name;
          r.degree = spec.degree;
          r.prime = p;
          r.skipped = true;
          r.skip_reason = e.what();
          slots[i].push_back(std::move(r));
        }
      }
    }
  };

  unsigned jobs = std::max(1u, std::min(opt.jobs, 64u));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ScanResult result;
  for (auto& s : slots)
    for (auto& r : s) result.reports.push_back(std::move(r));
  std::sort(result.reports.begin(), result.reports.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return std::tie(a.group_order, a.group_name, a.prime) <
                     std::tie(b.group_order, b.group_name, b.prime);
            });

  ScanSummary& sum = result.summary;
  sum.corpus_size = corpus.size();
  sum.primes = opt.primes;
  std::sort(sum.primes.begin(), sum.primes.end());
  sum.primes.erase(std::unique(sum.primes.begin(), sum.primes.end()), sum.primes.end());
  for (unsigned p : sum.primes) sum.tallies.push_back({p});
  for (const CheckReport& r : result.reports) {
    auto tally = std::find_if(sum.tallies.begin(), sum.tallies.end(),
                              [&](const PrimeTally& t) { return t.prime == r.prime; });
    if (tally == sum.tallies.end()) continue;
    ++tally->reports;
    if (r.skipped) {
      ++tally->skips;
      sum.skips.push_back(r.group_name + " (p=" + std::to_string(r.prime) + "): " +
                          r.skip_reason);
      continue;
    }
    if (r.central_hypothesis) ++tally->hypothesis_true;
    if (r.sylow_class != Commutativity::nonabelian) ++tally->abelian_sylow;
    if (!r.consistent_with_theorem) {
      ++tally->counterexamples;
      sum.counterexamples.push_back(r.group_name + " (p=" + std::to_string(r.prime) + ")");
    }
  }
  return result;
}

// -- exit codes --------------------------------------------------------------

// 0 all consistent; 1 theorem counterexample at p = 2 (implementation-bug
// signal); 2 input or parse error; 3 cap skip under --strict.
inline int exit_status(const std::vector<CheckReport>& reports, bool strict) {
  bool counterexample = false, skipped = false;
  for (const CheckReport& r : reports) {
    if (!r.skipped && !r.consistent_with_theorem && r.prime == 2) counterexample = true;
    if (r.skipped) skipped = true;
  }
  if (counterexample) return 1;
  if (strict && skipped) return 3;
  return 0;
}

// -- JSON --------------------------------------------------------------------

using json = nlohmann::ordered_json;

inline json to_json(const FusionWitness& w) {
  return json{{"x", w.source.str()}, {"g", w.conjugator.str()}, {"image", w.image.str()}};
}

inline json to_json(const ProofStep& s) {
  json j;
  j["name"] = s.name;
  j["status"] = to_string(s.status);
  j["required"] = s.required;
  j["detail"] = s.detail;
  if (s.element) j["element"] = *s.element;
  if (s.witness) j["witness"] = to_json(*s.witness);
  return j;
}

// Canonical machine form; excludes wall-clock timing so identical inputs
// always serialize to identical bytes.
inline json to_json(const CheckReport& r) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "check";
  j["group"] = json{{"name", r.group_name}, {"degree", r.degree}, {"order", r.group_order}};
  j["prime"] = r.prime;
  j["mode"] = r.prime == 2 ? "theorem" : "exploratory";
  j["skipped"] = r.skipped;
  if (r.skipped) {
    j["skip_reason"] = r.skip_reason;
    return j;
  }
  j["sylow"] = json{{"order", r.sylow_order}, {"classification", to_string(r.sylow_class)}};
  json witnesses = json::array();
  for (const auto& w : r.hypothesis_witnesses) witnesses.push_back(to_json(w));
  j["central_hypothesis"] =
      json{{"holds", r.central_hypothesis}, {"witnesses", std::move(witnesses)},
           {"failures", r.hypothesis_failures}};
  json camina_failures = json::array();
  for (const auto& f : r.camina_failures)
    camina_failures.push_back(json{{"element", f.element}, {"index", f.index}});
  j["camina_herzog"] =
      json{{"holds", r.camina_herzog_holds}, {"failures", std::move(camina_failures)}};
  j["equivalence_agree"] = r.equivalence_agree;
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  j["proof_steps"] = std::move(steps);
  j["consistent_with_theorem"] = r.consistent_with_theorem;
  return j;
}

inline FusionWitness witness_from_json(const nlohmann::json& j, unsigned degree) {
  return {Perm::parse(j.at("x").get<std::string>(), degree),
          Perm::parse(j.at("g").get<std::string>(), degree),
          Perm::parse(j.at("image").get<std::string>(), degree)};
}

inline StepStatus step_status_from_string(const std::string& s) {
  if (s == "holds") return StepStatus::holds;
  if (s == "fails") return StepStatus::fails;
  if (s == "skipped") return StepStatus::skipped;
  throw ParseError("unknown step status \"" + s + "\"");
}

inline Commutativity commutativity_from_string(const std::string& s) {
  if (s == "nonabelian") return Commutativity::nonabelian;
  if (s == "abelian") return Commutativity::abelian;
  if (s == "elementary-abelian") return Commutativity::elementary_abelian;
  throw ParseError("unknown classification \"" + s + "\"");
}

inline CheckReport check_report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.group_name = j.at("group").at("name").get<std::string>();
  r.degree = j.at("group").at("degree").get<unsigned>();
  r.group_order = j.at("group").at("order").get<uint64_t>();
  r.prime = j.at("prime").get<unsigned>();
  r.skipped = j.at("skipped").get<bool>();
  if (r.skipped) {
    r.skip_reason = j.at("skip_reason").get<std::string>();
    return r;
  }
  r.sylow_order = j.at("sylow").at("order").get<uint64_t>();
  r.sylow_class = commutativity_from_string(j.at("sylow").at("classification").get<std::string>());
  r.central_hypothesis = j.at("central_hypothesis").at("holds").get<bool>();
  for (const auto& w : j.at("central_hypothesis").at("witnesses"))
    r.hypothesis_witnesses.push_back(witness_from_json(w, r.degree));
  for (const auto& f : j.at("central_hypothesis").at("failures"))
    r.hypothesis_failures.push_back(f.get<std::string>());
  r.camina_herzog_holds = j.at("camina_herzog").at("holds").get<bool>();
  for (const auto& f : j.at("camina_herzog").at("failures"))
    r.camina_failures.push_back(
        {f.at("element").get<std::string>(), f.at("index").get<uint64_t>()});
  r.equivalence_agree = j.at("equivalence_agree").get<bool>();
  for (const auto& s : j.at("proof_steps")) {
    ProofStep step;
    step.name = s.at("name").get<std::string>();
    step.status = step_status_from_string(s.at("status").get<std::string>());
    step.required = s.at("required").get<bool>();
    step.detail = s.at("detail").get<std::string>();
    if (s.contains("element")) step.element = s.at("element").get<std::string>();
    if (s.contains("witness")) step.witness = witness_from_json(s.at("witness"), r.degree);
    r.steps.push_back(std::move(step));
  }
  r.consistent_with_theorem = j.at("consistent_with_theorem").get<bool>();
  return r;
}

inline json to_json(const ScanSummary& s) {
  json tallies = json::array();
  for (const auto& t : s.tallies)
    tallies.push_back(json{{"prime", t.prime},
                           {"reports", t.reports},
                           {"hypothesis_true", t.hypothesis_true},
                           {"abelian_sylow", t.abelian_sylow},
                           {"counterexamples", t.counterexamples},
                           {"skips", t.skips}});
  return json{{"corpus_size", s.corpus_size},
              {"primes", s.primes},
              {"tallies", std::move(tallies)},
              {"counterexamples", s.counterexamples},
              {"skips", s.skips}};
}

inline json to_json(const ScanResult& r, Backend backend) {
  json reports = json::array();
  for (const auto& rep : r.reports) reports.push_back(to_json(rep));
  return json{{"schema_version", 1},
              {"kind", "scan"},
              {"backend", to_string(backend)},
              {"summary", to_json(r.summary)},
              {"reports", std::move(reports)}};
}

}  // namespace fusionkit

#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fusionkit/group_ops.hpp"

namespace fusionkit {

/// A conjugation witness: image = source^conjugator, landing in some target.
struct FusionWitness {
  Perm source;
  Perm conjugator;
  Perm image;
};

inline bool validates(const FusionWitness& w) {
  return conjugate(w.source, w.conjugator) == w.image;
}

/// Conjugation fusion on a fixed Sylow p-subgroup S of G. All predicates
/// below compile down to conjugator searches in G, scanned in canonical
/// element order so every witness is reproducible.
class GroupFusionSystem {
 public:
  GroupFusionSystem(PermGroup ambient, Subgroup sylow, unsigned p)
      : g_(std::move(ambient)), s_(std::move(sylow)), p_(p), z_(center(s_.group())) {
    if (!is_prime(p_)) throw DomainError("fusion system requires a prime");
    if (!g_.same_group_as(s_.parent()))
      throw DomainError("Sylow subgroup parent differs from the ambient group");
    if (s_.order() != p_part(g_.order(), p_))
      throw DomainError("subgroup is not a Sylow p-subgroup");
  }

  static GroupFusionSystem on(const PermGroup& g, unsigned p) {
    return GroupFusionSystem(g, sylow_subgroup(g, p), p);
  }

  const PermGroup& ambient() const { return g_; }
  const Subgroup& sylow() const { return s_; }
  const Subgroup& sylow_center() const { return z_; }
  unsigned prime() const { return p_; }

 private:
  PermGroup g_;
  Subgroup s_;
  unsigned p_;
  Subgroup z_;
};

/// Per-element fusion verdict: which x in S land in a target under some
/// G-conjugation, with one canonical witness each.
struct ElementFusionVerdict {
  bool holds = true;
  std::vector<FusionWitness> witnesses;
  std::vector<Perm> failures;
};

/// Every x in S is G-conjugate into Z(S).
inline ElementFusionVerdict central_fusion_hypothesis(const GroupFusionSystem& fs) {
  ElementFusionVerdict v;
  for (const Perm& x : fs.sylow().group().elements()) {
    auto g = conjugating_into(fs.ambient(), x, fs.sylow_center());
    if (g) {
      v.witnesses.push_back({x, *g, conjugate(x, *g)});
    } else {
      v.holds = false;
      v.failures.push_back(x);
    }
  }
  return v;
}

struct OddIndexFailure {
  Perm element;
  uint64_t index = 0;
};

struct CaminaHerzogVerdict {
  bool holds = true;
  std::vector<OddIndexFailure> failures;
};

/// Camina-Herzog criterion: |G : C_G(x)| is prime to p for every p-element x.
inline CaminaHerzogVerdict camina_herzog(const PermGroup& g, unsigned p) {
  if (!is_prime(p)) throw DomainError("camina_herzog requires a prime");
  CaminaHerzogVerdict v;
  for (const Perm& x : g.elements()) {
    if (!is_p_element(x, p)) continue;
    uint64_t idx = subgroup_index(g, centralizer(g, {x}));
    if (idx % p == 0) {
      v.holds = false;
      v.failures.push_back({x, idx});
    }
  }
  return v;
}

struct StrongClosureVerdict {
  bool holds = true;
  std::optional<FusionWitness> escape;  // u^g in S but outside U
};

/// U <= S is strongly closed: no G-conjugate of an element of U lands in
/// S outside of U.
inline StrongClosureVerdict strongly_closed(const GroupFusionSystem& fs, const Subgroup& u) {
  if (!fs.sylow().group().contains_group(u.group()))
    throw DomainError("strong closure argument must lie inside the Sylow subgroup");
  const PermGroup& s = fs.sylow().group();
  for (const Perm& x : u.group().elements()) {
    for (const Perm& c : fs.ambient().elements()) {
      Perm img = conjugate(x, c);
      if (s.contains(img) && !u.group().contains(img))
        return {false, FusionWitness{x, c, img}};
    }
  }
  return {};
}

struct NormalizerCentralizerVerdict {
  bool holds = true;
  std::vector<Perm> failures;  // x with N_S(<x>) != C_S(x)
};

/// N_S(<x>) = C_S(x) for every x in S. The inclusion C_S(x) <= N_S(<x>) is
/// automatic; equality is an order comparison.
inline NormalizerCentralizerVerdict cyclic_normalizer_equals_centralizer(
    const GroupFusionSystem& fs) {
  NormalizerCentralizerVerdict v;
  const PermGroup& s = fs.sylow().group();
  for (const Perm& x : s.elements()) {
    Subgroup cyc = generated_subgroup(s, {x});
    Subgroup n = normalizer(s, cyc);
    Subgroup c = centralizer(s, {x});
    if (!n.group().contains_group(c.group()))
      throw Error("centralizer escaped the cyclic normalizer");
    if (n.order() != c.order()) {
      v.holds = false;
      v.failures.push_back(x);
    }
  }
  return v;
}

/// A single conjugator g realizing both x^g in Z(S) and N_S(<x>)^g <= S,
/// scanned in canonical order.
inline std::optional<Perm> extension_witness(const GroupFusionSystem& fs, const Perm& x) {
  const PermGroup& s = fs.sylow().group();
  if (!s.contains(x)) throw DomainError("extension witness requires an element of S");
  Subgroup cyclic_normalizer = normalizer(s, generated_subgroup(s, {x}));
  const auto& ns = cyclic_normalizer.group().elements();
  const PermGroup& z = fs.sylow_center().group();
  for (const Perm& c : fs.ambient().elements()) {
    if (!z.contains(conjugate(x, c))) continue;
    bool carries = true;
    for (const Perm& h : ns)
      if (!s.contains(conjugate(h, c))) {
        carries = false;
        break;
      }
    if (carries) return c;
  }
  return std::nullopt;
}

/// Extension witnesses for all of S at once.
inline ElementFusionVerdict extension_witnesses_total(const GroupFusionSystem& fs) {
  ElementFusionVerdict v;
  for (const Perm& x : fs.sylow().group().elements()) {
    auto g = extension_witness(fs, x);
    if (g) {
      v.witnesses.push_back({x, *g, conjugate(x, *g)});
    } else {
      v.holds = false;
      v.failures.push_back(x);
    }
  }
  return v;
}

struct OmegaClassVerdict {
  bool holds = true;
  Commutativity classification = Commutativity::elementary_abelian;
  uint64_t omega_order = 1;
};

/// Omega_1(S) is elementary abelian.
inline OmegaClassVerdict omega1_elementary_abelian(const GroupFusionSystem& fs) {
  Subgroup u = omega1(fs.sylow().group(), fs.prime());
  OmegaClassVerdict v;
  v.classification = classify_commutativity(u.group(), fs.prime());
  v.omega_order = u.order();
  v.holds = (v.classification == Commutativity::elementary_abelian);
  return v;
}

/// Every x in S is G-conjugate, staying inside S, into the set Z(S)*U.
/// Refuses to run unless U is strongly closed.
inline ElementFusionVerdict central_product_fusion(const GroupFusionSystem& fs,
                                                   const Subgroup& u) {
  if (!strongly_closed(fs, u).holds)
    throw DomainError("central product fusion requires a strongly closed subgroup");
  auto zu = complex_product(fs.sylow_center(),
                            Subgroup(fs.sylow_center().parent(), u.group()));
  ElementFusionVerdict v;
  for (const Perm& x : fs.sylow().group().elements()) {
    bool found = false;
    for (const Perm& c : fs.ambient().elements()) {
      Perm img = conjugate(x, c);
      if (std::binary_search(zu.begin(), zu.end(), img)) {
        v.witnesses.push_back({x, c, std::move(img)});
        found = true;
        break;
      }
    }
    if (!found) {
      v.holds = false;
      v.failures.push_back(x);
    }
  }
  return v;
}

inline ElementFusionVerdict central_product_fusion(const GroupFusionSystem& fs) {
  return central_product_fusion(fs, omega1(fs.sylow().group(), fs.prime()));
}

struct CoverVerdict {
  bool holds = true;
  uint64_t product_size = 0;
  uint64_t sylow_order = 0;
};

/// S = Z(S) * Omega_1(S) as a complex product.
inline CoverVerdict center_omega_covers_sylow(const GroupFusionSystem& fs) {
  Subgroup u = omega1(fs.sylow().group(), fs.prime());
  auto zu = complex_product(fs.sylow_center(),
                            Subgroup(fs.sylow_center().parent(), u.group()));
  CoverVerdict v;
  v.product_size = zu.size();
  v.sylow_order = fs.sylow().order();
  v.holds = (v.product_size == v.sylow_order);
  return v;
}

struct CentralOmegaVerdict {
  bool holds = true;
  std::vector<Perm> noncentral;
  uint64_t omega_order = 1;
};

/// Omega_1(S) <= Z(S): every element of order dividing p is central in S.
inline CentralOmegaVerdict omega1_central(const GroupFusionSystem& fs) {
  Subgroup u = omega1(fs.sylow().group(), fs.prime());
  const PermGroup& z = fs.sylow_center().group();
  CentralOmegaVerdict v;
  v.omega_order = u.order();
  for (const Perm& x : u.group().elements())
    if (!z.contains(x)) {
      v.holds = false;
      v.noncentral.push_back(x);
    }
  return v;
}

namespace detail {

// All subgroups of s with order <= max_order, as sorted element vectors, in
// deterministic order. BFS over one-element extensions reaches every
// subgroup through its own subgroup chain.
inline std::vector<std::vector<Perm>> subgroups_up_to(const PermGroup& s,
                                                      uint64_t max_order) {
  std::set<std::vector<Perm>> seen;
  std::vector<std::vector<Perm>> queue;
  std::vector<Perm> triv{Perm(s.degree())};
  seen.insert(triv);
  queue.push_back(std::move(triv));
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const std::vector<Perm> cur = queue[qi];
    for (const Perm& x : s.elements()) {
      if (std::binary_search(cur.begin(), cur.end(), x)) continue;
      std::vector<Perm> gens = cur;
      gens.push_back(x);
      auto ext = closure_enumerate(s.degree(), gens, s.element_cap());
      if (static_cast<uint64_t>(ext.size()) > max_order) continue;
      if (seen.insert(ext).second) queue.push_back(std::move(ext));
    }
  }
  return std::vector<std::vector<Perm>>(seen.begin(), seen.end());
}

}  // namespace detail

struct SubgroupControlFailure {
  std::vector<Perm> subgroup;
  Perm conjugator;
};

struct FusionControlVerdict {
  bool holds = true;
  // a, b in S fused in G but not in N
  std::optional<std::pair<Perm, Perm>> element_failure;
  // P <= S and g with P^g <= S whose conjugation map no element of N realizes
  std::optional<SubgroupControlFailure> subgroup_failure;
};

/// N controls fusion in S: every G-conjugation between elements of S, and
/// every G-conjugation map of a subgroup P <= S (order <= cap) into S, is
/// realized pointwise by an element of N.
inline FusionControlVerdict controls_fusion(const GroupFusionSystem& fs, const Subgroup& n,
                                            uint64_t subgroup_order_cap = 16) {
  const PermGroup& g = fs.ambient();
  if (!g.contains_group(n.group()))
    throw DomainError("fusion control candidate is not a subgroup of the ambient group");
  const PermGroup& s = fs.sylow().group();
  const auto& g_elems = g.elements();
  const auto& n_elems = n.group().elements();
  FusionControlVerdict v;

  for (const Perm& a : s.elements()) {
    std::set<Perm> in_g, in_n;
    for (const Perm& c : g_elems) {
      Perm img = conjugate(a, c);
      if (s.contains(img)) in_g.insert(std::move(img));
    }
    for (const Perm& c : n_elems) {
      Perm img = conjugate(a, c);
      if (s.contains(img)) in_n.insert(std::move(img));
    }
    for (const Perm& b : in_g) {
      if (!in_n.count(b)) {
        v.holds = false;
        v.element_failure = {a, b};
        return v;
      }
    }
  }

  for (const auto& p_set : detail::subgroups_up_to(s, subgroup_order_cap)) {
    for (const Perm& c : g_elems) {
      bool lands_in_s = true;
      for (const Perm& a : p_set)
        if (!s.contains(conjugate(a, c))) {
          lands_in_s = false;
          break;
        }
      if (!lands_in_s) continue;
      bool realized = false;
      for (const Perm& m : n_elems) {
        bool same = true;
        for (const Perm& a : p_set)
          if (conjugate(a, m) != conjugate(a, c)) {
            same = false;
            break;
          }
        if (same) {
          realized = true;
          break;
        }
      }
      if (!realized) {
        v.holds = false;
        v.subgroup_failure = SubgroupControlFailure{p_set, c};
        return v;
      }
    }
  }
  return v;
}

struct EquivalenceVerdict {
  bool agree = true;
  bool camina_herzog_holds = false;
  bool central_hypothesis_holds = false;
  std::optional<Perm> distinguishing;
};

/// The index-prime-to-p criterion and the central fusion hypothesis decide
/// the same groups; disagreement indicates an implementation bug.
inline EquivalenceVerdict hypothesis_equivalence(const PermGroup& g, unsigned p) {
  if (!is_prime(p)) throw DomainError("hypothesis equivalence requires a prime");
  if (g.order() % p != 0)
    throw DomainError("hypothesis equivalence requires p to divide the group order");
  EquivalenceVerdict v;
  auto ch = camina_herzog(g, p);
  auto hyp = central_fusion_hypothesis(GroupFusionSystem::on(g, p));
  v.camina_herzog_holds = ch.holds;
  v.central_hypothesis_holds = hyp.holds;
  v.agree = (ch.holds == hyp.holds);
  if (!v.agree)
    v.distinguishing = ch.holds ? hyp.failures.front() : ch.failures.front().element;
  return v;
}

}  // namespace fusionkit

#pragma once

#include <optional>
#include <set>
#include <vector>

#include "fusionkit/group.hpp"

namespace fusionkit {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Largest power of p dividing n.
inline uint64_t p_part(uint64_t n, uint64_t p) {
  uint64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

inline bool is_p_power(uint64_t n, uint64_t p) { return p_part(n, p) == n; }

// Element whose order is a power of p (the identity counts).
inline bool is_p_element(const Perm& x, unsigned p) {
  return is_p_power(x.order(), p);
}

inline std::vector<unsigned> prime_divisors(uint64_t n) {
  std::vector<unsigned> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<unsigned>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

enum class Commutativity { nonabelian, abelian, elementary_abelian };

inline const char* to_string(Commutativity c) {
  switch (c) {
    case Commutativity::nonabelian: return "nonabelian";
    case Commutativity::abelian: return "abelian";
    case Commutativity::elementary_abelian: return "elementary-abelian";
  }
  return "?";
}

namespace detail {

inline Subgroup wrap_elements(const PermGroup& parent, std::vector<Perm> elems) {
  return Subgroup(parent, PermGroup::from_elements(std::move(elems), parent.backend(),
                                                   parent.element_cap()));
}

}  // namespace detail

/// Z(G): everything commuting with all of G (generator test suffices).
inline Subgroup center(const PermGroup& g) {
  std::vector<Perm> zs;
  for (const Perm& e : g.elements()) {
    bool central = true;
    for (const Perm& s : g.generators())
      if (!commute(e, s)) {
        central = false;
        break;
      }
    if (central) zs.push_back(e);
  }
  return detail::wrap_elements(g, std::move(zs));
}

/// C_G(X) for a set X of permutations of the ambient degree.
inline Subgroup centralizer(const PermGroup& g, const std::vector<Perm>& xs) {
  for (const Perm& x : xs)
    if (x.degree() != g.degree())
      throw DegreeMismatch("centralizer argument degree mismatch");
  std::vector<Perm> cs;
  for (const Perm& e : g.elements()) {
    bool ok = true;
    for (const Perm& x : xs)
      if (!commute(e, x)) {
        ok = false;
        break;
      }
    if (ok) cs.push_back(e);
  }
  return detail::wrap_elements(g, std::move(cs));
}

/// N_G(H) = {g : H^g = H}; requires H <= G.
inline Subgroup normalizer(const PermGroup& g, const PermGroup& h) {
  if (!g.contains_group(h))
    throw DomainError("normalizer argument is not a subgroup of the ambient group");
  std::vector<Perm> ns;
  for (const Perm& e : g.elements()) {
    bool normalizes = true;
    for (const Perm& s : h.generators())
      if (!h.contains(conjugate(s, e))) {
        normalizes = false;
        break;
      }
    if (normalizes) ns.push_back(e);
  }
  return detail::wrap_elements(g, std::move(ns));
}

inline Subgroup normalizer(const PermGroup& g, const Subgroup& h) {
  return normalizer(g, h.group());
}

/// Smallest subgroup of G containing elems (trivial for an empty list).
inline Subgroup generated_subgroup(const PermGroup& g, const std::vector<Perm>& elems) {
  for (const Perm& e : elems)
    if (!g.contains(e))
      throw DomainError("generator " + e.str() + " is not a member of the ambient group");
  std::vector<Perm> gens = elems;
  if (gens.empty()) gens.push_back(Perm(g.degree()));
  auto closed = detail::closure_enumerate(g.degree(), gens, g.element_cap());
  return detail::wrap_elements(g, std::move(closed));
}

/// [H,H]: closure of all commutators; trivial exactly when H is abelian.
inline Subgroup derived_subgroup(const PermGroup& h) {
  const auto& elems = h.elements();
  std::set<Perm> comms;
  for (const Perm& x : elems)
    for (const Perm& y : elems) comms.insert(commutator(x, y));
  std::vector<Perm> gens(comms.begin(), comms.end());
  auto closed = detail::closure_enumerate(h.degree(), gens, h.element_cap());
  return detail::wrap_elements(h, std::move(closed));
}

/// Subgroup generated by all elements of order dividing p; P must be a p-group.
inline Subgroup omega1(const PermGroup& p_group, unsigned p) {
  if (!is_prime(p)) throw DomainError("omega1 requires a prime");
  if (!is_p_power(p_group.order(), p))
    throw DomainError("omega1 requires a p-group");
  std::vector<Perm> gens;
  for (const Perm& x : p_group.elements()) {
    uint64_t o = x.order();
    if (o == 1 || o == p) gens.push_back(x);
  }
  auto closed = detail::closure_enumerate(p_group.degree(), gens, p_group.element_cap());
  return detail::wrap_elements(p_group, std::move(closed));
}

// abelian: all generator pairs commute. elementary-abelian: additionally
// every generator order divides p (enough, since the group is abelian).
inline Commutativity classify_commutativity(const PermGroup& h, unsigned p) {
  const auto& gens = h.generators();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!commute(gens[i], gens[j])) return Commutativity::nonabelian;
  for (const Perm& g : gens)
    if (p == 0 || static_cast<uint64_t>(p) % g.order() != 0)
      return Commutativity::abelian;
  return Commutativity::elementary_abelian;
}

/// First g in canonical order with x^g = y, if the two are conjugate in G.
inline std::optional<Perm> conjugating_element(const PermGroup& g, const Perm& x,
                                               const Perm& y) {
  if (!g.contains(x) || !g.contains(y))
    throw DomainError("conjugacy query requires member elements");
  for (const Perm& c : g.elements())
    if (conjugate(x, c) == y) return c;
  return std::nullopt;
}

/// First g in canonical order with x^g in target, if any.
inline std::optional<Perm> conjugating_into(const PermGroup& g, const Perm& x,
                                            const PermGroup& target) {
  if (!g.contains(x)) throw DomainError("conjugacy query requires a member element");
  if (!g.contains_group(target))
    throw DomainError("conjugation target is not a subgroup of the ambient group");
  for (const Perm& c : g.elements())
    if (target.contains(conjugate(x, c))) return c;
  return std::nullopt;
}

inline std::optional<Perm> conjugating_into(const PermGroup& g, const Perm& x,
                                            const Subgroup& target) {
  return conjugating_into(g, x, target.group());
}

/// The set AB = {ab : a in A, b in B}, canonically sorted. Not a subgroup in
/// general; |AB| * |A n B| = |A| * |B|.
inline std::vector<Perm> complex_product(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_group_as(b.parent()))
    throw DomainError("complex product requires a common parent group");
  std::set<Perm> prod;
  for (const Perm& x : a.group().elements())
    for (const Perm& y : b.group().elements()) prod.insert(x * y);
  return std::vector<Perm>(prod.begin(), prod.end());
}

inline uint64_t subgroup_index(const PermGroup& g, const PermGroup& h) {
  if (!g.contains_group(h)) throw DomainError("index requires a subgroup");
  if (g.order() % h.order() != 0)
    throw Error("subgroup order does not divide group order");
  return g.order() / h.order();
}

inline uint64_t subgroup_index(const PermGroup& g, const Subgroup& h) {
  return subgroup_index(g, h.group());
}

/// A Sylow p-subgroup, by deterministic greedy ascent: repeatedly adjoin the
/// first p-element in canonical order that normalizes the current p-subgroup
/// and lies outside it. Always terminates at the full p-part.
inline Subgroup sylow_subgroup(const PermGroup& g, unsigned p) {
  if (!is_prime(p)) throw DomainError("sylow requires a prime");
  const uint64_t target = p_part(g.order(), p);
  std::vector<Perm> picked;
  std::vector<Perm> current{Perm(g.degree())};
  while (static_cast<uint64_t>(current.size()) < target) {
    bool extended = false;
    for (const Perm& x : g.elements()) {
      if (x.is_identity() || !is_p_element(x, p)) continue;
      if (std::binary_search(current.begin(), current.end(), x)) continue;
      bool normalizes = true;
      for (const Perm& s : picked)
        if (!std::binary_search(current.begin(), current.end(), conjugate(s, x))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      picked.push_back(x);
      current = detail::closure_enumerate(g.degree(), picked, g.element_cap());
      extended = true;
      break;
    }
    if (!extended) throw Error("sylow ascent stalled");
  }
  return detail::wrap_elements(g, std::move(current));
}

}  // namespace fusionkit

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fusionkit/perm.hpp"

namespace fusionkit {

/// An enumeration or construction would exceed the configured element cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Violated operation precondition (non-member input, bad prime, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

enum class Backend { exhaustive, stabilizer_chain };

inline const char* to_string(Backend b) {
  return b == Backend::exhaustive ? "exhaustive" : "stabilizer-chain";
}

inline constexpr uint64_t kDefaultElementCap = 1'000'000;

namespace detail {

// BFS closure of <gens> under right multiplication, starting from the
// identity. Returns the full element set in canonical (lexicographic) order.
inline std::vector<Perm> closure_enumerate(unsigned degree,
                                           const std::vector<Perm>& gens,
                                           uint64_t cap) {
  for (const Perm& g : gens)
    if (g.degree() != degree) throw DegreeMismatch("generator degree mismatch");
  std::set<Perm> seen;
  seen.insert(Perm(degree));
  std::vector<Perm> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& e : frontier) {
      for (const Perm& s : gens) {
        Perm prod = e * s;
        if (seen.insert(prod).second) {
          if (seen.size() > cap)
            throw CapExceeded("enumeration exceeds element cap of " + std::to_string(cap));
          next.push_back(std::move(prod));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::vector<Perm>(seen.begin(), seen.end());
}

// Deterministic Schreier-Sims stabilizer chain. Base points are the first
// moved points of the residues that surface during construction, orbits are
// extended in BFS order, and no randomization is used anywhere, so order(),
// contains() and elements() are reproducible across runs.
class StabilizerChain {
 public:
  StabilizerChain(unsigned degree, const std::vector<Perm>& gens) : degree_(degree) {
    for (const Perm& g : gens) {
      if (g.degree() != degree_) throw DegreeMismatch("generator degree mismatch");
      insert(g);
    }
  }

  uint64_t order() const {
    uint64_t n = 1;
    for (const Level& lev : levels_) n *= static_cast<uint64_t>(lev.orbit.size());
    return n;
  }

  bool contains(const Perm& g) const {
    Perm h = g;
    for (const Level& lev : levels_) {
      int k = lev.where[h[lev.beta]];
      if (k < 0) return false;
      h = h * lev.trans[static_cast<size_t>(k)].inverse();
    }
    return h.is_identity();
  }

  // Full element list via transversal products, sorted canonically.
  std::vector<Perm> elements(uint64_t cap) const {
    if (order() > cap)
      throw CapExceeded("group of order " + std::to_string(order()) +
                        " exceeds element cap of " + std::to_string(cap));
    std::vector<Perm> out{Perm(degree_)};
    for (size_t i = levels_.size(); i-- > 0;) {
      std::vector<Perm> next;
      next.reserve(out.size() * levels_[i].trans.size());
      for (const Perm& tail : out)
        for (const Perm& u : levels_[i].trans) next.push_back(tail * u);
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Level {
    unsigned beta = 0;
    std::vector<Perm> gens;
    std::vector<unsigned> orbit;  // BFS order, orbit[0] == beta
    std::vector<Perm> trans;      // trans[k] maps beta to orbit[k]
    std::vector<int> where;       // point -> orbit index, -1 outside
  };

  unsigned degree_;
  std::vector<Level> levels_;

  std::pair<Perm, size_t> strip(Perm g, size_t from) const {
    for (size_t i = from; i < levels_.size(); ++i) {
      int k = levels_[i].where[g[levels_[i].beta]];
      if (k < 0) return {std::move(g), i};
      g = g * levels_[i].trans[static_cast<size_t>(k)].inverse();
    }
    return {std::move(g), levels_.size()};
  }

  void append_level(unsigned beta) {
    Level lev;
    lev.beta = beta;
    lev.where.assign(degree_, -1);
    lev.orbit = {beta};
    lev.trans = {Perm(degree_)};
    lev.where[beta] = 0;
    levels_.push_back(std::move(lev));
  }

  void recompute_orbit(size_t i) {
    Level& lev = levels_[i];
    lev.where.assign(degree_, -1);
    lev.orbit.assign(1, lev.beta);
    lev.trans.assign(1, Perm(degree_));
    lev.where[lev.beta] = 0;
    for (size_t k = 0; k < lev.orbit.size(); ++k) {
      for (const Perm& s : lev.gens) {
        unsigned img = s[lev.orbit[k]];
        if (lev.where[img] < 0) {
          lev.where[img] = static_cast<int>(lev.orbit.size());
          lev.orbit.push_back(img);
          lev.trans.push_back(lev.trans[k] * s);
        }
      }
    }
  }

  static unsigned first_moved(const Perm& g) {
    for (unsigned i = 0; i < g.degree(); ++i)
      if (g[i] != i) return i;
    throw Error("identity has no moved point");
  }

  void insert(const Perm& g) {
    if (g.is_identity()) return;
    auto [h, reach] = strip(g, 0);
    if (h.is_identity()) return;
    add_generator(0, reach, h);
  }

  // h fixes the base prefix up to `reach`; register it at levels
  // [from, reach] and re-close them bottom-up.
  void add_generator(size_t from, size_t reach, const Perm& h) {
    if (reach == levels_.size()) append_level(first_moved(h));
    for (size_t l = from; l <= reach; ++l) levels_[l].gens.push_back(h);
    for (size_t l = reach + 1; l-- > from;) close_level(l);
  }

  // Closure at level i: every Schreier generator must strip to the
  // identity through the deeper levels. levels_ may reallocate inside the
  // recursion, so index fresh on every access.
  void close_level(size_t i) {
    recompute_orbit(i);
    for (size_t k = 0; k < levels_[i].orbit.size(); ++k) {
      for (size_t si = 0; si < levels_[i].gens.size(); ++si) {
        const Perm u = levels_[i].trans[k];
        const Perm s = levels_[i].gens[si];
        unsigned img = s[levels_[i].orbit[k]];
        const Perm v = levels_[i].trans[static_cast<size_t>(levels_[i].where[img])];
        Perm schreier = (u * s) * v.inverse();
        if (schreier.is_identity()) continue;
        auto [h, reach] = strip(std::move(schreier), i + 1);
        if (!h.is_identity()) add_generator(i + 1, reach, h);
      }
    }
  }
};

}  // namespace detail

/// A finite permutation group given by generators.
///
/// Immutable and cheap to copy. The exhaustive backend enumerates the whole
/// group on construction and is the correctness reference; the
/// stabilizer-chain backend answers order and membership from the chain and
/// enumerates lazily (cached, internally synchronized).
class PermGroup {
 public:
  explicit PermGroup(std::vector<Perm> generators,
                     Backend backend = Backend::stabilizer_chain,
                     uint64_t element_cap = kDefaultElementCap) {
    if (generators.empty()) throw DomainError("generator list must be nonempty");
    const unsigned deg = generators.front().degree();
    for (const Perm& g : generators)
      if (g.degree() != deg) throw DegreeMismatch("generators must share a degree");
    auto impl = std::make_shared<Impl>();
    impl->degree = deg;
    impl->gens = std::move(generators);
    impl->backend = backend;
    impl->cap = element_cap;
    if (backend == Backend::exhaustive) {
      impl->elems = detail::closure_enumerate(deg, impl->gens, element_cap);
      impl->order = impl->elems.size();
      impl->elems_ready = true;
    } else {
      impl->chain.emplace(deg, impl->gens);
      impl->order = impl->chain->order();
    }
    impl_ = std::move(impl);
  }

  static PermGroup trivial(unsigned degree,
                           Backend backend = Backend::stabilizer_chain,
                           uint64_t element_cap = kDefaultElementCap) {
    return PermGroup({Perm(degree)}, backend, element_cap);
  }

  // Wrap a known multiplication-closed element set (any order, identity
  // included). Generators are reduced greedily in canonical order, so the
  // result is deterministic.
  static PermGroup from_elements(std::vector<Perm> elements, Backend backend,
                                 uint64_t element_cap) {
    if (elements.empty()) throw DomainError("element set must contain the identity");
    std::sort(elements.begin(), elements.end());
    const unsigned deg = elements.front().degree();
    std::vector<Perm> gens;
    std::vector<Perm> closed{Perm(deg)};
    for (const Perm& e : elements) {
      if (std::binary_search(closed.begin(), closed.end(), e)) continue;
      gens.push_back(e);
      closed = detail::closure_enumerate(deg, gens, element_cap);
      if (closed.size() == elements.size()) break;
    }
    if (closed != elements) throw Error("element set is not multiplication-closed");
    if (gens.empty()) gens.push_back(Perm(deg));
    auto impl = std::make_shared<Impl>();
    impl->degree = deg;
    impl->gens = std::move(gens);
    impl->backend = backend;
    impl->cap = element_cap;
    impl->order = elements.size();
    impl->elems = std::move(elements);
    impl->elems_ready = true;
    PermGroup g;
    g.impl_ = std::move(impl);
    return g;
  }

  unsigned degree() const { return impl_->degree; }
  Backend backend() const { return impl_->backend; }
  uint64_t element_cap() const { return impl_->cap; }
  const std::vector<Perm>& generators() const { return impl_->gens; }
  uint64_t order() const { return impl_->order; }

  bool contains(const Perm& x) const {
    if (x.degree() != degree())
      throw DegreeMismatch("membership query degree mismatch");
    if (impl_->elems_ready)
      return std::binary_search(impl_->elems.begin(), impl_->elems.end(), x);
    return impl_->chain->contains(x);
  }

  // All elements in canonical (lexicographic) order. Throws CapExceeded for
  // groups larger than the configured cap.
  const std::vector<Perm>& elements() const {
    if (impl_->elems_ready) return impl_->elems;
    std::call_once(impl_->elems_once,
                   [&] { impl_->elems = impl_->chain->elements(impl_->cap); });
    return impl_->elems;
  }

  bool contains_group(const PermGroup& sub) const {
    if (sub.degree() != degree()) return false;
    for (const Perm& g : sub.generators())
      if (!contains(g)) return false;
    return true;
  }

  bool same_group_as(const PermGroup& other) const {
    if (impl_ == other.impl_) return true;
    return degree() == other.degree() && order() == other.order() &&
           contains_group(other);
  }

 private:
  struct Impl {
    unsigned degree = 0;
    std::vector<Perm> gens;
    Backend backend = Backend::stabilizer_chain;
    uint64_t cap = kDefaultElementCap;
    std::optional<detail::StabilizerChain> chain;
    uint64_t order = 0;
    bool elems_ready = false;
    mutable std::once_flag elems_once;
    mutable std::vector<Perm> elems;
  };

  PermGroup() = default;

  std::shared_ptr<const Impl> impl_;
};

/// A group together with the parent it lives in. Containment is verified on
/// construction; Lagrange then pins order() | parent order.
class Subgroup {
 public:
  Subgroup(PermGroup parent, PermGroup group)
      : parent_(std::move(parent)), group_(std::move(group)) {
    if (!parent_.contains_group(group_))
      throw DomainError("subgroup is not contained in its parent");
    if (parent_.order() % group_.order() != 0)
      throw Error("subgroup order does not divide parent order");
  }

  const PermGroup& parent() const { return parent_; }
  const PermGroup& group() const { return group_; }
  uint64_t order() const { return group_.order(); }

 private:
  PermGroup parent_;
  PermGroup group_;
};

}  // namespace fusionkit

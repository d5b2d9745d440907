#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fusionkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed cycle notation or corpus records.
class ParseError : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

/// A permutation of {1..n}, stored as a 0-based image table.
///
/// Products compose left to right: (p * q) maps a point a to q(p(a)), so
/// conjugation x^g = g^-1 * x * g relabels the points of x by g. Cycle
/// notation I/O is 1-based.
class Perm {
 public:
  // identity on {1..degree}
  explicit Perm(unsigned degree) : images_(checked_degree(degree)) {
    std::iota(images_.begin(), images_.end(), 0u);
  }

  explicit Perm(std::vector<unsigned> images) : images_(std::move(images)) {
    if (images_.empty()) throw Error("permutation degree must be positive");
    std::vector<bool> seen(images_.size(), false);
    for (unsigned img : images_) {
      if (img >= images_.size() || seen[img])
        throw Error("image table is not a bijection");
      seen[img] = true;
    }
  }

  // Whitespace-tolerant disjoint cycle notation, e.g. "(1 2 3)(4 5)".
  // Commas are accepted as separators. "()" is the identity.
  static Perm parse(std::string_view text, unsigned degree);

  unsigned degree() const { return static_cast<unsigned>(images_.size()); }
  unsigned operator[](unsigned point) const { return images_[point]; }
  const std::vector<unsigned>& images() const { return images_; }

  bool is_identity() const {
    for (unsigned i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    std::vector<unsigned> inv(images_.size());
    for (unsigned i = 0; i < degree(); ++i) inv[images_[i]] = i;
    return Perm(std::move(inv), unchecked{});
  }

  // Least k >= 1 with p^k = identity: lcm of the cycle lengths.
  uint64_t order() const {
    uint64_t result = 1;
    std::vector<bool> done(degree(), false);
    for (unsigned i = 0; i < degree(); ++i) {
      if (done[i]) continue;
      uint64_t len = 0;
      for (unsigned j = i; !done[j]; j = images_[j]) {
        done[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  // Disjoint cycles, smallest moved point first; "()" for the identity.
  std::string str() const {
    std::string out;
    std::vector<bool> done(degree(), false);
    for (unsigned i = 0; i < degree(); ++i) {
      if (done[i]) continue;
      if (images_[i] == i) {
        done[i] = true;
        continue;
      }
      out += '(';
      bool first = true;
      for (unsigned j = i; !done[j]; j = images_[j]) {
        if (!first) out += ' ';
        out += std::to_string(j + 1);
        done[j] = true;
        first = false;
      }
      out += ')';
    }
    if (out.empty()) out = "()";
    return out;
  }

  // g^-1 * (*this) * g
  Perm conjugated_by(const Perm& g) const {
    if (degree() != g.degree())
      throw DegreeMismatch("conjugation degree mismatch");
    std::vector<unsigned> images(degree());
    for (unsigned i = 0; i < degree(); ++i) images[g.images_[i]] = g.images_[images_[i]];
    return Perm(std::move(images), unchecked{});
  }

  friend Perm operator*(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree())
      throw DegreeMismatch("product degree mismatch");
    std::vector<unsigned> images(p.degree());
    for (unsigned i = 0; i < p.degree(); ++i) images[i] = q.images_[p.images_[i]];
    return Perm(std::move(images), unchecked{});
  }

  // Lexicographic on image tables; the identity is minimal in any group.
  friend auto operator<=>(const Perm& a, const Perm& b) = default;

 private:
  struct unchecked {};
  Perm(std::vector<unsigned> images, unchecked) : images_(std::move(images)) {}

  static std::vector<unsigned> checked_degree(unsigned degree) {
    if (degree == 0) throw Error("permutation degree must be positive");
    return std::vector<unsigned>(degree);
  }

  std::vector<unsigned> images_;
};

inline Perm conjugate(const Perm& x, const Perm& g) { return x.conjugated_by(g); }

// x^-1 y^-1 x y; identity exactly when x and y commute.
inline Perm commutator(const Perm& x, const Perm& y) {
  return x.inverse() * y.inverse() * x * y;
}

inline bool commute(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw DegreeMismatch("commutation test degree mismatch");
  for (unsigned i = 0; i < a.degree(); ++i)
    if (b[a[i]] != a[b[i]]) return false;
  return true;
}

inline Perm Perm::parse(std::string_view text, unsigned degree) {
  if (degree == 0) throw Error("permutation degree must be positive");
  std::vector<unsigned> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<bool> used(degree, false);

  size_t i = 0;
  auto skip_separators = [&] {
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\t' || text[i] == ',' || text[i] == '\n' || text[i] == '\r'))
      ++i;
  };

  bool any_cycle = false;
  skip_separators();
  while (i < text.size()) {
    if (text[i] != '(')
      throw ParseError("expected '(' at position " + std::to_string(i) + " in \"" + std::string(text) + "\"");
    ++i;
    std::vector<unsigned> cycle;
    skip_separators();
    while (i < text.size() && text[i] != ')') {
      if (text[i] < '0' || text[i] > '9')
        throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in \"" + std::string(text) + "\"");
      uint64_t value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + static_cast<uint64_t>(text[i] - '0');
        if (value > 1'000'000'000) throw ParseError("point literal too large");
        ++i;
      }
      if (value < 1 || value > degree)
        throw ParseError("point " + std::to_string(value) + " out of range for degree " + std::to_string(degree));
      unsigned point = static_cast<unsigned>(value - 1);
      if (used[point])
        throw ParseError("repeated point " + std::to_string(value) + " in \"" + std::string(text) + "\"");
      used[point] = true;
      cycle.push_back(point);
      skip_separators();
    }
    if (i >= text.size()) throw ParseError("unbalanced '(' in \"" + std::string(text) + "\"");
    ++i;  // ')'
    any_cycle = true;
    if (cycle.size() >= 2)
      for (size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_separators();
  }
  if (!any_cycle) throw ParseError("no cycles in \"" + std::string(text) + "\"");
  return Perm(std::move(images), unchecked{});
}

}  // namespace fusionkit

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fusionkit/group_ops.hpp"

namespace fusionkit {

/// Serialized group description: name, degree, generator cycle strings, tags.
struct GroupSpec {
  std::string name;
  unsigned degree = 0;
  std::vector<std::string> generators;
  std::vector<std::string> tags;
};

/// Corpus file problem with the offending line number (0 = whole file).
class CorpusError : public ParseError {
 public:
  CorpusError(const std::string& message, size_t line)
      : ParseError(line == 0 ? message : message + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline PermGroup build_group(const GroupSpec& spec,
                             Backend backend = Backend::stabilizer_chain,
                             uint64_t element_cap = kDefaultElementCap) {
  if (spec.generators.empty())
    throw ParseError("group \"" + spec.name + "\" has no generators");
  std::vector<Perm> gens;
  gens.reserve(spec.generators.size());
  for (const std::string& s : spec.generators)
    gens.push_back(Perm::parse(s, spec.degree));
  return PermGroup(std::move(gens), backend, element_cap);
}

/// Line-delimited corpus records: name TAB degree TAB gens TAB tags, with
/// generators ';'-separated and tags ','-separated. '#' starts a comment.
inline std::vector<GroupSpec> parse_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file " + path.string(), 0);
  std::vector<GroupSpec> out;
  std::set<std::string> names;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = detail::trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4)
      throw CorpusError("expected 3 or 4 tab-delimited fields, got " +
                            std::to_string(fields.size()),
                        lineno);
    GroupSpec spec;
    spec.name = detail::trim(fields[0]);
    if (spec.name.empty()) throw CorpusError("empty group name", lineno);
    if (!names.insert(spec.name).second)
      throw CorpusError("duplicate group name \"" + spec.name + "\"", lineno);
    try {
      size_t pos = 0;
      unsigned long degree = std::stoul(detail::trim(fields[1]), &pos);
      if (pos != detail::trim(fields[1]).size() || degree == 0 || degree > 1'000'000)
        throw CorpusError("bad degree \"" + fields[1] + "\"", lineno);
      spec.degree = static_cast<unsigned>(degree);
    } catch (const CorpusError&) {
      throw;
    } catch (const std::exception&) {
      throw CorpusError("bad degree \"" + fields[1] + "\"", lineno);
    }
    for (const std::string& gen : detail::split(fields[2], ';')) {
      std::string g = detail::trim(gen);
      if (g.empty()) continue;
      try {
        Perm::parse(g, spec.degree);
      } catch (const ParseError& e) {
        throw CorpusError(std::string("bad generator: ") + e.what(), lineno);
      }
      spec.generators.push_back(g);
    }
    if (spec.generators.empty()) throw CorpusError("no generators", lineno);
    if (fields.size() == 4)
      for (const std::string& tag : detail::split(fields[3], ',')) {
        std::string t = detail::trim(tag);
        if (!t.empty()) spec.tags.push_back(t);
      }
    out.push_back(std::move(spec));
  }
  return out;
}

inline std::string corpus_line(const GroupSpec& spec) {
  std::string gens, tags;
  for (size_t i = 0; i < spec.generators.size(); ++i) {
    if (i) gens += ';';
    gens += spec.generators[i];
  }
  for (size_t i = 0; i < spec.tags.size(); ++i) {
    if (i) tags += ',';
    tags += spec.tags[i];
  }
  return spec.name + "\t" + std::to_string(spec.degree) + "\t" + gens + "\t" + tags;
}

inline void write_corpus_file(const std::filesystem::path& path,
                              const std::vector<GroupSpec>& specs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file " + path.string());
  out << "# name\tdegree\tgenerators\ttags\n";
  for (const GroupSpec& s : specs) out << corpus_line(s) << "\n";
}

// -- deterministic builders for standard families ---------------------------

namespace families {

namespace detail2 {

inline Perm cycle_shift(unsigned n) {
  std::vector<unsigned> img(n);
  for (unsigned i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return Perm(std::move(img));
}

// GF(8) as polynomials over GF(2) modulo x^3 + x + 1, elements coded 0..7.
inline unsigned gf8_mul(unsigned a, unsigned b) {
  unsigned r = 0;
  for (unsigned i = 0; i < 3; ++i)
    if (b & (1u << i)) r ^= a << i;
  for (int i = 5; i >= 3; --i)
    if (r & (1u << i)) r ^= 0b1011u << (i - 3);
  return r & 7u;
}

inline unsigned gf8_inv(unsigned a) {
  for (unsigned b = 1; b < 8; ++b)
    if (gf8_mul(a, b) == 1) return b;
  throw Error("no inverse of 0 in GF(8)");
}

}  // namespace detail2

/// C_n acting on n points.
inline GroupSpec cyclic(unsigned n) {
  if (n == 0) throw DomainError("cyclic: order must be positive");
  GroupSpec s;
  s.name = "C" + std::to_string(n);
  s.degree = std::max(n, 1u);
  s.generators = {detail2::cycle_shift(s.degree).str()};
  if (n == 1) s.generators = {"()"};
  return s;
}

/// D_{2n} of the given order 2n >= 6, acting on the n-gon.
inline GroupSpec dihedral(unsigned order) {
  if (order < 6 || order % 2 != 0)
    throw DomainError("dihedral: order must be an even number >= 6");
  unsigned n = order / 2;
  std::vector<unsigned> refl(n);
  for (unsigned i = 0; i < n; ++i) refl[i] = (2 + n - i) % n;
  GroupSpec s;
  s.name = "D" + std::to_string(order);
  s.degree = n;
  s.generators = {detail2::cycle_shift(n).str(), Perm(std::move(refl)).str()};
  return s;
}

/// Generalized quaternion of order 4n (n >= 2) in its regular action:
/// a of order 2n, b^2 = a^n, a^b = a^-1. Elements are coded a^i b^j.
inline GroupSpec generalized_quaternion(unsigned order) {
  if (order < 8 || order % 4 != 0)
    throw DomainError("generalized quaternion: order must be a multiple of 4, >= 8");
  unsigned n = order / 2;  // order of a
  auto code = [n](unsigned i, unsigned j) { return j * n + i; };
  std::vector<unsigned> times_a(order), times_b(order);
  for (unsigned j = 0; j < 2; ++j)
    for (unsigned i = 0; i < n; ++i) {
      times_a[code(i, j)] = j == 0 ? code((i + 1) % n, 0) : code((i + n - 1) % n, 1);
      times_b[code(i, j)] = j == 0 ? code(i, 1) : code((i + n / 2) % n, 0);
    }
  GroupSpec s;
  s.name = "Q" + std::to_string(order);
  s.degree = order;
  s.generators = {Perm(std::move(times_a)).str(), Perm(std::move(times_b)).str()};
  return s;
}

/// (C_p)^k on k disjoint p-cycles.
inline GroupSpec elementary_abelian(unsigned p, unsigned k) {
  if (!is_prime(p)) throw DomainError("elementary abelian: p must be prime");
  if (k == 0) throw DomainError("elementary abelian: k must be positive");
  GroupSpec s;
  uint64_t ord = 1;
  for (unsigned i = 0; i < k; ++i) ord *= p;
  s.name = "E" + std::to_string(ord);
  s.degree = p * k;
  for (unsigned b = 0; b < k; ++b) {
    std::vector<unsigned> img(s.degree);
    for (unsigned i = 0; i < s.degree; ++i) img[i] = i;
    for (unsigned i = 0; i < p; ++i) img[b * p + i] = b * p + (i + 1) % p;
    s.generators.push_back(Perm(std::move(img)).str());
  }
  return s;
}

inline GroupSpec symmetric(unsigned n) {
  if (n == 0) throw DomainError("symmetric: n must be positive");
  GroupSpec s;
  s.name = "S" + std::to_string(n);
  s.degree = n;
  if (n == 1) {
    s.generators = {"()"};
  } else if (n == 2) {
    s.generators = {"(1 2)"};
  } else {
    s.generators = {"(1 2)", detail2::cycle_shift(n).str()};
  }
  return s;
}

inline GroupSpec alternating(unsigned n) {
  if (n == 0) throw DomainError("alternating: n must be positive");
  GroupSpec s;
  s.name = "A" + std::to_string(n);
  s.degree = std::max(n, 1u);
  if (n <= 2) {
    s.generators = {"()"};
  } else if (n == 3) {
    s.generators = {"(1 2 3)"};
  } else if (n % 2 == 1) {
    s.generators = {"(1 2 3)", detail2::cycle_shift(n).str()};
  } else {
    std::vector<unsigned> img(n);
    img[0] = 0;
    for (unsigned i = 1; i < n; ++i) img[i] = 1 + (i % (n - 1));
    s.generators = {"(1 2 3)", Perm(std::move(img)).str()};
  }
  return s;
}

/// Extraspecial group of order p^3 and exponent p (odd p), as the group of
/// unitriangular 3x3 matrices over F_p in its regular action on p^3 points.
inline GroupSpec extraspecial_exponent_p(unsigned p) {
  if (!is_prime(p) || p == 2)
    throw DomainError("extraspecial exponent-p family requires an odd prime");
  unsigned n = p * p * p;
  auto code = [p](unsigned a, unsigned b, unsigned c) { return (a * p + b) * p + c; };
  // (a,b,c) * (a',b',c') = (a+a', b+b', c+c'+a*b')
  std::vector<unsigned> times_x(n), times_y(n);
  for (unsigned a = 0; a < p; ++a)
    for (unsigned b = 0; b < p; ++b)
      for (unsigned c = 0; c < p; ++c) {
        times_x[code(a, b, c)] = code((a + 1) % p, b, c);
        times_y[code(a, b, c)] = code(a, (b + 1) % p, (c + a) % p);
      }
  GroupSpec s;
  s.name = std::to_string(p) + "^(1+2)";
  s.degree = n;
  s.generators = {Perm(std::move(times_x)).str(), Perm(std::move(times_y)).str()};
  return s;
}

/// PSL(2,q) on the projective line (degree q+1), q in {5,7,8,11}.
/// Generators: the translations x -> x+b for b running over an F_p-basis of
/// the field, plus the inversion x -> -1/x. The translations generate the
/// full unipotent subgroup, and conjugating it by the inversion reaches all
/// of PSL(2,q).
inline GroupSpec projective_special_linear2(unsigned q) {
  if (q != 5 && q != 7 && q != 8 && q != 11)
    throw DomainError("psl2 supports q in {5, 7, 8, 11}");
  unsigned deg = q + 1;  // field codes 0..q-1, then infinity
  const unsigned inf = q;
  std::vector<std::vector<unsigned>> images;
  std::vector<unsigned> invneg(deg);
  invneg[0] = inf;
  invneg[inf] = 0;
  if (q == 8) {
    for (unsigned basis : {1u, 2u, 4u}) {
      std::vector<unsigned> shift(deg);
      for (unsigned v = 0; v < q; ++v) shift[v] = v ^ basis;
      shift[inf] = inf;
      images.push_back(std::move(shift));
    }
    for (unsigned v = 1; v < q; ++v) invneg[v] = families::detail2::gf8_inv(v);
  } else {
    std::vector<unsigned> shift(deg);
    for (unsigned v = 0; v < q; ++v) shift[v] = (v + 1) % q;
    shift[inf] = inf;
    images.push_back(std::move(shift));
    for (unsigned v = 1; v < q; ++v) {
      unsigned inv = 1;
      for (unsigned b = 1; b < q; ++b)
        if ((v * b) % q == 1) {
          inv = b;
          break;
        }
      invneg[v] = (q - inv) % q;
    }
  }
  images.push_back(std::move(invneg));
  GroupSpec s;
  s.name = "PSL(2," + std::to_string(q) + ")";
  s.degree = deg;
  for (auto& img : images) s.generators.push_back(Perm(std::move(img)).str());
  return s;
}

/// SL(2,3) acting faithfully on the 8 nonzero vectors of F_3^2.
inline GroupSpec special_linear2_3() {
  std::vector<std::pair<unsigned, unsigned>> vecs;
  for (unsigned x = 0; x < 3; ++x)
    for (unsigned y = 0; y < 3; ++y)
      if (x || y) vecs.emplace_back(x, y);
  auto index_of = [&](unsigned x, unsigned y) {
    for (unsigned i = 0; i < vecs.size(); ++i)
      if (vecs[i] == std::make_pair(x, y)) return i;
    throw Error("vector lookup failed");
  };
  std::vector<unsigned> a(8), b(8);
  for (unsigned i = 0; i < 8; ++i) {
    auto [x, y] = vecs[i];
    a[i] = index_of((x + y) % 3, y);        // [[1,1],[0,1]]
    b[i] = index_of((3 - y) % 3, x);        // [[0,-1],[1,0]]
  }
  GroupSpec s;
  s.name = "SL(2,3)";
  s.degree = 8;
  s.generators = {Perm(std::move(a)).str(), Perm(std::move(b)).str()};
  return s;
}

/// A x B on the disjoint union of their point sets.
inline GroupSpec direct_product(const GroupSpec& a, const GroupSpec& b) {
  GroupSpec s;
  s.name = a.name + "x" + b.name;
  s.degree = a.degree + b.degree;
  for (const std::string& gen : a.generators) {
    Perm p = Perm::parse(gen, a.degree);
    std::vector<unsigned> img(s.degree);
    for (unsigned i = 0; i < a.degree; ++i) img[i] = p[i];
    for (unsigned i = a.degree; i < s.degree; ++i) img[i] = i;
    s.generators.push_back(Perm(std::move(img)).str());
  }
  for (const std::string& gen : b.generators) {
    Perm p = Perm::parse(gen, b.degree);
    std::vector<unsigned> img(s.degree);
    for (unsigned i = 0; i < a.degree; ++i) img[i] = i;
    for (unsigned i = 0; i < b.degree; ++i) img[a.degree + i] = a.degree + p[i];
    s.generators.push_back(Perm(std::move(img)).str());
  }
  return s;
}

}  // namespace families

enum class Family {
  cyclic,
  dihedral,
  generalized_quaternion,
  elementary_abelian,
  symmetric,
  alternating,
  extraspecial_exponent_p,
  projective_special_linear,
};

inline GroupSpec build_family(Family family, unsigned a, unsigned b = 0) {
  switch (family) {
    case Family::cyclic: return families::cyclic(a);
    case Family::dihedral: return families::dihedral(a);
    case Family::generalized_quaternion: return families::generalized_quaternion(a);
    case Family::elementary_abelian: return families::elementary_abelian(a, b);
    case Family::symmetric: return families::symmetric(a);
    case Family::alternating: return families::alternating(a);
    case Family::extraspecial_exponent_p: return families::extraspecial_exponent_p(a);
    case Family::projective_special_linear: return families::projective_special_linear2(a);
  }
  throw DomainError("unknown family");
}

/// The curated corpus: every verdict path is represented, all orders <= 2000
/// so the exhaustive backend can cross-check everything.
inline const std::vector<GroupSpec>& shipped_corpus() {
  static const std::vector<GroupSpec> corpus = [] {
    std::vector<GroupSpec> c;
    auto add = [&c](GroupSpec s, std::vector<std::string> tags) {
      s.tags = std::move(tags);
      c.push_back(std::move(s));
    };
    auto renamed = [](GroupSpec s, const char* name) {
      s.name = name;
      return s;
    };
    add(families::cyclic(2), {"hypothesis-true", "abelian-sylow"});
    add(families::cyclic(4), {"hypothesis-true", "abelian-sylow"});
    add(renamed(families::elementary_abelian(2, 2), "V4"),
        {"hypothesis-true", "abelian-sylow"});
    add(families::dihedral(8), {"negative-control", "nonabelian-sylow"});
    add(families::generalized_quaternion(8), {"negative-control", "nonabelian-sylow"});
    add(families::symmetric(3), {"hypothesis-true", "abelian-sylow"});
    add(families::symmetric(4), {"negative-control", "nonabelian-sylow"});
    add(families::symmetric(5), {"negative-control", "nonabelian-sylow"});
    add(families::alternating(4), {"hypothesis-true", "abelian-sylow"});
    add(families::alternating(5), {"hypothesis-true", "abelian-sylow"});
    add(families::special_linear2_3(), {"negative-control", "nonabelian-sylow"});
    add(families::projective_special_linear2(7), {"negative-control", "nonabelian-sylow"});
    add(families::projective_special_linear2(8), {"hypothesis-true", "abelian-sylow"});
    add(families::projective_special_linear2(11), {"hypothesis-true", "abelian-sylow"});
    add(families::extraspecial_exponent_p(3), {"odd-prime-demo"});
    add(families::direct_product(families::alternating(5), families::cyclic(2)),
        {"hypothesis-true", "abelian-sylow"});
    add(families::direct_product(families::dihedral(8), families::cyclic(3)),
        {"negative-control", "nonabelian-sylow"});
    return c;
  }();
  return corpus;
}

}  // namespace fusionkit

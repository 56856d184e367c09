#pragma once

// Base-category calculus for higher-dimensional automata: conclists and
// concsets, the maps between them, and the generator presentation by
// cofaces and permutations.  Everything here is a small value type; all
// operations are pure and indices are 1-based throughout.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hdakit {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// ---------------------------------------------------------------------------
// Event status: not yet started, executing, terminated.

enum class Status : std::uint8_t { NotStarted, Executing, Terminated };

inline char status_char(Status s) {
  switch (s) {
    case Status::NotStarted: return '0';
    case Status::Executing: return '*';
    case Status::Terminated: return '1';
  }
  throw Error("Internal", "bad status");
}

inline Status status_from_char(char c) {
  switch (c) {
    case '0': return Status::NotStarted;
    case '*': return Status::Executing;
    case '1': return Status::Terminated;
  }
  throw Error("InvalidMap", std::string("bad status char '") + c + "'");
}

// ---------------------------------------------------------------------------
// Canonical objects.  A conclist is an ordered list of labels (positions
// 1..n); a concset is the same data with the order ignored by the maps
// that target it.  Both are carried by this one type.

using Label = std::string;

struct CanonicalObject {
  std::vector<Label> labels;

  int arity() const { return static_cast<int>(labels.size()); }
  const Label& label(int pos) const { return labels.at(pos - 1); }

  bool operator==(const CanonicalObject&) const = default;
};

inline CanonicalObject one_letter_object(int n, const Label& l = "a") {
  return CanonicalObject{std::vector<Label>(static_cast<size_t>(n), l)};
}

// ---------------------------------------------------------------------------
// Permutations in one-line notation.  perm(j) is the image of position j.

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> one_line) : img_(std::move(one_line)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
      if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
        throw Error("InvalidMap", "not a permutation in one-line notation");
      seen[v - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(img_.size()); }
  int apply(int j) const {
    if (j < 1 || j > size()) throw Error("IndexOutOfRange", "permutation argument");
    return img_[j - 1];
  }
  int operator()(int j) const { return apply(j); }

  Permutation inverse() const {
    std::vector<int> inv(img_.size());
    for (int j = 1; j <= size(); ++j) inv[img_[j - 1] - 1] = j;
    return Permutation(std::move(inv));
  }

  bool is_identity() const {
    for (int j = 1; j <= size(); ++j)
      if (img_[j - 1] != j) return false;
    return true;
  }

  const std::vector<int>& one_line() const { return img_; }

  bool operator==(const Permutation&) const = default;
  // Lexicographic order on one-line words; used for deterministic iteration.
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

private:
  std::vector<int> img_;
};

// One-line bracket notation, e.g. "[2,1]".
inline std::string format_permutation(const Permutation& p) {
  std::string s = "[";
  for (int j = 1; j <= p.size(); ++j) {
    if (j > 1) s += ",";
    s += std::to_string(p(j));
  }
  return s + "]";
}

// Composition (tau sigma): apply sigma first, then tau.
inline Permutation operator*(const Permutation& tau, const Permutation& sigma) {
  if (tau.size() != sigma.size()) throw Error("ArityMismatch", "permutation composition");
  std::vector<int> v(static_cast<size_t>(tau.size()));
  for (int j = 1; j <= tau.size(); ++j) v[j - 1] = tau(sigma(j));
  return Permutation(std::move(v));
}

// All of S_n in lexicographic one-line order.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Insertion maps and induced face permutations.
//
// insertion_map(i, n) is the order-preserving injection (n-1) -> (n) that
// misses i.  induced_face_permutation(theta, i) is the unique permutation
// making the square
//
//     (n-1) --- d_i theta ---> (n-1)
//       |                        |
//  iota_{theta^{-1}(i)}        iota_i
//       v                        v
//      (n) ------ theta ------> (n)
//
// commute.  The square is the defining property; everything downstream
// (normalisation, symmetrised faces) relies on it and is tested against it.

inline std::vector<int> insertion_map(int i, int n) {
  if (i < 1 || i > n) throw Error("IndexOutOfRange", "insertion_map index");
  std::vector<int> img(static_cast<size_t>(n - 1));
  for (int j = 1; j <= n - 1; ++j) img[j - 1] = (j < i) ? j : j + 1;
  return img;
}

inline Permutation induced_face_permutation(const Permutation& theta, int i) {
  int n = theta.size();
  if (i < 1 || i > n) throw Error("IndexOutOfRange", "induced face index");
  int di = theta.inverse()(i);  // deleted domain position
  std::vector<int> img(static_cast<size_t>(n - 1));
  for (int j = 1; j <= n - 1; ++j) {
    int v = theta(j < di ? j : j + 1);
    img[j - 1] = (v < i) ? v : v - 1;  // v == i cannot occur
  }
  return Permutation(std::move(img));
}

// The inverse construction: the unique sigma in S_n with sigma(j) = i and
// d_i sigma = theta (theta in S_{n-1}).  Used when enumerating the ways a
// symmetrised cell can sit above a given face.
inline Permutation insert_permutation(const Permutation& theta, int j, int i) {
  int n = theta.size() + 1;
  if (j < 1 || j > n || i < 1 || i > n) throw Error("IndexOutOfRange", "insert_permutation");
  std::vector<int> img(static_cast<size_t>(n));
  img[j - 1] = i;
  for (int t = 1; t <= n - 1; ++t) {
    int dom = (t < j) ? t : t + 1;           // iota_j
    int v = theta(t);
    img[dom - 1] = (v < i) ? v : v + 1;      // iota_i
  }
  return Permutation(std::move(img));
}

// ---------------------------------------------------------------------------
// Base maps.  A map (f, eps): (m, source) -> (n, target) consists of an
// injective label-preserving f together with an event status for every
// target position; the executing positions are exactly the image of f.
// In conclist mode f must additionally be order-preserving.

enum class MapMode { Conclist, Concset };

struct BaseMap {
  CanonicalObject source;
  CanonicalObject target;
  std::vector<int> f;        // images of source positions 1..m
  std::vector<Status> eps;   // one status per target position 1..n

  bool operator==(const BaseMap&) const = default;
};

inline std::vector<std::string> validate_base_map(const BaseMap& m, MapMode mode) {
  std::vector<std::string> bad;
  const int sm = m.source.arity(), tn = m.target.arity();
  if (static_cast<int>(m.f.size()) != sm) bad.push_back("f has wrong length");
  if (static_cast<int>(m.eps.size()) != tn) bad.push_back("eps has wrong length");
  if (!bad.empty()) return bad;

  std::vector<bool> hit(static_cast<size_t>(tn), false);
  for (int j = 1; j <= sm; ++j) {
    int v = m.f[j - 1];
    if (v < 1 || v > tn) {
      bad.push_back("f(" + std::to_string(j) + ") out of range");
      continue;
    }
    if (hit[v - 1]) bad.push_back("f not injective at " + std::to_string(v));
    hit[v - 1] = true;
    if (m.source.label(j) != m.target.label(v))
      bad.push_back("label clash at source position " + std::to_string(j));
    if (mode == MapMode::Conclist && j > 1 && m.f[j - 2] >= v)
      bad.push_back("f not order-preserving at " + std::to_string(j));
  }
  for (int u = 1; u <= tn; ++u) {
    bool executing = m.eps[u - 1] == Status::Executing;
    if (executing != hit[u - 1])
      bad.push_back("eps/image disagree at target position " + std::to_string(u));
  }
  return bad;
}

// g after f.  The new status of a target position u is eps_f(t) when
// u = g(t), and zeta_g(u) when u is outside the image of g.
inline BaseMap compose_base_maps(const BaseMap& g, const BaseMap& f) {
  if (f.target != g.source)
    throw Error("ObjectMismatch", "compose_base_maps: inner objects disagree");
  BaseMap h;
  h.source = f.source;
  h.target = g.target;
  h.f.reserve(f.f.size());
  for (int v : f.f) h.f.push_back(g.f[v - 1]);
  h.eps = g.eps;
  for (size_t t = 0; t < g.f.size(); ++t) h.eps[g.f[t] - 1] = f.eps[t];
  return h;
}

inline BaseMap identity_base_map(const CanonicalObject& u) {
  BaseMap m;
  m.source = m.target = u;
  m.f.resize(static_cast<size_t>(u.arity()));
  std::iota(m.f.begin(), m.f.end(), 1);
  m.eps.assign(static_cast<size_t>(u.arity()), Status::Executing);
  return m;
}

// ---------------------------------------------------------------------------
// The generator presentation: cofaces d^k_i and permutations, composed
// right to left (the last list entry acts first).  A canonical morphism is
// the normal form  d_{i_r}^{k_r} ... d_{i_1}^{k_1} tau  with i_1 < ... < i_r;
// cofaces are stored ascending, i.e. the first entry acts right after tau.

struct Coface {
  int index = 0;
  int polarity = 0;  // 0 = lower face, 1 = upper face

  bool operator==(const Coface&) const = default;
};

using Generator = std::variant<Coface, Permutation>;

struct GeneratorWord {
  CanonicalObject target;        // object at the outermost end
  std::vector<Generator> gens;   // outermost first
};

struct CanonicalMorphism {
  CanonicalObject target;
  Permutation tau;
  std::vector<Coface> cofaces;   // ascending indices, innermost first

  int target_arity() const { return target.arity(); }
  int source_arity() const { return tau.size(); }
};

// Object chain bookkeeping: peeling one coface off the target object.
inline CanonicalObject face_object(const CanonicalObject& obj, int i) {
  if (i < 1 || i > obj.arity()) throw Error("IndexOutOfRange", "face_object");
  CanonicalObject out;
  out.labels.reserve(obj.labels.size() - 1);
  for (int j = 1; j <= obj.arity(); ++j)
    if (j != i) out.labels.push_back(obj.label(j));
  return out;
}

// Source object of a permutation generator given its target object:
// tau maps (n, lambda) to (n, lambda tau^{-1}), so lambda = target tau.
inline CanonicalObject permuted_source_object(const CanonicalObject& target,
                                              const Permutation& tau) {
  if (target.arity() != tau.size()) throw Error("ArityMismatch", "permutation object");
  CanonicalObject out;
  out.labels.reserve(target.labels.size());
  for (int j = 1; j <= tau.size(); ++j) out.labels.push_back(target.label(tau(j)));
  return out;
}

// F on generators, as base maps.
inline BaseMap coface_base_map(const CanonicalObject& target, int i, int polarity) {
  BaseMap m;
  m.target = target;
  m.source = face_object(target, i);
  m.f = insertion_map(i, target.arity());
  m.eps.assign(static_cast<size_t>(target.arity()), Status::Executing);
  m.eps[i - 1] = polarity == 0 ? Status::NotStarted : Status::Terminated;
  return m;
}

inline BaseMap permutation_base_map(const CanonicalObject& target, const Permutation& tau) {
  BaseMap m;
  m.target = target;
  m.source = permuted_source_object(target, tau);
  m.f = tau.one_line();
  m.eps.assign(static_cast<size_t>(target.arity()), Status::Executing);
  return m;
}

// Fold of F over a raw generator word.  This is the reference evaluation
// that normalisation is required to preserve.
inline BaseMap eval_word(const GeneratorWord& w) {
  BaseMap acc = identity_base_map(w.target);
  for (const Generator& g : w.gens) {
    const CanonicalObject& cur = acc.source;
    BaseMap step;
    if (std::holds_alternative<Coface>(g)) {
      const Coface& c = std::get<Coface>(g);
      step = coface_base_map(cur, c.index, c.polarity);
    } else {
      step = permutation_base_map(cur, std::get<Permutation>(g));
    }
    acc = compose_base_maps(acc, step);
  }
  return acc;
}

// F on a canonical morphism.
inline BaseMap eval_F(const CanonicalMorphism& cm) {
  GeneratorWord w;
  w.target = cm.target;
  for (auto it = cm.cofaces.rbegin(); it != cm.cofaces.rend(); ++it) w.gens.emplace_back(*it);
  w.gens.emplace_back(cm.tau);
  return eval_word(w);
}

// Normalisation.  State is the composite built so far in the shape
// D sigma.  A permutation generator folds into sigma; a coface generator
// first transports through sigma (sigma d^k_i = d^k_{sigma(i)} (d_{sigma(i)} sigma))
// and is then pushed into the sorted block by the cubical interchange
// d^l_q d^k_p = d^k_p d^l_{q-1} (p < q), which bumps the moving index by
// one for every block entry with index <= it.
inline CanonicalMorphism normalize(const GeneratorWord& w) {
  int arity = w.target.arity();
  std::vector<Coface> block;  // ascending
  Permutation sigma = Permutation::identity(arity);

  for (const Generator& g : w.gens) {
    if (std::holds_alternative<Permutation>(g)) {
      const Permutation& theta = std::get<Permutation>(g);
      if (theta.size() != sigma.size())
        throw Error("ArityMismatch", "normalize: permutation arity");
      sigma = sigma * theta;
    } else {
      const Coface& c = std::get<Coface>(g);
      if (c.index < 1 || c.index > sigma.size())
        throw Error("IndexOutOfRange", "normalize: coface index");
      if (c.polarity != 0 && c.polarity != 1)
        throw Error("InvalidMap", "normalize: coface polarity");
      int j = sigma(c.index);
      sigma = induced_face_permutation(sigma, j);
      size_t pos = 0;
      while (pos < block.size() && j >= block[pos].index) {
        ++j;
        ++pos;
      }
      block.insert(block.begin() + static_cast<std::ptrdiff_t>(pos), Coface{j, c.polarity});
    }
  }
  return CanonicalMorphism{w.target, sigma, block};
}

// Inverse of F on concset maps.  The coface indices are the non-executing
// target positions, with their statuses as polarities; tau is rho^{-1} f,
// where rho enumerates the image of f in increasing order.
inline CanonicalMorphism invert_F(const BaseMap& m) {
  auto bad = validate_base_map(m, MapMode::Concset);
  if (!bad.empty()) throw Error("InvalidMap", "invert_F: " + bad.front());
  std::vector<Coface> cofaces;
  std::vector<int> image;
  for (int u = 1; u <= m.target.arity(); ++u) {
    if (m.eps[u - 1] == Status::Executing)
      image.push_back(u);
    else
      cofaces.push_back(Coface{u, m.eps[u - 1] == Status::Terminated ? 1 : 0});
  }
  std::vector<int> tau(m.f.size());
  for (size_t j = 0; j < m.f.size(); ++j) {
    auto it = std::lower_bound(image.begin(), image.end(), m.f[j]);
    tau[j] = static_cast<int>(it - image.begin()) + 1;
  }
  return CanonicalMorphism{m.target, Permutation(std::move(tau)), std::move(cofaces)};
}

}  // namespace hdakit

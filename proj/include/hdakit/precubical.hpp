#pragma once

// Precubical sets and HDAs, plus the free symmetrisation.  A precubical
// set stores its cells by id with explicit lower/upper face lists; the
// symmetrised complex is kept lazy (a view over the base) and can be
// materialised into a plain precubical set, one cell per (permutation,
// base cell) pair.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hdakit/base.hpp"

namespace hdakit {

using CellId = std::string;

struct Cell {
  CellId id;
  CanonicalObject object;       // conclist of the cell's events
  std::vector<CellId> d0, d1;   // faces, entry i-1 for index i; empty for 0-cells
};

class PrecubicalSet {
public:
  using CellRef = CellId;

  void add_cell(Cell c) {
    if (cells_.count(c.id)) throw Error("InvalidComplex", "duplicate cell id " + c.id);
    for (const Label& l : c.object.labels) alphabet_.insert(l);
    cells_.emplace(c.id, std::move(c));
  }

  bool has(const CellId& id) const { return cells_.count(id) > 0; }
  const Cell& get(const CellId& id) const {
    auto it = cells_.find(id);
    if (it == cells_.end()) throw Error("InvalidComplex", "unknown cell " + id);
    return it->second;
  }

  int dim(const CellId& id) const { return get(id).object.arity(); }
  CanonicalObject labels(const CellId& id) const { return get(id).object; }

  CellId face(const CellId& id, int i, int k) const {
    const Cell& c = get(id);
    if (i < 1 || i > c.object.arity()) throw Error("IndexOutOfRange", "face of " + id);
    const auto& lst = k == 0 ? c.d0 : c.d1;
    if (static_cast<int>(lst.size()) < i) throw Error("InvalidComplex", "missing face of " + id);
    return lst[static_cast<size_t>(i) - 1];
  }

  // Cells z with a lower face delta^0_i(z) = id, together with that index.
  std::vector<std::pair<CellId, int>> up_steps(const CellId& id) const {
    std::vector<std::pair<CellId, int>> out;
    int n = dim(id);
    for (const auto& [zid, z] : cells_) {
      if (z.object.arity() != n + 1) continue;
      if (static_cast<int>(z.d0.size()) != n + 1) continue;
      for (int i = 1; i <= n + 1; ++i)
        if (z.d0[static_cast<size_t>(i) - 1] == id) out.emplace_back(zid, i);
    }
    return out;
  }

  const std::map<CellId, Cell>& cells() const { return cells_; }
  const std::set<Label>& alphabet() const { return alphabet_; }
  void note_letter(const Label& l) { alphabet_.insert(l); }

  std::vector<CellId> cells_of_dim(int n) const {
    std::vector<CellId> out;
    for (const auto& [id, c] : cells_)
      if (c.object.arity() == n) out.push_back(id);
    return out;
  }

  int max_dim() const {
    int m = 0;
    for (const auto& [id, c] : cells_) m = std::max(m, c.object.arity());
    return m;
  }

private:
  std::set<Label> alphabet_;
  std::map<CellId, Cell> cells_;  // ordered for deterministic iteration
};

struct HDA {
  PrecubicalSet complex;
  CellId initial;
  std::optional<CellId> final_cell;  // parsed and re-emitted, no semantics yet
};

// Face lists the right length, all references resolving, labels of faces
// obtained by deleting the indexed event, and the cubical identities
// delta^k_i delta^l_j = delta^l_{j-1} delta^k_i for i < j.
inline std::vector<std::string> validate_precubical(const PrecubicalSet& x) {
  std::vector<std::string> bad;
  auto shaped = [&x](const CellId& f) {
    const Cell& cc = x.get(f);
    const int m = cc.object.arity();
    return static_cast<int>(cc.d0.size()) == m && static_cast<int>(cc.d1.size()) == m;
  };
  for (const auto& [id, c] : x.cells()) {
    const int n = c.object.arity();
    if (static_cast<int>(c.d0.size()) != n || static_cast<int>(c.d1.size()) != n) {
      bad.push_back("cell " + id + ": face lists must have length " + std::to_string(n));
      continue;
    }
    bool refs_ok = true;
    for (int k = 0; k <= 1; ++k)
      for (int i = 1; i <= n; ++i) {
        const CellId& f = k == 0 ? c.d0[size_t(i) - 1] : c.d1[size_t(i) - 1];
        if (!x.has(f)) {
          bad.push_back("cell " + id + ": face " + f + " not in complex");
          refs_ok = false;
          continue;
        }
        if (x.labels(f) != face_object(c.object, i))
          bad.push_back("cell " + id + ": face " + f + " has incompatible labels");
      }
    if (!refs_ok) continue;
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i)
        for (int k = 0; k <= 1; ++k)
          for (int l = 0; l <= 1; ++l) {
            const CellId inner = x.face(id, j, l);
            const CellId outer = x.face(id, i, k);
            if (x.dim(inner) != n - 1 || x.dim(outer) != n - 1) continue;
            if (!shaped(inner) || !shaped(outer)) continue;
            if (x.face(inner, i, k) != x.face(outer, j - 1, l))
              bad.push_back("cell " + id + ": cubical identity fails at i=" +
                            std::to_string(i) + " j=" + std::to_string(j));
          }
  }
  return bad;
}

inline std::vector<std::string> validate_hda(const HDA& h) {
  auto bad = validate_precubical(h.complex);
  if (!h.complex.has(h.initial))
    bad.push_back("initial cell " + h.initial + " not in complex");
  else if (h.complex.dim(h.initial) != 0)
    bad.push_back("initial cell " + h.initial + " is not 0-dimensional");
  return bad;
}

// ---------------------------------------------------------------------------
// Symmetrisation.  An SCell (theta, x) denotes theta . x; its conclist is
// the base conclist precomposed with theta^{-1}.

struct SCell {
  Permutation theta;
  CellId base;

  bool operator==(const SCell&) const = default;
  bool operator<(const SCell& o) const {
    if (base != o.base) return base < o.base;
    return theta < o.theta;
  }
};

inline std::string format_scell(const SCell& s) {
  return format_permutation(s.theta) + "." + s.base;
}

class SComplex {
public:
  using CellRef = SCell;

  explicit SComplex(PrecubicalSet base) : base_(std::move(base)) {}
  const PrecubicalSet& base() const { return base_; }

  int dim(const SCell& s) const { return base_.dim(s.base); }

  CanonicalObject labels(const SCell& s) const {
    CanonicalObject lam = base_.labels(s.base);
    CanonicalObject out;
    out.labels.resize(lam.labels.size());
    // (theta . x) lives at lambda theta^{-1}.
    for (int j = 1; j <= lam.arity(); ++j)
      out.labels[static_cast<size_t>(s.theta(j)) - 1] = lam.label(j);
    return out;
  }

  // (SX)[d^k_i](theta, x) = (d_i theta, delta^k_{theta^{-1}(i)} x)
  SCell face(const SCell& s, int i, int k) const {
    int j = s.theta.inverse()(i);
    return SCell{induced_face_permutation(s.theta, i), base_.face(s.base, j, k)};
  }

  // (SX)[tau](theta, x) = (tau theta, x)
  SCell action(const Permutation& tau, const SCell& s) const {
    return SCell{tau * s.theta, s.base};
  }

  // All SCells above a lower face: for every base coface (z, j) and every
  // codomain position i there is exactly one sigma with sigma(j) = i and
  // d_i sigma = theta.
  std::vector<std::pair<SCell, int>> up_steps(const SCell& s) const {
    std::vector<std::pair<SCell, int>> out;
    int n = dim(s);
    for (const auto& [z, j] : base_.up_steps(s.base))
      for (int i = 1; i <= n + 1; ++i)
        out.emplace_back(SCell{insert_permutation(s.theta, j, i), z}, i);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) {
                return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    return out;
  }

  std::vector<SCell> all_scells_over(const CellId& base_id) const {
    std::vector<SCell> out;
    for (const Permutation& th : all_permutations(base_.dim(base_id)))
      out.push_back(SCell{th, base_id});
    return out;
  }

  std::vector<SCell> all_scells() const {
    std::vector<SCell> out;
    for (const auto& [id, c] : base_.cells())
      for (SCell& s : all_scells_over(id)) out.push_back(std::move(s));
    return out;
  }

private:
  PrecubicalSet base_;
};

inline SComplex symmetrize(const PrecubicalSet& x) { return SComplex(x); }

inline SCell canonical_scell(const SComplex& sx, const CellId& id) {
  return SCell{Permutation::identity(sx.base().dim(id)), id};
}

// Materialise the symmetrisation as a plain precubical set; n! copies of
// every n-cell.  The cap guards the factorial blow-up.
inline PrecubicalSet forget_symmetry(const SComplex& sx, int max_dim = 6) {
  if (sx.base().max_dim() > max_dim)
    throw Error("InvalidComplex", "forget_symmetry: dimension exceeds cap " +
                                      std::to_string(max_dim));
  PrecubicalSet out;
  for (const Label& l : sx.base().alphabet()) out.note_letter(l);
  for (const SCell& s : sx.all_scells()) {
    Cell c;
    c.id = format_scell(s);
    c.object = sx.labels(s);
    for (int i = 1; i <= c.object.arity(); ++i) {
      c.d0.push_back(format_scell(sx.face(s, i, 0)));
      c.d1.push_back(format_scell(sx.face(s, i, 1)));
    }
    out.add_cell(std::move(c));
  }
  return out;
}

inline HDA forget_symmetry(const SComplex& sx, const CellId& initial, int max_dim = 6) {
  HDA h;
  h.complex = forget_symmetry(sx, max_dim);
  h.initial = format_scell(canonical_scell(sx, initial));
  return h;
}

}  // namespace hdakit

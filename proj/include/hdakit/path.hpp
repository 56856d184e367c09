#pragma once

// Paths in precubical and symmetric precubical complexes: alternating
// sequences of cells and face steps, adjacency rewriting, congruence
// classes, and liftings to the symmetrisation.  Everything is templated
// over the complex, which only needs dim/labels/face/up_steps.

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdakit/precubical.hpp"

namespace hdakit {

struct Step {
  int polarity;  // 0 starts an event (up), 1 terminates one (down)
  int index;

  auto operator<=>(const Step&) const = default;
};

template <typename C>
struct Path {
  using CellRef = typename C::CellRef;

  std::vector<CellRef> cells;  // one more entry than steps
  std::vector<Step> steps;

  int length() const { return static_cast<int>(steps.size()); }
  const CellRef& start() const { return cells.front(); }
  const CellRef& end() const { return cells.back(); }

  bool operator==(const Path&) const = default;
  bool operator<(const Path& o) const {
    if (cells != o.cells) return cells < o.cells;
    return steps < o.steps;
  }
};

using XPath = Path<PrecubicalSet>;
using SPath = Path<SComplex>;

template <typename C>
Path<C> point_path(const typename C::CellRef& c) {
  return Path<C>{{c}, {}};
}

template <typename C>
std::vector<std::string> validate_path(const C& cx, const Path<C>& p,
                                       bool require_initial = false,
                                       const typename C::CellRef* initial = nullptr) {
  std::vector<std::string> bad;
  if (p.cells.empty()) {
    bad.push_back("a path has at least one cell");
    return bad;
  }
  if (p.cells.size() != p.steps.size() + 1) {
    bad.push_back("a path with n steps visits n+1 cells");
    return bad;
  }
  for (size_t j = 0; j < p.steps.size(); ++j) {
    const Step& st = p.steps[j];
    const std::string where = "step " + std::to_string(j + 1);
    try {
      if (st.polarity == 0) {
        if (cx.dim(p.cells[j + 1]) != cx.dim(p.cells[j]) + 1 ||
            !(cx.face(p.cells[j + 1], st.index, 0) == p.cells[j]))
          bad.push_back(where + ": source is not the indexed lower face of the target");
      } else if (st.polarity == 1) {
        if (cx.dim(p.cells[j + 1]) != cx.dim(p.cells[j]) - 1 ||
            !(cx.face(p.cells[j], st.index, 1) == p.cells[j + 1]))
          bad.push_back(where + ": target is not the indexed upper face of the source");
      } else {
        bad.push_back(where + ": polarity must be 0 or 1");
      }
    } catch (const Error& e) {
      bad.push_back(where + ": " + e.what());
    }
  }
  if (require_initial) {
    if (initial && !(p.cells.front() == *initial))
      bad.push_back("path does not start at the initial cell");
    if (!initial && cx.dim(p.cells.front()) != 0)
      bad.push_back("an execution starts at a vertex");
  }
  return bad;
}

template <typename C>
Path<C> concat(const Path<C>& p, const Path<C>& q) {
  if (p.cells.empty() || q.cells.empty() || !(p.end() == q.start()))
    throw Error("EndpointMismatch", "concat needs matching endpoints");
  Path<C> out = p;
  out.cells.insert(out.cells.end(), q.cells.begin() + 1, q.cells.end());
  out.steps.insert(out.steps.end(), q.steps.begin(), q.steps.end());
  return out;
}

template <typename C>
std::vector<Path<C>> prefixes(const Path<C>& p) {
  std::vector<Path<C>> out;
  for (size_t m = 0; m <= p.steps.size(); ++m) {
    Path<C> q;
    q.cells.assign(p.cells.begin(), p.cells.begin() + static_cast<long>(m) + 1);
    q.steps.assign(p.steps.begin(), p.steps.begin() + static_cast<long>(m));
    out.push_back(std::move(q));
  }
  return out;
}

// The unique adjacency replacement of the segment (step l, cell l, step
// l+1), 1-based l.  Rules 1 and 2 swap same-polarity steps and apply in
// both orientations; rules 3 and 4 commute a termination past an earlier
// start.  Absent for the stuck pattern (+i, x, -i) and for (-, x, +)
// segments, whose replacement would need a filler cell search.
template <typename C>
std::optional<std::pair<Path<C>, int>> adjacent_replace(const C& cx, const Path<C>& p, int l) {
  if (l < 1 || l >= p.length()) throw Error("IndexOutOfRange", "adjacent_replace position");
  const size_t j = static_cast<size_t>(l) - 1;  // first step of the segment
  const Step a = p.steps[j], b = p.steps[j + 1];
  Path<C> out = p;
  int rule = 0;
  if (a.polarity == 0 && b.polarity == 0) {
    rule = 1;
    if (a.index < b.index) {
      out.steps[j] = {0, b.index - 1};
      out.steps[j + 1] = {0, a.index};
      out.cells[j + 1] = cx.face(p.cells[j + 2], a.index, 0);
    } else {
      out.steps[j] = {0, b.index};
      out.steps[j + 1] = {0, a.index + 1};
      out.cells[j + 1] = cx.face(p.cells[j + 2], a.index + 1, 0);
    }
  } else if (a.polarity == 1 && b.polarity == 1) {
    rule = 2;
    if (a.index > b.index) {
      out.steps[j] = {1, b.index};
      out.steps[j + 1] = {1, a.index - 1};
      out.cells[j + 1] = cx.face(p.cells[j], b.index, 1);
    } else {
      out.steps[j] = {1, b.index + 1};
      out.steps[j + 1] = {1, a.index};
      out.cells[j + 1] = cx.face(p.cells[j], b.index + 1, 1);
    }
  } else if (a.polarity == 0 && b.polarity == 1) {
    if (a.index == b.index) return std::nullopt;  // the event starts and ends here
    if (a.index < b.index) {
      rule = 3;
      out.steps[j] = {1, b.index - 1};
      out.steps[j + 1] = {0, a.index};
      out.cells[j + 1] = cx.face(p.cells[j], b.index - 1, 1);
    } else {
      rule = 4;
      out.steps[j] = {1, b.index};
      out.steps[j + 1] = {0, a.index - 1};
      out.cells[j + 1] = cx.face(p.cells[j], b.index, 1);
    }
  } else {
    return std::nullopt;
  }
  return std::make_pair(std::move(out), rule);
}

// Closure of {p} under rules 1 and 2 at every position.
template <typename C>
std::vector<Path<C>> congruence_class(const C& cx, const Path<C>& p, size_t cap = 100000) {
  std::set<Path<C>> seen{p};
  std::deque<const Path<C>*> todo{&*seen.begin()};
  while (!todo.empty()) {
    const Path<C>& cur = *todo.front();
    todo.pop_front();
    for (int l = 1; l < cur.length(); ++l) {
      if (cur.steps[static_cast<size_t>(l) - 1].polarity !=
          cur.steps[static_cast<size_t>(l)].polarity)
        continue;
      auto rep = adjacent_replace(cx, cur, l);
      if (!rep) continue;
      auto [it, fresh] = seen.insert(std::move(rep->first));
      if (!fresh) continue;
      if (seen.size() > cap)
        throw Error("ClassTooLarge", "congruence class exceeds " + std::to_string(cap));
      todo.push_back(&*it);
    }
  }
  return std::vector<Path<C>>(seen.begin(), seen.end());
}

// One-step continuations: every upper coface start and every upper face
// termination of the end cell, in deterministic order.
template <typename C>
std::vector<Path<C>> extensions(const C& cx, const Path<C>& p) {
  std::vector<Path<C>> out;
  const auto& e = p.end();
  for (const auto& [z, i] : cx.up_steps(e)) {
    Path<C> q = p;
    q.steps.push_back({0, i});
    q.cells.push_back(z);
    out.push_back(std::move(q));
  }
  for (int i = 1; i <= cx.dim(e); ++i) {
    Path<C> q = p;
    q.steps.push_back({1, i});
    q.cells.push_back(cx.face(e, i, 1));
    out.push_back(std::move(q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Liftings along the projection SX -> X.

inline SPath canonical_lift(const PrecubicalSet& x, const XPath& p) {
  SPath out;
  for (const CellId& c : p.cells)
    out.cells.push_back(SCell{Permutation::identity(x.dim(c)), c});
  out.steps = p.steps;
  return out;
}

inline XPath underlying_path(const SPath& q) {
  XPath out;
  for (const SCell& s : q.cells) out.cells.push_back(s.base);
  for (size_t j = 0; j < q.steps.size(); ++j) {
    const Step& st = q.steps[j];
    // the permutation of the higher cell of the step translates the index
    const Permutation& tau = st.polarity == 0 ? q.cells[j + 1].theta : q.cells[j].theta;
    out.steps.push_back({st.polarity, tau.inverse()(st.index)});
  }
  return out;
}

namespace detail {
inline void lifting_dfs(const XPath& p, SPath& cur, std::vector<SPath>& out) {
  const size_t j = cur.steps.size();
  if (j == p.steps.size()) {
    out.push_back(cur);
    return;
  }
  const Step& st = p.steps[j];
  const SCell prev = cur.cells.back();  // push_back below may reallocate
  if (st.polarity == 1) {
    // termination: the symmetric index is forced
    const int pj = prev.theta(st.index);
    cur.steps.push_back({1, pj});
    cur.cells.push_back(SCell{induced_face_permutation(prev.theta, pj),
                              p.cells[j + 1]});
    lifting_dfs(p, cur, out);
    cur.steps.pop_back();
    cur.cells.pop_back();
  } else {
    // start: one branch per slot the new event can occupy
    const int m = prev.theta.size() + 1;
    for (int pj = 1; pj <= m; ++pj) {
      cur.steps.push_back({0, pj});
      cur.cells.push_back(SCell{insert_permutation(prev.theta, st.index, pj),
                                p.cells[j + 1]});
      lifting_dfs(p, cur, out);
      cur.steps.pop_back();
      cur.cells.pop_back();
    }
  }
}
}  // namespace detail

// Every path in SX whose underlying path is p, ordered by the start
// permutation and then by the slot choices.
inline std::vector<SPath> all_liftings(const PrecubicalSet& x, const XPath& p) {
  std::vector<SPath> out;
  if (p.cells.empty()) return out;
  for (const Permutation& t0 : all_permutations(x.dim(p.cells.front()))) {
    SPath cur{{SCell{t0, p.cells.front()}}, {}};
    detail::lifting_dfs(p, cur, out);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering.

inline std::string cell_display(const PrecubicalSet&, const CellId& c) { return c; }
inline std::string cell_display(const SComplex&, const SCell& s) { return format_scell(s); }

template <typename C>
std::string format_path(const C& cx, const Path<C>& p) {
  std::string s = cell_display(cx, p.cells.front());
  for (size_t j = 0; j < p.steps.size(); ++j) {
    s += p.steps[j].polarity == 0 ? " +" : " -";
    s += std::to_string(p.steps[j].index);
    s += " " + cell_display(cx, p.cells[j + 1]);
  }
  return s;
}

}  // namespace hdakit

#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdakit/ipomset.hpp"
#include "hdakit/path.hpp"

namespace hdakit {

// ---------------------------------------------------------------------------
// Traces.  A split trace records, per step, which label starts or terminates.
// An ST-trace additionally pins each termination to the 1-based step position
// of the start it closes, so that "a+ b+ a-@1 b-@2" and "a+ b+ a-@2 b-@1"
// distinguish the two ways of closing an autoconcurrent pair.

struct STEvent {
  Label label;
  int polarity;   // 0 starts an event, 1 terminates one
  int start_pos;  // matching start position for terminations, 0 on starts

  auto operator<=>(const STEvent&) const = default;
};

using STTrace = std::vector<STEvent>;
using SplitTrace = std::vector<std::pair<Label, int>>;

inline std::string format_st_trace(const STTrace& t) {
  std::string out;
  for (const STEvent& e : t) {
    if (!out.empty()) out += ' ';
    out += e.label;
    if (e.polarity == 0)
      out += '+';
    else
      out += "-@" + std::to_string(e.start_pos);
  }
  return out;
}

inline std::string format_split_trace(const SplitTrace& t) {
  std::string out;
  for (const auto& [l, k] : t) {
    if (!out.empty()) out += ' ';
    out += l;
    out += k == 0 ? '+' : '-';
  }
  return out;
}

template <typename C>
SplitTrace split_trace(const C& cx, const Path<C>& p) {
  if (p.cells.empty() || cx.dim(p.cells.front()) != 0)
    throw Error("NotAnExecution", "traces are defined for paths out of a point");
  SplitTrace out;
  for (int j = 0; j < p.length(); ++j) {
    const Step& st = p.steps[static_cast<size_t>(j)];
    const auto& hi = st.polarity == 0 ? p.cells[static_cast<size_t>(j) + 1]
                                      : p.cells[static_cast<size_t>(j)];
    out.emplace_back(cx.labels(hi).label(st.index), st.polarity);
  }
  return out;
}

// Slot bookkeeping: the events running after j steps sit in the conclist
// order of the j-th cell, so an up step at index i inserts there and a down
// step at index i removes from there.
template <typename C>
STTrace st_trace(const C& cx, const Path<C>& p) {
  if (p.cells.empty() || cx.dim(p.cells.front()) != 0)
    throw Error("NotAnExecution", "traces are defined for paths out of a point");
  STTrace out;
  std::vector<std::pair<Label, int>> active;
  for (int j = 0; j < p.length(); ++j) {
    const Step& st = p.steps[static_cast<size_t>(j)];
    if (st.polarity == 0) {
      Label l = cx.labels(p.cells[static_cast<size_t>(j) + 1]).label(st.index);
      active.insert(active.begin() + (st.index - 1), {l, j + 1});
      out.push_back({l, 0, 0});
    } else {
      if (st.index < 1 || st.index > static_cast<int>(active.size()))
        throw Error("InvalidPath", "st_trace: step index out of range");
      auto [l, k] = active[static_cast<size_t>(st.index - 1)];
      active.erase(active.begin() + (st.index - 1));
      out.push_back({l, 1, k});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Event ipomsets.  Each step contributes a discrete factor on the running
// events of its higher cell; the label of a path is the gluing of these.

template <typename C>
Ipomset step_factor(const C& cx, const Path<C>& p, int j) {
  const Step& st = p.steps.at(static_cast<size_t>(j));
  if (st.polarity == 0)
    return make_starter(cx.labels(p.cells[static_cast<size_t>(j) + 1]), st.index);
  return make_terminator(cx.labels(p.cells[static_cast<size_t>(j)]), st.index);
}

inline void canonical_event_names(Ipomset& p) {
  for (int e = 0; e < p.size(); ++e)
    p.events[static_cast<size_t>(e)].id = "e" + std::to_string(e + 1);
}

template <typename C>
Ipomset ev(const C& cx, const Path<C>& p) {
  if (p.cells.empty()) throw Error("InvalidPath", "ev needs a nonempty path");
  Ipomset acc = make_identity(cx.labels(p.cells.front()));
  for (int j = 0; j < p.length(); ++j) acc = glue(acc, step_factor(cx, p, j));
  canonical_event_names(acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Matching events: same length and stepwise equal factors.  Equal factors
// force equal step indices and equal conclists of the higher cells, so two
// matching paths march through identically labelled boundaries.

template <typename CP, typename CQ>
bool matching_events(const CP& cp, const Path<CP>& p, const CQ& cq, const Path<CQ>& q) {
  if (p.length() != q.length()) return false;
  for (int j = 0; j < p.length(); ++j) {
    if (p.steps[static_cast<size_t>(j)].polarity != q.steps[static_cast<size_t>(j)].polarity)
      return false;
    if (!(step_factor(cp, p, j) == step_factor(cq, q, j))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Realizing an isomorphic relabelling as a lifting.  A lifting may permute
// the events already present in the first cell (via the start permutation)
// and may place each later start anywhere in the running conclist, but the
// glued carrier appends later starts in execution order; targets outside
// that reach are reported as unrealizable rather than approximated.

inline std::optional<SPath> realize_iso_as_lifting(const PrecubicalSet& x, const XPath& p,
                                                   const Ipomset& target) {
  if (!iso(ev(x, p), target))
    throw Error("NotIsomorphic", "realize_iso_as_lifting: target is no variant of the path label");
  SComplex sx(x);
  for (const SPath& l : all_liftings(x, p))
    if (ev(sx, l) == target) return l;
  return std::nullopt;
}

namespace detail {

// Breadth-first walk of a congruence class that stops at the first path
// satisfying pred.  Set nodes are address-stable, so the queue keeps pointers.
template <typename C, typename Pred>
std::optional<Path<C>> search_congruent(const C& cx, const Path<C>& p, Pred pred, size_t cap) {
  std::set<Path<C>> seen{p};
  std::deque<const Path<C>*> todo{&*seen.begin()};
  while (!todo.empty()) {
    const Path<C>* cur = todo.front();
    todo.pop_front();
    if (pred(*cur)) return *cur;
    for (int l = 1; l < cur->length(); ++l) {
      auto rep = adjacent_replace(cx, *cur, l);
      if (!rep) continue;
      auto [it, fresh] = seen.insert(rep->first);
      if (!fresh) continue;
      if (seen.size() > cap) throw Error("ClassTooLarge", "congruence search exceeded cap");
      todo.push_back(&*it);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Align p against q: a congruent rearrangement of p whose steps match q's.
// Only meaningful when the two labels agree on the nose.
template <typename CP, typename CQ>
std::optional<Path<CP>> align_congruent(const CP& cp, const Path<CP>& p, const CQ& cq,
                                        const Path<CQ>& q, size_t cap = 100000) {
  if (!(ev(cp, p) == ev(cq, q))) return std::nullopt;
  return detail::search_congruent(
      cp, p, [&](const Path<CP>& g) { return matching_events(cp, g, cq, q); }, cap);
}

// Transfer q's ST-trace onto a rearrangement of p.  Requires isomorphic
// labels; the search is complete on the congruence class of p.
template <typename CP, typename CQ>
std::optional<Path<CP>> transfer_trace(const CP& cp, const Path<CP>& p, const CQ& cq,
                                       const Path<CQ>& q, size_t cap = 100000) {
  if (!iso(ev(cp, p), ev(cq, q)))
    throw Error("NotIsomorphic", "transfer_trace needs isomorphic path labels");
  const STTrace want = st_trace(cq, q);
  return detail::search_congruent(
      cp, p, [&](const Path<CP>& g) { return st_trace(cp, g) == want; }, cap);
}

}  // namespace hdakit

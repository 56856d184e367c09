#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdakit/semantics.hpp"

namespace hdakit {

enum class BisimKind { ST, HP, HHP };
enum class SemanticsMode { TraceBased, IpomsetBased };

inline std::string to_string(BisimKind k) {
  switch (k) {
    case BisimKind::ST: return "st";
    case BisimKind::HP: return "hp";
    default: return "hhp";
  }
}

inline std::string to_string(SemanticsMode m) {
  return m == SemanticsMode::TraceBased ? "trace" : "ipomset";
}

// Witness pairs index into enumerate_executions(h, bound) on either side.
struct Verdict {
  enum class Outcome { Bisimilar, NotBisimilar, BoundedInconclusive };

  Outcome outcome;
  BisimKind kind;
  SemanticsMode mode;
  int bound;
  std::vector<std::pair<int, int>> witness;  // surviving relation when Bisimilar
  std::string counterexample;                // unmatched requirement when NotBisimilar
};

inline std::string to_string(Verdict::Outcome o) {
  switch (o) {
    case Verdict::Outcome::Bisimilar: return "bisimilar";
    case Verdict::Outcome::NotBisimilar: return "not-bisimilar";
    default: return "inconclusive";
  }
}

// Breadth-first, so the list is ordered by length and the point path at the
// initial cell sits at index 0.
inline std::vector<XPath> enumerate_executions(const HDA& h, int max_len) {
  std::vector<XPath> out{point_path<PrecubicalSet>(h.initial)};
  size_t head = 0;
  while (head < out.size()) {
    const XPath cur = out[head++];
    if (cur.length() >= max_len) continue;
    for (XPath& e : extensions(h.complex, cur)) out.push_back(std::move(e));
  }
  return out;
}

namespace detail {

struct BisimSide {
  const HDA* h = nullptr;
  std::vector<XPath> execs;
  std::vector<int> parent;                // immediate prefix, -1 at the root
  std::vector<std::vector<int>> children;  // single-step extensions inside the bound
  std::vector<std::vector<int>> rep;       // adjacency partner per position, -1 if none
  std::vector<std::string> key;            // clause-2 bucket
  bool exhausted = true;                   // no execution was clipped by the bound
};

inline BisimSide build_side(const HDA& h, int max_len, SemanticsMode mode) {
  BisimSide s;
  s.h = &h;
  s.execs = enumerate_executions(h, max_len);
  std::map<XPath, int> index;
  for (size_t i = 0; i < s.execs.size(); ++i) index[s.execs[i]] = static_cast<int>(i);

  s.parent.assign(s.execs.size(), -1);
  s.children.assign(s.execs.size(), {});
  s.rep.assign(s.execs.size(), {});
  s.key.resize(s.execs.size());
  for (size_t i = 0; i < s.execs.size(); ++i) {
    const XPath& p = s.execs[i];
    if (p.length() > 0) {
      XPath pre = p;
      pre.cells.pop_back();
      pre.steps.pop_back();
      s.parent[i] = index.at(pre);
    }
    if (p.length() < max_len) {
      for (const XPath& e : extensions(h.complex, p)) s.children[i].push_back(index.at(e));
    } else if (!extensions(h.complex, p).empty()) {
      s.exhausted = false;
    }
    s.rep[i].assign(static_cast<size_t>(std::max(p.length() - 1, 0)), -1);
    for (int l = 1; l < p.length(); ++l) {
      auto r = adjacent_replace(h.complex, p, l);
      if (r) s.rep[i][static_cast<size_t>(l - 1)] = index.at(r->first);
    }
    s.key[i] = mode == SemanticsMode::TraceBased ? format_st_trace(st_trace(h.complex, p))
                                                 : iso_key(ev(h.complex, p));
  }
  return s;
}

}  // namespace detail

// Greatest fixpoint per the clause set of the requested kind: seed with all
// clause-2 pairs, prune pairs whose extension, adjacency, or prefix
// obligations leave the relation, both directions.  Pairs at the length
// bound carry unknown extension obligations and are kept optimistically;
// verdicts are only final when no execution was clipped.
inline Verdict check_bisim(const HDA& hx, const HDA& hy, BisimKind kind, SemanticsMode mode,
                           int max_len = 6) {
  detail::BisimSide sx = detail::build_side(hx, max_len, mode);
  detail::BisimSide sy = detail::build_side(hy, max_len, mode);

  const int nx = static_cast<int>(sx.execs.size());
  auto id = [nx](int i, int j) { return static_cast<long>(j) * nx + i; };

  std::set<long> alive;
  {
    std::map<std::string, std::vector<int>> bx;
    for (int i = 0; i < nx; ++i) bx[sx.key[static_cast<size_t>(i)]].push_back(i);
    for (int j = 0; j < static_cast<int>(sy.execs.size()); ++j) {
      auto it = bx.find(sy.key[static_cast<size_t>(j)]);
      if (it == bx.end()) continue;
      for (int i : it->second) alive.insert(id(i, j));
    }
  }

  std::string initial_cause;
  auto note_initial = [&](int i, int j, const std::string& why) {
    if (i == 0 && j == 0 && initial_cause.empty()) initial_cause = why;
  };

  // one obligation of pair (i, j); empty result = satisfied
  auto violation = [&](int i, int j) -> std::string {
    const XPath& p = sx.execs[static_cast<size_t>(i)];
    const XPath& q = sy.execs[static_cast<size_t>(j)];
    if (p.length() < max_len) {
      for (int ci : sx.children[static_cast<size_t>(i)]) {
        bool matched = false;
        for (int cj : sy.children[static_cast<size_t>(j)])
          if (alive.count(id(ci, cj))) {
            matched = true;
            break;
          }
        if (!matched)
          return "extension " + format_path(sx.h->complex, sx.execs[static_cast<size_t>(ci)]) +
                 " has no partner";
      }
      for (int cj : sy.children[static_cast<size_t>(j)]) {
        bool matched = false;
        for (int ci : sx.children[static_cast<size_t>(i)])
          if (alive.count(id(ci, cj))) {
            matched = true;
            break;
          }
        if (!matched)
          return "extension " + format_path(sy.h->complex, sy.execs[static_cast<size_t>(cj)]) +
                 " has no partner";
      }
    }
    if (kind != BisimKind::ST) {
      for (int l = 1; l < p.length(); ++l) {
        int ri = sx.rep[static_cast<size_t>(i)][static_cast<size_t>(l - 1)];
        int rj = sy.rep[static_cast<size_t>(j)][static_cast<size_t>(l - 1)];
        if ((ri < 0) != (rj < 0))
          return "adjacency at position " + std::to_string(l) + " exists on one side only";
        if (ri >= 0 && !alive.count(id(ri, rj)))
          return "adjacency partners at position " + std::to_string(l) + " fell out";
      }
    }
    if (kind == BisimKind::HHP && p.length() > 0) {
      // immediate prefixes suffice: surviving pairs chain down to the root
      if (!alive.count(id(sx.parent[static_cast<size_t>(i)], sy.parent[static_cast<size_t>(j)])))
        return "prefix pair fell out";
    }
    (void)q;
    return {};
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<long> dead;
    for (long pr : alive) {
      int i = static_cast<int>(pr % nx), j = static_cast<int>(pr / nx);
      std::string why = violation(i, j);
      if (!why.empty()) {
        dead.push_back(pr);
        note_initial(i, j, why);
      }
    }
    for (long pr : dead) alive.erase(pr);
    changed = !dead.empty();
  }

  Verdict v{Verdict::Outcome::BoundedInconclusive, kind, mode, max_len, {}, {}};
  bool settled = sx.exhausted && sy.exhausted;
  if (alive.count(id(0, 0))) {
    if (settled) {
      v.outcome = Verdict::Outcome::Bisimilar;
      for (long pr : alive) v.witness.emplace_back(static_cast<int>(pr % nx),
                                                   static_cast<int>(pr / nx));
      std::sort(v.witness.begin(), v.witness.end());
    }
  } else if (settled) {
    v.outcome = Verdict::Outcome::NotBisimilar;
    v.counterexample =
        initial_cause.empty() ? "initial executions satisfy no clause-2 pairing" : initial_cause;
  }
  return v;
}

// Literal clause-by-clause re-check of a witness relation, independent of
// the fixpoint engine: traces and labels are recomputed, extensions and
// adjacency partners re-derived, and every restriction (not only the
// immediate one) is demanded.
inline std::vector<std::string> validate_witness(const HDA& hx, const HDA& hy,
                                                 const std::vector<std::pair<int, int>>& rel,
                                                 BisimKind kind, SemanticsMode mode, int max_len) {
  std::vector<std::string> bad;
  std::vector<XPath> ex = enumerate_executions(hx, max_len);
  std::vector<XPath> ey = enumerate_executions(hy, max_len);
  std::set<std::pair<XPath, XPath>> r;
  for (auto& [i, j] : rel)
    r.insert({ex.at(static_cast<size_t>(i)), ey.at(static_cast<size_t>(j))});

  if (!r.count({point_path<PrecubicalSet>(hx.initial), point_path<PrecubicalSet>(hy.initial)}))
    bad.push_back("clause 1: initial pair missing");

  int n = 0;
  for (const auto& [p, q] : r) {
    std::string at = "pair " + std::to_string(n++);
    if (mode == SemanticsMode::TraceBased) {
      if (st_trace(hx.complex, p) != st_trace(hy.complex, q))
        bad.push_back("clause 2: ST-traces differ at " + at);
    } else if (!iso(ev(hx.complex, p), ev(hy.complex, q))) {
      bad.push_back("clause 2: labels not isomorphic at " + at);
    }

    if (p.length() < max_len) {
      for (const XPath& pe : extensions(hx.complex, p)) {
        bool ok = false;
        for (const XPath& qe : extensions(hy.complex, q))
          if (r.count({pe, qe})) {
            ok = true;
            break;
          }
        if (!ok) bad.push_back("clause 3: unmatched extension at " + at);
      }
      for (const XPath& qe : extensions(hy.complex, q)) {
        bool ok = false;
        for (const XPath& pe : extensions(hx.complex, p))
          if (r.count({pe, qe})) {
            ok = true;
            break;
          }
        if (!ok) bad.push_back("clause 3: unmatched extension at " + at);
      }
    }

    if (kind != BisimKind::ST) {
      for (int l = 1; l < p.length(); ++l) {
        auto rp = adjacent_replace(hx.complex, p, l);
        auto rq = adjacent_replace(hy.complex, q, l);
        if (rp.has_value() != rq.has_value()) {
          bad.push_back("clause 4: one-sided adjacency at " + at);
          continue;
        }
        if (rp && !r.count({rp->first, rq->first}))
          bad.push_back("clause 4: unmatched replacement at " + at);
      }
    }

    if (kind == BisimKind::HHP) {
      std::vector<XPath> pp = prefixes(p), qq = prefixes(q);
      for (size_t k = 0; k + 1 < pp.size(); ++k)
        if (!r.count({pp[k], qq[k]})) bad.push_back("clause 5: missing restriction at " + at);
    }
  }
  return bad;
}

struct CrossReport {
  Verdict trace;
  Verdict ipomset;
  bool conclusive = false;  // both verdicts settled below the bound
};

// The two clause-2 formulations must agree whenever both settle.
inline CrossReport cross_validate(const HDA& hx, const HDA& hy, BisimKind kind, int max_len = 6) {
  CrossReport r{check_bisim(hx, hy, kind, SemanticsMode::TraceBased, max_len),
                check_bisim(hx, hy, kind, SemanticsMode::IpomsetBased, max_len), false};
  auto open = [](const Verdict& v) { return v.outcome == Verdict::Outcome::BoundedInconclusive; };
  r.conclusive = !open(r.trace) && !open(r.ipomset);
  if (r.conclusive && r.trace.outcome != r.ipomset.outcome)
    throw Error("TheoremViolation",
                "clause-2 formulations disagree (" + to_string(kind) + ", bound " +
                    std::to_string(max_len) + "): trace says " + to_string(r.trace.outcome) +
                    ", ipomset says " + to_string(r.ipomset.outcome) +
                    (r.trace.counterexample.empty() ? r.ipomset.counterexample
                                                    : r.trace.counterexample));
  return r;
}

}  // namespace hdakit

#pragma once

// Ipomsets: partially ordered multisets of labelled events with source and
// target interfaces.  The precedence relation is strict and is always kept
// transitively closed.  Equality is positional: event ids are display names
// only and never take part in comparisons.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hdakit/base.hpp"

namespace hdakit {

struct IpomsetEvent {
  std::string id;
  Label label;
};

struct Ipomset {
  std::vector<IpomsetEvent> events;
  std::set<std::pair<int, int>> lt;  // 0-based event indices, transitively closed
  std::vector<int> src;              // slot -> event index
  std::vector<int> tgt;

  int size() const { return static_cast<int>(events.size()); }
  bool before(int x, int y) const { return lt.count({x, y}) > 0; }

  CanonicalObject source_object() const {
    CanonicalObject o;
    for (int e : src) o.labels.push_back(events.at(static_cast<size_t>(e)).label);
    return o;
  }
  CanonicalObject target_object() const {
    CanonicalObject o;
    for (int e : tgt) o.labels.push_back(events.at(static_cast<size_t>(e)).label);
    return o;
  }

  friend bool operator==(const Ipomset& p, const Ipomset& q) {
    if (p.size() != q.size() || p.lt != q.lt || p.src != q.src || p.tgt != q.tgt) return false;
    for (int e = 0; e < p.size(); ++e)
      if (p.events[static_cast<size_t>(e)].label != q.events[static_cast<size_t>(e)].label)
        return false;
    return true;
  }
};

inline void close_transitively(std::set<std::pair<int, int>>& lt, int n) {
  std::vector<std::vector<bool>> m(static_cast<size_t>(n),
                                   std::vector<bool>(static_cast<size_t>(n), false));
  for (auto& [a, b] : lt) m[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (m[static_cast<size_t>(a)][static_cast<size_t>(k)])
        for (int b = 0; b < n; ++b)
          if (m[static_cast<size_t>(k)][static_cast<size_t>(b)])
            m[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
  lt.clear();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (m[static_cast<size_t>(a)][static_cast<size_t>(b)]) lt.insert({a, b});
}

inline std::vector<std::string> validate_ipomset(const Ipomset& p) {
  std::vector<std::string> bad;
  const int n = p.size();
  std::set<std::string> ids;
  for (const auto& e : p.events)
    if (!ids.insert(e.id).second) bad.push_back("duplicate event id " + e.id);

  for (auto& [a, b] : p.lt) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      bad.push_back("precedence pair out of range");
      return bad;
    }
    if (a == b) bad.push_back("precedence not irreflexive at " + p.events[size_t(a)].id);
  }
  auto closed = p.lt;
  close_transitively(closed, n);
  if (closed != p.lt) bad.push_back("precedence not transitively closed");
  for (int a = 0; a < n; ++a)
    if (closed.count({a, a})) bad.push_back("precedence has a cycle through " + p.events[size_t(a)].id);

  auto check_iface = [&](const std::vector<int>& iface, const char* name, bool source_side) {
    std::set<int> seen;
    for (int e : iface) {
      if (e < 0 || e >= n) {
        bad.push_back(std::string(name) + " slot out of range");
        continue;
      }
      if (!seen.insert(e).second) bad.push_back(std::string(name) + " not injective");
      for (int x = 0; x < n; ++x) {
        if (source_side && p.before(x, e))
          bad.push_back(std::string(name) + " event " + p.events[size_t(e)].id + " not minimal");
        if (!source_side && p.before(e, x))
          bad.push_back(std::string(name) + " event " + p.events[size_t(e)].id + " not maximal");
      }
    }
  };
  check_iface(p.src, "src", true);
  check_iface(p.tgt, "tgt", false);
  return bad;
}

// ---------------------------------------------------------------------------
// Discrete building blocks.

inline Ipomset make_identity(const CanonicalObject& u) {
  Ipomset p;
  for (int j = 1; j <= u.arity(); ++j)
    p.events.push_back({"e" + std::to_string(j), u.label(j)});
  for (int e = 0; e < u.arity(); ++e) {
    p.src.push_back(e);
    p.tgt.push_back(e);
  }
  return p;
}

// One event (slot i of u) is freshly started: src omits it, tgt is total.
inline Ipomset make_starter(const CanonicalObject& u, int i) {
  Ipomset p = make_identity(u);
  p.src.clear();
  for (int j : insertion_map(i, u.arity())) p.src.push_back(j - 1);
  return p;
}

// One event (slot i of u) terminates: src is total, tgt omits it.
inline Ipomset make_terminator(const CanonicalObject& u, int i) {
  Ipomset p = make_identity(u);
  p.tgt.clear();
  for (int j : insertion_map(i, u.arity())) p.tgt.push_back(j - 1);
  return p;
}

// ---------------------------------------------------------------------------
// Gluing composition.  Target events of p are identified slotwise with
// source events of q; every event of p that does not survive into the
// interface precedes every event of q that is not inherited from it.

inline Ipomset glue(const Ipomset& p, const Ipomset& q) {
  if (p.target_object() != q.source_object())
    throw Error("InterfaceMismatch", "glue: target and source objects differ");

  Ipomset r;
  r.events = p.events;
  std::set<std::string> used;
  for (const auto& e : p.events) used.insert(e.id);

  // Map q's event indices into the result.
  std::vector<int> qmap(static_cast<size_t>(q.size()), -1);
  for (size_t s = 0; s < q.src.size(); ++s) qmap[static_cast<size_t>(q.src[s])] = p.tgt[s];
  for (int e = 0; e < q.size(); ++e) {
    if (qmap[static_cast<size_t>(e)] >= 0) continue;
    IpomsetEvent ev = q.events[static_cast<size_t>(e)];
    while (used.count(ev.id)) ev.id += "'";
    used.insert(ev.id);
    qmap[static_cast<size_t>(e)] = static_cast<int>(r.events.size());
    r.events.push_back(ev);
  }

  r.lt = p.lt;
  for (auto& [a, b] : q.lt) r.lt.insert({qmap[size_t(a)], qmap[size_t(b)]});
  std::set<int> p_iface(p.tgt.begin(), p.tgt.end());
  std::set<int> q_iface(q.src.begin(), q.src.end());
  for (int a = 0; a < p.size(); ++a) {
    if (p_iface.count(a)) continue;
    for (int b = 0; b < q.size(); ++b)
      if (!q_iface.count(b)) r.lt.insert({a, qmap[size_t(b)]});
  }
  close_transitively(r.lt, r.size());

  r.src = p.src;
  for (int e : q.tgt) r.tgt.push_back(qmap[static_cast<size_t>(e)]);
  return r;
}

inline Ipomset glue_all(const std::vector<Ipomset>& factors) {
  if (factors.empty()) throw Error("InterfaceMismatch", "glue_all: no factors");
  Ipomset acc = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) acc = glue(acc, factors[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Interval characterisation: no 2+2, i.e. whenever x < z and y < w then
// x < w or y < z.

inline bool is_interval(const Ipomset& p) {
  for (auto& [x, z] : p.lt)
    for (auto& [y, w] : p.lt)
      if (!p.before(x, w) && !p.before(y, z)) return false;
  return true;
}

// Decomposition of an interval ipomset into starters and terminators.
// Predecessor sets of an interval order form a chain under inclusion; the
// chain rank gives each event a birth slot, and the earliest successor
// birth gives its death slot.  Emitting starts before terminations inside
// each slot realises exactly the stored precedence.
inline std::vector<Ipomset> decompose_discrete(const Ipomset& p) {
  if (!is_interval(p)) throw Error("NotInterval", "decompose_discrete");
  const int n = p.size();

  std::vector<std::set<int>> pred(static_cast<size_t>(n));
  for (auto& [a, b] : p.lt) pred[static_cast<size_t>(b)].insert(a);
  std::vector<std::set<int>> chain;  // distinct predecessor sets, ascending
  for (auto& s : pred)
    if (std::find(chain.begin(), chain.end(), s) == chain.end()) chain.push_back(s);
  std::sort(chain.begin(), chain.end(),
            [](const std::set<int>& a, const std::set<int>& b) { return a.size() < b.size(); });
  for (size_t t = 1; t < chain.size(); ++t)
    if (!std::includes(chain[t].begin(), chain[t].end(), chain[t - 1].begin(), chain[t - 1].end()))
      throw Error("NotInterval", "predecessor sets not a chain");
  const int k = static_cast<int>(chain.size());

  std::vector<int> birth(static_cast<size_t>(n)), death(static_cast<size_t>(n), k);
  for (int e = 0; e < n; ++e)
    birth[static_cast<size_t>(e)] = static_cast<int>(
        std::find(chain.begin(), chain.end(), pred[static_cast<size_t>(e)]) - chain.begin() + 1);
  for (auto& [a, b] : p.lt)
    death[static_cast<size_t>(a)] =
        std::min(death[static_cast<size_t>(a)], birth[static_cast<size_t>(b)] - 1);

  std::set<int> in_src(p.src.begin(), p.src.end()), in_tgt(p.tgt.begin(), p.tgt.end());
  std::vector<int> active = p.src;  // event indices in slot order
  auto object_of = [&](const std::vector<int>& evs) {
    CanonicalObject o;
    for (int e : evs) o.labels.push_back(p.events[static_cast<size_t>(e)].label);
    return o;
  };

  std::vector<Ipomset> factors;
  for (int t = 1; t <= k; ++t) {
    for (int e = 0; e < n; ++e) {
      if (birth[static_cast<size_t>(e)] != t || in_src.count(e)) continue;
      active.push_back(e);
      factors.push_back(make_starter(object_of(active), static_cast<int>(active.size())));
    }
    for (int e = 0; e < n; ++e) {
      if (death[static_cast<size_t>(e)] != t || in_tgt.count(e)) continue;
      auto it = std::find(active.begin(), active.end(), e);
      int pos = static_cast<int>(it - active.begin()) + 1;
      factors.push_back(make_terminator(object_of(active), pos));
      active.erase(it);
    }
  }
  if (factors.empty()) return {make_identity(p.source_object())};
  return factors;
}

// ---------------------------------------------------------------------------
// Isomorphism search.  A witness is a label-preserving order bijection
// that maps interface events onto interface events; slot order inside an
// interface is free, the slot bijections follow from the carrier map.

namespace detail {

struct IsoSig {
  Label label;
  int indeg = 0, outdeg = 0;
  bool in_src = false, in_tgt = false;
  auto operator<=>(const IsoSig&) const = default;
};

inline std::vector<IsoSig> iso_signatures(const Ipomset& p) {
  std::vector<IsoSig> sig(static_cast<size_t>(p.size()));
  for (int e = 0; e < p.size(); ++e) sig[static_cast<size_t>(e)].label = p.events[size_t(e)].label;
  for (auto& [a, b] : p.lt) {
    ++sig[static_cast<size_t>(a)].outdeg;
    ++sig[static_cast<size_t>(b)].indeg;
  }
  for (int e : p.src) sig[static_cast<size_t>(e)].in_src = true;
  for (int e : p.tgt) sig[static_cast<size_t>(e)].in_tgt = true;
  return sig;
}

inline void iso_search(const Ipomset& p, const Ipomset& q, const std::vector<IsoSig>& ps,
                       const std::vector<IsoSig>& qs, std::vector<int>& map,
                       std::vector<bool>& taken, int next, std::vector<std::vector<int>>& out,
                       bool all) {
  if (!all && !out.empty()) return;
  const int n = p.size();
  if (next == n) {
    out.push_back(map);
    return;
  }
  for (int cand = 0; cand < n; ++cand) {
    if (taken[static_cast<size_t>(cand)] || ps[static_cast<size_t>(next)] != qs[size_t(cand)])
      continue;
    bool ok = true;
    for (int prev = 0; prev < next && ok; ++prev) {
      int pc = map[static_cast<size_t>(prev)];
      ok = p.before(prev, next) == q.before(pc, cand) &&
           p.before(next, prev) == q.before(cand, pc);
    }
    if (!ok) continue;
    map[static_cast<size_t>(next)] = cand;
    taken[static_cast<size_t>(cand)] = true;
    iso_search(p, q, ps, qs, map, taken, next + 1, out, all);
    taken[static_cast<size_t>(cand)] = false;
  }
}

}  // namespace detail

inline std::vector<std::vector<int>> all_isos(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size() || p.src.size() != q.src.size() || p.tgt.size() != q.tgt.size())
    return {};
  auto ps = detail::iso_signatures(p), qs = detail::iso_signatures(q);
  auto sorted = [](std::vector<detail::IsoSig> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(ps) != sorted(qs)) return {};
  std::vector<std::vector<int>> out;
  std::vector<int> map(static_cast<size_t>(p.size()));
  std::vector<bool> taken(static_cast<size_t>(p.size()), false);
  detail::iso_search(p, q, ps, qs, map, taken, 0, out, true);
  return out;
}

inline std::optional<std::vector<int>> iso(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size() || p.src.size() != q.src.size() || p.tgt.size() != q.tgt.size())
    return std::nullopt;
  auto ps = detail::iso_signatures(p), qs = detail::iso_signatures(q);
  auto sorted = [](std::vector<detail::IsoSig> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(ps) != sorted(qs)) return std::nullopt;
  std::vector<std::vector<int>> out;
  std::vector<int> map(static_cast<size_t>(p.size()));
  std::vector<bool> taken(static_cast<size_t>(p.size()), false);
  detail::iso_search(p, q, ps, qs, map, taken, 0, out, false);
  if (out.empty()) return std::nullopt;
  return out.front();
}

// Canonical key: the lexicographically smallest structural encoding over
// all isomorphism witnesses onto itself.  Two ipomsets are isomorphic iff
// their keys coincide; used to bucket executions in the bisimulation
// checker.
inline std::string iso_key(const Ipomset& p) {
  const int n = p.size();
  std::vector<int> perm(static_cast<size_t>(n));  // new position -> old index
  std::iota(perm.begin(), perm.end(), 0);
  std::set<int> in_src(p.src.begin(), p.src.end()), in_tgt(p.tgt.begin(), p.tgt.end());

  std::string best;
  auto encode = [&](const std::vector<int>& pm) {
    std::vector<int> inv(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) inv[static_cast<size_t>(pm[size_t(j)])] = j;
    std::string s;
    for (int j = 0; j < n; ++j) s += p.events[static_cast<size_t>(pm[size_t(j)])].label + ";";
    s += "<";
    std::set<std::pair<int, int>> rel;
    for (auto& [a, b] : p.lt) rel.insert({inv[size_t(a)], inv[size_t(b)]});
    for (auto& [a, b] : rel) s += std::to_string(a) + ">" + std::to_string(b) + ",";
    s += "|s";
    std::set<int> ss, tt;
    for (int e : p.src) ss.insert(inv[static_cast<size_t>(e)]);
    for (int e : p.tgt) tt.insert(inv[static_cast<size_t>(e)]);
    for (int e : ss) s += std::to_string(e) + ",";
    s += "|t";
    for (int e : tt) s += std::to_string(e) + ",";
    return s;
  };
  do {
    // Only label-class and interface respecting arrangements can win;
    // cheap reject keeps the n! loop tolerable at desk scale.
    bool plausible = true;
    for (int j = 1; j < n && plausible; ++j) {
      const auto& a = p.events[static_cast<size_t>(perm[size_t(j - 1)])].label;
      const auto& b = p.events[static_cast<size_t>(perm[size_t(j)])].label;
      plausible = a <= b;
    }
    if (!plausible) continue;
    std::string s = encode(perm);
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Plain-text rendering in bullet notation: `•a•` is an event carried by
// both interfaces, arrows list the covering pairs.

inline std::string render_ascii(const Ipomset& p) {
  std::set<int> in_src(p.src.begin(), p.src.end()), in_tgt(p.tgt.begin(), p.tgt.end());
  auto ev_str = [&](int e) {
    std::string s;
    if (in_src.count(e)) s += "•";
    s += p.events[static_cast<size_t>(e)].label;
    if (in_tgt.count(e)) s += "•";
    return s;
  };
  // Covering pairs of the stored (closed) order.
  std::set<std::pair<int, int>> cover;
  for (auto& [a, b] : p.lt) {
    bool direct = true;
    for (int z = 0; z < p.size() && direct; ++z)
      if (p.before(a, z) && p.before(z, b)) direct = false;
    if (direct) cover.insert({a, b});
  }
  std::string out;
  std::set<int> on_edge;
  for (auto& [a, b] : cover) {
    on_edge.insert(a);
    on_edge.insert(b);
  }
  for (int e = 0; e < p.size(); ++e)
    if (!on_edge.count(e)) out += ev_str(e) + "\n";
  for (auto& [a, b] : cover) out += ev_str(a) + " --> " + ev_str(b) + "\n";
  return out;
}

}  // namespace hdakit

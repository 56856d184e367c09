#pragma once

// Complexes shared across the test suites.

#include <algorithm>
#include <string>
#include <vector>

#include "hdakit/precubical.hpp"

namespace hdakit::fixtures {

// Full n-cube over the given axis labels.  Cells are words over {0,1,*}
// (the id is the word itself), dimension = number of stars, and the face
// maps rewrite the i-th star to 0 or 1.  With include_top false the single
// top cell is left out, leaving the hollow shell.
inline PrecubicalSet cube_complex(const std::vector<Label>& axis, bool include_top = true) {
  const int n = static_cast<int>(axis.size());
  std::vector<std::string> words{""};
  for (int p = 0; p < n; ++p) {
    std::vector<std::string> next;
    for (const std::string& w : words)
      for (char c : {'0', '1', '*'}) next.push_back(w + c);
    words = std::move(next);
  }
  PrecubicalSet x;
  for (const Label& l : axis) x.note_letter(l);
  for (const std::string& w : words) {
    if (!include_top && std::count(w.begin(), w.end(), '*') == n) continue;
    Cell c;
    c.id = w;
    for (int p = 0; p < n; ++p)
      if (w[p] == '*') c.object.labels.push_back(axis[static_cast<size_t>(p)]);
    for (int p = 0; p < n; ++p) {
      if (w[p] != '*') continue;
      std::string lo = w, hi = w;
      lo[static_cast<size_t>(p)] = '0';
      hi[static_cast<size_t>(p)] = '1';
      c.d0.push_back(lo);
      c.d1.push_back(hi);
    }
    x.add_cell(std::move(c));
  }
  return x;
}

inline PrecubicalSet filled_square(const Label& a = "a", const Label& b = "b") {
  return cube_complex({a, b});
}
inline PrecubicalSet hollow_square(const Label& a = "a", const Label& b = "b") {
  return cube_complex({a, b}, false);
}

// Two squares x and y glued along the edge s, every edge carrying the
// same letter.  Vertices a..f, edges p: a->b, q: a->c, s: b->d, t: c->d,
// u: d->e, v: b->f, l: f->e; x spans p,q,s,t and y spans s,v,l,u.
inline PrecubicalSet two_squares() {
  PrecubicalSet cx;
  for (const char* vtx : {"a", "b", "c", "d", "e", "f"})
    cx.add_cell(Cell{vtx, {}, {}, {}});
  auto edge = [&cx](const std::string& id, const std::string& lo, const std::string& hi) {
    cx.add_cell(Cell{id, CanonicalObject{{"a"}}, {lo}, {hi}});
  };
  edge("p", "a", "b");
  edge("q", "a", "c");
  edge("s", "b", "d");
  edge("t", "c", "d");
  edge("u", "d", "e");
  edge("v", "b", "f");
  edge("l", "f", "e");
  cx.add_cell(Cell{"x", CanonicalObject{{"a", "a"}}, {"p", "q"}, {"t", "s"}});
  cx.add_cell(Cell{"y", CanonicalObject{{"a", "a"}}, {"v", "s"}, {"u", "l"}});
  return cx;
}

// Two solid 3-cubes glued along one square: the upper c-face of the x
// cube is the lower d-face of the z cube.  Cell ids are "x:w" for the
// first cube's words; z-words with third coordinate 0 are folded onto
// "x:" ids with third coordinate 1, the rest keep a "z:" prefix.  Axes
// are (a,b,c) and (a,b,d).
inline PrecubicalSet glued_cubes() {
  auto xid = [](std::string w) { return "x:" + w; };
  auto zid = [&xid](std::string w) {
    if (w[2] == '0') {
      w[2] = '1';
      return xid(w);
    }
    return "z:" + w;
  };
  std::vector<std::string> words;
  for (char c0 : {'0', '1', '*'})
    for (char c1 : {'0', '1', '*'})
      for (char c2 : {'0', '1', '*'}) words.push_back({c0, c1, c2});

  PrecubicalSet out;
  const std::vector<Label> xaxis{"a", "b", "c"}, zaxis{"a", "b", "d"};
  auto add_copy = [&](auto name, const std::vector<Label>& axis, bool skip_folded) {
    for (const std::string& w : words) {
      if (skip_folded && w[2] == '0') continue;
      Cell c;
      c.id = name(w);
      for (int p = 0; p < 3; ++p)
        if (w[static_cast<size_t>(p)] == '*')
          c.object.labels.push_back(axis[static_cast<size_t>(p)]);
      for (int p = 0; p < 3; ++p) {
        if (w[static_cast<size_t>(p)] != '*') continue;
        std::string lo = w, hi = w;
        lo[static_cast<size_t>(p)] = '0';
        hi[static_cast<size_t>(p)] = '1';
        c.d0.push_back(name(lo));
        c.d1.push_back(name(hi));
      }
      out.add_cell(std::move(c));
    }
  };
  add_copy(xid, xaxis, false);
  add_copy(zid, zaxis, true);
  return out;
}

// One vertex with a self-loop; executions never run out.
inline PrecubicalSet loop_complex(const Label& a = "a") {
  PrecubicalSet out;
  out.add_cell(Cell{"v", {}, {}, {}});
  out.add_cell(Cell{"e", CanonicalObject{{a}}, {"v"}, {"v"}});
  return out;
}

}  // namespace hdakit::fixtures

#pragma once

// Wire formats: HDA and ipomset JSON, path / morphism / base-map text,
// verdict JSON, Graphviz export.  Parsers are strict; a shape problem is a
// ParseError carrying the position, a dangling reference names the id.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hdakit/bisim.hpp"

namespace hdakit {

using json = nlohmann::ordered_json;

namespace detail {

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    // drop the "[json.exception...]" tag, keep the line/column part
    if (auto cut = msg.find("] "); cut != std::string::npos) msg = msg.substr(cut + 2);
    throw Error("ParseError", msg);
  }
}

inline const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw Error("ParseError", where + ": missing field \"" + key + "\"");
  return *it;
}

inline std::string need_string(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) throw Error("ParseError", where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline std::vector<std::string> need_string_list(const json& j, const char* key,
                                                 const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_array()) throw Error("ParseError", where + ": \"" + key + "\" must be a list");
  std::vector<std::string> out;
  for (const json& e : v) {
    if (!e.is_string())
      throw Error("ParseError", where + ": \"" + key + "\" entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// HDA files.  Cells are emitted in id order, so output is reproducible.

inline json hda_to_json(const HDA& h) {
  json out = json::object();
  out["alphabet"] = json::array();
  for (const Label& l : h.complex.alphabet()) out["alphabet"].push_back(l);
  out["initial"] = h.initial;
  if (h.final_cell) out["final"] = *h.final_cell;
  out["cells"] = json::array();
  for (const auto& [id, c] : h.complex.cells()) {
    json jc = json::object();
    jc["id"] = id;
    jc["labels"] = c.object.labels;
    jc["d0"] = c.d0;
    jc["d1"] = c.d1;
    out["cells"].push_back(std::move(jc));
  }
  return out;
}

inline std::string write_hda(const HDA& h) { return hda_to_json(h).dump(2) + "\n"; }

inline HDA parse_hda(const std::string& text) {
  json j = detail::parse_json(text);
  if (!j.is_object()) throw Error("ParseError", "hda: top level must be an object");
  HDA h;
  for (const std::string& l : detail::need_string_list(j, "alphabet", "hda"))
    h.complex.note_letter(l);
  h.initial = detail::need_string(j, "initial", "hda");
  if (auto it = j.find("final"); it != j.end()) {
    if (!it->is_string()) throw Error("ParseError", "hda: \"final\" must be a string");
    h.final_cell = it->get<CellId>();
  }
  const json& cells = detail::need(j, "cells", "hda");
  if (!cells.is_array()) throw Error("ParseError", "hda: \"cells\" must be a list");
  for (const json& jc : cells) {
    if (!jc.is_object()) throw Error("ParseError", "hda: cell records must be objects");
    Cell c;
    c.id = detail::need_string(jc, "id", "cell");
    const std::string where = "cell " + c.id;
    c.object.labels = detail::need_string_list(jc, "labels", where);
    c.d0 = detail::need_string_list(jc, "d0", where);
    c.d1 = detail::need_string_list(jc, "d1", where);
    h.complex.add_cell(std::move(c));
  }
  if (auto bad = validate_hda(h); !bad.empty()) {
    std::string msg = bad.front();
    for (size_t k = 1; k < bad.size(); ++k) msg += "; " + bad[k];
    throw Error("InvalidComplex", msg);
  }
  if (h.final_cell && !h.complex.has(*h.final_cell))
    throw Error("InvalidComplex", "final cell " + *h.final_cell + " not in complex");
  return h;
}

// ---------------------------------------------------------------------------
// Ipomset JSON.  The precedence relation is stored by event id and closed
// transitively on read.

inline json ipomset_to_json(const Ipomset& p) {
  json out = json::object();
  out["events"] = json::array();
  for (const IpomsetEvent& e : p.events)
    out["events"].push_back(json{{"id", e.id}, {"label", e.label}});
  out["lt"] = json::array();
  for (const auto& [x, y] : p.lt)
    out["lt"].push_back(json::array({p.events[size_t(x)].id, p.events[size_t(y)].id}));
  out["src"] = json::array();
  for (int e : p.src) out["src"].push_back(p.events[size_t(e)].id);
  out["tgt"] = json::array();
  for (int e : p.tgt) out["tgt"].push_back(p.events[size_t(e)].id);
  return out;
}

inline std::string write_ipomset(const Ipomset& p) { return ipomset_to_json(p).dump(2) + "\n"; }

inline Ipomset parse_ipomset(const std::string& text) {
  json j = detail::parse_json(text);
  if (!j.is_object()) throw Error("ParseError", "ipomset: top level must be an object");
  Ipomset p;
  std::map<std::string, int> index;
  const json& events = detail::need(j, "events", "ipomset");
  if (!events.is_array()) throw Error("ParseError", "ipomset: \"events\" must be a list");
  for (const json& je : events) {
    if (!je.is_object()) throw Error("ParseError", "ipomset: event records must be objects");
    IpomsetEvent e{detail::need_string(je, "id", "event"),
                   detail::need_string(je, "label", "event")};
    if (!index.emplace(e.id, p.size()).second)
      throw Error("ParseError", "ipomset: duplicate event id " + e.id);
    p.events.push_back(std::move(e));
  }
  auto resolve = [&index](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw Error("ParseError", "ipomset: unknown event id " + id);
    return it->second;
  };
  const json& lt = detail::need(j, "lt", "ipomset");
  if (!lt.is_array()) throw Error("ParseError", "ipomset: \"lt\" must be a list");
  for (const json& pr : lt) {
    if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
      throw Error("ParseError", "ipomset: \"lt\" entries must be [id, id] pairs");
    p.lt.emplace(resolve(pr[0].get<std::string>()), resolve(pr[1].get<std::string>()));
  }
  close_transitively(p.lt, p.size());
  for (const std::string& id : detail::need_string_list(j, "src", "ipomset"))
    p.src.push_back(resolve(id));
  for (const std::string& id : detail::need_string_list(j, "tgt", "ipomset"))
    p.tgt.push_back(resolve(id));
  if (auto bad = validate_ipomset(p); !bad.empty())
    throw Error("InvalidIpomset", bad.front());
  return p;
}

// ---------------------------------------------------------------------------
// Path text: `cell (step cell)*` with steps `+i` / `-i`, whitespace
// separated.  Inverse of format_path; cell existence is checked by
// validate_path, not here.

inline XPath parse_path(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.empty()) throw Error("ParseError", "path: expected a cell id");
  if (tok.size() % 2 != 1)
    throw Error("ParseError", "path: expected `cell (step cell)*`, got an even token count");
  XPath p;
  p.cells.push_back(tok[0]);
  for (size_t k = 1; k + 1 < tok.size(); k += 2) {
    const std::string& s = tok[k];
    if (s.size() < 2 || (s[0] != '+' && s[0] != '-'))
      throw Error("ParseError", "path: token " + std::to_string(k + 1) + ": step must be +i or -i");
    int idx = 0;
    for (size_t q = 1; q < s.size(); ++q) {
      if (s[q] < '0' || s[q] > '9')
        throw Error("ParseError",
                    "path: token " + std::to_string(k + 1) + ": bad step index in " + s);
      idx = idx * 10 + (s[q] - '0');
    }
    if (idx < 1)
      throw Error("ParseError", "path: token " + std::to_string(k + 1) + ": index must be >= 1");
    p.steps.push_back(Step{s[0] == '+' ? 0 : 1, idx});
    p.cells.push_back(tok[k + 1]);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Permutation / morphism / base-map text.

inline Permutation parse_permutation(const std::string& text) {
  std::string s = text;
  auto strip = [&s] {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  };
  strip();
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw Error("ParseError", "permutation: expected [..] notation, got " + text);
  s = s.substr(1, s.size() - 2);
  std::vector<int> img;
  std::istringstream in(s);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      img.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw Error("ParseError", "permutation: bad entry \"" + part + "\"");
    }
  }
  return Permutation(std::move(img));  // rejects non-bijections itself
}

inline std::string format_canonical(const CanonicalMorphism& m) {
  std::string s = "tau=" + format_permutation(m.tau) + "; d=[";
  for (size_t k = 0; k < m.cofaces.size(); ++k) {
    if (k) s += ",";
    s += "(" + std::to_string(m.cofaces[k].index) + "," + std::to_string(m.cofaces[k].polarity) +
         ")";
  }
  return s + "]";
}

namespace detail {

// splits "key=VALUE" off a "; "-separated clause list
inline std::string clause(const std::string& text, const std::string& key,
                          const std::string& what) {
  const std::string tag = key + "=";
  size_t at = text.find(tag);
  if (at == std::string::npos ||
      (at > 0 && text[at - 1] != ' ' && text[at - 1] != ';' && text[at - 1] != '\t'))
    throw Error("ParseError", what + ": missing \"" + key + "=\"");
  size_t end = text.find(';', at);
  std::string v = text.substr(at + tag.size(),
                              end == std::string::npos ? std::string::npos : end - at - tag.size());
  while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.pop_back();
  return v;
}

}  // namespace detail

// The d-list is read innermost first, matching the storage order.
inline CanonicalMorphism parse_canonical(const std::string& text, const CanonicalObject& target) {
  CanonicalMorphism m;
  m.target = target;
  m.tau = parse_permutation(detail::clause(text, "tau", "morphism"));
  std::string d = detail::clause(text, "d", "morphism");
  if (d.size() < 2 || d.front() != '[' || d.back() != ']')
    throw Error("ParseError", "morphism: d must be a [..] list");
  d = d.substr(1, d.size() - 2);
  size_t at = 0;
  while (at < d.size()) {
    size_t open = d.find('(', at);
    if (open == std::string::npos) break;
    size_t comma = d.find(',', open);
    size_t close = d.find(')', open);
    if (comma == std::string::npos || close == std::string::npos || comma > close)
      throw Error("ParseError", "morphism: d entries must be (index,polarity) pairs");
    Coface cf;
    try {
      cf.index = std::stoi(d.substr(open + 1, comma - open - 1));
      cf.polarity = std::stoi(d.substr(comma + 1, close - comma - 1));
    } catch (const std::exception&) {
      throw Error("ParseError", "morphism: bad d entry near \"" + d.substr(open) + "\"");
    }
    if (cf.polarity != 0 && cf.polarity != 1)
      throw Error("ParseError", "morphism: coface polarity must be 0 or 1");
    m.cofaces.push_back(cf);
    at = close + 1;
  }
  if (m.tau.size() + static_cast<int>(m.cofaces.size()) != target.arity())
    throw Error("ParseError", "morphism: tau and d do not compose to the target arity");
  int arity = m.tau.size();
  for (const Coface& cf : m.cofaces) {
    ++arity;
    if (cf.index < 1 || cf.index > arity)
      throw Error("ParseError", "morphism: coface index " + std::to_string(cf.index) +
                                    " out of range");
  }
  for (size_t k = 1; k < m.cofaces.size(); ++k)
    if (m.cofaces[k].index <= m.cofaces[k - 1].index)
      throw Error("ParseError", "morphism: coface indices must be strictly ascending");
  return m;
}

inline std::string format_base_map(const BaseMap& m) {
  std::string s = "f=[";
  for (size_t k = 0; k < m.f.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(m.f[k]);
  }
  s += "]; eps=\"";
  for (Status e : m.eps) s += status_char(e);
  return s + "\"";
}

inline BaseMap parse_base_map(const std::string& text, const CanonicalObject& source,
                              const CanonicalObject& target,
                              MapMode mode = MapMode::Conclist) {
  BaseMap m;
  m.source = source;
  m.target = target;
  std::string f = detail::clause(text, "f", "base map");
  if (f.size() < 2 || f.front() != '[' || f.back() != ']')
    throw Error("ParseError", "base map: f must be a [..] list");
  std::istringstream in(f.substr(1, f.size() - 2));
  for (std::string part; std::getline(in, part, ',');) {
    try {
      m.f.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw Error("ParseError", "base map: bad f entry \"" + part + "\"");
    }
  }
  std::string eps = detail::clause(text, "eps", "base map");
  if (eps.size() < 2 || eps.front() != '"' || eps.back() != '"')
    throw Error("ParseError", "base map: eps must be quoted");
  for (size_t k = 1; k + 1 < eps.size(); ++k) m.eps.push_back(status_from_char(eps[k]));
  if (auto bad = validate_base_map(m, mode); !bad.empty())
    throw Error("InvalidMap", bad.front());
  return m;
}

// ---------------------------------------------------------------------------
// Verdict JSON.

inline json verdict_to_json(const Verdict& v) {
  json out = json::object();
  out["verdict"] = to_string(v.outcome);
  out["kind"] = to_string(v.kind);
  out["mode"] = to_string(v.mode);
  out["bound"] = v.bound;
  if (v.outcome == Verdict::Outcome::Bisimilar) out["witness_size"] = v.witness.size();
  if (v.outcome == Verdict::Outcome::NotBisimilar) out["counterexample_pair"] = v.counterexample;
  return out;
}

// ---------------------------------------------------------------------------
// Graphviz export.  Vertices become nodes, edges become labeled arrows, and
// each higher cell is recorded as a shaded cluster naming its boundary.
// Cells are walked in id order, so the text is byte-identical across runs.

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string export_dot(const PrecubicalSet& x,
                              const std::optional<CellId>& initial = std::nullopt) {
  std::ostringstream out;
  out << "digraph hda {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (const auto& [id, c] : x.cells()) {
    if (c.object.arity() != 0) continue;
    out << "  " << detail::dot_quote(id);
    if (initial && *initial == id) out << " [peripheries=2]";
    out << ";\n";
  }
  for (const auto& [id, c] : x.cells()) {
    if (c.object.arity() != 1) continue;
    out << "  " << detail::dot_quote(c.d0[0]) << " -> " << detail::dot_quote(c.d1[0])
        << " [label=" << detail::dot_quote(c.object.labels[0]) << "];\n";
  }
  int n = 0;
  for (const auto& [id, c] : x.cells()) {
    if (c.object.arity() < 2) continue;
    std::string note = id + " (";
    for (size_t k = 0; k < c.object.labels.size(); ++k) {
      if (k) note += ",";
      note += c.object.labels[k];
    }
    note += "): d0=";
    for (size_t k = 0; k < c.d0.size(); ++k) note += (k ? "," : "") + c.d0[k];
    note += " d1=";
    for (size_t k = 0; k < c.d1.size(); ++k) note += (k ? "," : "") + c.d1[k];
    out << "  subgraph cluster_" << n++ << " {\n    label=" << detail::dot_quote(note)
        << ";\n    style=filled;\n    color=lightgrey;\n  }\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string export_dot(const HDA& h) { return export_dot(h.complex, h.initial); }

// ---------------------------------------------------------------------------
// Whole-file helpers.

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IOError", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IOError", "cannot write " + path);
  out << content;
}

}  // namespace hdakit

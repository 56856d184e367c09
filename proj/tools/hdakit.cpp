// Command-line front end.  One file holds one complex; bisim compares two.
// Exit codes: 0 success or true verdict, 1 false verdict, 2 input error,
// 3 bisimulation inconclusive at the given bound.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "hdakit/io.hpp"

using namespace hdakit;

namespace {

struct Common {
  bool as_json = false;
  std::string out_file;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.as_json, "machine-readable output");
  sub->add_option("-o", c.out_file, "write output to FILE instead of stdout");
}

void emit(const Common& c, const std::string& text) {
  if (c.out_file.empty())
    std::cout << text;
  else
    write_file(c.out_file, text);
}

HDA load_hda(const std::string& path) {
  try {
    return parse_hda(read_file(path));
  } catch (const Error& e) {
    std::string msg = e.what();
    if (const std::string tag = e.code() + ": "; msg.rfind(tag, 0) == 0) msg = msg.substr(tag.size());
    if (msg.find(path) == std::string::npos) msg = path + ": " + msg;
    throw Error(e.code(), msg);
  }
}

std::string describe_cells(const PrecubicalSet& x) {
  std::map<int, int> by_dim;
  for (const auto& [id, c] : x.cells()) ++by_dim[c.object.arity()];
  std::string s;
  bool first = true;
  for (const auto& [d, n] : by_dim) {
    if (!first) s += ", ";
    s += std::to_string(n);
    if (first) s += " cells";
    s += " dim" + std::to_string(d);
    first = false;
  }
  return s.empty() ? "0 cells" : s;
}

XPath checked_path(const HDA& h, const std::string& text) {
  XPath p = parse_path(text);
  if (auto bad = validate_path(h.complex, p); !bad.empty())
    throw Error("InvalidPath", bad.front());
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order-free semantics of higher-dimensional automata"};
  app.require_subcommand(1);
  int rc = 0;

  std::string file_a, file_b, path_text;
  int bound = 6, max_dim = 6;
  std::string kind_s = "st", mode_s = "trace";

  auto* validate = app.add_subcommand("validate", "check a complex file");
  Common c_validate;
  validate->add_option("file", file_a, "HDA file")->required();
  add_common(validate, c_validate);
  validate->callback([&] {
    HDA h = load_hda(file_a);
    if (c_validate.as_json) {
      json j = json::object();
      j["valid"] = true;
      j["cells_by_dim"] = json::array();
      for (int d = 0; d <= h.complex.max_dim(); ++d)
        j["cells_by_dim"].push_back(h.complex.cells_of_dim(d).size());
      emit(c_validate, j.dump(2) + "\n");
    } else {
      emit(c_validate, "valid; " + describe_cells(h.complex) + "\n");
    }
  });

  auto* symmetrize = app.add_subcommand("symmetrize", "expand a complex to its symmetrisation");
  Common c_sym;
  symmetrize->add_option("file", file_a, "HDA file")->required();
  symmetrize->add_option("--max-dim", max_dim, "expansion cap")->capture_default_str();
  add_common(symmetrize, c_sym);
  symmetrize->callback([&] {
    HDA h = load_hda(file_a);
    SComplex sx(h.complex);
    emit(c_sym, write_hda(forget_symmetry(sx, h.initial, max_dim)));
  });

  auto* paths = app.add_subcommand("paths", "list executions from the initial cell");
  Common c_paths;
  paths->add_option("file", file_a, "HDA file")->required();
  paths->add_option("--bound", bound, "maximum length")->capture_default_str();
  add_common(paths, c_paths);
  paths->callback([&] {
    HDA h = load_hda(file_a);
    std::vector<XPath> ex = enumerate_executions(h, bound);
    if (c_paths.as_json) {
      json j = json::array();
      for (const XPath& p : ex) j.push_back(format_path(h.complex, p));
      emit(c_paths, j.dump(2) + "\n");
    } else {
      std::string s;
      for (const XPath& p : ex) s += format_path(h.complex, p) + "\n";
      emit(c_paths, s);
    }
  });

  auto* label = app.add_subcommand("label", "event ipomset of a path");
  Common c_label;
  label->add_option("file", file_a, "HDA file")->required();
  label->add_option("--path", path_text, "path text, e.g. \"a +1 p -1 b\"")->required();
  add_common(label, c_label);
  label->callback([&] {
    HDA h = load_hda(file_a);
    Ipomset p = ev(h.complex, checked_path(h, path_text));
    std::string s = write_ipomset(p);
    if (!c_label.as_json) s += render_ascii(p);
    emit(c_label, s);
  });

  auto* st = app.add_subcommand("st-trace", "ST-trace of an execution");
  Common c_st;
  st->add_option("file", file_a, "HDA file")->required();
  st->add_option("--path", path_text, "path text; must start at a vertex")->required();
  add_common(st, c_st);
  st->callback([&] {
    HDA h = load_hda(file_a);
    std::string t = format_st_trace(st_trace(h.complex, checked_path(h, path_text)));
    if (c_st.as_json)
      emit(c_st, json{{"trace", t}}.dump(2) + "\n");
    else
      emit(c_st, t + "\n");
  });

  auto* iso_cmd = app.add_subcommand("iso", "compare two ipomset files up to isomorphism");
  Common c_iso;
  iso_cmd->add_option("file", file_a, "ipomset JSON")->required();
  iso_cmd->add_option("other", file_b, "ipomset JSON")->required();
  add_common(iso_cmd, c_iso);
  iso_cmd->callback([&] {
    Ipomset p = parse_ipomset(read_file(file_a));
    Ipomset q = parse_ipomset(read_file(file_b));
    bool same = iso(p, q).has_value();
    if (c_iso.as_json)
      emit(c_iso, json{{"isomorphic", same}}.dump(2) + "\n");
    else
      emit(c_iso, same ? "isomorphic\n" : "not isomorphic\n");
    if (!same) rc = 1;
  });

  auto* bisim = app.add_subcommand("bisim", "bounded bisimulation check");
  Common c_bisim;
  bisim->add_option("file", file_a, "HDA file")->required();
  bisim->add_option("other", file_b, "HDA file")->required();
  bisim->add_option("--kind", kind_s, "st | hp | hhp")
      ->check(CLI::IsMember({"st", "hp", "hhp"}))
      ->capture_default_str();
  bisim->add_option("--mode", mode_s, "trace | ipomset")
      ->check(CLI::IsMember({"trace", "ipomset"}))
      ->capture_default_str();
  bisim->add_option("--bound", bound, "execution length bound")->capture_default_str();
  add_common(bisim, c_bisim);
  bisim->callback([&] {
    HDA hx = load_hda(file_a);
    HDA hy = load_hda(file_b);
    BisimKind kind = kind_s == "st" ? BisimKind::ST
                     : kind_s == "hp" ? BisimKind::HP
                                      : BisimKind::HHP;
    SemanticsMode mode =
        mode_s == "trace" ? SemanticsMode::TraceBased : SemanticsMode::IpomsetBased;
    Verdict v = check_bisim(hx, hy, kind, mode, bound);
    if (c_bisim.as_json) {
      emit(c_bisim, verdict_to_json(v).dump(2) + "\n");
    } else {
      std::string s = to_string(v.outcome) + " (" + to_string(v.kind) + ", " +
                      to_string(v.mode) + ", bound " + std::to_string(v.bound) + ")";
      if (v.outcome == Verdict::Outcome::Bisimilar)
        s += "; witness size " + std::to_string(v.witness.size());
      if (v.outcome == Verdict::Outcome::NotBisimilar) s += ": " + v.counterexample;
      emit(c_bisim, s + "\n");
    }
    if (v.outcome == Verdict::Outcome::NotBisimilar) rc = 1;
    if (v.outcome == Verdict::Outcome::BoundedInconclusive) rc = 3;
  });

  auto* dot = app.add_subcommand("export-dot", "Graphviz view of a complex");
  Common c_dot;
  dot->add_option("file", file_a, "HDA file")->required();
  add_common(dot, c_dot);
  dot->callback([&] {
    HDA h = load_hda(file_a);
    emit(c_dot, export_dot(h));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

#include "cactus/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using nlohmann::json;
using namespace cactus;

namespace {

struct Report {
  std::string command;
  json parameters = json::object();
  json results = json::object();
  json checks = json::array();
  std::string text;

  void check(const std::string& name, verify::Status s, const std::string& details) {
    checks.push_back({{"name", name}, {"status", verify::status_name(s)}, {"details", details}});
    text += std::string(s == verify::Status::pass ? "pass" : s == verify::Status::fail ? "FAIL" : "inconclusive") + "  " +
            name + (details.empty() ? "" : "  " + details) + "\n";
  }
  void check(const std::string& name, bool ok, const std::string& details = "") {
    check(name, ok ? verify::Status::pass : verify::Status::fail, details);
  }
  bool failed() const {
    for (const json& c : checks)
      if (c["status"] == "fail") return true;
    return false;
  }
};

// Input errors: reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void guard_size(int n, bool force) {
  if (n > 9 && !force) throw UsageError("n > 9 needs --force (enumeration grows factorially)");
}

json rational_json(const Rational& r) { return r.str(); }

json component_json(const Component& comp) {
  json pts = json::array();
  for (const SpecialPoint& p : comp.points) {
    json j{{"pos", rational_json(p.pos)}};
    if (p.is_node())
      j["child"] = component_json(p.child[0]);
    else
      j["labels"] = p.labels;
    pts.push_back(j);
  }
  return {{"points", pts}};
}

json curve_json(const MarkedCurve& c) {
  json j = component_json(c.root);
  j["oriented"] = c.oriented;
  return j;
}

Component parse_component(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw StructuralError("component must be an object with a points array");
  Component comp;
  for (const json& p : j["points"]) {
    if (!p.is_object() || !p.contains("pos")) throw StructuralError("special point needs a pos");
    Rational pos = p["pos"].is_string() ? parse_rational(p["pos"].get<std::string>())
                   : p["pos"].is_number_integer() ? Rational(p["pos"].get<long long>())
                                                  : throw StructuralError("pos must be a rational string");
    bool has_child = p.contains("child"), has_labels = p.contains("labels");
    if (has_child == has_labels) throw StructuralError("special point needs exactly one of labels or child");
    if (has_child) {
      comp.points.push_back(node_to(pos, parse_component(p["child"])));
    } else {
      if (!p["labels"].is_array()) throw StructuralError("labels must be an array of integers");
      LeafLabel labels;
      for (const json& l : p["labels"]) {
        if (!l.is_number_integer()) throw StructuralError("labels must be an array of integers");
        labels.push_back(l.get<int>());
      }
      comp.points.push_back(marked(pos, labels));
    }
  }
  return comp;
}

MarkedCurve parse_curve(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw StructuralError(std::string("curve JSON: ") + e.what());
  }
  if (!j.is_object()) throw StructuralError("curve JSON must be an object");
  MarkedCurve c;
  c.oriented = j.value("oriented", false);
  c.root = parse_component(j.contains("components") ? j["components"] : j);
  return normalize_order(c);
}

std::string read_arg(const std::string& s) {
  // '@path' reads the argument from a file
  if (s.empty() || s[0] != '@') return s;
  std::ifstream in(s.substr(1));
  if (!in) throw UsageError("cannot read " + s.substr(1));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json tree_json(const Tree& t) {
  return {{"tree", serialize(t)}, {"dim", dual_dimension(t)}, {"composition", serialize_composition(composition(t))}};
}

Cover parse_cover(const std::string& s) {
  if (s == "base") return Cover::base;
  if (s == "double") return Cover::double_cover;
  throw UsageError("--cover must be base or double");
}

PresVariant parse_variant(const std::string& s) {
  if (s == "full") return PresVariant::full;
  if (s == "oriented") return PresVariant::oriented;
  throw UsageError("--variant must be full or oriented");
}

json presentation_json(const Presentation& P) {
  json gens = json::array(), rels = json::array();
  for (GenSym g : P.generators) gens.push_back({g.p, g.q});
  for (const Word& w : P.relators) {
    json r = json::array();
    for (const Letter& l : w) r.push_back({l.g.p, l.g.q});
    rels.push_back(r);
  }
  return {{"n", P.n}, {"a", P.a}, {"variant", P.variant == PresVariant::full ? "full" : "oriented"},
          {"generators", gens}, {"relators", rels}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell structures of real weighted moduli spaces and weighted cactus groups"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  bool as_json = false, force = false;
  app.add_flag("--json", as_json, "Print the full report as JSON")->configurable(false);
  app.add_flag("--force", force, "Allow n > 9");

  Report rep;
  std::function<void()> action;

  int n = 0, a = 0, b = 0, max_dim = -1, m = 0;
  std::string cover = "base", tree_text, curve_text, which = "big", point_text, variant = "full", format = "text",
              subgroup = "sigma";
  bool want_theta = false;
  long long max_cosets = 0;

  // trees
  auto* trees = app.add_subcommand("trees", "a-stable trees")->require_subcommand(1);
  auto* t_enum = trees->add_subcommand("enumerate", "List a-stable trees up to flips");
  t_enum->add_option("--n", n)->required();
  t_enum->add_option("--a", a)->required();
  t_enum->add_option("--cover", cover, "base|double");
  t_enum->add_option("--max-dim", max_dim);
  t_enum->callback([&] {
    action = [&] {
      guard_size(n, force);
      std::vector<Tree> ts = enumerate_a_stable(n, a, cover_variant(parse_cover(cover)), max_dim);
      json list = json::array();
      for (const Tree& t : ts) {
        list.push_back(tree_json(t));
        rep.text += std::to_string(dual_dimension(t)) + "  " + serialize(t) + "\n";
      }
      rep.results = {{"count", ts.size()}, {"trees", list}};
      rep.text += std::to_string(ts.size()) + " trees\n";
    };
  });
  auto* t_comp = trees->add_subcommand("compress", "Compress a tree");
  t_comp->add_option("--tree", tree_text)->required();
  t_comp->add_option("--a", a)->required();
  t_comp->add_option("--b", b, "Compress from a to b");
  t_comp->callback([&] {
    action = [&] {
      Tree t = parse_tree(tree_text);
      check_structure(t.root);
      Tree out = b ? compress_between(t, a, b) : compress(t, a);
      rep.results = {{"tree", serialize(out)}};
      rep.text = serialize(out) + "\n";
    };
  });
  auto* t_val = trees->add_subcommand("validate", "Check a-stability");
  t_val->add_option("--tree", tree_text)->required();
  t_val->add_option("--n", n)->required();
  t_val->add_option("--a", a)->required();
  t_val->callback([&] {
    action = [&] {
      StabilityReport r = validate_a_stable(parse_tree(tree_text), n, a);
      std::string why;
      for (const std::string& f : r.failures) why += (why.empty() ? "" : "; ") + f;
      rep.check("leaf sizes at most a", r.leaf_sizes_ok);
      rep.check("subtree masses at least a+1", r.subtree_mass_ok, why);
      rep.results = {{"a_stable", r.pass()}, {"failures", r.failures}};
    };
  });

  // curve
  auto* curve = app.add_subcommand("curve", "Trees of marked curves")->require_subcommand(1);
  auto* c_tree = curve->add_subcommand("tree", "Tree of a curve");
  c_tree->add_option("--curve", curve_text, "Curve JSON, or @file")->required();
  c_tree->add_option("--a", a, "Weight parameter (default 1)");
  c_tree->add_option("--which", which, "little|big|big-a|std");
  c_tree->add_flag("--theta", want_theta, "Also print edge coordinates of the refined tree");
  c_tree->callback([&] {
    action = [&] {
      MarkedCurve c = parse_curve(read_arg(curve_text));
      int wa = a ? a : 1;
      Tree t;
      if (which == "little") t = tau_little(c);
      else if (which == "big") t = tau_big(c);
      else if (which == "big-a") t = tau_big_a(c, wa);
      else if (which == "std") t = tau_std(c, wa);
      else throw UsageError("--which must be little, big, big-a or std");
      rep.results = tree_json(t);
      if (which == "std") rep.results["standard_dim"] = standard_dimension(t.root);
      rep.text = serialize(t) + "\n";
      if (want_theta) {
        Tree little = tau_little(c);
        json th = json::array();
        for (const EdgeValue& e : theta_tau(c, little)) {
          th.push_back({{"child", serialize_label(e.child)}, {"parent", serialize_label(e.parent)}, {"value", e.value.str()}});
          rep.text += "theta " + serialize_label(e.child) + " in " + serialize_label(e.parent) + " = " + e.value.str() + "\n";
        }
        rep.results["theta"] = th;
      }
    };
  });

  // cells
  auto* cells = app.add_subcommand("cells", "Dual cell complex")->require_subcommand(1);
  auto* c_stats = cells->add_subcommand("stats", "f-vector and Euler characteristic");
  c_stats->add_option("--n", n)->required();
  c_stats->add_option("--a", a)->required();
  c_stats->add_option("--cover", cover, "base|double");
  c_stats->add_option("--max-dim", max_dim);
  c_stats->callback([&] {
    action = [&] {
      guard_size(n, force);
      CellComplex cx = build_complex(n, a, parse_cover(cover), max_dim);
      std::vector<long long> f = cx.f_vector();
      json by_dim = json::object();
      for (const Cell& c : cx.cells) by_dim[std::to_string(c.dim)].push_back(c.key);
      rep.results = {{"f_vector", f}, {"cells_by_dim", by_dim}};
      rep.text = "f-vector:";
      for (long long x : f) rep.text += " " + std::to_string(x);
      rep.text += "\n";
      if (max_dim < 0 || max_dim >= n - 2) {
        long long chi = euler_characteristic(cx);
        rep.results["euler"] = chi;
        rep.text += "euler: " + std::to_string(chi) + "\n";
      }
    };
  });
  auto* c_faces = cells->add_subcommand("faces", "Compare a cell closure with its product polytope");
  c_faces->add_option("--tree", tree_text)->required();
  c_faces->add_option("--a", a, "Default: largest leaf");
  c_faces->callback([&] {
    action = [&] {
      Tree t = with_variant(parse_tree(tree_text), Variant::stable);
      int tn = check_structure(t.root);
      int ta = a;
      if (!ta)
        for (const LeafLabel& part : composition(t)) ta = std::max(ta, static_cast<int>(part.size()));
      StabilityReport sr = validate_a_stable(t, tn, ta);
      if (!sr.pass()) throw DomainError("tree is not " + std::to_string(ta) + "-stable");
      FaceReport fr = verify_closure_faces(t, tn, ta);
      rep.results = {{"tree", serialize(canonicalize(t))}, {"n", tn}, {"a", ta}, {"expected", fr.expected}, {"actual", fr.actual}};
      rep.check("closure face counts match the cube x permutahedra product", fr.match(),
                verify::detail::join(fr.actual) + " vs " + verify::detail::join(fr.expected));
    };
  });
  auto* c_skel = cells->add_subcommand("skeleton", "Classified 1- and 2-cells at the identity 0-cell of the double cover");
  c_skel->add_option("--n", n)->required();
  c_skel->add_option("--a", a)->required();
  c_skel->callback([&] {
    action = [&] {
      guard_size(n, force);
      CellComplex cx = build_complex(n, a, Cover::double_cover, 2);
      Skeleton sk = two_skeleton(cx, identity_zero_cell(cx));
      json ones = json::array(), twos = json::array();
      rep.text = "basepoint " + cx.cells[sk.basepoint].key + "\n";
      for (const OneCell& e : sk.one_cells) {
        ones.push_back({{"cell", cx.cells[e.cell].key}, {"type", e.type}, {"label", gen_name(e.label)}});
        rep.text += "1-cell type " + std::to_string(e.type) + "  " + gen_name(e.label) + "  " + cx.cells[e.cell].key + "\n";
      }
      for (const TwoCell& f : sk.two_cells) {
        twos.push_back({{"cell", cx.cells[f.cell].key}, {"kind", f.kind}, {"word", word_text(f.word)}});
        rep.text += "2-cell kind " + std::to_string(f.kind) + "  " + word_text(f.word) + "  " + cx.cells[f.cell].key + "\n";
      }
      rep.results = {{"basepoint", cx.cells[sk.basepoint].key}, {"one_cells", ones}, {"two_cells", twos}};
    };
  });

  // perm
  auto* perm = app.add_subcommand("perm", "Permutahedron maps")->require_subcommand(1);
  auto* p_phi = perm->add_subcommand("phi", "Point of the permutahedron to a curve");
  p_phi->add_option("--n", n)->required();
  p_phi->add_option("--point", point_text, "Comma-separated rationals")->required();
  p_phi->callback([&] {
    action = [&] {
      PermPoint x;
      std::stringstream ss(point_text);
      for (std::string item; std::getline(ss, item, ',');) x.push_back(parse_rational(item));
      MarkedCurve c = phi(x, n);
      rep.results = curve_json(c);
      rep.text = rep.results.dump() + "\n";
    };
  });
  auto* p_theta = perm->add_subcommand("theta", "Curve to a point of the permutahedron");
  p_theta->add_option("--curve", curve_text, "Curve JSON, or @file")->required();
  p_theta->callback([&] {
    action = [&] {
      PermPoint x = theta(parse_curve(read_arg(curve_text)));
      json pts = json::array();
      for (const Rational& r : x) pts.push_back(r.str());
      rep.results = {{"point", pts}};
      rep.text = verify::detail::join(x) + "\n";
    };
  });
  auto* p_faces = perm->add_subcommand("faces", "Face lattice of the permutahedron");
  p_faces->add_option("--m", m)->required();
  p_faces->callback([&] {
    action = [&] {
      guard_size(m, force);
      std::vector<Face> fs = face_lattice(m);
      json list = json::array();
      std::vector<long long> counts(m, 0);
      for (const Face& f : fs) {
        json o = json::array();
        for (const Rational& r : f.centroid) o.push_back(r.str());
        list.push_back({{"composition", serialize_composition(f.parts)}, {"dim", f.dim}, {"centroid", o}});
        ++counts[f.dim];
      }
      rep.results = {{"faces", list}, {"counts_by_dim", counts}};
      rep.text = "faces by dimension: " + verify::detail::join(counts) + "\n";
    };
  });

  // group
  auto* group = app.add_subcommand("group", "Weighted cactus groups")->require_subcommand(1);
  auto* g_present = group->add_subcommand("present", "Print a presentation");
  g_present->add_option("--n", n)->required();
  g_present->add_option("--a", a)->required();
  g_present->add_option("--variant", variant, "full|oriented");
  g_present->add_option("--format", format, "text|gap|json");
  g_present->callback([&] {
    action = [&] {
      Presentation P = stated_presentation(n, a, parse_variant(variant));
      rep.results = presentation_json(P);
      if (format == "text") rep.text = format_text(P);
      else if (format == "gap") rep.text = format_gap(P);
      else if (format == "json") rep.text = rep.results.dump(2) + "\n";
      else throw UsageError("--format must be text, gap or json");
    };
  });
  auto coset_options = [&](CLI::App* c) {
    c->add_option("--n", n)->required();
    c->add_option("--a", a)->required();
    c->add_option("--variant", variant, "full|oriented");
    c->add_option("--max-cosets", max_cosets, "Default 1000000 or CACTUS_CELLS_MAX_COSETS");
  };
  auto report_table = [&](const std::string& what, const CosetTable& t) {
    rep.results = {{"status", t.status == CosetStatus::complete ? "complete" : "limitExceeded"},
                   {"cosets_defined", t.cosets_defined}};
    if (t.status == CosetStatus::complete) {
      rep.results[what] = t.index;
      rep.text = what + ": " + std::to_string(t.index) + "\n";
    } else {
      rep.check(what, verify::Status::inconclusive, "coset limit reached after " + std::to_string(t.cosets_defined) + " cosets");
    }
  };
  auto* g_order = group->add_subcommand("order", "Group order by coset enumeration");
  coset_options(g_order);
  g_order->callback([&] {
    action = [&] {
      long long limit = max_cosets ? max_cosets : max_cosets_from_env();
      report_table("order", todd_coxeter(stated_presentation(n, a, parse_variant(variant)), {}, limit));
    };
  });
  auto* g_index = group->add_subcommand("index", "Index of a subgroup by coset enumeration");
  coset_options(g_index);
  g_index->add_option("--subgroup", subgroup, "sigma: the subgroup generated by s_i_i+1");
  g_index->callback([&] {
    action = [&] {
      if (subgroup != "sigma") throw UsageError("--subgroup supports only sigma");
      std::vector<Word> gens;
      for (int i = 1; i < n; ++i) gens.push_back(word({sigma(i)}));
      long long limit = max_cosets ? max_cosets : max_cosets_from_env();
      report_table("index", todd_coxeter(stated_presentation(n, a, parse_variant(variant)), gens, limit));
    };
  });
  auto* g_verify = group->add_subcommand("verify", "Soundness and round-trip checks for one (n, a)");
  g_verify->add_option("--n", n)->required();
  g_verify->add_option("--a", a)->required();
  g_verify->callback([&] {
    action = [&] {
      guard_size(n, force);
      check_parameters(n, a);
      auto sound = [&](const std::vector<Word>& ws) {
        for (const Word& w : ws)
          if (to_sym(w, n) != perm_identity(n)) return word_text(w);
        return std::string();
      };
      for (PresVariant v : {PresVariant::full, PresVariant::oriented}) {
        std::string bad = sound(stated_presentation(n, a, v).relators);
        rep.check(std::string("relators trivial in S_n (") + (v == PresVariant::full ? "full" : "oriented") + ")", bad.empty(), bad);
      }
      if (a >= 3) {
        std::vector<Word> images;
        for (const Word& w : stated_presentation(n, 1, PresVariant::full).relators) images.push_back(quotient_image(w, a));
        std::string bad = sound(images);
        rep.check("quotient images trivial in S_n", bad.empty(), bad);
        std::vector<Word> braids;
        bool sigma_only = true;
        for (const BraidRelator& br : generalized_braid_relators(n, a)) {
          braids.push_back(br.relator);
          for (const Letter& l : br.image) sigma_only = sigma_only && l.g.q - l.g.p == 1;
        }
        bad = sound(braids);
        rep.check("generalized braid relators trivial in S_n", bad.empty(), bad);
        rep.check("generalized braid images use adjacent generators only", sigma_only);
      }
      Presentation D = derive_presentation(build_complex(n, a, Cover::double_cover, 2));
      Presentation S = stated_presentation(n, a, PresVariant::oriented);
      rep.check("derived presentation equals the stated oriented one", presentations_equal(D, S));
      rep.check("flip extension equals the stated full one",
                presentations_equal(extend_by_flip(S), stated_presentation(n, a, PresVariant::full)));
    };
  });

  // verify-all
  verify::Options vo;
  auto* all = app.add_subcommand("verify-all", "Run the acceptance suite");
  all->add_option("--n-max", vo.n_max, "Largest n for sweeps (default 6)")->check(CLI::Range(2, 7));
  all->add_option("--seed", vo.seed, "Seed for sampled checks");
  all->add_flag("--inject-fault", vo.inject_fault, "Corrupt one derived relator (harness self-test)");
  all->callback([&] {
    action = [&] {
      vo.max_cosets = max_cosets_from_env();
      rep.parameters = {{"n_max", vo.n_max}, {"seed", vo.seed}, {"inject_fault", vo.inject_fault}};
      for (const verify::Criterion& c : verify::criteria()) {
        verify::Check r = verify::run_criterion(c, vo);
        rep.checks.push_back({{"name", "criterion " + std::to_string(r.id) + ": " + r.name},
                              {"status", verify::status_name(r.status)},
                              {"details", r.details},
                              {"seconds", r.seconds}});
        rep.text += verify::summary_line(r) + "\n";
        if (!as_json) {
          std::cout << verify::summary_line(r) << std::endl;
        }
      }
      if (!as_json) rep.text.clear();
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (rep.parameters.empty()) {
    if (n) rep.parameters["n"] = n;
    if (a) rep.parameters["a"] = a;
    if (m) rep.parameters["m"] = m;
  }
  rep.command = "";
  for (int i = 1; i < argc; ++i) rep.command += (i > 1 ? " " : "") + std::string(argv[i]);
  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "structural error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const PresentationError& e) {
    std::cerr << "presentation error: " << e.what() << "\n";
    return 2;
  }
  if (as_json) {
    json out{{"command", rep.command}, {"parameters", rep.parameters}, {"results", rep.results}, {"checks", rep.checks}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << rep.text;
  }
  return rep.failed() ? 1 : 0;
}

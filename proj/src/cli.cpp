#include "confseq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "confseq/algebra_file.hpp"
#include "confseq/bgcomplex.hpp"
#include "confseq/catalog.hpp"
#include "confseq/ctcomplex.hpp"
#include "confseq/massey.hpp"
#include "confseq/reports.hpp"
#include "confseq/spectral.hpp"

namespace confseq {

namespace {

struct Options {
  std::string input;
  std::string catalog_name;
  int n = 3;
  bool n_given = false;
  int page = 2;
  std::string field;
  std::string format = "table";
  std::optional<int> truncate;
  std::optional<unsigned> seed;
  bool timing = false;
  std::string complex = "C";
  std::string check_name;
  std::vector<std::string> classes;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Algebra load(const Options& o) {
  if (o.input.empty() == o.catalog_name.empty()) throw InputError("give exactly one of --input FILE and --catalog NAME");
  Algebra a;
  if (!o.input.empty()) {
    std::ifstream f(o.input);
    if (!f) throw InputError("cannot read '" + o.input + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    a = parse_algebra(buf.str());
    if (o.truncate) a = retruncate(a, *o.truncate);
  } else {
    if (o.truncate && !(o.catalog_name == "stb_s2xs2")) throw InputError("--truncate applies to truncated free models");
    a = catalog(o.catalog_name, o.truncate);
  }
  if (!o.field.empty()) a = change_field(a, Field::parse(o.field));
  return a;
}

CheckReport start(const std::string& name, const Algebra& a, int n) {
  CheckReport r;
  r.check = name;
  r.algebra = a.name();
  r.n = n;
  r.field = a.field().name();
  return r;
}

std::shared_ptr<BGComplex> build_kind(const std::string& kind, int n, std::shared_ptr<const Algebra> a) {
  if (kind == "E") return build_E(n, a);
  if (kind == "Ebar") return build_Ebar(n, a);
  if (kind == "J") return build_J(n, a);
  if (kind == "C") return build_C(n, a);
  throw InputError("unknown complex '" + kind + "' (E, Ebar, J, C)");
}

int cohomology_range(const Algebra& model) {
  return model.truncation() ? *model.truncation() - 1 : model.max_degree();
}

Element find_class(const Algebra& h, const std::string& label) {
  auto i = h.find(label);
  if (!i) {
    std::string known;
    for (const auto& b : h.basis()) known += (known.empty() ? "" : ", ") + b.label;
    throw InputError("no cohomology class '" + label + "' (classes: " + known + ")");
  }
  return Element::unit(*i);
}

std::string render_classes(const Algebra& h, const Element& e) {
  std::string out;
  for (const auto& [i, c] : e.entries()) {
    std::string coef = c.to_string();
    const bool neg = coef.front() == '-';
    if (neg) coef.erase(0, 1);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (coef != "1") out += coef + "*";
    out += "[" + h.label(i) + "]";
  }
  return out.empty() ? "0" : out;
}

std::string render_q(const Algebra& h, const Indecomposables& q, const SparseVector& v) {
  Element e;
  for (const auto& [i, c] : v.entries()) e.add(q.basis[i], c);
  return render_classes(h, e);
}

std::string render_qq(const Algebra& h, const Indecomposables& q, const SparseVector& v) {
  HTensor t;
  t.dim = h.dim();
  for (const auto& [k, c] : v.entries()) t.v.add(q.basis[k / q.dim()] * h.dim() + q.basis[k % q.dim()], c);
  return t.render(h);
}

CheckReport cmd_pages(const Options& o, std::shared_ptr<const Algebra> a) {
  CheckReport r = start("pages", *a, o.n);
  auto b = build_kind(o.complex, o.n, a);
  if (o.page < 0) throw InputError("--page must be non-negative");
  SpectralSequence ss(*b);
  for (int k = 0; k <= o.page; ++k) {
    Page pg = ss.page(k);
    for (const auto& [pq, d] : pg.dims)
      if (d != 0) r.blocks.push_back({{"r", k}, {"p", pq.first}, {"q", pq.second}, {"dim", d}});
  }
  for (int k = 0; k <= o.page; ++k)
    r.blocks.push_back({{"r", k}, {"d_r_zero", ss.page(k).d_is_zero()}});
  r.notes.push_back("complex " + b->name + ", total degrees 0.." + std::to_string(b->total_max));
  return r;
}

CheckReport cmd_ct_e2(const Options& o, std::shared_ptr<const Algebra> a) {
  CheckReport r = start("ct-e2", *a, o.n);
  auto e2 = ct_e2(*build_CT(o.n, a));
  for (const auto& [b, d] : e2.dims)
    if (d != 0) r.blocks.push_back({{"p", b.first}, {"h", b.second}, {"dim", d}});
  for (int k = 0; k <= o.n * a->max_degree() + o.n * (o.n - 1) / 2 * std::max(0, a->max_degree() - 1); ++k)
    if (std::size_t t = e2.total(k)) r.blocks.push_back({{"k", k}, {"total", t}});
  return r;
}

CheckReport cmd_total(const Options& o, std::shared_ptr<const Algebra> a) {
  CheckReport r = start("total", *a, o.n);
  auto b = build_kind(o.complex, o.n, a);
  auto h = total_cohomology(*b);
  for (std::size_t k = 0; k < h.size(); ++k) r.blocks.push_back({{"k", k}, {"dim", h[k]}});
  r.notes.push_back("complex " + b->name);
  return r;
}

CheckReport cmd_massey(const Options& o, std::shared_ptr<const Algebra> a) {
  if (o.classes.size() != 3) throw InputError("massey takes three class labels");
  CheckReport r = start("massey", *a, 0);
  Cohomology h(a, cohomology_range(*a));
  const Algebra& ha = h.algebra();
  Element x = find_class(ha, o.classes[0]), y = find_class(ha, o.classes[1]), z = find_class(ha, o.classes[2]);
  const std::string name = "<" + o.classes[0] + "," + o.classes[1] + "," + o.classes[2] + ">";
  try {
    auto m = triple_massey(h, x, y, z, o.seed);
    Indecomposables q = indecomposables(ha);
    std::string ind;
    for (const auto& e : m.indeterminacy) ind += (ind.empty() ? "" : ", ") + render_classes(ha, e);
    r.blocks.push_back({{"quantity", "product"}, {"value", name}});
    r.blocks.push_back({{"quantity", "degree"}, {"value", std::to_string(m.degree)}});
    r.blocks.push_back({{"quantity", "representative"}, {"value", a->render(m.representative)}});
    r.blocks.push_back({{"quantity", "class"}, {"value", render_classes(ha, m.cls)}});
    r.blocks.push_back({{"quantity", "indeterminacy"}, {"value", ind.empty() ? "0" : "span(" + ind + ")"}});
    r.blocks.push_back({{"quantity", "residual"}, {"value", render_q(ha, q, m.residual)}});
    if (!a->d(m.representative).is_zero()) r.fail("representative is not a cocycle");
  } catch (const NotDefined& e) {
    r.fail(name + " is not defined: " + e.what());
  }
  return r;
}

CheckReport cmd_d2(const Options& o, std::shared_ptr<const Algebra> a) {
  if (o.classes.size() != 4) throw InputError("d2 takes four class labels");
  if (o.n_given && o.n != 4) throw InputError("d2 runs on C(4,A); --n must be 4");
  CheckReport r = start("d2", *a, 4);

  // Classes are looked up once to size the bound, then again in the final model.
  auto h0 = std::make_unique<Cohomology>(a, cohomology_range(*a));
  std::array<Element, 4> in;
  for (int i = 0; i < 4; ++i) in[i] = find_class(h0->algebra(), o.classes[i]);
  const int bound = d2_bound(h0->algebra(), in[0], in[1], in[2], in[3]);
  if (a->truncation() && *a->truncation() < bound) {
    a = std::make_shared<const Algebra>(retruncate(*a, bound));
    r.notes.push_back("truncation raised to " + std::to_string(bound));
    h0 = std::make_unique<Cohomology>(a, cohomology_range(*a));
    for (int i = 0; i < 4; ++i) in[i] = find_class(h0->algebra(), o.classes[i]);
  }
  const Cohomology& h = *h0;
  const Algebra& ha = h.algebra();
  C4Engine engine(h, a->truncation() ? std::min(bound, *a->truncation()) : bound);
  auto cc = cross_check_d2(h, engine, in[0], in[1], in[2], in[3]);
  E2TwoElement v = cc.formula.value;
  const bool nonzero = obstruction_residual(v, ha);
  Indecomposables q = indecomposables(ha);
  for (Tag t : {Tag::E23E24, Tag::E23E34}) {
    const auto& res = *v.residual[static_cast<int>(t)];
    r.blocks.push_back({{"tag", tag_name(t)},
                        {"formula", v.at(t).render(ha)},
                        {"zigzag_mod_im_d1", cc.zigzag_e2 ? cc.zigzag.at(t).render(ha) : "undefined"},
                        {"residual_kQ", render_q(ha, q, res.unit_part)},
                        {"residual_QQ", render_qq(ha, q, res.sym_part)}});
  }
  r.notes.push_back(std::string("d2[") + o.classes[0] + "⊗" + o.classes[1] + "⊗" + o.classes[2] + "⊗" + o.classes[3] +
                    "] is " + (nonzero ? "nonzero in E₂^{2,*}" : "zero in (k⊗Q) ⊕ (Q⊗Q)^{Σ₂}"));
  if (!cc.zigzag_e2) {
    r.fail("d1 does not vanish on the class; d2 is not defined");
  } else if (cc.exact) {
    r.notes.push_back("zig-zag d2 on " + engine.complex().name + " agrees with the bracket formula exactly");
  } else if (cc.agree) {
    r.notes.push_back("zig-zag d2 on " + engine.complex().name + " agrees with the bracket formula modulo indeterminacy");
  } else {
    r.fail("zig-zag d2 on " + engine.complex().name + " disagrees with the bracket formula");
  }
  return r;
}

CheckReport cmd_catalog(const Options& o, std::ostream& text, bool& printed) {
  CheckReport r;
  r.check = "catalog";
  r.field = "Q";
  if (!o.catalog_name.empty() || !o.classes.empty()) {
    Algebra a = catalog(o.classes.empty() ? o.catalog_name : o.classes[0], o.truncate);
    if (o.format == "table") {
      text << serialize_algebra(a);
      printed = true;
    }
    r.algebra = a.name();
    r.blocks.push_back({{"text", serialize_algebra(a)}});
    return r;
  }
  for (const auto& name : catalog_names()) {
    Algebra a = catalog(name);
    r.blocks.push_back({{"name", name},
                        {"dim", a.dim()},
                        {"max_degree", a.max_degree()},
                        {"differential", a.has_differential()},
                        {"top", a.top() ? a.label(*a.top()) : "-"}});
  }
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spectral sequences for configuration spaces of manifolds", "confseq"};
  app.require_subcommand(1);
  app.add_option("--input", o.input, "algebra file");
  app.add_option("--catalog", o.catalog_name, "built-in algebra");
  app.add_option("--n", o.n, "number of points (1..4)");
  app.add_option("--page", o.page, "last page for 'pages'");
  app.add_option("--field", o.field, "Q or Fp (e.g. F5)");
  app.add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--truncate", o.truncate, "truncation bound of a free model");
  app.add_option("--seed", o.seed, "perturbs Massey defining systems");
  app.add_option("--complex", o.complex, "E, Ebar, J or C");
  app.add_flag("--timing", o.timing, "report wall-clock durations");

  auto* pages = app.add_subcommand("pages", "E_r dimensions of a graph complex");
  auto* cte2 = app.add_subcommand("ct-e2", "E2 of the Cohen-Taylor complex");
  auto* total = app.add_subcommand("total", "total cohomology of a graph complex");
  auto* check = app.add_subcommand("check", "verification suite");
  check->add_option("name", o.check_name, "prop1, prop3, thm2, prop5, prop6 or theorem1")->required();
  auto* massey = app.add_subcommand("massey", "triple Massey product of three classes");
  massey->add_option("classes", o.classes, "class labels")->expected(3);
  auto* d2 = app.add_subcommand("d2", "d2 of a (x) b (x) c (x) d in C(4,H)");
  d2->add_option("classes", o.classes, "class labels")->expected(4);
  auto* cat = app.add_subcommand("catalog", "list built-in algebras or print one");
  cat->add_option("name", o.classes, "algebra to print")->expected(0, 1);
  for (auto* s : {pages, cte2, total, check, massey, d2, cat}) s->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "confseq: " << e.what() << "\n";
    return kInputError;
  }
  o.n_given = app.count("--n") > 0;

  try {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport r;
    bool printed = false;
    if (cat->parsed()) {
      r = cmd_catalog(o, out, printed);
    } else {
      auto a = std::make_shared<const Algebra>(load(o));
      if (o.n < 1 || o.n > 4) throw InputError("--n must lie in 1..4");
      if (pages->parsed()) r = cmd_pages(o, a);
      if (cte2->parsed()) r = cmd_ct_e2(o, a);
      if (total->parsed()) r = cmd_total(o, a);
      if (check->parsed()) {
        const auto names = check_names();
        if (std::find(names.begin(), names.end(), o.check_name) == names.end())
          throw InputError("unknown check '" + o.check_name + "'");
        r = run_check(o.check_name, a, o.n);
      }
      if (massey->parsed()) r = cmd_massey(o, a);
      if (d2->parsed()) r = cmd_d2(o, a);
    }
    if (r.duration_ms == 0)
      r.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!printed) out << (o.format == "json" ? r.to_json(o.timing).dump(2) + "\n" : r.table(o.timing));
    return r.pass ? kSuccess : kFail;
  } catch (const InputError& e) {
    err << "confseq: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "confseq: parse error at " << e.what() << "\n";
  } catch (const AxiomViolation& e) {
    err << "confseq: axiom violated: " << e.what() << "\n";
  } catch (const Overflow& e) {
    err << "confseq: " << e.what() << " (raise --truncate)\n";
  } catch (const DegeneratePairing& e) {
    err << "confseq: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "confseq: " << e.what() << "\n";
  } catch (const MismatchError& e) {
    err << "confseq: " << e.what() << "\n";
    return kFail;
  }
  return kInputError;
}

}  // namespace confseq

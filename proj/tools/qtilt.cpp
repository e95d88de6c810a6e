// Command-line front end: algebra ingestion, model construction, tilting
// enumeration, quotient verification, DOT and JSON report emission.
//
// Exit codes: 0 all asserted checks pass, 1 a check failed, 2 inconclusive
// (search bound or window), 3 input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qtilt/algfile.hpp"
#include "qtilt/cluster.hpp"
#include "qtilt/report.hpp"

using namespace qtilt;

namespace {

int g_mult_bound_cap = -1;  // from QTILT_MULT_BOUND; -1 = library default


void emit(const Json& report, const std::string& out_path) {
  Json r = report;
  finalize_report(r);
  std::string text = r.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
}

int exit_code_for(const Json& report) { return all_checks_pass(report) ? 0 : 1; }

template <class F>
IndStrategy pick_strategy(const AlgebraHandle<F>* h, const std::string& requested) {
  if (requested == "nakayama") return IndStrategy::nakayama;
  if (requested == "knit") return IndStrategy::hereditary_knit;
  if (requested == "closure") return IndStrategy::closure;
  // auto
  if (h->alg->relations.empty()) return IndStrategy::hereditary_knit;
  if (is_nakayama(*h->alg)) return IndStrategy::nakayama;
  return IndStrategy::closure;
}

template <class F>
std::vector<int> parse_object_list(const LinCategory<F>& cat, const std::string& csv) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.push_back(cat.object_index(cur));
      cur.clear();
    }
  };
  for (char c : csv) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

template <class F>
int run_validate(const F& field, const AlgebraFile& af, const std::string& out_path) {
  Json rep = base_report("validate " + af.name);
  auto h = realize_algebra(field, af);
  rep["algebra"] = {{"name", af.name}, {"field", af.field_tag}, {"dim", h->alg->dim()}};
  add_check(rep, "path basis finite", true, {{"dim", h->alg->dim()}});
  if (af.expect_dim) add_check(rep, "expected dimension", *af.expect_dim == h->alg->dim());
  add_check(rep, "nakayama", true, {{"value", is_nakayama(*h->alg)}});
  bool selfinj = true;
  for (int v = 0; v < h->alg->num_vertices(); ++v)
    if (!is_injective_module(projective_module(h.get(), v))) selfinj = false;
  add_check(rep, "self-injective", true, {{"value", selfinj}});
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int run_indec(const F& field, const AlgebraFile& af, const std::string& strategy, const std::string& out_path) {
  Json rep = base_report("indec " + af.name + " --strategy " + strategy);
  auto h = realize_algebra(field, af);
  auto ind = indecomposables(h.get(), pick_strategy(h.get(), strategy));
  Json list = Json::array();
  for (size_t i = 0; i < ind.mods.size(); ++i) {
    Json m;
    m["label"] = ind.labels[i];
    m["dims"] = ind.mods[i].dims;
    list.push_back(m);
  }
  rep["indecomposables"] = list;
  add_check(rep, "complete", ind.complete_verified, {{"note", ind.note}});
  if (af.expect_indecomposables)
    add_check(rep, "expected count", *af.expect_indecomposables == static_cast<int>(ind.mods.size()));
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int run_ar_quiver(const F& field, const AlgebraFile& af, const std::string& dot_path,
                  const std::string& out_path) {
  Json rep = base_report("ar-quiver " + af.name);
  auto h = realize_algebra(field, af);
  auto ind = indecomposables(h.get(), pick_strategy<F>(h.get(), "auto"));
  auto sk = build_modcat_skeleton(h.get(), ind);
  ArQuiver<F> q = radical_and_ar_quiver(sk.cat);
  std::string dot = ar_quiver_dot(q, af.name);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    out << dot;
  }
  rep["nodes"] = q.nodes;
  Json edges = Json::array();
  for (auto& [s, t, m] : q.edges) edges.push_back({{"src", q.nodes[s]}, {"tgt", q.nodes[t]}, {"mult", m}});
  rep["edges"] = edges;
  add_check(rep, "mesh closure", verify_mesh_closure(ind.mods));
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int run_stable(const F& field, const AlgebraFile& af, const std::string& out_path) {
  Json rep = base_report("stable " + af.name);
  auto h = realize_algebra(field, af);
  auto model = build_stable(h, pick_strategy<F>(h.get(), "auto"));
  rep["objects"] = model->tri.cat.objects;
  auto serre = serre_verify(model->tri);
  add_check(rep, "serre duality", serre.ok, {{"violations", serre.violations.size()}});
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int run_derived(const F& field, const AlgebraFile& af, int lo, int hi, const std::string& out_path) {
  Json rep = base_report("derived " + af.name);
  auto h = realize_algebra(field, af);
  auto W = build_derived_window(h, lo, hi);
  rep["window"] = {{"lo", lo}, {"hi", hi}, {"objects", W->n_objects()}};
  bool functors_ok = true;
  try {
    verify_partial_functor(W->cat, W->tau);
    verify_partial_functor(W->cat, W->Fmap);
  } catch (...) {
    functors_ok = false;
  }
  add_check(rep, "translate and orbit functors", functors_ok);
  int viol = 0;
  for (int x = 0; x < W->n_objects(); ++x)
    for (int y = 0; y < W->n_objects(); ++y) {
      int dx = W->deg_of(x), dy = W->deg_of(y);
      if (dx < lo + 2 || dx > hi - 2 || dy < lo + 2 || dy > hi - 2) continue;
      int tx = W->tau.obj[x];
      if (tx < 0 || W->shift.obj[tx] < 0) continue;
      if (W->cat.hom_dim[x][y] != W->cat.hom_dim[y][W->shift.obj[tx]]) ++viol;
    }
  add_check(rep, "serre duality on the core", viol == 0, {{"violations", viol}});
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int run_cluster(const F& field, const AlgebraFile& af, int lo, int hi, const std::string& out_path) {
  Json rep = base_report("cluster " + af.name);
  auto h = realize_algebra(field, af);
  auto W = build_derived_window(h, lo, hi);
  auto CM = build_cluster(W);
  rep["objects"] = CM->cat.objects;
  bool ends_one = true;
  for (int a = 0; a < CM->cat.n(); ++a)
    if (CM->cat.hom_dim[a][a] != 1) ends_one = false;
  add_check(rep, "indecomposable endomorphism rings", ends_one);
  auto W2 = build_derived_window(h, lo - 1, hi + 1);
  auto CM2 = build_cluster(W2);
  bool stable_dims = CM->cat.n() == CM2->cat.n();
  if (stable_dims)
    for (int a = 0; a < CM->cat.n(); ++a)
      for (int b = 0; b < CM->cat.n(); ++b)
        if (CM->cat.hom_dim[a][b] != CM2->cat.hom_dim[a][b]) stable_dims = false;
  add_check(rep, "window saturation", stable_dims);
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int run_tilting(const F& field, const AlgebraFile& af, const std::string& model_kind,
                const std::string& check_csv, bool enumerate, int lo, int hi, const std::string& out_path) {
  Json rep = base_report("tilting " + af.name + " --model " + model_kind);
  auto h = realize_algebra(field, af);
  TriangModel<F> model;
  std::shared_ptr<StableModel<F>> sm;
  std::shared_ptr<DerivedWindow<F>> W;
  std::shared_ptr<ClusterModel<F>> CM;
  if (model_kind == "stable") {
    sm = build_stable(h, pick_strategy<F>(h.get(), "auto"));
    model = sm->tri;
  } else if (model_kind == "cluster") {
    W = build_derived_window(h, lo, hi);
    CM = build_cluster(W);
    model = CM->tri;
  } else {
    throw AlgebraFileError("model must be stable or cluster");
  }
  ExtTable<F> ext = build_ext_table(model);
  if (enumerate) {
    auto en = enumerate_tilting(ext);
    Json list = Json::array();
    for (auto& t : en.tilting) {
      Json names = Json::array();
      for (int x : t) names.push_back(model.cat.objects[x]);
      list.push_back(names);
    }
    rep["tilting_subcategories"] = list;
    Json obstructions = Json::array();
    for (auto& ob : en.obstructions) {
      Json o;
      Json cand = Json::array();
      for (int x : ob.candidate) cand.push_back(model.cat.objects[x]);
      o["candidate"] = cand;
      if (ob.witness >= 0) {
        o["witness"] = model.cat.objects[ob.witness];
        o["vanishing"] = ob.vanishing_direction;
        o["blocking"] = {{"from", model.cat.objects[ob.blocking_pair.first]},
                         {"to", model.cat.objects[ob.blocking_pair.second]},
                         {"ext_dim", ob.blocking_dim}};
      }
      obstructions.push_back(o);
    }
    rep["maximal_rigid_failures"] = obstructions;
    add_check(rep, "enumeration complete", true, {{"count", en.tilting.size()}});
  } else {
    auto S = parse_object_list(model.cat, check_csv);
    TiltingReport tr = is_tilting(ext, S);
    Json detail;
    detail["verdict"] = tr.verdict;
    detail["rigid"] = tr.rigid;
    detail["functorially_finite"] = tr.finiteness_automatic;
    if (!tr.rigid)
      detail["rigid_violation"] = {model.cat.objects[tr.rigid_violation.first],
                                   model.cat.objects[tr.rigid_violation.second]};
    if (tr.witness_cond2 >= 0) detail["maximality_witness_out"] = model.cat.objects[tr.witness_cond2];
    if (tr.witness_cond3 >= 0) detail["maximality_witness_in"] = model.cat.objects[tr.witness_cond3];
    add_check(rep, "tilting", tr.is_tilting(), detail);
  }
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int run_quotient(const F& field, const AlgebraFile& af, const std::string& model_kind,
                 const std::string& by_csv, bool allow_override, const std::string& task, int lo, int hi,
                 const std::string& out_path) {
  Json rep = base_report("quotient " + af.name + " --by " + by_csv + " --task " + task);
  auto h = realize_algebra(field, af);
  TriangModel<F> model;
  std::shared_ptr<StableModel<F>> sm;
  std::shared_ptr<DerivedWindow<F>> W;
  std::shared_ptr<ClusterModel<F>> CM;
  if (model_kind == "stable") {
    sm = build_stable(h, pick_strategy<F>(h.get(), "auto"));
    model = sm->tri;
  } else if (model_kind == "cluster") {
    W = build_derived_window(h, lo, hi);
    CM = build_cluster(W);
    model = CM->tri;
  } else {
    throw AlgebraFileError("model must be stable or cluster");
  }
  auto S = parse_object_list(model.cat, by_csv);
  QuotientModel<F> Q = build_quotient(model, S, allow_override);
  rep["quotient"] = {{"objects", Q.cat().objects}, {"override", Q.override_not_tilting}};
  if (Q.override_not_tilting) rep["override_banner"] = "subcategory is not tilting; fallback verification only";

  bool inconclusive = false;
  if (task == "verify") {
    AbelianCertificate<F> cert = verify_abelian(Q, g_mult_bound_cap);
    add_check(rep, "mono/epi agreement", cert.disagreements == 0,
              {{"disagreements", cert.disagreements}});
    add_check(rep, "kernels and cokernels", cert.ok && !cert.inconclusive, {{"route", cert.route}});
    inconclusive = cert.inconclusive;
    Json morphisms = Json::array();
    for (auto& v : cert.verdicts) {
      Json m;
      m["from"] = Q.cat().objects[v.i];
      m["to"] = Q.cat().objects[v.j];
      m["index"] = v.k;
      m["mono"] = v.cat_mono;
      m["epi"] = v.cat_epi;
      m["kernel"] = v.kernel_obj;
      m["cokernel"] = v.cokernel_obj;
      morphisms.push_back(m);
    }
    rep["basis_morphisms"] = morphisms;
  } else if (task == "gorenstein") {
    GorensteinReport<F> g = gorenstein(Q, g_mult_bound_cap);
    Json projs = Json::array(), injs = Json::array();
    for (int p : g.pi.projectives) projs.push_back(Q.cat().objects[p]);
    for (int i : g.pi.injectives) injs.push_back(Q.cat().objects[i]);
    rep["projectives"] = projs;
    rep["injectives"] = injs;
    add_check(rep, "enough projectives", g.enough_projectives);
    add_check(rep, "enough injectives", g.enough_injectives);
    add_check(rep, "resolutions of length at most one", g.all_resolutions_short);
    add_check(rep, "gorenstein dimension", g.dimension <= 1, {{"dimension", g.dimension}});
  } else if (task == "frobenius") {
    FrobeniusReport<F> fr = frobenius_check(Q);
    add_check(rep, "criteria agree", fr.agree,
              {{"proj_eq_inj", fr.proj_eq_inj},
               {"tilting_eq_double_shift", fr.tilt_eq_shift2},
               {"serre_fixes_tilting", fr.serre_fixes_tilt}});
  } else if (task == "endo") {
    EndoAlgebraReport<F> er = endo_algebra(Q);
    Json quiver;
    quiver["vertices"] = er.quiver.vertices;
    Json arrows = Json::array();
    for (auto& a : er.quiver.arrows)
      arrows.push_back({{"label", a.label},
                        {"src", er.quiver.vertices[a.src]},
                        {"tgt", er.quiver.vertices[a.tgt]}});
    quiver["arrows"] = arrows;
    rep["presentation"] = quiver;
    rep["relations"] = er.relations;
    rep["algebra_dim"] = er.algebra_dim;
    add_check(rep, "monomial presentation", er.monomial, {{"note", er.note}});
  } else if (task == "converse") {
    ConverseReport<F> cv = converse_checks(Q);
    add_check(rep, "precondition rigid", cv.precondition_rigid);
    add_check(rep, "mono iff connecting map dies", cv.mono_iff_h_dies,
              {{"triangles", cv.triangles_checked}});
    add_check(rep, "epi iff next map dies", cv.epi_iff_g_dies);
    add_check(rep, "translate disjointness", cv.tau_disjoint);
    add_check(rep, "no two-sided-orthogonal outsider", cv.no_orthogonal_outsider);
  } else {
    throw AlgebraFileError("unknown quotient task " + task);
  }
  emit(rep, out_path);
  if (inconclusive) return 2;
  return exit_code_for(rep);
}

int run_examples_all(const std::string& out_path) {
  Json rep = base_report("examples run-all");
  RatField q;
  // a1: stable pipeline and the tilting quotient
  {
    auto af = builtin_algebra("a1");
    auto h = realize_algebra(q, af);
    add_check(rep, "a1 dimension", h->alg->dim() == 8);
    auto sm = build_stable(h);
    add_check(rep, "a1 stable objects", sm->tri.cat.n() == 6);
    ExtTable<RatField> ext = build_ext_table(sm->tri);
    std::vector<int> S{sm->tri.cat.object_index("a"), sm->tri.cat.object_index("a/b/a")};
    add_check(rep, "a1 tilting subcategory", is_tilting(ext, S).is_tilting());
    QuotientModel<RatField> Q = build_quotient(sm->tri, S);
    add_check(rep, "a1 quotient size", Q.cat().n() == 4);
    auto cert = verify_abelian(Q);
    add_check(rep, "a1 quotient abelian", cert.ok && cert.disagreements == 0);
    auto g = gorenstein(Q);
    add_check(rep, "a1 quotient frobenius", g.dimension == 0);
  }
  // a2: no tilting subcategory; one abelian override quotient
  {
    auto af = builtin_algebra("a2");
    auto h = realize_algebra(q, af);
    auto sm = build_stable(h);
    add_check(rep, "a2 stable objects", sm->tri.cat.n() == 4);
    ExtTable<RatField> ext = build_ext_table(sm->tri);
    auto en = enumerate_tilting(ext);
    add_check(rep, "a2 has no tilting subcategory", en.tilting.empty());
    QuotientModel<RatField> Q =
        build_quotient(sm->tri, std::vector<int>{sm->tri.cat.object_index("a")}, true);
    auto cert = verify_abelian(Q, 2);
    add_check(rep, "a2 override quotient abelian", cert.ok && cert.disagreements == 0);
  }
  // a3: derived window and the cluster category
  {
    auto af = builtin_algebra("a3");
    auto h = realize_algebra(q, af);
    auto W = build_derived_window(h, -4, 4);
    auto CM = build_cluster(W);
    add_check(rep, "a3 cluster objects", CM->cat.n() == 9);
    ExtTable<RatField> ext = build_ext_table(CM->tri);
    auto en = enumerate_tilting(ext);
    add_check(rep, "a3 cluster tilting count", en.tilting.size() == 14);
  }
  emit(rep, out_path);
  return exit_code_for(rep);
}

template <class F>
int dispatch(const F& field, const std::string& cmd, const AlgebraFile& af, const std::string& strategy,
             const std::string& dot_path, const std::string& model_kind, const std::string& check_csv,
             bool enumerate, const std::string& by_csv, bool allow_override, const std::string& task,
             int lo, int hi, const std::string& out_path) {
  if (cmd == "validate") return run_validate(field, af, out_path);
  if (cmd == "indec") return run_indec(field, af, strategy, out_path);
  if (cmd == "ar-quiver") return run_ar_quiver(field, af, dot_path, out_path);
  if (cmd == "stable") return run_stable(field, af, out_path);
  if (cmd == "derived") return run_derived(field, af, lo, hi, out_path);
  if (cmd == "cluster") return run_cluster(field, af, lo, hi, out_path);
  if (cmd == "tilting") return run_tilting(field, af, model_kind, check_csv, enumerate, lo, hi, out_path);
  if (cmd == "quotient")
    return run_quotient(field, af, model_kind, by_csv, allow_override, task, lo, hi, out_path);
  throw AlgebraFileError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for tilting subcategories and abelian quotients of small triangulated categories"};
  app.require_subcommand(1);

  if (const char* cap = std::getenv("QTILT_MULT_BOUND")) g_mult_bound_cap = std::atoi(cap);

  std::string path, dot_path, out_path, strategy = "auto", model_kind = "stable", check_csv, by_csv,
                               task = "verify";
  bool enumerate = false, allow_override = false, builtin = false;
  int lo = -4, hi = 4;

  auto add_common = [&](CLI::App* sub, bool needs_path = true) {
    if (needs_path) {
      sub->add_option("path", path, "algebra definition file (JSON)");
      sub->add_flag("--builtin", builtin, "treat 'path' as a built-in algebra name (a1, a2, a3)");
    }
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
  };

  auto* c_validate = app.add_subcommand("validate", "parse and validate an algebra file");
  add_common(c_validate);
  auto* c_indec = app.add_subcommand("indec", "enumerate indecomposable modules");
  add_common(c_indec);
  c_indec->add_option("--strategy", strategy, "auto|nakayama|knit|closure");
  auto* c_ar = app.add_subcommand("ar-quiver", "emit the AR quiver of the module category");
  add_common(c_ar);
  c_ar->add_option("--dot", dot_path, "write a DOT file");
  auto* c_stable = app.add_subcommand("stable", "build the stable category model");
  add_common(c_stable);
  auto* c_derived = app.add_subcommand("derived", "build the windowed derived model");
  add_common(c_derived);
  c_derived->add_option("--lo", lo, "window lower degree");
  c_derived->add_option("--hi", hi, "window upper degree");
  auto* c_cluster = app.add_subcommand("cluster", "build the orbit (cluster) category");
  add_common(c_cluster);
  c_cluster->add_option("--lo", lo, "window lower degree");
  c_cluster->add_option("--hi", hi, "window upper degree");
  auto* c_tilt = app.add_subcommand("tilting", "check or enumerate tilting subcategories");
  add_common(c_tilt);
  c_tilt->add_option("--model", model_kind, "stable|cluster");
  c_tilt->add_option("--check", check_csv, "comma-separated object labels");
  c_tilt->add_flag("--enumerate", enumerate, "enumerate all tilting subcategories");
  c_tilt->add_option("--lo", lo, "window lower degree");
  c_tilt->add_option("--hi", hi, "window upper degree");
  auto* c_quot = app.add_subcommand("quotient", "build and verify a quotient category");
  add_common(c_quot);
  c_quot->add_option("--model", model_kind, "stable|cluster");
  c_quot->add_option("--by", by_csv, "comma-separated object labels")->required();
  c_quot->add_flag("--override", allow_override, "allow non-tilting subcategories (fallback verification)");
  c_quot->add_option("--task", task, "verify|gorenstein|frobenius|endo|converse");
  c_quot->add_option("--lo", lo, "window lower degree");
  c_quot->add_option("--hi", hi, "window upper degree");
  auto* c_all = app.add_subcommand("examples", "built-in example corpus");
  auto* c_all_run = c_all->add_subcommand("run-all", "run the full built-in corpus");
  add_common(c_all_run, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_all_run->parsed()) return run_examples_all(out_path);
    std::string cmd;
    for (auto* sub : {c_validate, c_indec, c_ar, c_stable, c_derived, c_cluster, c_tilt, c_quot})
      if (sub->parsed()) cmd = sub->get_name();
    AlgebraFile af = builtin ? builtin_algebra(path) : load_algebra_file(path);
    if (af.prime == 0) {
      RatField q;
      return dispatch(q, cmd, af, strategy, dot_path, model_kind, check_csv, enumerate, by_csv,
                      allow_override, task, lo, hi, out_path);
    }
    PrimeField fp(af.prime);
    return dispatch(fp, cmd, af, strategy, dot_path, model_kind, check_csv, enumerate, by_csv,
                    allow_override, task, lo, hi, out_path);
  } catch (const AlgebraFileError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const InvalidQuiver& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const InfiniteDimensional& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const NotFoundWithinBound& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const WindowTooNarrow& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const WindowExceeded& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#include "doctest.h"

#include "qtilt/examples.hpp"
#include "qtilt/module_homalg.hpp"

using namespace qtilt;
using F = RatField;

namespace {

const F kQ{};

// Serial module with prescribed Loewy word over a two-vertex cycle algebra:
// word "a/b/a" = truncated projective at its top vertex.
Module<F> serial(const AlgebraHandle<F>* h, const std::string& top, int len) {
  return truncated_projective(h, h->alg->quiver.vertex_index(top), len);
}

int hom_dim(const Module<F>& m, const Module<F>& n) { return hom_basis(m, n).dim; }

}  // namespace

TEST_CASE("projectives realized on path bases") {
  auto a1 = example_a1();
  auto a3 = example_a3();
  Module<F> pa1 = projective_module(a1.get(), 0);
  CHECK(pa1.dims == std::vector<int>{2, 2});
  CHECK(module_label(pa1) == "a/b/a/b");
  Module<F> pa3 = projective_module(a3.get(), 0);
  CHECK(pa3.dims == std::vector<int>{1, 1, 1});
  Module<F> pc3 = projective_module(a3.get(), 2);
  CHECK(modules_isomorphic(pc3, simple_module(a3.get(), 2)));
  validate_module(pa1);
  validate_module(pa3);
}

TEST_CASE("hom dimensions: path-count oracle") {
  auto a1 = example_a1();
  auto a3 = example_a3();
  // Hom(P_v, P_w) has dimension #paths w -> v
  for (int v = 0; v < 2; ++v)
    for (int w = 0; w < 2; ++w) {
      Module<F> pv = projective_module(a1.get(), v);
      Module<F> pw = projective_module(a1.get(), w);
      CHECK(hom_dim(pv, pw) == static_cast<int>(paths_between(*a1->alg, w, v).size()));
    }
  CHECK(hom_dim(projective_module(a1.get(), 0), projective_module(a1.get(), 0)) == 2);
  CHECK(hom_dim(simple_module(a1.get(), 0), simple_module(a1.get(), 1)) == 0);
  CHECK(hom_dim(projective_module(a3.get(), 0), simple_module(a3.get(), 0)) == 1);
}

TEST_CASE("dim Hom(P_v, M) equals dim of M at v") {
  auto a1 = example_a1();
  auto mods = indecomposables(a1.get(), IndStrategy::nakayama);
  for (const auto& m : mods.mods)
    for (int v = 0; v < 2; ++v)
      CHECK(hom_dim(projective_module(a1.get(), v), m) == m.dims[v]);
}

TEST_CASE("duality and injectives") {
  auto a1 = example_a1();
  auto a2 = example_a2();
  auto a3 = example_a3();
  // self-injective examples: I matches a projective
  CHECK(modules_isomorphic(injective_module(a1.get(), 1), projective_module(a1.get(), 0)));
  CHECK(modules_isomorphic(injective_module(a2.get(), 0), projective_module(a2.get(), 0)));
  // a3: I_c = P_a, I_a = S_a
  CHECK(modules_isomorphic(injective_module(a3.get(), 2), projective_module(a3.get(), 0)));
  CHECK(modules_isomorphic(injective_module(a3.get(), 0), simple_module(a3.get(), 0)));
  // double dual is the identity on the nose
  Module<F> m = serial(a1.get(), "a", 3);
  Module<F> dd = dual_module(dual_module(m));
  CHECK(dd.h == m.h);
  CHECK(dd.dims == m.dims);
}

TEST_CASE("self-injectivity via projective-injective comparison") {
  auto check_selfinj = [](const AlgebraHandle<F>* h) {
    for (int v = 0; v < h->alg->num_vertices(); ++v)
      if (!is_injective_module(projective_module(h, v))) return false;
    return true;
  };
  CHECK(check_selfinj(example_a1().get()));
  CHECK(check_selfinj(example_a2().get()));
  CHECK(!check_selfinj(example_a3().get()));
}

TEST_CASE("decompose: repeated and mixed summands") {
  auto a1 = example_a1();
  Module<F> pa = projective_module(a1.get(), 0);
  std::vector<const Module<F>*> parts{&pa, &pa};
  Module<F> m = direct_sum(a1.get(), parts).sum;
  auto dec = decompose(m);
  REQUIRE(dec.size() == 1);
  CHECK(dec[0].multiplicity == 2);
  CHECK(modules_isomorphic(dec[0].mod, pa));

  auto a3 = example_a3();
  Module<F> p0 = projective_module(a3.get(), 0), p1 = projective_module(a3.get(), 1),
            p2 = projective_module(a3.get(), 2);
  std::vector<const Module<F>*> reg{&p0, &p1, &p2};
  auto dec3 = decompose(direct_sum(a3.get(), reg).sum);
  CHECK(dec3.size() == 3);
  for (auto& d : dec3) CHECK(d.multiplicity == 1);
}

TEST_CASE("is_indecomposable") {
  auto a1 = example_a1();
  CHECK(is_indecomposable(simple_module(a1.get(), 0)));
  Module<F> sa = simple_module(a1.get(), 0), sb = simple_module(a1.get(), 1);
  std::vector<const Module<F>*> parts{&sa, &sb};
  CHECK(!is_indecomposable(direct_sum(a1.get(), parts).sum));
  CHECK(is_indecomposable(serial(a1.get(), "a", 3)));  // a/b/a
}

TEST_CASE("syzygies over the first example algebra") {
  auto a1 = example_a1();
  Module<F> sa = simple_module(a1.get(), 0);
  Module<F> om = syzygy(sa).mod;
  CHECK(modules_isomorphic(om, serial(a1.get(), "b", 3)));  // rad P_a = b/a/b
  Module<F> com = cosyzygy(sa).mod;
  CHECK(modules_isomorphic(com, serial(a1.get(), "b", 3)));
  CHECK(syzygy(projective_module(a1.get(), 0)).mod.total_dim() == 0);
}

TEST_CASE("ext1 presentations") {
  auto a1 = example_a1();
  auto a3 = example_a3();
  CHECK(ext1_dim(simple_module(a3.get(), 0), simple_module(a3.get(), 1)) == 1);
  CHECK(ext1_dim(simple_module(a3.get(), 1), simple_module(a3.get(), 0)) == 0);
  CHECK(ext1_dim(projective_module(a3.get(), 0), simple_module(a3.get(), 2)) == 0);
  CHECK(ext1_dim(projective_module(a1.get(), 0), simple_module(a1.get(), 0)) == 0);
  CHECK(ext1_dim(simple_module(a1.get(), 0), simple_module(a1.get(), 0)) == 0);  // no loop
  CHECK(ext1_dim(simple_module(a1.get(), 0), simple_module(a1.get(), 1)) == 1);  // arrow a->b
}

TEST_CASE("AR translate") {
  auto a2 = example_a2();
  auto a3 = example_a3();
  // tau(S_a) over a3 is the simple at b
  Module<F> t = ar_translate(simple_module(a3.get(), 0));
  CHECK(modules_isomorphic(t, simple_module(a3.get(), 1)));
  CHECK_THROWS_AS(ar_translate(projective_module(a3.get(), 0)), HasProjectiveSummand);
  // tau(b/a) = a/b over a2
  Module<F> ba = serial(a2.get(), "b", 2);
  Module<F> ab = serial(a2.get(), "a", 2);
  CHECK(modules_isomorphic(ar_translate(ba), ab));
  // tau and tau^{-1} are mutually inverse away from projectives/injectives
  Module<F> sb = simple_module(a3.get(), 1);
  CHECK(modules_isomorphic(ar_translate_inv(ar_translate(sb)), sb));
}

TEST_CASE("AR duality dimension equality on both sides of the chosen convention") {
  for (auto h : {example_a1(), example_a2()}) {
    auto mods = indecomposables(h.get(), IndStrategy::nakayama);
    for (const auto& X : mods.mods) {
      if (is_projective_module(X)) continue;
      Module<F> tX = ar_translate_indec(X);
      for (const auto& Y : mods.mods) {
        // Ext^1(X, Y) ~ D Hom(Y, tau X) modulo injectives
        CHECK(ext1_dim(X, Y) == stable_hom_dim_mod_inj(Y, tX));
      }
    }
  }
}

TEST_CASE("indecomposables: example counts") {
  auto a1 = example_a1();
  auto a2 = example_a2();
  auto a3 = example_a3();
  auto l1 = indecomposables(a1.get(), IndStrategy::nakayama);
  auto l2 = indecomposables(a2.get(), IndStrategy::nakayama);
  auto l3 = indecomposables(a3.get(), IndStrategy::hereditary_knit);
  CHECK(l1.mods.size() == 8);
  CHECK(l2.mods.size() == 6);
  CHECK(l3.mods.size() == 6);
  // closure agrees with the Nakayama answer on a1
  auto c1 = indecomposables(a1.get(), IndStrategy::closure);
  CHECK(c1.mods.size() == 8);
  // expected labels
  std::set<std::string> want{"a", "b", "a/b", "b/a", "a/b/a", "b/a/b", "a/b/a/b", "b/a/b/a"};
  std::set<std::string> got(l1.labels.begin(), l1.labels.end());
  CHECK(got == want);
}

TEST_CASE("mesh closure certifies the lists") {
  auto a1 = example_a1();
  auto l1 = indecomposables(a1.get(), IndStrategy::nakayama);
  CHECK(verify_mesh_closure(l1.mods));
  auto a3 = example_a3();
  auto l3 = indecomposables(a3.get(), IndStrategy::hereditary_knit);
  CHECK(verify_mesh_closure(l3.mods));
}

TEST_CASE("almost split sequences") {
  auto a3 = example_a3();
  // ending at S_b: 0 -> S_c -> [b..c interval] -> S_b -> 0
  Module<F> sb = simple_module(a3.get(), 1);
  ArSequence<F> seq = ar_sequence_ending_at(sb);
  CHECK(modules_isomorphic(seq.tau_x, simple_module(a3.get(), 2)));
  CHECK(seq.middle.dims == std::vector<int>{0, 1, 1});
  auto l3 = indecomposables(a3.get(), IndStrategy::hereditary_knit);
  std::vector<const Module<F>*> testers;
  for (auto& m : l3.mods) testers.push_back(&m);
  CHECK(verify_almost_split(seq, testers));

  // ending at a/b over the first example: middle is b + a/b/a
  auto a1 = example_a1();
  Module<F> ab = serial(a1.get(), "a", 2);
  ArSequence<F> seq1 = ar_sequence_ending_at(ab);
  CHECK(modules_isomorphic(seq1.tau_x, serial(a1.get(), "b", 2)));
  auto dec = decompose(seq1.middle);
  REQUIRE(dec.size() == 2);
  bool found_b = false, found_aba = false;
  for (auto& d : dec) {
    if (modules_isomorphic(d.mod, simple_module(a1.get(), 1))) found_b = true;
    if (modules_isomorphic(d.mod, serial(a1.get(), "a", 3))) found_aba = true;
  }
  CHECK(found_b);
  CHECK(found_aba);

  CHECK_THROWS_AS(ar_sequence_ending_at(projective_module(a1.get(), 0)), IsProjective);
}

TEST_CASE("decompose is idempotent on re-summed decompositions") {
  auto a1 = example_a1();
  Module<F> x = serial(a1.get(), "a", 2), y = serial(a1.get(), "b", 3), z = simple_module(a1.get(), 0);
  std::vector<const Module<F>*> parts{&x, &y, &z, &z};
  Module<F> m = direct_sum(a1.get(), parts).sum;
  auto d1 = decompose(m);
  std::vector<Module<F>> resum;
  std::vector<const Module<F>*> ptrs;
  for (auto& d : d1)
    for (int k = 0; k < d.multiplicity; ++k) resum.push_back(d.mod);
  for (auto& r : resum) ptrs.push_back(&r);
  auto d2 = decompose(direct_sum(a1.get(), ptrs).sum);
  REQUIRE(d1.size() == d2.size());
  // same multiset up to iso
  for (auto& a : d1) {
    bool matched = false;
    for (auto& b : d2)
      if (a.multiplicity == b.multiplicity && modules_isomorphic(a.mod, b.mod)) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("hom_basis rejects algebra mixtures") {
  auto a1 = example_a1();
  auto a2 = example_a2();
  CHECK_THROWS_AS(hom_basis(simple_module(a1.get(), 0), simple_module(a2.get(), 0)), AlgebraMismatch);
}

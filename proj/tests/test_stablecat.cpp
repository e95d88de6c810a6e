#include "doctest.h"

#include "qtilt/examples.hpp"
#include "qtilt/stable.hpp"

using namespace qtilt;
using F = RatField;

namespace {

int obj_ix(const TriangModel<F>& T, const std::string& label) { return T.cat.object_index(label); }

}  // namespace

TEST_CASE("stable model of the length-4 cycle algebra") {
  auto model = build_stable(example_a1());
  const TriangModel<F>& T = model->tri;
  CHECK(T.cat.n() == 6);
  // shift permutation: a <-> b/a/b, b <-> a/b/a, a/b and b/a fixed
  int a = obj_ix(T, "a"), b = obj_ix(T, "b"), ab = obj_ix(T, "a/b"), ba = obj_ix(T, "b/a"),
      aba = obj_ix(T, "a/b/a"), bab = obj_ix(T, "b/a/b");
  CHECK(T.shift.obj[a] == bab);
  CHECK(T.shift.obj[bab] == a);
  CHECK(T.shift.obj[b] == aba);
  CHECK(T.shift.obj[ab] == ab);
  CHECK(T.shift.obj[ba] == ba);
  // [1][-1] = id on objects and coordinates by construction; spot check objects
  for (int i = 0; i < 6; ++i) CHECK(T.shift_inv.obj[T.shift.obj[i]] == i);
  // the square of the shift fixes every object
  for (int i = 0; i < 6; ++i) CHECK(T.shift.obj[T.shift.obj[i]] == i);
}

TEST_CASE("stable model of the length-3 cycle algebra") {
  auto model = build_stable(example_a2());
  const TriangModel<F>& T = model->tri;
  CHECK(T.cat.n() == 4);
  int a = obj_ix(T, "a"), b = obj_ix(T, "b"), ab = obj_ix(T, "a/b"), ba = obj_ix(T, "b/a");
  // shift 4-cycle a -> a/b -> b -> b/a -> a
  CHECK(T.shift.obj[a] == ab);
  CHECK(T.shift.obj[ab] == b);
  CHECK(T.shift.obj[b] == ba);
  CHECK(T.shift.obj[ba] == a);
}

TEST_CASE("hereditary algebra is rejected") {
  CHECK_THROWS_AS(build_stable(example_a3(), IndStrategy::hereditary_knit), NotSelfInjective);
}

TEST_CASE("serre duality dimension check") {
  auto m1 = build_stable(example_a1());
  auto rep1 = serre_verify(m1->tri);
  CHECK(rep1.ok);
  auto m2 = build_stable(example_a2());
  auto rep2 = serre_verify(m2->tri);
  CHECK(rep2.ok);
  // negative control: identity in place of tau produces violations
  TriangModel<F> broken = m1->tri;
  for (int i = 0; i < broken.cat.n(); ++i) broken.tau.obj[i] = i;
  CHECK(!serre_verify(broken).ok);
}

TEST_CASE("stable ext agrees with module ext for all ordered pairs") {
  for (auto owner : {example_a1(), example_a2()}) {
    auto model = build_stable(owner);
    const TriangModel<F>& T = model->tri;
    int n = T.cat.n();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const Module<F>& X = model->amb.mods[model->amb_of[x]];
        const Module<F>& Y = model->amb.mods[model->amb_of[y]];
        CHECK(ext1_stable(T, x, y) == ext1_dim(X, Y));
      }
  }
}

TEST_CASE("ext asymmetry in the length-3 cycle stable category") {
  auto model = build_stable(example_a2());
  const TriangModel<F>& T = model->tri;
  int a = obj_ix(T, "a"), ab = obj_ix(T, "a/b"), ba = obj_ix(T, "b/a");
  CHECK(ext1_stable(T, a, a) == 0);
  CHECK(ext1_stable(T, a, ba) >= 1);
  CHECK(ext1_stable(T, a, ab) == 0);
  CHECK(ext1_stable(T, ab, a) != 0);  // one-directional vanishing
}

TEST_CASE("cones: identity, zero map, socle inclusion") {
  auto model = build_stable(example_a2());
  const TriangModel<F>& T = model->tri;
  int a = obj_ix(T, "a"), ba = obj_ix(T, "b/a");

  // cone of an identity is the zero object
  Triangle<F> t1 = T.cone(identity_mor(T.cat, SumObj{{a}}));
  CHECK(t1.g.tgt.parts.empty());

  // cone of the zero map X -> Y is Y ⊕ X[1]
  Triangle<F> t2 = T.cone(zero_mor(T.cat, SumObj{{a}}, SumObj{{ba}}));
  std::multiset<int> parts(t2.g.tgt.parts.begin(), t2.g.tgt.parts.end());
  std::multiset<int> want{ba, T.shift.obj[a]};
  CHECK(parts == want);
  CHECK(verify_triangle(T, t2));

  // cone of the socle inclusion a -> b/a (one-dimensional hom space)
  REQUIRE(T.cat.hom_dim[a][ba] == 1);
  Triangle<F> t3 = T.cone(basis_mor(T.cat, a, ba, 0));
  CHECK(verify_triangle(T, t3));
  // connecting map matches a nonzero ext class
  CHECK(!mor_is_zero(T.cat, t3.h));
}

TEST_CASE("every basis morphism yields a structurally valid triangle") {
  for (auto owner : {example_a1(), example_a2()}) {
    auto model = build_stable(owner);
    const TriangModel<F>& T = model->tri;
    for (int i = 0; i < T.cat.n(); ++i)
      for (int j = 0; j < T.cat.n(); ++j)
        for (int k = 0; k < T.cat.hom_dim[i][j]; ++k) {
          Triangle<F> t = T.cone(basis_mor(T.cat, i, j, k));
          CHECK(verify_triangle(T, t));
        }
  }
}

TEST_CASE("categorical monos in the stable source split (triangulated sanity)") {
  // a stable morphism that is a categorical mono must be a section
  for (auto owner : {example_a1(), example_a2()}) {
    auto model = build_stable(owner);
    const TriangModel<F>& T = model->tri;
    for (int i = 0; i < T.cat.n(); ++i)
      for (int j = 0; j < T.cat.n(); ++j)
        for (int k = 0; k < T.cat.hom_dim[i][j]; ++k) {
          CatMor<F> f = basis_mor(T.cat, i, j, k);
          if (is_mono(T.cat, f)) {
            // section: g with g∘f = id
            auto basis = sum_hom_basis(T.cat, f.tgt, f.src);
            int d = sum_hom_dim(T.cat, f.src, f.src);
            Mat<F> sys(T.cat.field, d, static_cast<int>(basis.size()));
            for (size_t c = 0; c < basis.size(); ++c) {
              auto img = mor_flatten(T.cat, compose_mors(T.cat, f, basis[c]));
              for (int r = 0; r < d; ++r) sys.at(r, static_cast<int>(c)) = img[r];
            }
            auto rhs = mor_flatten(T.cat, identity_mor(T.cat, f.src));
            CHECK(solve(sys, rhs).has_value());
          }
          if (is_epi(T.cat, f)) {
            auto basis = sum_hom_basis(T.cat, f.tgt, f.src);
            int d = sum_hom_dim(T.cat, f.tgt, f.tgt);
            Mat<F> sys(T.cat.field, d, static_cast<int>(basis.size()));
            for (size_t c = 0; c < basis.size(); ++c) {
              auto img = mor_flatten(T.cat, compose_mors(T.cat, basis[c], f));
              for (int r = 0; r < d; ++r) sys.at(r, static_cast<int>(c)) = img[r];
            }
            auto rhs = mor_flatten(T.cat, identity_mor(T.cat, f.tgt));
            CHECK(solve(sys, rhs).has_value());
          }
        }
  }
}

TEST_CASE("tau matches the module-level translate on objects") {
  auto model = build_stable(example_a2());
  const TriangModel<F>& T = model->tri;
  for (int x = 0; x < T.cat.n(); ++x) {
    const Module<F>& X = model->amb.mods[model->amb_of[x]];
    Module<F> tx = ar_translate_indec(X);
    int amb_t = model->amb.find_iso(tx);
    REQUIRE(amb_t >= 0);
    CHECK(model->q.old_to_new[amb_t] == T.tau.obj[x]);
  }
}

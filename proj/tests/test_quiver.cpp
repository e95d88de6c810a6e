#include "doctest.h"

#include "qtilt/examples.hpp"
#include "qtilt/quiver.hpp"

using namespace qtilt;

namespace {

// Independent oracle: enumerate all arrow strings up to a length cap, keep
// the composable relation-free ones. Used to cross-check the BFS basis.
template <class F>
int brute_force_path_count(const Algebra<F>& A, int maxlen) {
  int count = A.num_vertices();  // trivial paths
  std::vector<std::vector<int>> cur;
  for (int a = 0; a < A.num_arrows(); ++a) cur.push_back({a});
  for (int len = 1; len <= maxlen && !cur.empty(); ++len) {
    std::vector<std::vector<int>> next;
    for (auto& seq : cur) {
      if (!A.contains_relation(seq)) {
        ++count;
        for (int a = 0; a < A.num_arrows(); ++a) {
          if (A.quiver.arrows[a].src != A.quiver.arrows[seq.back()].tgt) continue;
          auto s2 = seq;
          s2.push_back(a);
          next.push_back(s2);
        }
      }
    }
    cur = std::move(next);
  }
  return count;
}

}  // namespace

TEST_CASE("path bases of the example algebras") {
  auto a1 = example_a1();
  auto a2 = example_a2();
  auto a3 = example_a3();
  CHECK(a1->alg->dim() == 8);
  CHECK(a2->alg->dim() == 6);
  CHECK(a3->alg->dim() == 6);
  CHECK(a1->alg->dim() == brute_force_path_count(*a1->alg, 16));
  CHECK(a2->alg->dim() == brute_force_path_count(*a2->alg, 16));
  CHECK(a3->alg->dim() == brute_force_path_count(*a3->alg, 16));
}

TEST_CASE("path basis ordering is breadth-first then lexicographic") {
  auto a1 = example_a1();
  const auto& basis = a1->alg->basis;
  for (size_t i = 1; i < basis.size(); ++i) CHECK(basis[i - 1].length() <= basis[i].length());
  CHECK(basis[0].length() == 0);
}

TEST_CASE("compose: identities, relations, concatenation") {
  auto a1 = example_a1();
  auto a2 = example_a2();
  const Algebra<RatField>& A1 = *a1->alg;
  const Algebra<RatField>& A2 = *a2->alg;

  Path ea = A1.vertex_path(0);
  Path alpha = *A1.make_path({0});
  auto r = A1.compose(ea, alpha);
  REQUIRE(r.has_value());
  CHECK(*r == alpha);

  // alpha*beta*alpha hits the relation in a2
  Path ab = *A2.make_path({0, 1});
  Path al = *A2.make_path({0});
  CHECK(!A2.compose(ab, al).has_value());

  // in a1 the same composite survives
  Path ab1 = *A1.make_path({0, 1});
  auto s = A1.compose(ab1, *A1.make_path({0}));
  REQUIRE(s.has_value());
  CHECK(s->length() == 3);
  CHECK(s->source == 0);
  CHECK(s->target == 1);
}

TEST_CASE("composition is associative on all basis path triples") {
  auto a1 = example_a1();
  const Algebra<RatField>& A = *a1->alg;
  for (const Path& p : A.basis)
    for (const Path& q : A.basis)
      for (const Path& r : A.basis) {
        auto pq = A.compose(p, q);
        auto qr = A.compose(q, r);
        std::optional<Path> left, right;
        if (pq) left = A.compose(*pq, r);
        if (qr) right = A.compose(p, *qr);
        bool lz = !left.has_value(), rz = !right.has_value();
        CHECK(lz == rz);
        if (!lz) CHECK(*left == *right);
      }
}

TEST_CASE("dimension partitions by endpoints") {
  auto a1 = example_a1();
  const Algebra<RatField>& A = *a1->alg;
  int total = 0;
  for (int v = 0; v < A.num_vertices(); ++v)
    for (int w = 0; w < A.num_vertices(); ++w) total += static_cast<int>(paths_between(A, v, w).size());
  CHECK(total == A.dim());
}

TEST_CASE("infinite dimensional detection") {
  Quiver q = two_cycle_quiver();
  CHECK_THROWS_AS(make_algebra(RatField{}, q, {}), InfiniteDimensional);
}

TEST_CASE("nakayama recognition") {
  CHECK(is_nakayama(*example_a1()->alg));
  CHECK(is_nakayama(*example_a2()->alg));
  CHECK(is_nakayama(*example_a3()->alg));
  Quiver q;
  q.vertices = {"x", "y", "z"};
  q.arrows = {{"u", 0, 1}, {"v", 0, 2}};
  auto alg = make_algebra(RatField{}, q, {});
  CHECK(!is_nakayama(alg));
}

TEST_CASE("loops are rejected") {
  Quiver q;
  q.vertices = {"x"};
  q.arrows = {{"l", 0, 0}};
  CHECK_THROWS_AS(make_algebra(RatField{}, q, {}), InvalidQuiver);
}

TEST_CASE("opposite algebra has the same dimension and reversed relations") {
  auto a2 = example_a2();
  auto op = opposite_algebra(*a2->alg);
  CHECK(op.dim() == a2->alg->dim());
  CHECK(op.relations.size() == a2->alg->relations.size());
  // double opposite returns the same handle
  const AlgebraHandle<RatField>* h = a2.get();
  CHECK(opposite(opposite(h)) == h);
}

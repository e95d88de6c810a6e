#ifndef QTILT_EXAMPLES_HPP
#define QTILT_EXAMPLES_HPP

#include "qtilt/module.hpp"

namespace qtilt {

// Built-in example algebras over Q used by the CLI corpus and the test
// suites. All three live on small quivers:
//   a1: two-vertex cycle a <-> b, zero relations of length 4
//   a2: two-vertex cycle a <-> b, zero relations of length 3
//   a3: linear quiver a -> b -> c, hereditary
inline Quiver two_cycle_quiver() {
  Quiver q;
  q.vertices = {"a", "b"};
  q.arrows = {{"alpha", 0, 1}, {"beta", 1, 0}};
  return q;
}

inline std::shared_ptr<AlgebraHandle<RatField>> example_a1() {
  return make_handle(make_algebra(RatField{}, two_cycle_quiver(),
                                  {{"alpha", "beta", "alpha", "beta"}, {"beta", "alpha", "beta", "alpha"}}));
}

inline std::shared_ptr<AlgebraHandle<RatField>> example_a2() {
  return make_handle(make_algebra(RatField{}, two_cycle_quiver(),
                                  {{"alpha", "beta", "alpha"}, {"beta", "alpha", "beta"}}));
}

inline std::shared_ptr<AlgebraHandle<RatField>> example_a3() {
  Quiver q;
  q.vertices = {"a", "b", "c"};
  q.arrows = {{"ab", 0, 1}, {"bc", 1, 2}};
  return make_handle(make_algebra(RatField{}, q, {}));
}

}  // namespace qtilt

#endif

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "psforms/random.hpp"

namespace fixtures {

using namespace psforms;

inline SimplicialComplex complex_of(std::initializer_list<std::initializer_list<const char*>> gens) {
  std::vector<Simplex> s;
  for (auto g : gens) s.emplace_back(std::vector<VertexId>(g.begin(), g.end()));
  return SimplicialComplex::closure(s);
}

inline Simplex S(std::initializer_list<const char*> vs) { return Simplex(std::vector<VertexId>(vs.begin(), vs.end())); }

inline SimplicialComplex circle() { return complex_of({{"v0", "v1"}, {"v1", "v2"}, {"v0", "v2"}}); }
inline SimplicialComplex triangle() { return complex_of({{"v0", "v1", "v2"}}); }
inline SimplicialComplex tetra_boundary() {
  return complex_of({{"v0", "v1", "v2"}, {"v0", "v1", "v3"}, {"v0", "v2", "v3"}, {"v1", "v2", "v3"}});
}
inline SimplicialComplex point() { return complex_of({{"v0"}}); }
inline SimplicialComplex path() { return complex_of({{"v0", "v1"}, {"v1", "v2"}}); }

inline LieAlgebra catalog(const std::string& name) {
  for (auto& e : random::catalog())
    if (e.name == name) return e.algebra;
  throw std::runtime_error("no catalog entry " + name);
}
inline LieAlgebra aff1() { return catalog("aff1"); }
inline LieAlgebra sl2() { return catalog("sl2"); }

inline Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace fixtures

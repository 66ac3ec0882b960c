#include "psforms/complex.hpp"

#include <algorithm>

namespace psforms {

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw MalformedSimplex("empty simplex");
  std::sort(vertices_.begin(), vertices_.end());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].empty()) throw MalformedSimplex("empty vertex name");
    if (i > 0 && vertices_[i] == vertices_[i - 1]) {
      throw MalformedSimplex("duplicate vertex '" + vertices_[i] + "' in simplex");
    }
  }
}

bool Simplex::contains(const VertexId& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::optional<std::size_t> Simplex::position(const VertexId& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool Simplex::is_face_of(const Simplex& other) const {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

Simplex Simplex::without(std::size_t pos) const {
  std::vector<VertexId> rest;
  rest.reserve(vertices_.size() - 1);
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i != pos) rest.push_back(vertices_[i]);
  }
  return Simplex(std::move(rest));
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (vertices_.size() < 2) return out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) out.push_back(without(i));
  return out;
}

std::vector<Simplex> Simplex::faces() const {
  const std::size_t n = vertices_.size();
  std::vector<Simplex> out;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<VertexId> vs;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1UL << i)) vs.push_back(vertices_[i]);
    }
    out.emplace_back(std::move(vs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Simplex Simplex::join(const Simplex& other) const {
  std::vector<VertexId> u;
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                 std::back_inserter(u));
  return Simplex(std::move(u));
}

std::string Simplex::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) s += ",";
    s += vertices_[i];
  }
  return s + "}";
}

SimplicialComplex SimplicialComplex::closure(const std::vector<Simplex>& generators) {
  if (generators.empty()) throw InputError("closure needs at least one generator");
  SimplicialComplex K;
  for (const auto& g : generators) {
    if (g.size() > 20) throw MalformedSimplex("simplex too large: " + g.to_string());
    if (K.contains(g)) continue;
    for (auto& f : g.faces()) K.simplices_.insert(std::move(f));
  }
  return K;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int d) const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_) {
    if (s.dim() == d) out.push_back(s);
  }
  return out;
}

std::vector<VertexId> SimplicialComplex::vertices() const {
  std::vector<VertexId> out;
  for (const auto& s : simplices_) {
    if (s.dim() != 0) break;
    out.push_back(s.anchor());
  }
  return out;
}

int SimplicialComplex::dim() const { return simplices_.empty() ? -1 : simplices_.rbegin()->dim(); }

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  return std::all_of(simplices_.begin(), simplices_.end(),
                     [&](const Simplex& s) { return other.contains(s); });
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_) {
    bool maximal = true;
    for (const auto& t : simplices_) {
      if (t.size() > s.size() && s.is_face_of(t)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

PointBary::PointBary(std::map<VertexId, Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InputError("point has no coordinates");
  Rational sum = 0;
  std::vector<VertexId> support;
  for (const auto& [v, c] : coords_) {
    if (sgn(c) <= 0) throw InputError("barycentric coordinate of " + v + " is not positive");
    sum += c;
    support.push_back(v);
  }
  if (sum != 1) throw InputError("barycentric coordinates sum to " + to_string(sum) + ", not 1");
  candidate_ = Simplex(std::move(support));
}

Simplex carrier(const SimplicialComplex& K, const PointBary& a) {
  if (!K.contains(a.carrier_candidate())) {
    throw NotInComplex("carrier " + a.carrier_candidate().to_string() + " is not a simplex of K");
  }
  return a.carrier_candidate();
}

StarOpen generalized_star(const SimplicialComplex& K, const PointBary& a) {
  return StarOpen{carrier(K, a)};
}

namespace {

void require_member(const SimplicialComplex& K, const Simplex& s) {
  if (!K.contains(s)) throw NotInComplex(s.to_string() + " is not a simplex of K");
}

}  // namespace

std::vector<Simplex> open_star_members(const SimplicialComplex& K, const StarOpen& U) {
  require_member(K, U.center);
  std::vector<Simplex> out;
  for (const auto& s : K.simplices()) {
    if (U.center.is_face_of(s)) out.push_back(s);
  }
  return out;
}

std::optional<StarOpen> star_intersection(const SimplicialComplex& K, const StarOpen& U,
                                          const StarOpen& V) {
  require_member(K, U.center);
  require_member(K, V.center);
  Simplex j = U.center.join(V.center);
  if (!K.contains(j)) return std::nullopt;
  return StarOpen{std::move(j)};
}

SimplicialComplex closed_star_subcomplex(const SimplicialComplex& K, const StarOpen& U) {
  return SimplicialComplex::closure(open_star_members(K, U));
}

}  // namespace psforms

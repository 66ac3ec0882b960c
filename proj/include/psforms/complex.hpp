#pragma once

// Finite simplicial complexes over named vertices, stars of simplices and
// covers by open stars.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "psforms/errors.hpp"
#include "psforms/rational.hpp"

namespace psforms {

using VertexId = std::string;

class MalformedSimplex : public InputError {
 public:
  using InputError::InputError;
};

class NotInComplex : public Error {
 public:
  using Error::Error;
};

/// A closed simplex: a sorted, duplicate-free, nonempty vertex set.
/// The minimum vertex is the anchor whose barycentric coordinate is
/// eliminated in local computations.
class Simplex {
 public:
  Simplex() = default;
  /// Sorts the vertices. Throws MalformedSimplex on duplicates, empty
  /// names or an empty list.
  explicit Simplex(std::vector<VertexId> vertices);
  Simplex(std::initializer_list<VertexId> vertices) : Simplex(std::vector<VertexId>(vertices)) {}

  const std::vector<VertexId>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  const VertexId& anchor() const { return vertices_.front(); }
  const VertexId& operator[](std::size_t i) const { return vertices_[i]; }

  bool contains(const VertexId& v) const;
  std::optional<std::size_t> position(const VertexId& v) const;
  /// True if every vertex of this simplex is a vertex of `other`.
  bool is_face_of(const Simplex& other) const;
  /// The facet obtained by dropping the vertex at `pos`. Requires dim() >= 1.
  Simplex without(std::size_t pos) const;
  std::vector<Simplex> facets() const;
  /// All nonempty faces, including the simplex itself, in (dim, lex) order.
  std::vector<Simplex> faces() const;
  Simplex join(const Simplex& other) const;

  std::string to_string() const;

  /// Simplices are ordered by dimension, then lexicographically.
  friend bool operator<(const Simplex& a, const Simplex& b) {
    if (a.vertices_.size() != b.vertices_.size()) return a.vertices_.size() < b.vertices_.size();
    return a.vertices_ < b.vertices_;
  }
  friend bool operator==(const Simplex& a, const Simplex& b) = default;

 private:
  std::vector<VertexId> vertices_;
};

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Smallest face-closed complex containing the generators.
  static SimplicialComplex closure(const std::vector<Simplex>& generators);

  bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }
  const std::set<Simplex>& simplices() const { return simplices_; }
  std::vector<Simplex> simplices_of_dim(int d) const;
  std::vector<VertexId> vertices() const;
  std::size_t size() const { return simplices_.size(); }
  bool empty() const { return simplices_.empty(); }
  int dim() const;
  bool is_subcomplex_of(const SimplicialComplex& other) const;
  /// Simplices that are maximal with respect to inclusion.
  std::vector<Simplex> maximal_simplices() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) = default;

 private:
  std::set<Simplex> simplices_;
};

/// A point of |K| in exact barycentric coordinates over its support.
class PointBary {
 public:
  /// Throws InputError unless every coordinate is strictly positive and
  /// the coordinates sum to 1.
  explicit PointBary(std::map<VertexId, Rational> coords);

  const Simplex& carrier_candidate() const { return candidate_; }
  const std::map<VertexId, Rational>& coords() const { return coords_; }

 private:
  Simplex candidate_;
  std::map<VertexId, Rational> coords_;
};

/// The open star St(center): a basis element of the regular-open topology.
struct StarOpen {
  Simplex center;

  friend bool operator==(const StarOpen&, const StarOpen&) = default;
  friend bool operator<(const StarOpen& a, const StarOpen& b) { return a.center < b.center; }
};

struct Cover {
  std::vector<StarOpen> members;
};

Simplex carrier(const SimplicialComplex& K, const PointBary& a);

/// St a coincides with St(Δ_a) for the carrier Δ_a of a.
StarOpen generalized_star(const SimplicialComplex& K, const PointBary& a);

/// The simplices whose interiors make up St(center): all cofaces of center.
std::vector<Simplex> open_star_members(const SimplicialComplex& K, const StarOpen& U);

/// St σ ∩ St τ = St(σ ∪ τ) when σ ∪ τ ∈ K, and is empty otherwise.
std::optional<StarOpen> star_intersection(const SimplicialComplex& K, const StarOpen& U,
                                          const StarOpen& V);

SimplicialComplex closed_star_subcomplex(const SimplicialComplex& K, const StarOpen& U);

}  // namespace psforms

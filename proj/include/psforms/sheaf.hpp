#pragma once

// The sheaf of piecewise forms on the star basis {St σ}: presheaf laws,
// gluing, and partitions of unity subordinate to star covers.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psforms/piecewise.hpp"

namespace psforms {

/// numerator / denominator on one simplex; the denominator is a nonzero
/// 0-form without a dual part.
class RationalForm {
 public:
  explicit RationalForm(AlgebroidForm numerator);
  RationalForm(AlgebroidForm numerator, AlgebroidForm denominator);

  const AlgebroidForm& numerator() const { return num_; }
  const AlgebroidForm& denominator() const { return den_; }
  const Simplex& simplex() const { return num_.simplex(); }
  int degree() const { return num_.degree(); }
  bool is_zero() const { return num_.is_zero(); }

  RationalForm& operator+=(const RationalForm& rhs);
  friend RationalForm operator+(RationalForm a, const RationalForm& b) { return a += b; }
  friend RationalForm operator-(const RationalForm& a, const RationalForm& b);
  /// Equality by cross-multiplication.
  friend bool operator==(const RationalForm& a, const RationalForm& b);

 private:
  AlgebroidForm num_;
  AlgebroidForm den_;
};

RationalForm wedge(const RationalForm& a, const RationalForm& b);
/// Quotient rule: D(N/Q) = (Q·DN - dQ∧N) / Q².
RationalForm differential(const LieAlgebra& g, const RationalForm& w);
/// Throws Error if the denominator vanishes identically on the face.
RationalForm restrict_to_face(const RationalForm& w, const Simplex& s);

class PiecewiseRationalForm {
 public:
  PiecewiseRationalForm(ComplexPtr parent, int degree);
  explicit PiecewiseRationalForm(const PiecewiseForm& w);

  const ComplexPtr& parent() const { return parent_; }
  int degree() const { return degree_; }
  const std::map<Simplex, RationalForm>& components() const { return components_; }
  const RationalForm& operator[](const Simplex& s) const;
  void set(const Simplex& s, RationalForm w);
  bool is_zero() const;

  PiecewiseRationalForm& operator+=(const PiecewiseRationalForm& rhs);
  friend PiecewiseRationalForm operator+(PiecewiseRationalForm a, const PiecewiseRationalForm& b) {
    return a += b;
  }
  friend bool operator==(const PiecewiseRationalForm& a, const PiecewiseRationalForm& b);

 private:
  ComplexPtr parent_;
  int degree_;
  std::map<Simplex, RationalForm> components_;
};

std::optional<Incompatibility> find_incompatibility(const PiecewiseRationalForm& w);
PiecewiseRationalForm wedge(const PiecewiseRationalForm& a, const PiecewiseRationalForm& b);
PiecewiseRationalForm differential(const PiecewiseRationalForm& w);
PiecewiseRationalForm restrict_to_subcomplex(const PiecewiseRationalForm& w, const SimplicialComplex& L);

// --- covers --------------------------------------------------------------

class NotACover : public Error {
 public:
  explicit NotACover(Simplex missing);
  /// A simplex whose interior no member covers.
  Simplex missing;
};

struct CoverCheck {
  std::optional<Simplex> missing;
  bool ok() const { return !missing.has_value(); }
};

/// Every Δ ∈ K needs a member with center ⊆ Δ. Reports the first uncovered
/// simplex in (dim, lex) order.
CoverCheck is_cover(const SimplicialComplex& K, const Cover& cover);

Cover vertex_star_cover(const SimplicialComplex& K);

// --- partitions of unity ---------------------------------------------------

/// φ = (Π_{v∈σ} t_v) / (Σ_k Π_{v∈σ_k} t_v) for a member σ of a star cover.
struct RationalFn {
  /// Π_{v∈σ} t_v on every simplex (zero where σ is not a face).
  PiecewiseForm numerator;
  /// The cover centers whose barycentric monomials sum to the denominator.
  std::vector<Simplex> denominator_monomials;

  /// The denominator polynomial on Δ: only members with center ⊆ Δ contribute.
  AlgebroidForm denominator_on(const Simplex& s) const;
  RationalForm on(const Simplex& s) const;
};

struct PartitionOfUnity {
  ComplexPtr parent;
  Cover cover;
  std::vector<RationalFn> functions;
};

/// Throws NotACover.
PartitionOfUnity partition_of_unity(ComplexPtr parent, const Cover& cover);

struct PartitionCertificate {
  /// Σ_j numerator_j == denominator on every simplex.
  bool sum_is_one = true;
  /// φ_j is identically zero on every simplex that does not contain σ_j.
  bool subordinate = true;
  /// Every simplex has a member center among its faces, so the
  /// denominator has a monomial positive on the open simplex and every
  /// monomial is nonnegative on the closed simplex.
  bool denominator_positive = true;
  /// For each simplex, the index of a member certifying positivity (or -1).
  std::map<Simplex, int> positivity_witness;
  /// First failure, empty when everything holds.
  std::string failure;

  bool ok() const { return sum_is_one && subordinate && denominator_positive; }
};

PartitionCertificate certify(const PartitionOfUnity& p);

/// h_j(ω) = φ_j · ω.
std::vector<PiecewiseRationalForm> fineness_operators(const PartitionOfUnity& p, const PiecewiseForm& w);

// --- gluing ----------------------------------------------------------------

/// One section per cover member, each over the member's closed star.
struct SectionFamily {
  std::vector<PiecewiseForm> sections;
};

class SectionsIncompatible : public Error {
 public:
  SectionsIncompatible(std::size_t first, std::size_t second, Simplex simplex, AlgebroidForm difference);
  /// Indices of the two cover members whose sections disagree.
  std::size_t first, second;
  Simplex simplex;
  /// section[first] - section[second] on `simplex`.
  AlgebroidForm difference;
};

/// All sections of a global form.
SectionFamily sections_of(const PiecewiseForm& w, const Cover& cover);

/// Checks pairwise agreement on the closed stars of St σ_i ∩ St σ_j and
/// returns the unique global form restricting to every section. Throws
/// NotACover, SectionsIncompatible (overlap mismatch) or Incompatible (a
/// section that is not itself face-compatible).
PiecewiseForm check_gluing(ComplexPtr parent, const Cover& cover, const SectionFamily& family);

// --- presheaf laws ---------------------------------------------------------

/// St(inner) ⊆ St(middle) ⊆ St(outer), i.e. outer ⊆ middle ⊆ inner as simplices.
struct StarChain {
  StarOpen outer, middle, inner;
};

using SectionRestriction = std::function<PiecewiseForm(const PiecewiseForm&, const StarOpen&)>;

class LawViolation : public Error {
 public:
  LawViolation(std::string law, std::string witness);
  std::string law;
  std::string witness;
};

/// Names of the laws checked, in order.
std::vector<std::string> presheaf_law_names();

/// Verifies identity, composition, and that restriction commutes with wedge
/// and D, for sections ω, η over chain.outer. Throws LawViolation.
std::vector<std::string> check_presheaf_laws(const AlgebroidComplex& parent, const StarChain& chain,
                                             const PiecewiseForm& omega, const PiecewiseForm& eta,
                                             const SectionRestriction& restrict = section_over);

}  // namespace psforms

#pragma once

#include "stackyfan/integer.hpp"
#include "stackyfan/lattice.hpp"
#include "stackyfan/polytope.hpp"
#include "stackyfan/triangulation.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stackyfan {

/// A simplicial fan in a congruence lattice of Z^{r+1}. Maximal cones are
/// sorted lists of indices into `rays`.
struct Fan {
  CongruenceLattice lattice;
  std::vector<IntVector> rays;
  std::vector<std::vector<std::size_t>> max_cones;

  std::size_t dim() const { return lattice.ambient_dim; }
  std::vector<IntVector> generators(std::size_t cone) const;
  /// Sorts cones and the cone list; rays keep their order.
  Fan& normalize();

  friend bool operator==(const Fan&, const Fan&) = default;
};

/// A fan in N together with a lattice map f: N -> N' (rows are the images of
/// the basis of N).
struct StackyFan {
  Fan fan;
  IntMatrix lattice_map;
};

/// Invariants of the finite group coker(f): elementary divisors >= 2.
struct GroupInvariants {
  std::vector<Integer> divisors;
  Integer order = 1;
};

/// The first orthant of Z^{r+1} in L_n, generated by the L_n-primitive
/// multiples of e_i (n e_i, or e_i when n = 1).
Fan orthant_fan(int r, std::int64_t n);

/// One maximal cone per cell of a valid T; rays are the vertices of T at
/// height n. Throws DomainError for invalid T.
Fan cone_over_triangulation(const Triangulation& t);

struct ConeWitness {
  std::size_t cone = 0;
  /// Smith divisors of the generator coordinates in a lattice basis.
  std::vector<Integer> divisors;
  /// Index of the sublattice spanned by the generators.
  Integer index = 0;
  bool smooth = false;
};

struct SmoothnessReport {
  bool smooth = false;
  std::vector<ConeWitness> cones;
};

/// Every maximal cone's generators form a lattice basis. Cones must be
/// full-dimensional and simplicial (DomainError otherwise).
SmoothnessReport is_smooth(const Fan& f);

/// Whether `sub` subdivides `base`: every cone of sub lies in a cone of base
/// and the slices by { sum = 1 } tile the slice of the base support.
bool subdivides(const Fan& sub, const Fan& base);

/// Every ray's lattice-primitive generator lies on the height-one hyperplane
/// of base (for orthant_fan(r, n): coordinate sum n). Throws DomainError when
/// sub does not subdivide base.
bool is_crepant(const Fan& sub, const Fan& base);

/// Elementary divisors of coker(f) for an injective f with finite cokernel;
/// DomainError when f is rank deficient or not square.
GroupInvariants stacky_group_invariants(const IntMatrix& f);

/// Star subdivision at rho: every maximal cone containing rho is replaced by
/// the cones with one generator exchanged for rho. An existing ray leaves the
/// fan unchanged. DomainError when rho is outside the support or not
/// primitive in the fan's lattice.
Fan star_subdivision(const Fan& f, const IntVector& rho);

/// The cells sigma cap { sum = n } of a fan subdividing orthant_fan(r, n),
/// one per maximal cone, in cone order.
struct RationalSubdivision {
  int r = 0;
  std::int64_t n = 1;
  std::vector<RationalPolytope> cells;
};

RationalSubdivision slice_to_subdivision(const Fan& f);

struct Domination {
  std::int64_t level = 1;
  Triangulation triangulation;
  /// For each cell of the triangulation, the maximal cone containing it.
  std::vector<std::size_t> containing_cone;
};

/// A level n' (a multiple of n) and a unimodular triangulation of n' Delta^r
/// whose cone fan refines f. Slice cells are scaled to lattice simplices and
/// pulled with all lattice points. For r = 3 the scale is retried up to
/// max_retry times (DilationBoundExceeded afterwards).
Domination dominate_subdivision(const Fan& f, std::size_t max_retry = 8);

}  // namespace stackyfan

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macfaces/counting.hpp"
#include "macfaces/region.hpp"

namespace macfaces::oracle {

// Brute-force polyhedral computations, used to cross-check the symbolic face
// machinery.  Everything here is deliberately naive — enumerate all basis
// subsets, all constraint subsets — so that it shares no logic with the code
// it validates.  The caps keep the exhaustive loops tractable: at 5 users
// there are already 36 constraints and C(36,5) candidate bases.
inline constexpr int kMaxVertexUsers = 5;    // also keeps incidence in 64 bits
inline constexpr int kMaxLatticeUsers = 4;

struct Params {
  double feasibility_tol = 1e-9;  // constraint satisfaction / tightness slack
  double singular_tol = 1e-10;    // pivot threshold: smaller means singular
  double dedup_radius = 1e-7;     // vertices closer than this are merged
  double rank_tol = 1e-7;         // singular values below this count as zero
};

// The vertices of the region, each with the set of constraints it satisfies
// with equality.  Bit k of incidence[v] refers to constraints[k] of the HRep.
// Vertices are sorted lexicographically by coordinates, so results are
// reproducible across runs.
struct VertexSet {
  int users = 0;
  std::vector<std::vector<double>> vertices;
  std::vector<std::uint64_t> incidence;
};

// Solves every M-subset of constraints as a linear system (Gaussian
// elimination with partial pivoting; a pivot below singular_tol means the
// normals are dependent and the subset is skipped), keeps the solutions that
// satisfy all constraints, and deduplicates within dedup_radius.
VertexSet enumerate_vertices(const HRep& hrep, const Params& params = {});

// One face recovered geometrically: the vertices that are simultaneously
// tight for some set of constraints, with dimension measured as the affine
// rank of those vertices.
struct GeometricFace {
  std::vector<int> vertex_ids;        // ascending indices into the VertexSet
  std::uint64_t tight_constraints = 0;  // largest constraint set cutting it
  int dim = 0;
};

// Enumerates all faces by closing the vertex set under constraint
// intersections: for every subset F of constraints, the vertices incident to
// all of F span a face; distinct subsets often give the same vertex set, so
// faces are deduplicated on it.  Returns faces sorted by dimension, then by
// vertex ids.  The empty intersection is dropped; the full region (F = ∅)
// is included.
std::vector<GeometricFace> build_face_lattice(const VertexSet& vs,
                                              const HRep& hrep,
                                              const Params& params = {});

// Result of checking the symbolic answers against the geometric ones.
struct CrossValidateReport {
  int users = 0;

  // Faces per dimension, 0..users: what the lattice found vs. the closed
  // forms.  counts_match covers the whole profile.
  std::vector<long long> lattice_counts;
  std::vector<counting::BigInt> formula_counts;
  bool counts_match = false;

  // Label/face bijection: every enumerated label must select (via its
  // defining equalities) the vertex set of exactly one geometric face of the
  // same dimension, and no two labels the same face.
  int labels_total = 0;
  int labels_matched = 0;

  // Merge law: for every label pair, merge_labels agrees with intersecting
  // the two faces' vertex sets (empty merge ⟺ empty intersection; otherwise
  // the merged label's face is exactly the intersection).
  long long merge_pairs_checked = 0;
  long long merge_pairs_failed = 0;

  std::vector<std::string> mismatches;  // human-readable, empty when clean

  bool clean() const {
    return counts_match && labels_matched == labels_total &&
           merge_pairs_failed == 0 && mismatches.empty();
  }
};

// Full independent audit of one channel: vertex enumeration, geometric
// lattice, per-dimension counts vs. formulas, label-to-face bijection, merge
// law.  Refuses degenerate channels (DegenerateRegionError) since labels are
// only meaningful without degeneracies; capped at kMaxLatticeUsers.
CrossValidateReport cross_validate(const ChannelSpec& spec,
                                   const Params& params = {});

}  // namespace macfaces::oracle

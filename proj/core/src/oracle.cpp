#include "macfaces/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "macfaces/errors.hpp"
#include "macfaces/label.hpp"

namespace macfaces::oracle {
namespace {

// Solves A x = b in place by Gaussian elimination with partial pivoting.
// Returns false (system treated as singular) when the best available pivot
// drops below singular_tol.
bool solve(std::vector<std::vector<double>>& a, std::vector<double>& b,
           std::vector<double>& x, double singular_tol) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < singular_tol) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return true;
}

// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.  Only
// the spectrum is needed (for rank counting), so eigenvectors are not
// accumulated.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m[p][q]) < 1e-300) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m[i][i];
  return eig;
}

// Affine dimension of a point set: rank of the Gram matrix of the
// differences from the first point, with singular values below rank_tol
// treated as zero.
int affine_dim(const std::vector<std::vector<double>>& points,
               const std::vector<int>& ids, int users, double rank_tol) {
  if (ids.size() <= 1) return 0;
  const auto m = static_cast<std::size_t>(users);
  const auto& base = points[static_cast<std::size_t>(ids[0])];
  std::vector<std::vector<double>> gram(m, std::vector<double>(m, 0.0));
  for (std::size_t k = 1; k < ids.size(); ++k) {
    const auto& p = points[static_cast<std::size_t>(ids[k])];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        gram[i][j] += (p[i] - base[i]) * (p[j] - base[j]);
  }
  int rank = 0;
  for (double lambda : jacobi_eigenvalues(std::move(gram)))
    if (lambda > rank_tol * rank_tol) ++rank;
  return rank;
}

// Bitset over vertex ids, used as the dedup key for geometric faces.
using VertexKey = std::vector<std::uint64_t>;

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& key) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint64_t w : key) {
      h ^= static_cast<std::size_t>(w);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

VertexSet enumerate_vertices(const HRep& hrep, const Params& params) {
  if (hrep.users > kMaxVertexUsers)
    throw CapacityError("enumerate_vertices: capped at " +
                        std::to_string(kMaxVertexUsers) + " users");
  const int m = hrep.users;
  const auto mu = static_cast<std::size_t>(m);
  const int n = static_cast<int>(hrep.size());

  std::vector<std::vector<double>> found;

  // Row of the equality system for one constraint.
  auto fill_row = [&](const Constraint& con, std::vector<double>& row,
                      double& rhs) {
    std::fill(row.begin(), row.end(), 0.0);
    for (int u : con.subset.elements()) row[static_cast<std::size_t>(u - 1)] = 1.0;
    rhs = con.kind == ConstraintKind::kBack ? 0.0 : con.bound;
  };

  std::vector<int> combo(mu);
  for (std::size_t i = 0; i < mu; ++i) combo[i] = static_cast<int>(i);
  std::vector<std::vector<double>> a(mu, std::vector<double>(mu));
  std::vector<double> b(mu), x;

  const bool any = m <= n;
  while (any) {
    for (std::size_t i = 0; i < mu; ++i)
      fill_row(hrep.constraints[static_cast<std::size_t>(combo[i])], a[i],
               b[i]);
    if (solve(a, b, x, params.singular_tol)) {
      bool feasible = true;
      for (const Constraint& con : hrep.constraints) {
        if (con.slack(x) < -params.feasibility_tol) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        bool fresh = true;
        const double r2 = params.dedup_radius * params.dedup_radius;
        for (const auto& v : found) {
          double d2 = 0.0;
          for (std::size_t i = 0; i < mu; ++i) {
            const double d = v[i] - x[i];
            d2 += d * d;
            if (d2 >= r2) break;
          }
          if (d2 < r2) {
            fresh = false;
            break;
          }
        }
        if (fresh) found.push_back(x);
      }
    }
    // Next M-combination of constraint indices, lexicographic.
    int i = m - 1;
    while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++combo[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      combo[static_cast<std::size_t>(j)] =
          combo[static_cast<std::size_t>(j - 1)] + 1;
  }

  std::sort(found.begin(), found.end());

  VertexSet vs;
  vs.users = m;
  vs.vertices = std::move(found);
  vs.incidence.reserve(vs.vertices.size());
  for (const auto& v : vs.vertices) {
    std::uint64_t inc = 0;
    for (int k = 0; k < n; ++k)
      if (std::abs(hrep.constraints[static_cast<std::size_t>(k)].slack(v)) <=
          params.feasibility_tol)
        inc |= std::uint64_t{1} << k;
    vs.incidence.push_back(inc);
  }
  return vs;
}

std::vector<GeometricFace> build_face_lattice(const VertexSet& vs,
                                              const HRep& hrep,
                                              const Params& params) {
  if (vs.users > kMaxLatticeUsers)
    throw CapacityError("build_face_lattice: capped at " +
                        std::to_string(kMaxLatticeUsers) + " users");
  if (vs.users != hrep.users)
    throw PreconditionError("build_face_lattice: vertex set and region "
                            "have different user counts");
  const int n = static_cast<int>(hrep.size());
  const std::size_t nv = vs.vertices.size();
  const std::size_t key_words = nv / 64 + 1;

  std::unordered_map<VertexKey, std::size_t, VertexKeyHash> seen;
  std::vector<GeometricFace> faces;

  std::vector<int> members;
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << n); ++f) {
    members.clear();
    VertexKey key(key_words, 0);
    std::uint64_t tight = ~std::uint64_t{0};
    for (std::size_t v = 0; v < nv; ++v) {
      if ((vs.incidence[v] & f) == f) {
        members.push_back(static_cast<int>(v));
        key[v / 64] |= std::uint64_t{1} << (v % 64);
        tight &= vs.incidence[v];
      }
    }
    if (members.empty()) continue;
    auto [it, fresh] = seen.emplace(std::move(key), faces.size());
    if (!fresh) continue;
    GeometricFace face;
    face.vertex_ids = members;
    face.tight_constraints = tight;
    face.dim = affine_dim(vs.vertices, members, vs.users, params.rank_tol);
    faces.push_back(std::move(face));
  }

  std::sort(faces.begin(), faces.end(),
            [](const GeometricFace& a, const GeometricFace& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              return a.vertex_ids < b.vertex_ids;
            });
  return faces;
}

namespace {

// Vertices selected by a label's defining equalities: every chain bound
// tight, every silenced rate zero.
std::vector<int> label_members(const FaceLabel& label, const VertexSet& vs,
                               const HRep& hrep, double tol) {
  std::vector<int> ids;
  for (std::size_t v = 0; v < vs.vertices.size(); ++v) {
    const auto& point = vs.vertices[v];
    bool on = true;
    for (UserSet s : label.chain)
      if (std::abs(hrep.front_bound(s) - rate_sum(point, s)) > tol) {
        on = false;
        break;
      }
    if (on)
      for (int a : label.zeros.elements())
        if (std::abs(point[static_cast<std::size_t>(a - 1)]) > tol) {
          on = false;
          break;
        }
    if (on) ids.push_back(static_cast<int>(v));
  }
  return ids;
}

void note(CrossValidateReport& report, std::string line) {
  if (report.mismatches.size() < 40) report.mismatches.push_back(std::move(line));
}

}  // namespace

CrossValidateReport cross_validate(const ChannelSpec& spec,
                                   const Params& params) {
  auto mi = std::make_shared<MICache>(spec);
  if (mi->users() > kMaxLatticeUsers)
    throw CapacityError("cross_validate: capped at " +
                        std::to_string(kMaxLatticeUsers) + " users");
  require_nondegenerate(*mi);
  const HRep hrep = build_hrep(mi);

  CrossValidateReport report;
  report.users = hrep.users;

  const VertexSet vs = enumerate_vertices(hrep, params);
  const std::vector<GeometricFace> lattice =
      build_face_lattice(vs, hrep, params);

  report.lattice_counts.assign(static_cast<std::size_t>(hrep.users) + 1, 0);
  for (const GeometricFace& face : lattice)
    ++report.lattice_counts[static_cast<std::size_t>(face.dim)];
  report.counts_match = true;
  for (int d = 0; d <= hrep.users; ++d) {
    report.formula_counts.push_back(counting::count_total(hrep.users, d));
    if (counting::BigInt(
            report.lattice_counts[static_cast<std::size_t>(d)]) !=
        report.formula_counts.back()) {
      report.counts_match = false;
      note(report, "dim " + std::to_string(d) + ": lattice has " +
                       std::to_string(report.lattice_counts[
                           static_cast<std::size_t>(d)]) +
                       " faces, formula says " +
                       report.formula_counts.back().str());
    }
  }

  // Index the lattice by vertex set for label lookup.
  std::map<std::vector<int>, std::size_t> by_members;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    by_members.emplace(lattice[i].vertex_ids, i);

  const std::vector<FaceLabel> labels = enumerate_faces(hrep.users);
  report.labels_total = static_cast<int>(labels.size());
  std::vector<int> hits(lattice.size(), 0);
  std::vector<std::vector<int>> members_of(labels.size());
  for (std::size_t li = 0; li < labels.size(); ++li) {
    const FaceLabel& label = labels[li];
    members_of[li] = label_members(label, vs, hrep, params.feasibility_tol);
    const auto it = by_members.find(members_of[li]);
    if (it == by_members.end()) {
      note(report, to_string(label) +
                       ": selected vertex set matches no geometric face");
      continue;
    }
    const GeometricFace& face = lattice[it->second];
    if (face.dim != face_dim(label)) {
      note(report, to_string(label) + ": geometric dimension " +
                       std::to_string(face.dim) + " != label dimension " +
                       std::to_string(face_dim(label)));
      continue;
    }
    ++hits[it->second];
    ++report.labels_matched;
  }
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (hits[i] != 1)
      note(report, "geometric face #" + std::to_string(i) + " (dim " +
                       std::to_string(lattice[i].dim) + ") matched by " +
                       std::to_string(hits[i]) + " labels");

  // Merge law: label-level intersection must mirror vertex-level
  // intersection for every pair.
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      ++report.merge_pairs_checked;
      const auto merged = merge_labels(labels[i], labels[j]);
      std::vector<int> common;
      std::set_intersection(members_of[i].begin(), members_of[i].end(),
                            members_of[j].begin(), members_of[j].end(),
                            std::back_inserter(common));
      // An empty merge must mean the faces share no vertex; a nonempty one
      // must name the geometric intersection exactly, dimension included.
      bool ok;
      if (merged) {
        const auto hit = by_members.find(common);
        ok = hit != by_members.end() &&
             lattice[hit->second].dim == face_dim(*merged) &&
             label_members(*merged, vs, hrep, params.feasibility_tol) ==
                 common;
      } else {
        ok = common.empty();
      }
      if (!ok) {
        ++report.merge_pairs_failed;
        note(report, "merge of " + to_string(labels[i]) + " and " +
                         to_string(labels[j]) +
                         " disagrees with the vertex-set intersection");
      }
    }
  }
  return report;
}

}  // namespace macfaces::oracle

#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "alexandrov/common.hpp"
#include "alexandrov/field.hpp"

namespace alexandrov {

/// Dense matrices over an exact scalar. Maps act on column vectors, so a
/// linear map V -> W is a (dim W) x (dim V) matrix.
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
bool mat_equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class S>
bool is_zero_mat(const Mat<S>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

/// In-place Gauss–Jordan to reduced row echelon form.
/// Returns the pivot column of each nonzero row, in row order.
template <class S>
std::vector<Eigen::Index> rref_in_place(Mat<S>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pr = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    if (pr != row) m.row(pr).swap(m.row(row));
    S inv = m(row, col).inverse();
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      S factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        m(r, c) = m(r, c) - factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
long rank(Mat<S> m) {
  return static_cast<long>(rref_in_place(m).size());
}

/// A linear subspace of an ambient coordinate space, stored as the reduced
/// row echelon basis (one vector per row). Equal subspaces compare equal
/// as matrices, which is what the canonical-form contract is for.
template <class S>
class Subspace {
 public:
  Subspace() : ambient_(0), basis_(0, 0) {}
  Subspace(Eigen::Index ambient, Mat<S> spanning_rows)
      : ambient_(ambient), basis_(std::move(spanning_rows)) {
    if (basis_.cols() != ambient_ && basis_.rows() != 0)
      throw ShapeMismatch("subspace spanning rows have wrong width");
    if (basis_.cols() != ambient_) basis_.resize(0, ambient_);
    pivots_ = rref_in_place(basis_);
    basis_.conservativeResize(static_cast<Eigen::Index>(pivots_.size()), ambient_);
  }

  static Subspace zero(Eigen::Index ambient) { return Subspace(ambient, Mat<S>(0, ambient)); }

  static Subspace full(Eigen::Index ambient, const S& one) {
    Mat<S> id = Mat<S>::Zero(ambient, ambient);
    for (Eigen::Index i = 0; i < ambient; ++i) id(i, i) = one;
    return Subspace(ambient, id);
  }

  Eigen::Index ambient_dim() const { return ambient_; }
  long dim() const { return static_cast<long>(basis_.rows()); }
  const Mat<S>& basis_rows() const { return basis_; }
  const std::vector<Eigen::Index>& pivots() const { return pivots_; }

  /// Coordinates of v in this basis, or nullopt when v lies outside.
  std::optional<Vec<S>> coordinates(const Vec<S>& v) const {
    if (v.size() != ambient_) throw ShapeMismatch("vector/ambient mismatch");
    Vec<S> residue = v;
    Vec<S> coeff = Vec<S>::Zero(basis_.rows());
    for (Eigen::Index r = 0; r < basis_.rows(); ++r) {
      S c = residue(pivots_[r]);
      if (c.is_zero()) continue;
      coeff(r) = c;
      for (Eigen::Index j = 0; j < ambient_; ++j) residue(j) = residue(j) - c * basis_(r, j);
    }
    for (Eigen::Index j = 0; j < ambient_; ++j)
      if (!residue(j).is_zero()) return std::nullopt;
    return coeff;
  }

  bool contains(const Vec<S>& v) const { return coordinates(v).has_value(); }

  bool contains(const Subspace& other) const {
    for (Eigen::Index r = 0; r < other.basis_.rows(); ++r)
      if (!contains(Vec<S>(other.basis_.row(r).transpose()))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && mat_equal(a.basis_, b.basis_);
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Eigen::Index ambient_;
  Mat<S> basis_;
  std::vector<Eigen::Index> pivots_;
};

/// Canonical basis of ker M (solutions of M x = 0).
template <class S>
Subspace<S> kernel_basis(Mat<S> m) {
  Eigen::Index n = m.cols();
  std::vector<Eigen::Index> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Eigen::Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Eigen::Index k = n - static_cast<Eigen::Index>(pivots.size());
  Mat<S> rows = Mat<S>::Zero(k, n);
  Eigen::Index r = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    rows(r, free) = rows(r, free) + S(1);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      rows(r, pivots[pi]) = -m(static_cast<Eigen::Index>(pi), free);
    ++r;
  }
  return Subspace<S>(n, std::move(rows));
}

/// Canonical basis of the column space of M.
template <class S>
Subspace<S> image_basis(const Mat<S>& m) {
  Mat<S> rows = m.transpose();
  return Subspace<S>(m.rows(), std::move(rows));
}

/// dim(Z/B); requires B <= Z.
template <class S>
long quotient_dim(const Subspace<S>& z, const Subspace<S>& b) {
  if (z.ambient_dim() != b.ambient_dim()) throw ShapeMismatch("quotient ambient mismatch");
  if (!z.contains(b)) throw NotContained("B is not a subspace of Z");
  return z.dim() - b.dim();
}

/// Solve A x = rhs for one solution per column of rhs; nullopt when some
/// column is outside the column space. Unique when A has full column rank.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& rhs) {
  if (a.rows() != rhs.rows()) throw ShapeMismatch("solve: row mismatch");
  Mat<S> aug(a.rows(), a.cols() + rhs.cols());
  aug.block(0, 0, a.rows(), a.cols()) = a;
  aug.block(0, a.cols(), rhs.rows(), rhs.cols()) = rhs;
  std::vector<Eigen::Index> pivots = rref_in_place(aug);
  Mat<S> x = Mat<S>::Zero(a.cols(), rhs.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= a.cols()) return std::nullopt;  // inconsistent system
    for (Eigen::Index c = 0; c < rhs.cols(); ++c)
      x(pivots[r], c) = aug(static_cast<Eigen::Index>(r), a.cols() + c);
  }
  return x;
}

template <class S>
Mat<S> identity_mat(Eigen::Index n) {
  Mat<S> id = Mat<S>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) id(i, i) = S(1);
  return id;
}

/// Quotient of an ambient coordinate space by a subspace: the projection
/// matrix onto the canonical complement coordinates and a section sending
/// quotient coordinates back to representatives.
template <class S>
struct QuotientMaps {
  Mat<S> projection;  // (ambient - dim sub) x ambient
  Mat<S> section;     // ambient x (ambient - dim sub), projection*section = id
  long dim;
};

template <class S>
QuotientMaps<S> quotient_maps(const Subspace<S>& sub) {
  Eigen::Index n = sub.ambient_dim();
  const Mat<S>& b = sub.basis_rows();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Eigen::Index p : sub.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
  Eigen::Index q = n - b.rows();
  QuotientMaps<S> out;
  out.dim = static_cast<long>(q);
  out.projection = Mat<S>::Zero(q, n);
  out.section = Mat<S>::Zero(n, q);
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (is_pivot[static_cast<std::size_t>(j)]) continue;
    // coordinate j of x reduced modulo the subspace: x_j - sum_r x_{piv r} b(r,j)
    out.projection(r, j) = S(1);
    for (Eigen::Index pr = 0; pr < b.rows(); ++pr)
      out.projection(r, sub.pivots()[pr]) = -b(pr, j);
    out.section(j, r) = S(1);
    ++r;
  }
  return out;
}

/// A bounded cochain complex 0 -> C^0 -> ... -> C^N -> 0.
/// d[n] maps C^n to C^{n+1}; d^{N} and d^{-1} are zero by convention.
template <class S>
class CochainComplex {
 public:
  CochainComplex(std::vector<long> dims, std::vector<Mat<S>> differentials)
      : dims_(std::move(dims)), d_(std::move(differentials)) {
    if (dims_.empty()) throw ShapeMismatch("complex needs at least one degree");
    if (d_.size() + 1 != dims_.size())
      throw ShapeMismatch("complex needs one differential per adjacent pair");
    for (std::size_t n = 0; n < d_.size(); ++n)
      if (d_[n].rows() != dims_[n + 1] || d_[n].cols() != dims_[n])
        throw ShapeMismatch("differential " + std::to_string(n) + " has wrong shape");
    for (std::size_t n = 0; n + 1 < d_.size(); ++n) {
      Mat<S> dd = d_[n + 1] * d_[n];
      if (!is_zero_mat(dd))
        throw NotExact("d.d != 0 between degrees " + std::to_string(n) + ".." +
                       std::to_string(n + 2));
    }
  }

  long top_degree() const { return static_cast<long>(dims_.size()) - 1; }
  long dim(long n) const { return n >= 0 && n <= top_degree() ? dims_[static_cast<std::size_t>(n)] : 0; }
  const std::vector<long>& dims() const { return dims_; }

  Mat<S> differential(long n) const {  // zero-padded outside the stored range
    if (n >= 0 && n < static_cast<long>(d_.size())) return d_[static_cast<std::size_t>(n)];
    return Mat<S>::Zero(dim(n + 1), dim(n));
  }

  long euler_characteristic() const {
    long chi = 0;
    for (std::size_t n = 0; n < dims_.size(); ++n) chi += (n % 2 == 0 ? dims_[n] : -dims_[n]);
    return chi;
  }

 private:
  std::vector<long> dims_;
  std::vector<Mat<S>> d_;
};

/// Cohomology of one degree with explicit cocycle representatives and the
/// map sending a cocycle to its class coordinates; used by the long-exact-
/// sequence machinery.
template <class S>
struct CohomologyData {
  long dim = 0;
  Subspace<S> cocycles;        // Z^n in C^n coordinates
  Subspace<S> coboundaries;    // B^n in C^n coordinates
  Mat<S> representatives;      // C^n-dim x dim, columns are class reps
  Mat<S> class_of_cocycle_in_z;  // dim x dim Z^n: class coords of Z-basis vectors

  /// Class coordinates of an arbitrary cocycle (throws if not a cocycle).
  Vec<S> class_coordinates(const Vec<S>& cocycle) const {
    auto coords = cocycles.coordinates(cocycle);
    if (!coords) throw NotContained("vector is not a cocycle");
    return class_of_cocycle_in_z * (*coords);
  }
};

template <class S>
CohomologyData<S> cohomology_data(const CochainComplex<S>& c, long n) {
  if (n < 0 || n > c.top_degree())
    throw DegreeOutOfRange("degree " + std::to_string(n) + " outside complex");
  CohomologyData<S> out;
  out.cocycles = kernel_basis(c.differential(n));
  out.coboundaries = image_basis(c.differential(n - 1));
  if (!out.cocycles.contains(out.coboundaries))
    throw NotExact("image of d^{n-1} is not contained in ker d^n");
  out.dim = out.cocycles.dim() - out.coboundaries.dim();

  // express B inside Z, then quotient Z-coordinates by it
  Mat<S> b_in_z(out.coboundaries.dim(), out.cocycles.dim());
  for (Eigen::Index r = 0; r < out.coboundaries.dim(); ++r) {
    Vec<S> row = out.coboundaries.basis_rows().row(r).transpose();
    b_in_z.row(r) = out.cocycles.coordinates(row)->transpose();
  }
  Subspace<S> b_sub(out.cocycles.dim(), std::move(b_in_z));
  QuotientMaps<S> q = quotient_maps(b_sub);
  out.class_of_cocycle_in_z = q.projection;
  out.representatives = out.cocycles.basis_rows().transpose() * q.section;
  return out;
}

/// dim H^n = dim ker d^n - rank d^{n-1}.
template <class S>
long complex_cohomology(const CochainComplex<S>& c, long n) {
  if (n < 0 || n > c.top_degree())
    throw DegreeOutOfRange("degree " + std::to_string(n) + " outside complex");
  return kernel_basis(c.differential(n)).dim() - rank(c.differential(n - 1));
}

}  // namespace alexandrov

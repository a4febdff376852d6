#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dew {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Tolerances used across the library. Span certificates built from sampled
// kernels use kSpanTol: kernel samples computed at polynomial roots carry
// errors up to ~1e-7 near double roots, while genuine span directions stay
// above 1e-3, so 1e-6 separates them cleanly.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kNumTol = 1e-10;
inline constexpr double kRankTol = 1e-8;
inline constexpr double kSpanTol = 1e-6;
inline constexpr double kCesTol = 1e-7;
inline constexpr double kEwTol = 1e-8;
inline constexpr double kEpsMin = 1e-4;
inline constexpr double kOrthoTol = 1e-9;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Local dimensions of H_{m,n}. The first factor is always the
// lower-dimensional one; constructors reorder if needed and remember it.
struct BipartiteDims {
  int m;
  int n;
  bool swapped;

  BipartiteDims(int dim_a, int dim_b)
      : m(std::min(dim_a, dim_b)), n(std::max(dim_a, dim_b)), swapped(dim_a > dim_b) {
    if (m < 2) throw InputError("both local dimensions must be at least 2");
  }

  int total() const { return m * n; }

  bool operator==(const BipartiteDims& o) const { return m == o.m && n == o.n; }
};

// Index layout: component (i*n + j) of a vector on H_{m,n} is |i> ⊗ |j>.
inline int flat_index(const BipartiteDims& dims, int i, int j) { return i * dims.n + j; }

inline CVec tensor(const CVec& e, const CVec& f) {
  CVec out(e.size() * f.size());
  for (Eigen::Index i = 0; i < e.size(); ++i)
    out.segment(i * f.size(), f.size()) = e(i) * f;
  return out;
}

// Reorders a vector written in (a, b) factor order into (b, a) factor order.
inline CVec swap_factors(const CVec& v, int dim_a, int dim_b) {
  if (v.size() != Eigen::Index(dim_a) * dim_b)
    throw InputError("swap_factors: length does not match the factor dimensions");
  CVec out(v.size());
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j) out(j * dim_a + i) = v(i * dim_b + j);
  return out;
}

inline CMat swap_factors(const CMat& X, int dim_a, int dim_b) {
  const int d = dim_a * dim_b;
  if (X.rows() != d || X.cols() != d)
    throw InputError("swap_factors: matrix does not match the factor dimensions");
  std::vector<int> perm(d);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_b; ++j) perm[i * dim_b + j] = j * dim_a + i;
  CMat out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(perm[r], perm[c]) = X(r, c);
  return out;
}

inline void check_square(const CMat& X, const BipartiteDims& dims, const char* who) {
  if (X.rows() != dims.total() || X.cols() != dims.total())
    throw InputError(std::string(who) + ": matrix size does not match dims");
}

inline double hermiticity_deviation(const CMat& X) {
  return (X - X.adjoint()).cwiseAbs().maxCoeff();
}

inline void check_hermitian(const CMat& X, const char* who, double tol = kHermTol) {
  if (X.rows() != X.cols()) throw InputError(std::string(who) + ": matrix not square");
  if (hermiticity_deviation(X) > tol)
    throw InputError(std::string(who) + ": matrix not Hermitian within tolerance");
}

// Transposition on the first (lower-dimensional) factor:
// (X^Γ)_{(i,j),(k,l)} = X_{(k,j),(i,l)}.
inline CMat partial_transpose(const CMat& X, const BipartiteDims& dims) {
  check_square(X, dims, "partial_transpose");
  const int m = dims.m, n = dims.n;
  CMat out(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      out.block(i * n, k * n, n, n) = X.block(k * n, i * n, n, n);
  return out;
}

// A pair (e, f) of local vectors; the embedded vector is tensor(e, f).
// e is kept in its chart form: first nonzero entry 1, or a recorded
// chart-at-infinity vector such as (0, 1).
struct ProductVector {
  CVec e;
  CVec f;

  CVec embedded() const { return tensor(e, f); }
  CVec embedded_normalized() const {
    CVec v = tensor(e, f);
    return v / v.norm();
  }
};

// Conjugation of the first (lower-dimensional) factor.
inline ProductVector partial_conjugate(const ProductVector& pv) {
  return {pv.e.conjugate(), pv.f};
}

struct SchmidtDecomposition {
  RVec coefficients;    // nonincreasing, nonnegative
  CMat left_vectors;    // m x s, orthonormal columns
  CMat right_vectors;   // n x s, orthonormal columns
  int schmidt_rank;
};

inline SchmidtDecomposition schmidt(const CVec& psi, const BipartiteDims& dims) {
  if (psi.size() != dims.total()) throw InputError("schmidt: vector length does not match dims");
  if (psi.norm() == 0.0) throw InputError("schmidt: zero vector");
  CMat coeff(dims.m, dims.n);
  for (int i = 0; i < dims.m; ++i)
    for (int j = 0; j < dims.n; ++j) coeff(i, j) = psi(flat_index(dims, i, j));
  Eigen::JacobiSVD<CMat> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left_vectors = svd.matrixU();
  // Schmidt form psi = sum_i c_i u_i ⊗ v_i needs the unconjugated right
  // factors: coeff = U diag(c) V^†, so v_i is the conjugate of V's column.
  out.right_vectors = svd.matrixV().conjugate();
  const double top = out.coefficients.size() ? out.coefficients(0) : 0.0;
  int s = 0;
  for (Eigen::Index i = 0; i < out.coefficients.size(); ++i)
    if (out.coefficients(i) > kRankTol * top) ++s;
  out.schmidt_rank = s;
  return out;
}

inline int numerical_rank(const CMat& columns, double tol = kRankTol) {
  if (columns.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(columns);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

inline int numerical_rank(const std::vector<CVec>& vectors, double tol = kRankTol) {
  if (vectors.empty()) throw InputError("numerical_rank: empty input");
  CMat cols(vectors.front().size(), static_cast<Eigen::Index>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
  return numerical_rank(cols, tol);
}

// Orthonormal basis of the right null space of M under a relative threshold.
inline CMat kernel(const CMat& M, double tol = kRankTol) {
  Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  int r = 0;
  if (top > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol * top) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

inline double min_eigenvalue(const CMat& H) {
  check_hermitian(H, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<CMat> es((H + H.adjoint()) / 2.0);
  return es.eigenvalues()(0);
}

inline bool is_psd(const CMat& H, double tol = kHermTol) {
  return min_eigenvalue(H) >= -tol;
}

}  // namespace dew

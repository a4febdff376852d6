#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rng.hpp"
#include "tensor_core.hpp"

namespace dew {

struct Subspace {
  BipartiteDims dims;
  CMat basis;  // (m*n) x k, orthonormal columns

  int dim() const { return static_cast<int>(basis.cols()); }
  CMat projector() const { return basis * basis.adjoint(); }
};

struct CesCertificate {
  bool is_ces;
  double max_product_overlap;
  std::optional<ProductVector> witness_vector;
  int multistarts_used;
  std::uint64_t seed;
};

struct SeesawOptions {
  int multistarts = 64;
  int max_iter = 200;
  std::uint64_t seed = 0;
  double ftol = 1e-13;
};

inline Subspace orthonormalize(const std::vector<CVec>& raw, const BipartiteDims& dims) {
  if (raw.empty()) throw InputError("orthonormalize: empty basis");
  CMat cols(dims.total(), static_cast<Eigen::Index>(raw.size()));
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != dims.total())
      throw InputError("orthonormalize: vector length does not match dims");
    cols.col(static_cast<Eigen::Index>(i)) = raw[i];
  }
  if (numerical_rank(cols) != static_cast<int>(raw.size()))
    throw InputError("orthonormalize: input vectors are linearly dependent");
  Eigen::HouseholderQR<CMat> qr(cols);
  CMat q = qr.householderQ() * CMat::Identity(dims.total(), static_cast<Eigen::Index>(raw.size()));
  return {dims, q};
}

inline Subspace complement(const Subspace& V) {
  return {V.dims, kernel(V.basis.adjoint())};
}

enum class Side { First, Second };

inline CMat reduced_support(const CMat& Q, const BipartiteDims& dims, Side side) {
  check_square(Q, dims, "reduced_support");
  check_hermitian(Q, "reduced_support");
  if (!is_psd(Q, kHermTol)) throw InputError("reduced_support: matrix not PSD");
  const int m = dims.m, n = dims.n;
  if (side == Side::First) {
    CMat out = CMat::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k)
        for (int j = 0; j < n; ++j) out(i, k) += Q(i * n + j, k * n + j);
    return out;
  }
  CMat out = CMat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < m; ++i) out(j, l) += Q(i * n + j, i * n + l);
  return out;
}

// Alternating eigenvector ascent of F(e, f) = <e,f| P |e,f> for Hermitian
// PSD P. Each half-step is exact: with f fixed, the optimal e is the top
// eigenvector of A_f(i,k) = sum_{j,l} conj(f_j) P_{(i,j),(k,l)} f_l, and
// symmetrically for f. Multistarts guard against the local maxima that a
// bilinear landscape can have.
struct SeesawResult {
  double value;
  ProductVector argmax;
  int starts_used;
};

namespace detail {

// One alternating eigenvector ascent of <e,f|P|e,f> from the given start.
inline std::pair<double, ProductVector> ascend_from(const CMat& P, const BipartiteDims& dims,
                                                    CVec e, CVec f, int max_iter, double ftol) {
  const int m = dims.m, n = dims.n;
  double prev = -std::numeric_limits<double>::infinity();
  double val = prev;
  for (int it = 0; it < max_iter; ++it) {
    CMat A = CMat::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) A(i, k) = f.dot(P.block(i * n, k * n, n, n) * f);
    Eigen::SelfAdjointEigenSolver<CMat> ea((A + A.adjoint()) / 2.0);
    e = ea.eigenvectors().col(m - 1);
    CMat B = CMat::Zero(n, n);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) B += std::conj(e(i)) * e(k) * P.block(i * n, k * n, n, n);
    Eigen::SelfAdjointEigenSolver<CMat> eb((B + B.adjoint()) / 2.0);
    f = eb.eigenvectors().col(n - 1);
    val = eb.eigenvalues()(n - 1);
    if (val - prev < ftol) break;
    prev = val;
  }
  return {val, ProductVector{e, f}};
}

}  // namespace detail

inline SeesawResult seesaw_max(const CMat& P, const BipartiteDims& dims,
                               const SeesawOptions& opts,
                               double stop_above = std::numeric_limits<double>::infinity()) {
  const int m = dims.m, n = dims.n;
  SeesawResult best{-std::numeric_limits<double>::infinity(), {}, 0};
  for (int start = 0; start < opts.multistarts; ++start) {
    Rng rng = Rng::substream(opts.seed, static_cast<std::uint64_t>(start));
    auto [val, pv] = detail::ascend_from(P, dims, rng.haar_vector(m), rng.haar_vector(n),
                                         opts.max_iter, opts.ftol);
    best.starts_used = start + 1;
    if (val > best.value) best = {val, pv, start + 1};
    if (best.value >= stop_above) break;
  }
  return best;
}

inline CesCertificate find_product_vector_in(const Subspace& V, const SeesawOptions& opts = {},
                                             double ces_tol = kCesTol) {
  if (V.dim() < 1) throw InputError("find_product_vector_in: empty subspace");
  SeesawResult r = seesaw_max(V.projector(), V.dims, opts, 1.0 - 1e-9);
  const double overlap = std::min(std::max(r.value, 0.0), 1.0);
  CesCertificate cert{overlap < 1.0 - ces_tol, overlap, std::nullopt, r.starts_used, opts.seed};
  if (!cert.is_ces) cert.witness_vector = r.argmax;
  return cert;
}

inline int max_ces_dimension(const BipartiteDims& dims) {
  return (dims.m - 1) * (dims.n - 1);
}

inline Subspace random_subspace(const BipartiteDims& dims, int dim, Rng& rng) {
  CMat A = rng.gaussian_matrix(dims.total(), dim);
  Eigen::HouseholderQR<CMat> qr(A);
  CMat q = qr.householderQ() * CMat::Identity(dims.total(), dim);
  return {dims, q};
}

struct RandomCes {
  Subspace subspace;
  CesCertificate certificate;
};

inline RandomCes random_ces(const BipartiteDims& dims, int dim, std::uint64_t seed) {
  if (dim < 1 || dim > max_ces_dimension(dims))
    throw InputError("random_ces: dimension outside [1, (m-1)(n-1)]");
  constexpr int kBudget = 64;
  for (int attempt = 0; attempt < kBudget; ++attempt) {
    Rng rng = Rng::substream(seed, 1000 + static_cast<std::uint64_t>(attempt));
    Subspace V = random_subspace(dims, dim, rng);
    SeesawOptions opts;
    opts.seed = seed + static_cast<std::uint64_t>(attempt);
    CesCertificate cert = find_product_vector_in(V, opts);
    if (cert.is_ces) return {V, cert};
  }
  throw InputError("random_ces: rejection budget exhausted");
}

}  // namespace dew

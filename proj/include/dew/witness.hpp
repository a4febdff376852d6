#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodvec_families.hpp"
#include "subspaces.hpp"
#include "tensor_core.hpp"

namespace dew {

struct WitnessProvenance {
  double a;  // in [0, 1]
  CMat P;
  CMat Q;
};

struct Witness {
  CMat matrix;
  BipartiteDims dims;
  std::optional<WitnessProvenance> provenance;
};

struct EwVerdict {
  bool is_ew;
  double min_product_value;
  double min_eigenvalue;
  std::optional<ProductVector> violating_product;
  std::optional<CMat> detected_state;
};

enum class OptimalityStatus { OptimalCertified, NonOptimal, Undecided };

inline std::string to_string(OptimalityStatus s) {
  switch (s) {
    case OptimalityStatus::OptimalCertified: return "optimal-certified";
    case OptimalityStatus::NonOptimal: return "non-optimal";
    default: return "undecided";
  }
}

struct Subtraction {
  CMat P;
  double epsilon;
};

struct OptimalityReport {
  int pw_span_dim;
  bool spanning_certified_optimal;
  std::optional<Subtraction> subtractable;
  OptimalityStatus status;
};

inline Witness dew_from_Q(const CMat& Q, const BipartiteDims& dims) {
  check_square(Q, dims, "dew_from_Q");
  check_hermitian(Q, "dew_from_Q");
  if (!is_psd(Q, kHermTol)) throw InputError("dew_from_Q: Q is not PSD");
  Witness w{partial_transpose(Q, dims), dims,
            WitnessProvenance{0.0, CMat::Zero(dims.total(), dims.total()), Q}};
  return w;
}

// Product minimum via seesaw on the PSD surrogate lambda_max*I - W: the
// alternating eigenvector steps need a maximization target, and
// max <e,f|surrogate|e,f> = lambda_max - min <e,f|W|e,f>.
inline EwVerdict verify_ew(const Witness& W, const SeesawOptions& opts = {},
                           double ew_tol = kEwTol) {
  check_hermitian(W.matrix, "verify_ew");
  Eigen::SelfAdjointEigenSolver<CMat> es((W.matrix + W.matrix.adjoint()) / 2.0);
  const double lmin = es.eigenvalues()(0);
  const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
  const CMat surrogate = lmax * CMat::Identity(W.matrix.rows(), W.matrix.cols()) - W.matrix;
  SeesawResult r = seesaw_max(surrogate, W.dims, opts);
  EwVerdict v;
  v.min_product_value = lmax - r.value;
  v.min_eigenvalue = lmin;
  v.is_ew = v.min_product_value >= -ew_tol && lmin < -ew_tol;
  if (v.min_product_value < -ew_tol) v.violating_product = r.argmax;
  if (v.is_ew) {
    const CVec ground = es.eigenvectors().col(0);
    v.detected_state = ground * ground.adjoint();
  }
  return v;
}

inline Subspace support(const CMat& Q, const BipartiteDims& dims, double tol = kRankTol) {
  Eigen::SelfAdjointEigenSolver<CMat> es((Q + Q.adjoint()) / 2.0);
  const auto& ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol * top) keep.push_back(i);
  if (keep.empty()) throw InputError("support: zero operator");
  CMat basis(Q.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(keep[i]);
  return {dims, basis};
}

// P_W through the duality <e,f|Q^Γ|e,f> = <e*,f|Q|e*,f>: product vectors in
// ker(Q) are enumerated on V = supp(Q) and partially conjugated back, so the
// returned family consists of P_W members themselves.
inline ProductFamily zero_set(const Witness& W, const SeesawOptions& opts = {}) {
  if (!W.provenance || W.provenance->a != 0.0)
    throw InputError("zero_set: witness must carry provenance with a = 0");
  const Subspace V = support(W.provenance->Q, W.dims);
  SeesawOptions cert_opts = opts;
  CesCertificate cert = find_product_vector_in(V, cert_opts);
  ProductFamily fam{W.dims, {}, cert.is_ces};
  const int k = V.dim();
  if (W.dims.m == 2 && k <= W.dims.n - 1) {
    fam = family_2xn(V, generic_parameter_samples(recommended_sample_count(W.dims, k)), &cert);
  } else if (k <= W.dims.n - 1) {
    fam = family_general(V, chart_e_samples(W.dims), &cert);
  } else {
    fam = family_general(V, variety_e_samples(V), &cert);
  }
  for (auto& sample : fam.samples) sample.pv = partial_conjugate(sample.pv);
  return fam;
}

inline double zero_set_member_expectation(const Witness& W, const ProductVector& pv) {
  const CVec v = pv.embedded_normalized();
  return std::real(v.dot(W.matrix * v));
}

namespace detail {

// Minimum product expectation of X, with extra ascent runs warm-started near
// the supplied product vectors. Subtracting from a witness creates shallow
// violations concentrated around its zero set, where random multistarts are
// unreliable.
inline std::pair<double, ProductVector> min_product_expectation(
    const CMat& X, const BipartiteDims& dims, const std::vector<ProductVector>& near,
    const SeesawOptions& opts) {
  Eigen::SelfAdjointEigenSolver<CMat> es((X + X.adjoint()) / 2.0);
  const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
  const CMat surrogate = lmax * CMat::Identity(X.rows(), X.cols()) - X;
  SeesawResult r = seesaw_max(surrogate, dims, opts);
  double best = r.value;
  ProductVector arg = r.argmax;
  Rng rng = Rng::substream(opts.seed, 0x77aa55);
  const size_t cap = 24;
  const size_t stride = near.size() > cap ? (near.size() + cap - 1) / cap : 1;
  for (size_t i = 0; i < near.size(); i += stride) {
    const CVec e0 = near[i].e.normalized();
    const CVec f0 = near[i].f.normalized();
    for (double sigma : {0.0, 1e-4, 1e-3, 1e-2, 1e-1}) {
      const int draws = sigma == 0.0 ? 1 : 2;
      for (int d = 0; d < draws; ++d) {
        CVec e = e0, f = f0;
        if (sigma > 0.0) {
          e = (e + sigma * rng.haar_vector(dims.m)).normalized();
          f = (f + sigma * rng.haar_vector(dims.n)).normalized();
        }
        auto [val, pv] = ascend_from(surrogate, dims, e, f, opts.max_iter, opts.ftol);
        if (val > best) {
          best = val;
          arg = pv;
        }
      }
    }
  }
  return {lmax - best, arg};
}

// A failing subtraction at small eps can be arbitrarily shallow (the deficit
// scales with eps when the witness expectation is flat to fourth order along
// some product direction), so the violating product is located first at a
// coarser eps where the basin is deep, then polished at the requested one.
inline bool subtracted_is_ew(const Witness& W, const CMat& P, double eps,
                             const std::vector<ProductVector>& zero_members,
                             const CMat* detected, const SeesawOptions& opts) {
  const CMat X = (1.0 + eps) * W.matrix - eps * P;
  if (min_eigenvalue(X) >= -kEwTol) return false;
  if (detected && std::real((X * *detected).trace()) >= -kEwTol) return false;
  const double scout_eps = std::max(eps, 0.01);
  auto warm = zero_members;
  if (scout_eps > eps) {
    const CMat Xs = (1.0 + scout_eps) * W.matrix - scout_eps * P;
    warm.push_back(min_product_expectation(Xs, W.dims, zero_members, opts).second);
  }
  return min_product_expectation(X, W.dims, warm, opts).first >= -kEwTol;
}

// Largest eps in [kEpsMin, 1] keeping (1+eps)W - eps*P an EW; nullopt when
// even kEpsMin fails.
inline std::optional<double> largest_subtractable_eps(const Witness& W, const CMat& P,
                                                      const std::vector<ProductVector>& zero_members,
                                                      const CMat* detected,
                                                      const SeesawOptions& opts) {
  if (!subtracted_is_ew(W, P, kEpsMin, zero_members, detected, opts)) return std::nullopt;
  if (subtracted_is_ew(W, P, 1.0, zero_members, detected, opts)) return 1.0;
  double lo = kEpsMin, hi = 1.0;
  for (int it = 0; it < 30; ++it) {
    const double mid = 0.5 * (lo + hi);
    (subtracted_is_ew(W, P, mid, zero_members, detected, opts) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace detail

inline OptimalityReport optimality_analysis(const Witness& W, const SeesawOptions& opts = {}) {
  EwVerdict verdict = verify_ew(W, opts);
  if (!verdict.is_ew) throw InputError("optimality_analysis: input does not verify as an EW");
  ProductFamily pw = zero_set(W, opts);
  OptimalityReport report{0, false, std::nullopt, OptimalityStatus::Undecided};
  CMat span_cols(W.dims.total(), static_cast<Eigen::Index>(pw.samples.size()));
  for (size_t i = 0; i < pw.samples.size(); ++i)
    span_cols.col(static_cast<Eigen::Index>(i)) = pw.samples[i].pv.embedded_normalized();
  if (!pw.samples.empty()) report.pw_span_dim = numerical_rank(span_cols, kSpanTol);
  if (report.pw_span_dim == W.dims.total()) {
    report.spanning_certified_optimal = true;
    report.status = OptimalityStatus::OptimalCertified;
    return report;
  }
  // Orthocomplement K of span(P_W); any improving P must satisfy P P_W = 0,
  // so only operators supported on K qualify. Probe the projector onto K and
  // each basis direction.
  CMat K;
  if (pw.samples.empty()) {
    K = CMat::Identity(W.dims.total(), W.dims.total());
  } else {
    Eigen::JacobiSVD<CMat> svd(span_cols, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > kSpanTol * s(0)) ++r;
    K = svd.matrixU().rightCols(W.dims.total() - r);
  }
  std::vector<CMat> candidates{K * K.adjoint()};
  for (Eigen::Index c = 0; c < K.cols(); ++c)
    candidates.push_back(K.col(c) * K.col(c).adjoint());
  std::vector<ProductVector> zero_members;
  for (const auto& sample : pw.samples) zero_members.push_back(sample.pv);
  const CMat* detected = verdict.detected_state ? &*verdict.detected_state : nullptr;
  std::optional<Subtraction> best;
  for (const CMat& P : candidates) {
    auto eps = detail::largest_subtractable_eps(W, P, zero_members, detected, opts);
    if (eps && (!best || *eps > best->epsilon)) best = Subtraction{P, *eps};
  }
  if (best) {
    report.subtractable = best;
    report.status = OptimalityStatus::NonOptimal;
  }
  return report;
}

struct FinerVerdict {
  bool finer;
  std::optional<double> epsilon;
  std::optional<CMat> P;
};

// Tests W1 = (1-eps)W2 + eps*P for PSD P over the grid, returning the
// smallest eps that works; exact equality short-circuits with eps = 0.
inline FinerVerdict is_finer(const Witness& W1, const Witness& W2,
                             const std::vector<double>& eps_grid) {
  if (!(W1.dims == W2.dims)) throw InputError("is_finer: dimension mismatch");
  if ((W1.matrix - W2.matrix).cwiseAbs().maxCoeff() <= 1e-12)
    return {true, 0.0, std::nullopt};
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end());
  for (double eps : grid) {
    if (eps <= 0.0 || eps > 1.0) continue;
    CMat P = (W1.matrix - (1.0 - eps) * W2.matrix) / eps;
    if (is_psd(P, kHermTol)) return {true, eps, P};
  }
  return {false, std::nullopt, std::nullopt};
}

inline std::vector<double> default_eps_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(i / 100.0);
  return grid;
}

}  // namespace dew

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "subspaces.hpp"
#include "tensor_core.hpp"

namespace dew {

struct FamilySample {
  std::vector<Complex> params;
  std::string chart;
  ProductVector pv;
};

struct ProductFamily {
  BipartiteDims dims;
  std::vector<FamilySample> samples;
  bool certified;  // source subspace passed the CES certificate
};

struct SpanCertificate {
  int family_span_dim;
  int pc_span_dim;
  int sample_count;
  double rank_tolerance;
};

// Generic parameter samples: 0 plus points on circles of cycling radii
// {1, 1/2, 2}. Confining all samples to one circle is not enough: on |α|=1
// the conjugate is 1/α, which collapses the partially conjugated family onto
// fewer monomials and understates its span.
inline std::vector<Complex> generic_parameter_samples(int count) {
  std::vector<Complex> out{Complex(0.0, 0.0)};
  static constexpr double radii[3] = {1.0, 0.5, 2.0};
  for (int t = 0; t + 1 < count; ++t) {
    const double angle = 2.0 * std::numbers::pi * t / (count - 1);
    out.push_back(radii[t % 3] * Complex(std::cos(angle), std::sin(angle)));
  }
  return out;
}

// Rows of the orthogonality system: row i of M is <Psi_i| contracted with e,
// so M f = 0 exactly when e ⊗ f is orthogonal to every basis vector Psi_i.
inline CMat constraint_matrix(const Subspace& V, const CVec& e) {
  const int m = V.dims.m, n = V.dims.n, k = V.dim();
  CMat M(k, n);
  for (int t = 0; t < k; ++t)
    for (int j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (int p = 0; p < m; ++p) acc += std::conj(V.basis(p * n + j, t)) * e(p);
      M(t, j) = acc;
    }
  return M;
}

inline double family_orthogonality_residual(const Subspace& V, const ProductVector& pv) {
  return (V.basis.adjoint() * pv.embedded()).cwiseAbs().maxCoeff();
}

namespace detail {

inline std::pair<std::string, std::vector<Complex>> chart_of(const CVec& e) {
  int lead = 0;
  while (lead < e.size() && std::abs(e(lead)) == 0.0) ++lead;
  std::string chart = "chart" + std::to_string(lead);
  std::vector<Complex> params;
  for (Eigen::Index i = lead + 1; i < e.size(); ++i) params.push_back(e(i));
  return {chart, params};
}

inline void emit_kernel_samples(const Subspace& V, const CVec& e, ProductFamily& fam) {
  CMat kern = kernel(constraint_matrix(V, e));
  auto [chart, params] = chart_of(e);
  for (Eigen::Index t = 0; t < kern.cols(); ++t) {
    ProductVector pv{e, kern.col(t)};
    if (family_orthogonality_residual(V, pv) > kOrthoTol) continue;
    std::vector<Complex> p = params;
    if (kern.cols() > 1) p.push_back(Complex(static_cast<double>(t), 0.0));
    fam.samples.push_back({p, chart, pv});
  }
}

// Interpolates a polynomial of degree <= deg from values on a circle and
// returns its finite roots, Newton-polished. Returns nullopt when the
// function vanishes identically relative to `scale_hint` (the caller's
// measure of the generic magnitude of the function).
inline std::optional<std::vector<Complex>> polynomial_roots(
    const std::function<Complex(Complex)>& fun, int deg, double scale_hint) {
  const int pts = deg + 1;
  CMat vander(pts, pts);
  CVec vals(pts);
  for (int t = 0; t < pts; ++t) {
    const double angle = 2.0 * std::numbers::pi * t / pts;
    const Complex node = 1.5 * Complex(std::cos(angle), std::sin(angle));
    vals(t) = fun(node);
    Complex pw = 1.0;
    for (int j = 0; j < pts; ++j) {
      vander(t, j) = pw;
      pw *= node;
    }
  }
  CVec coef = vander.partialPivLu().solve(vals);
  const double scale = coef.cwiseAbs().maxCoeff();
  if (scale < 1e-10 * std::max(scale_hint, 1e-300)) return std::nullopt;
  int d = deg;
  while (d > 0 && std::abs(coef(d)) < 1e-10 * scale) --d;
  std::vector<Complex> roots;
  if (d == 0) return roots;
  CMat companion = CMat::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -coef(i) / coef(d);
  Eigen::ComplexEigenSolver<CMat> es(companion);
  auto polyval = [&](const CVec& c, int degc, Complex x) {
    Complex acc = 0.0;
    for (int j = degc; j >= 0; --j) acc = acc * x + c(j);
    return acc;
  };
  CVec dcoef(d);
  for (int j = 1; j <= d; ++j) dcoef(j - 1) = static_cast<double>(j) * coef(j);
  for (int i = 0; i < d; ++i) {
    Complex r = es.eigenvalues()(i);
    for (int it = 0; it < 5; ++it) {
      const Complex dv = polyval(dcoef, d - 1, r);
      if (std::abs(dv) < 1e-300) break;
      r -= polyval(coef, d, r) / dv;
    }
    if (std::abs(r) < 1e4) roots.push_back(r);
  }
  return roots;
}

inline void dedupe_params(std::vector<Complex>& values) {
  std::vector<Complex> out;
  for (const Complex& v : values) {
    bool fresh = true;
    for (const Complex& w : out)
      if (std::abs(v - w) <= 1e-6 * (1.0 + std::abs(w))) {
        fresh = false;
        break;
      }
    if (fresh) out.push_back(v);
  }
  values = out;
}

// Roots of det over every n-row subset of the k x n system along the line
// beta -> e(beta). Returns nullopt when every subset determinant vanishes
// identically, meaning the whole line lies inside the product-vector variety.
inline std::optional<std::vector<Complex>> line_variety_roots(
    const Subspace& V, const std::function<CVec(Complex)>& e_of_beta) {
  const int n = V.dims.n, k = V.dim();
  bool any_nondegenerate = false;
  std::vector<Complex> roots;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    auto det_fun = [&](Complex beta) {
      CMat M = constraint_matrix(V, e_of_beta(beta));
      CMat sub(n, n);
      for (int r = 0; r < n; ++r) sub.row(r) = M.row(pick[r]);
      double hadamard = 1.0;
      for (int r = 0; r < n; ++r) hadamard *= sub.row(r).norm();
      return std::pair{sub.determinant(), hadamard};
    };
    // Hadamard bound gives a scale-free notion of "determinant is tiny".
    double worst_rel = 0.0;
    for (int t = 0; t <= n; ++t) {
      const double angle = 2.0 * std::numbers::pi * t / (n + 1);
      auto [d, h] = det_fun(1.5 * Complex(std::cos(angle), std::sin(angle)));
      worst_rel = std::max(worst_rel, std::abs(d) / std::max(h, 1e-300));
    }
    if (worst_rel >= 1e-10) {
      any_nondegenerate = true;
      auto rts = polynomial_roots([&](Complex b) { return det_fun(b).first; }, n, 0.0);
      if (rts) roots.insert(roots.end(), rts->begin(), rts->end());
    }
    // next combination
    int pos = n - 1;
    while (pos >= 0 && pick[pos] == k - n + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  if (!any_nondegenerate) return std::nullopt;
  dedupe_params(roots);
  return roots;
}

}  // namespace detail

inline CesCertificate certify_or_use(const Subspace& V, const CesCertificate* cert) {
  if (cert) return *cert;
  return find_product_vector_in(V, {});
}

// Lemma-1/2 construction on 2 ⊗ n: e(α) = (1, α) plus the chart at infinity.
inline ProductFamily family_2xn(const Subspace& V, const std::vector<Complex>& alpha_samples,
                                const CesCertificate* cert = nullptr) {
  if (V.dims.m != 2) throw InputError("family_2xn: first factor must have dimension 2");
  ProductFamily fam{V.dims, {}, certify_or_use(V, cert).is_ces};
  for (const Complex& a : alpha_samples) {
    CVec e(2);
    e << 1.0, a;
    detail::emit_kernel_samples(V, e, fam);
  }
  CVec inf(2);
  inf << 0.0, 1.0;
  detail::emit_kernel_samples(V, inf, fam);
  return fam;
}

// Kernel construction at caller-supplied first-factor samples. Empty kernels
// are skipped, so the family may come back empty when dim(V) >= n.
inline ProductFamily family_general(const Subspace& V, const std::vector<CVec>& e_samples,
                                    const CesCertificate* cert = nullptr) {
  ProductFamily fam{V.dims, {}, certify_or_use(V, cert).is_ces};
  for (const CVec& e : e_samples) {
    if (e.size() != V.dims.m) throw InputError("family_general: e sample has wrong length");
    detail::emit_kernel_samples(V, e, fam);
  }
  return fam;
}

// Affine-chart grid covering the projective space of the first factor,
// suitable when dim(V) <= n-1 so kernels are generically nonempty.
inline std::vector<CVec> chart_e_samples(const BipartiteDims& dims, int per_axis = 5) {
  std::vector<CVec> out;
  if (dims.m == 2) {
    for (const Complex& a : generic_parameter_samples(per_axis * per_axis)) {
      CVec e(2);
      e << 1.0, a;
      out.push_back(e);
    }
    CVec inf(2);
    inf << 0.0, 1.0;
    out.push_back(inf);
    return out;
  }
  if (dims.m != 3) throw InputError("chart_e_samples: supported for m in {2, 3}");
  const auto axis = generic_parameter_samples(per_axis);
  for (const Complex& a : axis)
    for (const Complex& b : axis) {
      CVec e(3);
      e << 1.0, a, b;
      out.push_back(e);
    }
  for (const Complex& a : generic_parameter_samples(per_axis * per_axis)) {
    CVec e(3);
    e << 0.0, 1.0, a;
    out.push_back(e);
  }
  CVec e2(3);
  e2 << 0.0, 0.0, 1.0;
  out.push_back(e2);
  return out;
}

// First-factor samples on the determinant variety det M(e) = 0, needed when
// dim(V) >= n and generic kernels are empty. Charts whose determinant
// vanishes identically lie inside the variety and fall back to a grid.
inline std::vector<CVec> variety_e_samples(const Subspace& V) {
  const int n = V.dims.n;
  std::vector<CVec> out;
  if (V.dims.m == 2) {
    auto roots = detail::line_variety_roots(V, [&](Complex b) {
      CVec e(2);
      e << 1.0, b;
      return e;
    });
    std::vector<Complex> betas =
        roots ? *roots : generic_parameter_samples(2 * n + 1);
    for (const Complex& b : betas) {
      CVec e(2);
      e << 1.0, b;
      out.push_back(e);
    }
    CVec inf(2);
    inf << 0.0, 1.0;
    out.push_back(inf);
    return out;
  }
  if (V.dims.m != 3) throw InputError("variety_e_samples: supported for m in {2, 3}");
  for (const Complex& a : generic_parameter_samples(13)) {
    auto roots = detail::line_variety_roots(V, [&](Complex b) {
      CVec e(3);
      e << 1.0, a, b;
      return e;
    });
    std::vector<Complex> betas =
        roots ? *roots : generic_parameter_samples(2 * n + 1);
    for (const Complex& b : betas) {
      CVec e(3);
      e << 1.0, a, b;
      out.push_back(e);
    }
  }
  auto roots = detail::line_variety_roots(V, [&](Complex b) {
    CVec e(3);
    e << 0.0, 1.0, b;
    return e;
  });
  std::vector<Complex> betas = roots ? *roots : generic_parameter_samples(2 * n + 1);
  for (const Complex& b : betas) {
    CVec e(3);
    e << 0.0, 1.0, b;
    out.push_back(e);
  }
  CVec e2(3);
  e2 << 0.0, 0.0, 1.0;
  out.push_back(e2);
  return out;
}

inline SpanCertificate span_certificate(const ProductFamily& fam, double tol = kSpanTol) {
  if (fam.samples.empty()) throw InputError("span_certificate: empty family");
  const int dim = fam.dims.total();
  CMat emb(dim, static_cast<Eigen::Index>(fam.samples.size()));
  CMat pcs(dim, static_cast<Eigen::Index>(fam.samples.size()));
  for (size_t i = 0; i < fam.samples.size(); ++i) {
    const auto& pv = fam.samples[i].pv;
    emb.col(static_cast<Eigen::Index>(i)) = pv.embedded_normalized();
    pcs.col(static_cast<Eigen::Index>(i)) = partial_conjugate(pv).embedded_normalized();
  }
  return {numerical_rank(emb, tol), numerical_rank(pcs, tol),
          static_cast<int>(fam.samples.size()), tol};
}

inline int recommended_sample_count(const BipartiteDims& dims, int /*k*/) {
  if (dims.m == 2) return 2 * dims.n + 1;
  return 25;
}

}  // namespace dew

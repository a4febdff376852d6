#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prodvec_families.hpp"
#include "subspaces.hpp"
#include "tensor_core.hpp"
#include "witness.hpp"

namespace dew {

// Chain of entangled pairs |0,i> - |1,i-1> stepping down the second index;
// an (n-1)-dim CES of 2 x n that saturates the (m-1)(n-1) bound.
inline Subspace ladder_ces(int n) {
  if (n < 2) throw InputError("ladder_ces: n must be at least 2");
  BipartiteDims dims(2, n);
  const double s = 1.0 / std::sqrt(2.0);
  CMat basis = CMat::Zero(dims.total(), n - 1);
  for (int i = 1; i < n; ++i) {
    basis(flat_index(dims, 0, i), i - 1) = s;
    basis(flat_index(dims, 1, i - 1), i - 1) = -s;
  }
  return {dims, basis};
}

struct V1Subspace {
  Subspace subspace;
  Complex a, b, a2, b2;
  // (a2+b)^2 = 4*a*b2 with b2 != 0: the slope quadratic below degenerates to
  // a double root and the subspace admits the two closed product families.
  bool special;
  std::optional<Complex> lambda;  // the double root -(b+a2)/(2*b2)
};

inline V1Subspace v1_subspace(Complex a, Complex b, Complex a2, Complex b2) {
  const double scale =
      std::max({std::abs(a), std::abs(b), std::abs(a2), std::abs(b2), 1.0});
  if (std::abs(a * b2 - a2 * b) <= 1e-12 * scale * scale)
    throw InputError("v1_subspace: need a*b2 != a2*b");
  BipartiteDims dims(3, 3);
  CVec v1 = CVec::Zero(9), v2 = CVec::Zero(9), v3 = CVec::Zero(9);
  v1(flat_index(dims, 0, 1)) = 1.0;
  v1(flat_index(dims, 1, 0)) = 1.0;
  v2(flat_index(dims, 0, 2)) = 1.0;
  v2(flat_index(dims, 2, 0)) = 1.0;
  v3(flat_index(dims, 1, 1)) = a;
  v3(flat_index(dims, 1, 2)) = b;
  v3(flat_index(dims, 2, 1)) = a2;
  v3(flat_index(dims, 2, 2)) = b2;
  V1Subspace out{orthonormalize({v1, v2, v3}, dims), a, b, a2, b2, false,
                 std::nullopt};
  const Complex disc = (a2 + b) * (a2 + b) - 4.0 * a * b2;
  if (std::abs(disc) <= 1e-12 * scale * scale && std::abs(b2) > 1e-12 * scale) {
    out.special = true;
    out.lambda = -(b + a2) / (2.0 * b2);
  }
  return out;
}

// The two closed families orthogonal to V1 in the degenerate-root regime.
// Orthogonality is sesquilinear, so the subspace coefficients enter
// conjugated; for real parameters the forms reduce to
// (1, a, la) x (1, -a, -la) and (0, 1, a) x (0, b + b2*a, -a - a2*a).
inline ProductFamily v1_product_families(Complex a, Complex b, Complex a2,
                                         Complex b2,
                                         const std::vector<Complex>& alpha_samples) {
  V1Subspace v1 = v1_subspace(a, b, a2, b2);
  if (!v1.special)
    throw InputError("v1_product_families: need (a2+b)^2 = 4*a*b2 and b2 != 0");
  const Complex mu = std::conj(*v1.lambda);
  ProductFamily fam{v1.subspace.dims, {}, true};
  for (const Complex& alpha : alpha_samples) {
    CVec e(3), f(3);
    e << Complex(1.0), alpha, mu * alpha;
    f << Complex(1.0), -alpha, -mu * alpha;
    fam.samples.push_back({{alpha}, "chart0", ProductVector{e, f}});
  }
  for (const Complex& alpha : alpha_samples) {
    CVec e(3), f(3);
    e << Complex(0.0), Complex(1.0), alpha;
    f << Complex(0.0), std::conj(b) + std::conj(b2) * alpha,
        -std::conj(a) - std::conj(a2) * alpha;
    fam.samples.push_back({{alpha}, "chart1", ProductVector{e, f}});
  }
  return fam;
}

inline Subspace v2_subspace() {
  BipartiteDims dims(3, 3);
  auto ket = [&](int i, int j) {
    CVec v = CVec::Zero(9);
    v(flat_index(dims, i, j)) = 1.0;
    return CVec(v);
  };
  CVec v1 = ket(0, 1) - ket(1, 0);
  CVec v2 = ket(0, 2) - ket(2, 0);
  CVec v3 = ket(1, 2) - ket(2, 1);
  CVec v4 = ket(0, 2) + ket(2, 0) - ket(1, 1);
  return orthonormalize({v1, v2, v3, v4}, dims);
}

inline ProductFamily v2_product_family(const std::vector<Complex>& alpha_samples) {
  BipartiteDims dims(3, 3);
  ProductFamily fam{dims, {}, true};
  for (const Complex& alpha : alpha_samples) {
    CVec e(3);
    e << Complex(1.0), alpha, alpha * alpha / 2.0;
    fam.samples.push_back({{alpha}, "chart0", ProductVector{e, e}});
  }
  return fam;
}

namespace detail {

inline CVec ket3(int i, int j) {
  CVec v = CVec::Zero(9);
  v(3 * i + j) = 1.0;
  return v;
}

// Four Schmidt-rank-2 vectors spanning the orthocomplement of the five-state
// pyramid UPB, with h- = 1/(2*h+).
inline std::array<CVec, 4> pyramid_complement_closed_forms() {
  const double s5 = std::sqrt(5.0);
  const double hm = 0.5 * std::sqrt(s5 - 1.0);
  const double w = 2.0 * hm * hm;
  std::array<CVec, 4> us = {
      CVec(hm * ket3(1, 0) + hm * ket3(0, 1) + w * ket3(2, 1)),
      CVec(-hm * ket3(0, 1) + hm * ket3(1, 0) + w * ket3(1, 2)),
      CVec(-hm * ket3(0, 0) + w * ket3(2, 0) + hm * ket3(1, 1)),
      CVec(hm * ket3(0, 0) - w * ket3(0, 2) + hm * ket3(1, 1))};
  for (auto& u : us) u.normalize();
  return us;
}

}  // namespace detail

struct PyramidUpb {
  std::vector<ProductVector> states;
  Subspace complement;
  std::vector<CVec> complement_vectors;
};

inline PyramidUpb pyramid_upb() {
  BipartiteDims dims(3, 3);
  const double s5 = std::sqrt(5.0);
  const double hp = 0.5 * std::sqrt(s5 + 1.0);
  const double N = 2.0 / std::sqrt(5.0 + s5);
  auto phi = [&](int i) {
    const double t = 2.0 * M_PI * i / 5.0;
    CVec v(3);
    v << N * std::cos(t), N * std::sin(t), N * hp;
    return v;
  };
  std::vector<ProductVector> states;
  std::vector<CVec> embedded;
  for (int i = 0; i < 5; ++i) {
    ProductVector pv{phi(i), phi((2 * i) % 5)};
    embedded.push_back(pv.embedded());
    states.push_back(pv);
  }
  auto us = detail::pyramid_complement_closed_forms();
  return {std::move(states), complement(orthonormalize(embedded, dims)),
          {us.begin(), us.end()}};
}

// Interpolates between the two halves of the complement basis; unit trace,
// supported on the pyramid complement, NPT except at the r = 1/4 crossing.
inline CMat pyramid_Q(double r) {
  if (r < 0.0 || r > 0.5) throw InputError("pyramid_Q: r outside [0, 1/2]");
  auto us = detail::pyramid_complement_closed_forms();
  CMat Q = CMat::Zero(9, 9);
  Q += r * (us[0] * us[0].adjoint() + us[1] * us[1].adjoint());
  Q += 0.5 * (1.0 - 2.0 * r) * (us[2] * us[2].adjoint() + us[3] * us[3].adjoint());
  return Q;
}

struct ReproClaim {
  std::string description;
  std::string expected;
  std::string computed;
  bool pass;
};

struct ReproductionReport {
  std::string example_id;
  std::vector<ReproClaim> claims;
  std::uint64_t seed;
  // Wall-clock bookkeeping only: omitted from serialized reports so that a
  // fixed seed yields byte-identical output.
  long long runtime_ms = 0;

  bool all_pass() const {
    if (claims.empty()) return false;
    for (const auto& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt_real(double x) {
  std::ostringstream os;
  os << std::setprecision(9) << x;
  return os.str();
}

inline ReproClaim claim_int(const std::string& desc, long long expected,
                            long long computed) {
  return {desc, std::to_string(expected), std::to_string(computed),
          expected == computed};
}

inline ReproClaim claim_bool(const std::string& desc, bool expected, bool computed) {
  return {desc, expected ? "true" : "false", computed ? "true" : "false",
          expected == computed};
}

inline ReproClaim claim_str(const std::string& desc, const std::string& expected,
                            const std::string& computed, bool pass) {
  return {desc, expected, computed, pass};
}

inline ReproClaim claim_near(const std::string& desc, double expected,
                             double computed, double tol) {
  return {desc, fmt_real(expected), fmt_real(computed),
          std::abs(expected - computed) <= tol};
}

inline ReproClaim claim_below(const std::string& desc, double computed,
                              double bound) {
  return {desc, "<= " + fmt_real(bound), fmt_real(computed), computed <= bound};
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline CMat random_supported_operator(const Subspace& V, Rng& rng) {
  CMat G = rng.gaussian_matrix(V.dim(), V.dim());
  CMat Q = V.basis * (G * G.adjoint()) * V.basis.adjoint();
  return Q / Q.trace().real();
}

}  // namespace detail

inline ReproductionReport reproduce_ladder(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"ladder", {}, seed};
  for (int n = 3; n <= 6; ++n) {
    const std::string tag = "ladder 2x" + std::to_string(n);
    Subspace V = ladder_ces(n);
    rep.claims.push_back(detail::claim_int(tag + ": dimension", n - 1, V.dim()));
    rep.claims.push_back(detail::claim_int(tag + ": saturates (m-1)(n-1)", n - 1,
                                           max_ces_dimension(V.dims)));
    SeesawOptions opts;
    opts.seed = seed + static_cast<std::uint64_t>(n);
    CesCertificate cert = find_product_vector_in(V, opts);
    rep.claims.push_back(
        detail::claim_bool(tag + ": contains no product vector", true, cert.is_ces));
    rep.claims.push_back(detail::claim_near(
        tag + ": max product overlap (tol 1e-7)",
        0.5 * (1.0 + std::cos(M_PI / n)), cert.max_product_overlap, 1e-7));
    ProductFamily fam = family_2xn(
        V, generic_parameter_samples(recommended_sample_count(V.dims, V.dim())),
        &cert);
    SpanCertificate sc = span_certificate(fam);
    rep.claims.push_back(
        detail::claim_int(tag + ": orthogonal family span", n + 1, sc.family_span_dim));
    rep.claims.push_back(detail::claim_int(
        tag + ": partially conjugated span", 2 * n, sc.pc_span_dim));
  }
  Subspace V3 = ladder_ces(3);
  Witness W = dew_from_Q(V3.projector() / 2.0, V3.dims);
  SeesawOptions wopts;
  wopts.seed = seed + 100;
  EwVerdict verdict = verify_ew(W, wopts);
  rep.claims.push_back(
      detail::claim_bool("ladder 2x3 witness: certifies as EW", true, verdict.is_ew));
  OptimalityReport orep = optimality_analysis(W, wopts);
  rep.claims.push_back(detail::claim_int("ladder 2x3 witness: zero-set span", 6,
                                         orep.pw_span_dim));
  rep.claims.push_back(detail::claim_str("ladder 2x3 witness: optimality",
                                         "optimal-certified", to_string(orep.status),
                                         orep.status == OptimalityStatus::OptimalCertified));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_v1(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"v1", {}, seed};
  bool rejected = false;
  try {
    v1_subspace(1.0, 1.0, 1.0, 1.0);
  } catch (const InputError&) {
    rejected = true;
  }
  rep.claims.push_back(
      detail::claim_bool("V1: parameters (1,1,1,1) rejected", true, rejected));
  V1Subspace v1 = v1_subspace(1.0, 2.0, 0.0, 1.0);
  rep.claims.push_back(detail::claim_bool("V1(1,2,0,1): double-root regime", true,
                                          v1.special));
  rep.claims.push_back(detail::claim_near(
      "V1(1,2,0,1): double root -(b+a2)/(2*b2)", -1.0,
      v1.lambda ? v1.lambda->real() : 0.0, 1e-12));
  SeesawOptions opts;
  opts.seed = seed + 1;
  CesCertificate cert = find_product_vector_in(v1.subspace, opts);
  rep.claims.push_back(
      detail::claim_bool("V1: contains no product vector", true, cert.is_ces));
  rep.claims.push_back(detail::claim_near("V1: max product overlap (tol 1e-4)",
                                          0.971405, cert.max_product_overlap, 1e-4));
  ProductFamily fam =
      v1_product_families(1.0, 2.0, 0.0, 1.0, generic_parameter_samples(25));
  double resid = 0.0;
  for (const auto& s : fam.samples)
    resid = std::max(resid, family_orthogonality_residual(v1.subspace, s.pv));
  rep.claims.push_back(
      detail::claim_below("V1 closed families: orthogonality residual", resid, 1e-9));
  SpanCertificate sc = span_certificate(fam, kRankTol);
  rep.claims.push_back(
      detail::claim_int("V1 closed families: span", 5, sc.family_span_dim));
  rep.claims.push_back(detail::claim_int(
      "V1 closed families: partially conjugated span", 7, sc.pc_span_dim));
  ProductFamily general =
      family_general(v1.subspace, variety_e_samples(v1.subspace), &cert);
  CMat closed(9, static_cast<Eigen::Index>(fam.samples.size()));
  for (size_t i = 0; i < fam.samples.size(); ++i)
    closed.col(static_cast<Eigen::Index>(i)) = fam.samples[i].pv.embedded_normalized();
  Eigen::JacobiSVD<CMat> svd(closed, Eigen::ComputeThinU);
  CMat basis = svd.matrixU().leftCols(sc.family_span_dim);
  double agreement = 0.0;
  for (const auto& s : general.samples) {
    CVec v = s.pv.embedded_normalized();
    agreement = std::max(agreement, (v - basis * (basis.adjoint() * v)).norm());
  }
  rep.claims.push_back(detail::claim_bool(
      "V1 sampled pipeline: found product vectors", true, !general.samples.empty()));
  rep.claims.push_back(detail::claim_below(
      "V1 sampled pipeline: vectors lie in the closed span", agreement, 1e-8));
  Witness W = dew_from_Q(v1.subspace.projector() / 3.0, v1.subspace.dims);
  SeesawOptions wopts;
  wopts.seed = seed + 50;
  EwVerdict verdict = verify_ew(W, wopts);
  rep.claims.push_back(
      detail::claim_bool("V1 witness: certifies as EW", true, verdict.is_ew));
  rep.claims.push_back(detail::claim_near("V1 witness: min eigenvalue (tol 1e-4)",
                                          -0.235680, verdict.min_eigenvalue, 1e-4));
  OptimalityReport orep = optimality_analysis(W, wopts);
  rep.claims.push_back(
      detail::claim_int("V1 witness: zero-set span", 7, orep.pw_span_dim));
  rep.claims.push_back(detail::claim_str(
      "V1 witness: optimality left open (must not certify)", "undecided",
      to_string(orep.status), orep.status != OptimalityStatus::OptimalCertified));
  int good = 0;
  for (int t = 0; t < 20; ++t) {
    Rng rng = Rng::substream(seed, 200 + static_cast<std::uint64_t>(t));
    CMat Q = detail::random_supported_operator(v1.subspace, rng);
    Witness Wt = dew_from_Q(Q, v1.subspace.dims);
    SeesawOptions o2;
    o2.seed = seed + 300 + static_cast<std::uint64_t>(t);
    ProductFamily pw = zero_set(Wt, o2);
    SpanCertificate st = span_certificate(pw);
    if (st.family_span_dim == 7 && min_eigenvalue(Wt.matrix) < -kEwTol) ++good;
  }
  rep.claims.push_back(detail::claim_int(
      "V1: 20 random rank-3 supported operators are NPT with zero-set span 7", 20,
      good));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_v2(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"v2", {}, seed};
  Subspace V2 = v2_subspace();
  rep.claims.push_back(detail::claim_int("V2: dimension", 4, V2.dim()));
  rep.claims.push_back(detail::claim_int("V2: saturates (m-1)(n-1)", 4,
                                         max_ces_dimension(V2.dims)));
  rep.claims.push_back(detail::claim_int(
      "V2: full left reduced support", 3,
      numerical_rank(reduced_support(V2.projector(), V2.dims, Side::First))));
  rep.claims.push_back(detail::claim_int(
      "V2: full right reduced support", 3,
      numerical_rank(reduced_support(V2.projector(), V2.dims, Side::Second))));
  SeesawOptions opts;
  opts.seed = seed + 1;
  CesCertificate cert = find_product_vector_in(V2, opts);
  rep.claims.push_back(
      detail::claim_bool("V2: contains no product vector", true, cert.is_ces));
  rep.claims.push_back(detail::claim_near("V2: max product overlap (tol 1e-4)",
                                          5.0 / 6.0, cert.max_product_overlap, 1e-4));
  ProductFamily fam = v2_product_family(generic_parameter_samples(9));
  double resid = 0.0;
  for (const auto& s : fam.samples)
    resid = std::max(resid, family_orthogonality_residual(V2, s.pv));
  rep.claims.push_back(
      detail::claim_below("V2 closed family: orthogonality residual", resid, 1e-9));
  SpanCertificate sc = span_certificate(fam, kRankTol);
  rep.claims.push_back(
      detail::claim_int("V2 closed family: span", 5, sc.family_span_dim));
  rep.claims.push_back(detail::claim_int(
      "V2 closed family: partially conjugated span", 9, sc.pc_span_dim));
  Witness W = dew_from_Q(V2.projector() / 4.0, V2.dims);
  SeesawOptions wopts;
  wopts.seed = seed + 50;
  EwVerdict verdict = verify_ew(W, wopts);
  rep.claims.push_back(
      detail::claim_bool("V2 witness: certifies as EW", true, verdict.is_ew));
  OptimalityReport orep = optimality_analysis(W, wopts);
  rep.claims.push_back(
      detail::claim_int("V2 witness: zero-set span", 9, orep.pw_span_dim));
  rep.claims.push_back(detail::claim_str(
      "V2 witness: optimality", "optimal-certified", to_string(orep.status),
      orep.status == OptimalityStatus::OptimalCertified));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_pyramid(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"pyramid", {}, seed};
  PyramidUpb upb = pyramid_upb();
  double overlap = 0.0;
  for (size_t i = 0; i < upb.states.size(); ++i)
    for (size_t j = i + 1; j < upb.states.size(); ++j)
      overlap = std::max(overlap, std::abs(upb.states[i].embedded_normalized().dot(
                                      upb.states[j].embedded_normalized())));
  rep.claims.push_back(
      detail::claim_below("pyramid: pairwise UPB overlaps", overlap, 1e-12));
  rep.claims.push_back(
      detail::claim_int("pyramid: complement dimension", 4, upb.complement.dim()));
  CMat closed(9, 4);
  double gram = 0.0;
  for (int i = 0; i < 4; ++i) closed.col(i) = upb.complement_vectors[i];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      gram = std::max(gram, std::abs(closed.col(i).dot(closed.col(j)) -
                                     (i == j ? 1.0 : 0.0)));
  rep.claims.push_back(detail::claim_below(
      "pyramid: closed complement vectors orthonormal", gram, 1e-12));
  const double proj_diff = (closed * closed.adjoint() - upb.complement.projector())
                               .cwiseAbs()
                               .maxCoeff();
  rep.claims.push_back(detail::claim_below(
      "pyramid: closed vectors reproduce the complement projector", proj_diff, 1e-9));
  int rank2 = 0;
  for (const auto& u : upb.complement_vectors)
    if (schmidt(u, upb.complement.dims).schmidt_rank == 2) ++rank2;
  rep.claims.push_back(
      detail::claim_int("pyramid: complement vectors of Schmidt rank 2", 4, rank2));
  SeesawOptions opts;
  opts.seed = seed + 1;
  CesCertificate cert = find_product_vector_in(upb.complement, opts);
  rep.claims.push_back(detail::claim_bool("pyramid: complement contains no product vector",
                                          true, cert.is_ces));
  const std::array<double, 4> npt_r = {0.0, 0.1, 0.4, 0.5};
  const std::array<double, 4> npt_min = {-1.718e-1, -9.214e-2, -1.447e-1, -2.429e-1};
  for (size_t i = 0; i < npt_r.size(); ++i) {
    CMat Q = pyramid_Q(npt_r[i]);
    const double lmin = min_eigenvalue(partial_transpose(Q, upb.complement.dims));
    rep.claims.push_back(detail::claim_below(
        "pyramid: Q(" + detail::fmt_real(npt_r[i]) + ") NPT", lmin, -1e-6));
    rep.claims.push_back(detail::claim_near(
        "pyramid: Q(" + detail::fmt_real(npt_r[i]) + ") min eigenvalue (tol 1e-4)",
        npt_min[i], lmin, 1e-4));
  }
  const double at_quarter =
      min_eigenvalue(partial_transpose(pyramid_Q(0.25), upb.complement.dims));
  rep.claims.push_back(detail::claim_bool("pyramid: Q(1/4) PPT within -1e-10", true,
                                          at_quarter >= -1e-10));
  double trace_dev = 0.0;
  int crossings = 0;
  double crossing_at = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double r = 0.5 * i / 100.0;
    CMat Q = pyramid_Q(r);
    trace_dev = std::max(trace_dev, std::abs(Q.trace().real() - 1.0));
    const double lmin = min_eigenvalue(partial_transpose(Q, upb.complement.dims));
    if (lmin >= -1e-6) {
      ++crossings;
      crossing_at = r;
    }
  }
  rep.claims.push_back(
      detail::claim_below("pyramid: unit trace across the grid", trace_dev, 1e-12));
  rep.claims.push_back(detail::claim_int(
      "pyramid: grid points with min eigenvalue >= -1e-6", 1, crossings));
  rep.claims.push_back(
      detail::claim_near("pyramid: crossing location", 0.25, crossing_at, 1e-12));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_lemma1(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"lemma1", {}, seed};
  for (int n = 3; n <= 6; ++n) {
    int ok = 0;
    for (int t = 0; t < 50; ++t) {
      RandomCes rc = random_ces(BipartiteDims(2, n), n - 1,
                                seed + 10000ull * n + 100ull * t);
      ProductFamily fam = family_2xn(
          rc.subspace, generic_parameter_samples(2 * n + 1), &rc.certificate);
      SpanCertificate sc = span_certificate(fam);
      if (sc.family_span_dim == n + 1 && sc.pc_span_dim == 2 * n) ++ok;
    }
    rep.claims.push_back(detail::claim_int(
        "2x" + std::to_string(n) + ": 50 random maximal CES span (n+1, 2n)", 50, ok));
  }
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_lemma2(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"lemma2", {}, seed};
  int ok_pc = 0, ok_family = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 4 + t % 3;
    const int k = 1 + t % (n - 2);
    RandomCes rc =
        random_ces(BipartiteDims(2, n), k, seed + 20000ull + 100ull * t);
    ProductFamily fam = family_2xn(rc.subspace,
                                   generic_parameter_samples(2 * n + 1),
                                   &rc.certificate);
    SpanCertificate sc = span_certificate(fam);
    if (sc.pc_span_dim == 2 * n) ++ok_pc;
    if (sc.family_span_dim == 2 * n - k) ++ok_family;
  }
  rep.claims.push_back(detail::claim_int(
      "50 random low-dim CES in 2xn: partially conjugated span 2n", 50, ok_pc));
  rep.claims.push_back(detail::claim_int(
      "50 random low-dim CES in 2xn: orthogonal family span 2n-k", 50, ok_family));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_lemma3(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"lemma3", {}, seed};
  BipartiteDims dims(3, 3);
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    Rng rng = Rng::substream(seed, 40000 + static_cast<std::uint64_t>(t));
    CVec psi = rng.haar_vector(9);
    if (schmidt(psi, dims).schmidt_rank < 2) continue;
    Witness W = dew_from_Q(psi * psi.adjoint(), dims);
    SeesawOptions o;
    o.seed = seed + 41000 + static_cast<std::uint64_t>(t);
    ProductFamily pw = zero_set(W, o);
    if (span_certificate(pw).family_span_dim == 9) ++ok;
  }
  rep.claims.push_back(detail::claim_int(
      "50 entangled pure states on 3x3: zero-set span 9", 50, ok));
  Rng rng = Rng::substream(seed, 42000);
  ProductVector pv{rng.haar_vector(3), rng.haar_vector(3)};
  CVec prod = pv.embedded();
  Witness Wp = dew_from_Q(prod * prod.adjoint(), dims);
  SeesawOptions o;
  o.seed = seed + 43000;
  rep.claims.push_back(detail::claim_bool(
      "product pure state: not an EW", false, verify_ew(Wp, o).is_ew));
  rep.claims.push_back(detail::claim_bool(
      "product pure state: zero set flagged uncertified", false,
      zero_set(Wp, o).certified));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_lemma4(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"lemma4", {}, seed};
  BipartiteDims dims(3, 3);
  int ok_pc = 0, ok_family = 0;
  for (int t = 0; t < 50; ++t) {
    RandomCes rc = random_ces(dims, 2, seed + 60000ull + 100ull * t);
    ProductFamily fam =
        family_general(rc.subspace, chart_e_samples(dims), &rc.certificate);
    SpanCertificate sc = span_certificate(fam);
    if (sc.pc_span_dim == 9) ++ok_pc;
    if (sc.family_span_dim == 7) ++ok_family;
  }
  rep.claims.push_back(detail::claim_int(
      "50 random 2-dim CES in 3x3: partially conjugated span 9", 50, ok_pc));
  rep.claims.push_back(detail::claim_int(
      "50 random 2-dim CES in 3x3: orthogonal family span 7", 50, ok_family));
  // The generic behaviour of 3-dim CES is an open question; the fraction is
  // reported without gating the suite on it.
  int full = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    RandomCes rc = random_ces(dims, 3, seed + 70000ull + 100ull * t);
    ProductFamily fam = family_general(rc.subspace, variety_e_samples(rc.subspace),
                                       &rc.certificate);
    if (!fam.samples.empty() && span_certificate(fam).pc_span_dim == 9) ++full;
  }
  rep.claims.push_back(detail::claim_str(
      "10 random 3-dim CES: fraction with full partially conjugated span (informational)",
      "reported", std::to_string(full) + "/" + std::to_string(trials), true));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_theorem1(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"theorem1", {}, seed};
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + t % 4;
    RandomCes rc = random_ces(BipartiteDims(2, n), n - 1,
                              seed + 80000ull + 100ull * t);
    Rng rng = Rng::substream(seed, 81000 + static_cast<std::uint64_t>(t));
    CMat Q = detail::random_supported_operator(rc.subspace, rng);
    Witness W = dew_from_Q(Q, rc.subspace.dims);
    SeesawOptions o;
    o.seed = seed + 82000 + static_cast<std::uint64_t>(t);
    if (optimality_analysis(W, o).status == OptimalityStatus::OptimalCertified) ++ok;
  }
  rep.claims.push_back(detail::claim_int(
      "50 operators on random maximal CES in 2xn: optimal-certified", 50, ok));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline ReproductionReport reproduce_theorem2(std::uint64_t seed) {
  detail::Stopwatch watch;
  ReproductionReport rep{"theorem2", {}, seed};
  BipartiteDims dims(3, 3);
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    RandomCes rc = random_ces(dims, 2, seed + 90000ull + 100ull * t);
    Rng rng = Rng::substream(seed, 91000 + static_cast<std::uint64_t>(t));
    CMat Q = detail::random_supported_operator(rc.subspace, rng);
    Witness W = dew_from_Q(Q, dims);
    SeesawOptions o;
    o.seed = seed + 92000 + static_cast<std::uint64_t>(t);
    if (optimality_analysis(W, o).status == OptimalityStatus::OptimalCertified) ++ok;
  }
  rep.claims.push_back(detail::claim_int(
      "50 rank-2 operators on random 2-dim CES in 3x3: optimal-certified", 50, ok));
  rep.runtime_ms = watch.ms();
  return rep;
}

inline std::vector<std::string> reproduction_ids() {
  return {"ladder", "v1",     "v2",     "pyramid",  "lemma1",
          "lemma2", "lemma3", "lemma4", "theorem1", "theorem2"};
}

inline ReproductionReport reproduce_one(const std::string& id, std::uint64_t seed) {
  if (id == "ladder") return reproduce_ladder(seed);
  if (id == "v1") return reproduce_v1(seed);
  if (id == "v2") return reproduce_v2(seed);
  if (id == "pyramid") return reproduce_pyramid(seed);
  if (id == "lemma1") return reproduce_lemma1(seed);
  if (id == "lemma2") return reproduce_lemma2(seed);
  if (id == "lemma3") return reproduce_lemma3(seed);
  if (id == "lemma4") return reproduce_lemma4(seed);
  if (id == "theorem1") return reproduce_theorem1(seed);
  if (id == "theorem2") return reproduce_theorem2(seed);
  throw InputError("reproduce: unknown example id '" + id + "'");
}

inline std::vector<ReproductionReport> reproduce_all(std::uint64_t seed) {
  std::vector<ReproductionReport> reports;
  for (const auto& id : reproduction_ids()) reports.push_back(reproduce_one(id, seed));
  return reports;
}

inline std::vector<ReproductionReport> reproduce(const std::string& id,
                                                 std::uint64_t seed) {
  if (id == "all") return reproduce_all(seed);
  return {reproduce_one(id, seed)};
}

}  // namespace dew

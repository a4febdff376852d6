#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "dew/paper_examples.hpp"
#include "dew/prodvec_families.hpp"
#include "dew/rng.hpp"
#include "dew/subspaces.hpp"

using namespace dew;

TEST_CASE("generic parameter samples start at zero and avoid repeats") {
  auto samples = generic_parameter_samples(9);
  REQUIRE(samples.size() == 9);
  REQUIRE(std::abs(samples[0]) == 0.0);
  std::set<std::pair<double, double>> seen;
  for (auto z : samples) seen.insert({z.real(), z.imag()});
  REQUIRE(seen.size() == samples.size());
}

TEST_CASE("constraint matrix kernels produce orthogonal products") {
  Subspace V = ladder_ces(4);
  Rng rng(4);
  CVec e = rng.haar_vector(2);
  CMat M = constraint_matrix(V, e);
  REQUIRE(M.rows() == V.dim());
  REQUIRE(M.cols() == 4);
  CMat K = kernel(M);
  for (Eigen::Index c = 0; c < K.cols(); ++c) {
    ProductVector pv{e, K.col(c)};
    REQUIRE(family_orthogonality_residual(V, pv) < 1e-12);
  }
}

TEST_CASE("two by n family reproduces the ladder spans") {
  for (int n : {3, 4, 5, 6}) {
    Subspace V = ladder_ces(n);
    CesCertificate cert = find_product_vector_in(V);
    ProductFamily fam = family_2xn(V, generic_parameter_samples(2 * n + 1), &cert);
    REQUIRE(fam.certified);
    REQUIRE(fam.samples.size() >= static_cast<size_t>(2 * n + 1));
    for (const auto& s : fam.samples)
      REQUIRE(family_orthogonality_residual(V, s.pv) < 1e-9);
    SpanCertificate sc = span_certificate(fam);
    REQUIRE(sc.family_span_dim == n + 1);
    REQUIRE(sc.pc_span_dim == 2 * n);
    REQUIRE(sc.sample_count == static_cast<int>(fam.samples.size()));
  }
}

TEST_CASE("chart grid family covers low dimensional subspaces of 3x3") {
  RandomCes rc = random_ces(BipartiteDims(3, 3), 2, 902);
  CesCertificate cert = rc.certificate;
  ProductFamily fam = family_general(rc.subspace, chart_e_samples(rc.subspace.dims), &cert);
  REQUIRE_FALSE(fam.samples.empty());
  for (const auto& s : fam.samples)
    REQUIRE(family_orthogonality_residual(rc.subspace, s.pv) < 1e-9);
  SpanCertificate sc = span_certificate(fam);
  REQUIRE(sc.family_span_dim == 7);
  REQUIRE(sc.pc_span_dim == 9);
}

TEST_CASE("determinant variety family handles k >= n") {
  Subspace V = v2_subspace();
  CesCertificate cert = find_product_vector_in(V);
  ProductFamily fam = family_general(V, variety_e_samples(V), &cert);
  REQUIRE(fam.certified);
  REQUIRE_FALSE(fam.samples.empty());
  for (const auto& s : fam.samples)
    REQUIRE(family_orthogonality_residual(V, s.pv) < 1e-9);
  SpanCertificate sc = span_certificate(fam);
  REQUIRE(sc.pc_span_dim == 9);
}

TEST_CASE("span certificate rejects empty families") {
  ProductFamily fam{BipartiteDims(2, 3), {}, false};
  REQUIRE_THROWS_AS(span_certificate(fam), InputError);
}

TEST_CASE("recommended sample counts") {
  REQUIRE(recommended_sample_count(BipartiteDims(2, 5), 4) == 11);
  REQUIRE(recommended_sample_count(BipartiteDims(3, 3), 2) == 25);
}

TEST_CASE("family samples carry chart labels and parameters") {
  Subspace V = ladder_ces(3);
  CesCertificate cert = find_product_vector_in(V);
  ProductFamily fam = family_2xn(V, generic_parameter_samples(7), &cert);
  for (const auto& s : fam.samples) {
    REQUIRE(s.chart.rfind("chart", 0) == 0);
    if (s.chart == "chart0") REQUIRE_FALSE(s.params.empty());
  }
}

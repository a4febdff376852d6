#include <catch2/catch_amalgamated.hpp>

#include "dew/paper_examples.hpp"
#include "dew/rng.hpp"
#include "dew/witness.hpp"

using namespace dew;

namespace {

Witness ladder_witness() {
  Subspace V = ladder_ces(3);
  return dew_from_Q(V.projector() / 2.0, V.dims);
}

Witness mixed_witness() {
  Subspace V = ladder_ces(3);
  CMat Q = 0.8 * (V.projector() / 2.0) + 0.2 * CMat::Identity(6, 6) / 6.0;
  return dew_from_Q(Q, V.dims);
}

}  // namespace

TEST_CASE("dew_from_Q validates input and records provenance") {
  Witness W = ladder_witness();
  REQUIRE(W.provenance.has_value());
  REQUIRE(W.provenance->a == 0.0);
  REQUIRE((W.matrix - partial_transpose(W.provenance->Q, W.dims)).cwiseAbs().maxCoeff() < 1e-14);

  CMat notpsd = -CMat::Identity(6, 6);
  REQUIRE_THROWS_AS(dew_from_Q(notpsd, BipartiteDims(2, 3)), InputError);
  CMat nothermitian = CMat::Zero(6, 6);
  nothermitian(0, 1) = 1.0;
  REQUIRE_THROWS_AS(dew_from_Q(nothermitian, BipartiteDims(2, 3)), InputError);
}

TEST_CASE("verify_ew certifies a decomposable witness") {
  EwVerdict v = verify_ew(ladder_witness());
  REQUIRE(v.is_ew);
  REQUIRE(std::abs(v.min_product_value) < 1e-7);
  REQUIRE(v.min_eigenvalue < -kEwTol);
  REQUIRE(v.detected_state.has_value());
  const CMat& rho = *v.detected_state;
  REQUIRE(is_psd(rho));
  REQUIRE(std::abs(rho.trace().real() - 1.0) < 1e-12);
  REQUIRE(std::real((ladder_witness().matrix * rho).trace()) < -1e-3);
  REQUIRE_FALSE(v.violating_product.has_value());
}

TEST_CASE("verify_ew rejects positive semidefinite operators") {
  Witness id{CMat::Identity(6, 6) / 6.0, BipartiteDims(2, 3), std::nullopt};
  EwVerdict v = verify_ew(id);
  REQUIRE_FALSE(v.is_ew);
  REQUIRE(v.min_eigenvalue > 0.0);
  REQUIRE_FALSE(v.detected_state.has_value());
}

TEST_CASE("verify_ew reports a violating product for block positive failures") {
  CVec bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  Witness w{-(bell * bell.adjoint()), BipartiteDims(2, 2), std::nullopt};
  EwVerdict v = verify_ew(w);
  REQUIRE_FALSE(v.is_ew);
  REQUIRE(v.min_product_value < -0.4);
  REQUIRE(v.violating_product.has_value());
  CVec p = v.violating_product->embedded_normalized();
  REQUIRE(std::real(p.dot(w.matrix * p)) == Catch::Approx(v.min_product_value).margin(1e-9));
}

TEST_CASE("support recovers the range of a projector") {
  Subspace V = ladder_ces(3);
  Subspace S = support(V.projector() / 2.0, V.dims);
  REQUIRE(S.dim() == 2);
  REQUIRE((S.projector() - V.projector()).cwiseAbs().maxCoeff() < 1e-10);
  REQUIRE_THROWS_AS(support(CMat::Zero(6, 6), V.dims), InputError);
}

TEST_CASE("zero set requires an a = 0 decomposition") {
  Witness bare{ladder_witness().matrix, BipartiteDims(2, 3), std::nullopt};
  REQUIRE_THROWS_AS(zero_set(bare), InputError);
  Witness wrong = ladder_witness();
  wrong.provenance->a = 0.5;
  REQUIRE_THROWS_AS(zero_set(wrong), InputError);
}

TEST_CASE("zero set members annihilate the witness expectation") {
  Witness W = ladder_witness();
  ProductFamily pw = zero_set(W);
  REQUIRE(pw.certified);
  REQUIRE_FALSE(pw.samples.empty());
  for (const auto& s : pw.samples)
    REQUIRE(std::abs(zero_set_member_expectation(W, s.pv)) < 1e-8);
  REQUIRE(span_certificate(pw).family_span_dim == 6);
}

TEST_CASE("spanning zero set certifies optimality") {
  OptimalityReport rep = optimality_analysis(ladder_witness());
  REQUIRE(rep.pw_span_dim == 6);
  REQUIRE(rep.spanning_certified_optimal);
  REQUIRE(rep.status == OptimalityStatus::OptimalCertified);
  REQUIRE_FALSE(rep.subtractable.has_value());
}

TEST_CASE("optimality analysis rejects non witnesses") {
  Witness id = dew_from_Q(CMat::Identity(6, 6) / 6.0, BipartiteDims(2, 3));
  REQUIRE_THROWS_AS(optimality_analysis(id), InputError);
}

TEST_CASE("a witness mixed with identity admits subtraction") {
  Witness W = mixed_witness();
  EwVerdict v = verify_ew(W);
  REQUIRE(v.is_ew);
  REQUIRE(v.min_product_value == Catch::Approx(1.0 / 30.0).margin(1e-7));

  OptimalityReport rep = optimality_analysis(W);
  REQUIRE(rep.pw_span_dim == 0);
  REQUIRE(rep.status == OptimalityStatus::NonOptimal);
  REQUIRE(rep.subtractable.has_value());
  const Subtraction& sub = *rep.subtractable;
  REQUIRE(sub.epsilon >= kEpsMin);
  REQUIRE(is_psd(sub.P, 1e-9));

  Witness improved{(1.0 + sub.epsilon) * W.matrix - sub.epsilon * sub.P, W.dims, std::nullopt};
  EwVerdict iv = verify_ew(improved);
  REQUIRE(iv.is_ew);
  REQUIRE(std::real((improved.matrix * *v.detected_state).trace()) < 0.0);
}

TEST_CASE("finer comparison through the decomposition scan") {
  Witness W = ladder_witness();
  Witness M = mixed_witness();
  auto grid = default_eps_grid();
  REQUIRE(grid.size() == 100);
  REQUIRE(grid.front() == Catch::Approx(0.01));
  REQUIRE(grid.back() == Catch::Approx(1.0));

  SECTION("identical witnesses are mutually finer with eps zero") {
    FinerVerdict fv = is_finer(W, W, grid);
    REQUIRE(fv.finer);
    REQUIRE(fv.epsilon.has_value());
    REQUIRE(*fv.epsilon == 0.0);
  }
  SECTION("the mixture decomposes over the original") {
    FinerVerdict fv = is_finer(M, W, grid);
    REQUIRE(fv.finer);
    REQUIRE(fv.epsilon.has_value());
    REQUIRE(*fv.epsilon > 0.0);
    REQUIRE(*fv.epsilon <= 0.2 + 1e-12);
    REQUIRE(fv.P.has_value());
    REQUIRE(is_psd(*fv.P, 1e-9));
    CMat rec = (1.0 - *fv.epsilon) * W.matrix + *fv.epsilon * *fv.P;
    REQUIRE((rec - M.matrix).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("the original does not decompose over the mixture") {
    FinerVerdict fv = is_finer(W, M, grid);
    REQUIRE_FALSE(fv.finer);
  }
  SECTION("dimension mismatch throws") {
    Witness other = dew_from_Q(CMat::Identity(9, 9) / 9.0, BipartiteDims(3, 3));
    REQUIRE_THROWS_AS(is_finer(W, other, grid), InputError);
  }
}

TEST_CASE("v2 witness zero set spans the full space") {
  Subspace V = v2_subspace();
  Witness W = dew_from_Q(V.projector() / 4.0, V.dims);
  OptimalityReport rep = optimality_analysis(W);
  REQUIRE(rep.pw_span_dim == 9);
  REQUIRE(rep.status == OptimalityStatus::OptimalCertified);
}

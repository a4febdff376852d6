#include <catch2/catch_amalgamated.hpp>

#include "dew/rng.hpp"
#include "dew/tensor_core.hpp"

using namespace dew;

TEST_CASE("bipartite dims canonicalize to m <= n") {
  BipartiteDims d(3, 4);
  REQUIRE(d.m == 3);
  REQUIRE(d.n == 4);
  REQUIRE_FALSE(d.swapped);
  REQUIRE(d.total() == 12);

  BipartiteDims s(5, 2);
  REQUIRE(s.m == 2);
  REQUIRE(s.n == 5);
  REQUIRE(s.swapped);
  REQUIRE(s == BipartiteDims(2, 5));

  REQUIRE_THROWS_AS(BipartiteDims(1, 4), InputError);
  REQUIRE_THROWS_AS(BipartiteDims(3, 0), InputError);
}

TEST_CASE("flat index and tensor products agree") {
  BipartiteDims d(2, 3);
  CVec e(2), f(3);
  e << Complex(1, 0), Complex(0, 2);
  f << Complex(3, 0), Complex(0, 0), Complex(-1, 1);
  CVec v = tensor(e, f);
  REQUIRE(v.size() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      REQUIRE(std::abs(v(flat_index(d, i, j)) - e(i) * f(j)) < 1e-15);
}

TEST_CASE("swap_factors exchanges tensor factors") {
  Rng rng(11);
  CVec e = rng.haar_vector(2), f = rng.haar_vector(3);
  CVec ef = tensor(e, f);
  CVec fe = tensor(f, e);
  REQUIRE((swap_factors(ef, 2, 3) - fe).norm() < 1e-14);

  CMat rho = ef * ef.adjoint();
  CMat swapped = swap_factors(rho, 2, 3);
  REQUIRE((swapped - fe * fe.adjoint()).norm() < 1e-14);
}

TEST_CASE("hermiticity checks") {
  CMat h = CMat::Zero(2, 2);
  h << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
  REQUIRE(hermiticity_deviation(h) < 1e-15);
  REQUIRE_NOTHROW(check_hermitian(h, "test"));

  CMat bad = h;
  bad(0, 1) = Complex(0.5, 0.3);
  REQUIRE_THROWS_AS(check_hermitian(bad, "test"), InputError);
}

TEST_CASE("partial transposition is an involution and matches the duality") {
  Rng rng(5);
  for (auto [m, n] : {std::pair{2, 3}, {3, 3}, {3, 4}}) {
    BipartiteDims d(m, n);
    CMat G = rng.gaussian_matrix(d.total(), d.total());
    CMat H = (G + G.adjoint()) / 2.0;
    CMat Ht = partial_transpose(H, d);
    REQUIRE(hermiticity_deviation(Ht) < 1e-12);
    REQUIRE((partial_transpose(Ht, d) - H).cwiseAbs().maxCoeff() < 1e-13);
    for (int t = 0; t < 10; ++t) {
      ProductVector pv{rng.haar_vector(m), rng.haar_vector(n)};
      CVec v = pv.embedded();
      CVec w = partial_conjugate(pv).embedded();
      REQUIRE(std::abs(std::real(v.dot(Ht * v)) - std::real(w.dot(H * w))) < 1e-11);
    }
  }
}

TEST_CASE("schmidt decomposition of known states") {
  BipartiteDims d(2, 2);
  SECTION("product state has rank one") {
    Rng rng(3);
    ProductVector pv{rng.haar_vector(2), rng.haar_vector(2)};
    auto sd = schmidt(pv.embedded(), d);
    REQUIRE(sd.schmidt_rank == 1);
    REQUIRE(std::abs(sd.coefficients(0) - 1.0) < 1e-12);
  }
  SECTION("maximally entangled state splits evenly") {
    CVec bell(4);
    bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    auto sd = schmidt(bell, d);
    REQUIRE(sd.schmidt_rank == 2);
    REQUIRE(std::abs(sd.coefficients(0) - 1 / std::sqrt(2.0)) < 1e-12);
    REQUIRE(std::abs(sd.coefficients(1) - 1 / std::sqrt(2.0)) < 1e-12);
  }
  SECTION("reconstruction from the decomposition") {
    Rng rng(9);
    BipartiteDims d34(3, 4);
    for (int t = 0; t < 20; ++t) {
      CVec psi = rng.haar_vector(12);
      auto sd = schmidt(psi, d34);
      CVec rec = CVec::Zero(12);
      for (int s = 0; s < sd.schmidt_rank; ++s)
        rec += sd.coefficients(s) * tensor(CVec(sd.left_vectors.col(s)),
                                           CVec(sd.right_vectors.col(s)));
      REQUIRE((rec - psi).norm() < 1e-10);
    }
  }
  SECTION("length mismatch throws") {
    CVec v = CVec::Zero(5);
    REQUIRE_THROWS_AS(schmidt(v, d), InputError);
  }
}

TEST_CASE("numerical rank and kernel") {
  Rng rng(17);
  CMat A = rng.gaussian_matrix(6, 3);
  CMat B(6, 5);
  B.leftCols(3) = A;
  B.col(3) = A.col(0) + A.col(1);
  B.col(4) = Complex(0, 1) * A.col(2);
  REQUIRE(numerical_rank(B) == 3);

  CMat K = kernel(B.adjoint());
  REQUIRE(K.cols() == 3);
  REQUIRE((B.adjoint() * K).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE((K.adjoint() * K - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

  std::vector<CVec> cols{A.col(0), A.col(1), CVec(A.col(0) * 2.0)};
  REQUIRE(numerical_rank(cols) == 2);
}

TEST_CASE("eigenvalue helpers") {
  CMat D = CMat::Zero(3, 3);
  D(0, 0) = 2.0;
  D(1, 1) = 0.5;
  D(2, 2) = -0.25;
  REQUIRE(std::abs(min_eigenvalue(D) + 0.25) < 1e-14);
  REQUIRE_FALSE(is_psd(D));
  D(2, 2) = 0.0;
  REQUIRE(is_psd(D));
}

TEST_CASE("product vector embeddings") {
  CVec e(2), f(2);
  e << 2.0, 0.0;
  f << 0.0, 1.0;
  ProductVector pv{e, f};
  REQUIRE(std::abs(pv.embedded()(1) - 2.0) < 1e-15);
  REQUIRE(std::abs(pv.embedded_normalized().norm() - 1.0) < 1e-14);

  ProductVector pc = partial_conjugate(ProductVector{CVec(e * Complex(0, 1)), f});
  REQUIRE(std::abs(pc.e(0) - Complex(0, -2)) < 1e-15);
  REQUIRE(std::abs(pc.f(1) - 1.0) < 1e-15);
}

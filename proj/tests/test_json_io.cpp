#include <catch2/catch_amalgamated.hpp>

#include "dew/json_io.hpp"
#include "dew/paper_examples.hpp"
#include "dew/rng.hpp"
#include "dew/witness.hpp"

using namespace dew;

TEST_CASE("complex values serialize as re im pairs") {
  Json j = complex_to_json(Complex(1.5, -2.0));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  REQUIRE(complex_from_json(j) == Complex(1.5, -2.0));
  REQUIRE_THROWS_AS(complex_from_json(Json{1.0}), InputError);
  REQUIRE_THROWS_AS(complex_from_json(Json{"a", "b"}), InputError);
}

TEST_CASE("vector and matrix round trips") {
  Rng rng(12);
  CVec v = rng.haar_vector(6);
  CVec v2 = cvec_from_json(cvec_to_json(v), 6);
  REQUIRE((v - v2).norm() == 0.0);
  REQUIRE_THROWS_AS(cvec_from_json(cvec_to_json(v), 5), InputError);

  CMat M = rng.gaussian_matrix(3, 3);
  CMat M2 = cmat_from_json(cmat_to_json(M), 3, 3);
  REQUIRE((M - M2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix documents round trip byte for byte") {
  Subspace V = ladder_ces(3);
  CMat Q = V.projector() / 2.0;
  MatrixDocument doc{"matrix", V.dims, Q, std::nullopt, std::nullopt, Json::object()};
  std::string first = serialize_document(doc).dump(2);
  MatrixDocument back = parse_document_text(first);
  REQUIRE(back.kind == "matrix");
  REQUIRE(back.dims == V.dims);
  REQUIRE((back.data - Q).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(serialize_document(back).dump(2) == first);
}

TEST_CASE("subspace documents keep orthonormal bases verbatim") {
  Subspace V = ladder_ces(4);
  MatrixDocument doc{"subspace", V.dims, V.basis, std::nullopt, std::nullopt, Json::object()};
  std::string first = serialize_document(doc).dump(2);
  MatrixDocument back = parse_document_text(first);
  REQUIRE((back.data - V.basis).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(serialize_document(back).dump(2) == first);
}

TEST_CASE("non orthonormal subspace input is orthonormalized on parse") {
  BipartiteDims d(2, 3);
  CMat raw(6, 2);
  raw.setZero();
  raw(1, 0) = 2.0;
  raw(2, 1) = 1.0;
  raw(1, 1) = 1.0;
  MatrixDocument doc{"subspace", d, raw, std::nullopt, std::nullopt, Json::object()};
  MatrixDocument back = parse_document_text(serialize_document(doc).dump(2));
  CMat B = back.data;
  REQUIRE(B.cols() == 2);
  REQUIRE((B.adjoint() * B - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  Subspace Vraw = orthonormalize({CVec(raw.col(0)), CVec(raw.col(1))}, d);
  Subspace Vparsed{d, B};
  REQUIRE((Vraw.projector() - Vparsed.projector()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("documents with m greater than n are canonicalized by swapping") {
  Rng rng(8);
  ProductVector pv{rng.haar_vector(4), rng.haar_vector(2)};
  CVec v = pv.embedded();
  CMat rho = v * v.adjoint();
  Json j{{"kind", "matrix"},
         {"dims", Json{{"m", 4}, {"n", 2}}},
         {"data", cmat_to_json(rho)},
         {"metadata", Json::object()}};
  MatrixDocument doc = parse_document_text(j.dump());
  REQUIRE(doc.dims.m == 2);
  REQUIRE(doc.dims.n == 4);
  REQUIRE(doc.dims.swapped);
  CVec w = tensor(pv.f, pv.e);
  REQUIRE((doc.data - w * w.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("product family documents round trip") {
  Subspace V = ladder_ces(3);
  CesCertificate cert = find_product_vector_in(V);
  ProductFamily fam = family_2xn(V, generic_parameter_samples(7), &cert);
  MatrixDocument doc{"product_family", V.dims, {}, fam, std::nullopt,
                     Json{{"seed", 0}}};
  std::string first = serialize_document(doc).dump(2);
  MatrixDocument back = parse_document_text(first);
  REQUIRE(back.family.has_value());
  REQUIRE(back.family->samples.size() == fam.samples.size());
  REQUIRE(back.family->certified == fam.certified);
  for (size_t i = 0; i < fam.samples.size(); ++i) {
    REQUIRE(back.family->samples[i].chart == fam.samples[i].chart);
    REQUIRE(back.family->samples[i].params == fam.samples[i].params);
    REQUIRE((back.family->samples[i].pv.e - fam.samples[i].pv.e).norm() == 0.0);
    REQUIRE((back.family->samples[i].pv.f - fam.samples[i].pv.f).norm() == 0.0);
  }
  REQUIRE(serialize_document(back).dump(2) == first);
}

TEST_CASE("witness documents carry provenance") {
  Subspace V = ladder_ces(3);
  Witness W = dew_from_Q(V.projector() / 2.0, V.dims);
  MatrixDocument doc{"witness", W.dims, W.matrix, std::nullopt, W.provenance,
                     Json::object()};
  std::string first = serialize_document(doc).dump(2);
  MatrixDocument back = parse_document_text(first);
  REQUIRE(back.provenance.has_value());
  REQUIRE(back.provenance->a == 0.0);
  REQUIRE((back.provenance->Q - W.provenance->Q).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(serialize_document(back).dump(2) == first);
}

TEST_CASE("malformed inputs raise input errors") {
  REQUIRE_THROWS_AS(parse_document_text("not json at all"), InputError);
  REQUIRE_THROWS_AS(parse_document_text("{}"), InputError);
  REQUIRE_THROWS_AS(parse_document_text(R"({"kind":"matrix"})"), InputError);
  Json j{{"kind", "unknown"},
         {"dims", Json{{"m", 2}, {"n", 2}}},
         {"data", Json::array()},
         {"metadata", Json::object()}};
  REQUIRE_THROWS_AS(parse_document_text(j.dump()), InputError);

  Json bad_len{{"kind", "matrix"},
               {"dims", Json{{"m", 2}, {"n", 2}}},
               {"data", cmat_to_json(CMat::Identity(3, 3))},
               {"metadata", Json::object()}};
  REQUIRE_THROWS_AS(parse_document_text(bad_len.dump()), InputError);
}

TEST_CASE("reproduction reports serialize without timing information") {
  ReproductionReport rep = reproduce_one("ladder", 3);
  Json j = to_json(rep);
  REQUIRE(j.contains("example_id"));
  REQUIRE(j.contains("claims"));
  REQUIRE(j.contains("seed"));
  REQUIRE(j.contains("all_pass"));
  REQUIRE_FALSE(j.contains("runtime_ms"));
  REQUIRE(j["claims"].is_array());
  REQUIRE_FALSE(j["claims"].empty());
  REQUIRE(j["claims"][0].contains("description"));
  REQUIRE(j["claims"][0].contains("pass"));
}

TEST_CASE("certificate serializations expose their key fields") {
  Subspace V = ladder_ces(3);
  CesCertificate cert = find_product_vector_in(V);
  Json cj = to_json(cert);
  REQUIRE(cj["is_ces"] == true);
  REQUIRE(cj.contains("max_product_overlap"));
  REQUIRE_FALSE(cj.contains("witness_vector"));

  Witness W = dew_from_Q(V.projector() / 2.0, V.dims);
  Json vj = to_json(verify_ew(W));
  REQUIRE(vj["is_ew"] == true);
  REQUIRE(vj.contains("min_product_value"));
  REQUIRE(vj.contains("detected_state"));

  Json oj = to_json(optimality_analysis(W));
  REQUIRE(oj["status"] == "optimal-certified");
  REQUIRE(oj["pw_span_dim"] == 6);
}

#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "paper_examples.hpp"
#include "prodvec_families.hpp"
#include "subspaces.hpp"
#include "tensor_core.hpp"
#include "witness.hpp"

namespace dew {

using Json = nlohmann::json;

inline Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex entries must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json cvec_to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

inline CVec cvec_from_json(const Json& j, Eigen::Index expected = -1) {
  if (!j.is_array()) throw InputError("vector data must be an array");
  if (expected >= 0 && static_cast<Eigen::Index>(j.size()) != expected)
    throw InputError("vector data has wrong length");
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

// Row-major flattening.
inline Json cmat_to_json(const CMat& M) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      out.push_back(complex_to_json(M(r, c)));
  return out;
}

inline CMat cmat_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols)
    throw InputError("matrix data has wrong length");
  CMat M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      M(r, c) = complex_from_json(j[static_cast<size_t>(r * cols + c)]);
  return M;
}

struct MatrixDocument {
  std::string kind;  // matrix | subspace | witness | product_family
  BipartiteDims dims;
  CMat data;  // matrix/witness: square; subspace: basis vectors as columns
              // (the serialized JSON data field lists one basis vector per row)
  std::optional<ProductFamily> family;
  std::optional<WitnessProvenance> provenance;
  Json metadata = Json::object();
};

inline Json family_to_json(const ProductFamily& fam) {
  Json samples = Json::array();
  for (const auto& s : fam.samples) {
    Json params = Json::array();
    for (const auto& p : s.params) params.push_back(complex_to_json(p));
    samples.push_back(Json{{"chart", s.chart},
                           {"params", params},
                           {"e", cvec_to_json(s.pv.e)},
                           {"f", cvec_to_json(s.pv.f)}});
  }
  return Json{{"certified", fam.certified}, {"samples", samples}};
}

inline ProductFamily family_from_json(const Json& j, const BipartiteDims& dims) {
  if (!j.is_object() || !j.contains("samples") || !j["samples"].is_array())
    throw InputError("product_family document needs a samples array");
  ProductFamily fam{dims, {}, j.value("certified", false)};
  for (const auto& sj : j["samples"]) {
    FamilySample s;
    s.chart = sj.value("chart", "");
    if (sj.contains("params"))
      for (const auto& pj : sj["params"]) s.params.push_back(complex_from_json(pj));
    s.pv.e = cvec_from_json(sj.at("e"), dims.m);
    s.pv.f = cvec_from_json(sj.at("f"), dims.n);
    fam.samples.push_back(std::move(s));
  }
  return fam;
}

inline Json serialize_document(const MatrixDocument& doc) {
  Json out{{"kind", doc.kind},
           {"dims", Json{{"m", doc.dims.m}, {"n", doc.dims.n}}},
           {"metadata", doc.metadata}};
  if (doc.kind == "product_family") {
    const ProductFamily& fam =
        doc.family ? *doc.family : ProductFamily{doc.dims, {}, false};
    Json fj = family_to_json(fam);
    out["certified"] = fj["certified"];
    out["samples"] = fj["samples"];
    Json data = Json::array();
    for (const auto& s : fam.samples) {
      CVec v = s.pv.embedded();
      for (Eigen::Index i = 0; i < v.size(); ++i)
        data.push_back(complex_to_json(v(i)));
    }
    out["data"] = data;
  } else {
    out["data"] = cmat_to_json(doc.kind == "subspace" ? CMat(doc.data.transpose())
                                                      : doc.data);
    if (doc.kind == "witness" && doc.provenance) {
      out["provenance"] = Json{{"a", doc.provenance->a},
                               {"P", cmat_to_json(doc.provenance->P)},
                               {"Q", cmat_to_json(doc.provenance->Q)}};
    }
  }
  return out;
}

inline MatrixDocument parse_document(const Json& j) {
  if (!j.is_object()) throw InputError("document must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw InputError("document needs a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind != "matrix" && kind != "subspace" && kind != "witness" &&
      kind != "product_family")
    throw InputError("unknown document kind '" + kind + "'");
  if (!j.contains("dims") || !j["dims"].is_object())
    throw InputError("document needs dims {m, n}");
  const Json& dj = j["dims"];
  if (!dj.contains("m") || !dj.contains("n") || !dj["m"].is_number_integer() ||
      !dj["n"].is_number_integer())
    throw InputError("dims must carry integer m and n");
  const int raw_m = dj["m"].get<int>(), raw_n = dj["n"].get<int>();
  BipartiteDims dims(raw_m, raw_n);
  const int d = dims.total();
  MatrixDocument doc{kind, dims, {}, std::nullopt, std::nullopt,
                     j.value("metadata", Json::object())};
  if (!doc.metadata.is_object()) throw InputError("metadata must be an object");
  if (kind == "product_family") {
    ProductFamily fam = family_from_json(j, dims);
    if (dims.swapped)
      for (auto& s : fam.samples) std::swap(s.pv.e, s.pv.f);
    doc.family = std::move(fam);
    return doc;
  }
  if (!j.contains("data")) throw InputError("document needs data");
  if (kind == "subspace") {
    if (!j["data"].is_array() || j["data"].size() == 0 || j["data"].size() % d != 0)
      throw InputError("subspace data must hold k*(m*n) entries");
    const Eigen::Index k = static_cast<Eigen::Index>(j["data"].size()) / d;
    CMat rows = cmat_from_json(j["data"], k, d);
    CMat basis = rows.transpose();
    if (dims.swapped)
      for (Eigen::Index c = 0; c < basis.cols(); ++c)
        basis.col(c) = swap_factors(CVec(basis.col(c)), raw_m, raw_n);
    // Inputs that are already orthonormal are kept verbatim so that
    // serialize(parse(x)) = x; anything else goes through QR.
    CMat gram = basis.adjoint() * basis;
    if ((gram - CMat::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-10) {
      doc.data = basis;
    } else {
      std::vector<CVec> cols;
      for (Eigen::Index c = 0; c < basis.cols(); ++c) cols.push_back(basis.col(c));
      doc.data = orthonormalize(cols, dims).basis;
    }
    return doc;
  }
  CMat M = cmat_from_json(j["data"], d, d);
  if (dims.swapped) M = swap_factors(M, raw_m, raw_n);
  doc.data = M;
  if (kind == "witness" && j.contains("provenance")) {
    const Json& pj = j["provenance"];
    if (!pj.is_object() || !pj.contains("a") || !pj.contains("P") || !pj.contains("Q"))
      throw InputError("witness provenance needs a, P, Q");
    WitnessProvenance prov{pj["a"].get<double>(), cmat_from_json(pj["P"], d, d),
                           cmat_from_json(pj["Q"], d, d)};
    if (dims.swapped) {
      prov.P = swap_factors(prov.P, raw_m, raw_n);
      prov.Q = swap_factors(prov.Q, raw_m, raw_n);
    }
    doc.provenance = std::move(prov);
  }
  return doc;
}

inline MatrixDocument parse_document_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("malformed JSON input");
  return parse_document(j);
}

inline Json to_json(const CesCertificate& cert) {
  Json out{{"is_ces", cert.is_ces},
           {"max_product_overlap", cert.max_product_overlap},
           {"multistarts_used", cert.multistarts_used},
           {"seed", cert.seed}};
  if (cert.witness_vector) {
    out["witness_vector"] = Json{{"e", cvec_to_json(cert.witness_vector->e)},
                                 {"f", cvec_to_json(cert.witness_vector->f)}};
  }
  return out;
}

inline Json to_json(const SpanCertificate& sc) {
  return Json{{"family_span_dim", sc.family_span_dim},
              {"pc_span_dim", sc.pc_span_dim},
              {"sample_count", sc.sample_count},
              {"rank_tolerance", sc.rank_tolerance}};
}

inline Json to_json(const EwVerdict& v) {
  Json out{{"is_ew", v.is_ew},
           {"min_product_value", v.min_product_value},
           {"min_eigenvalue", v.min_eigenvalue}};
  if (v.violating_product)
    out["violating_product"] = Json{{"e", cvec_to_json(v.violating_product->e)},
                                    {"f", cvec_to_json(v.violating_product->f)}};
  if (v.detected_state) out["detected_state"] = cmat_to_json(*v.detected_state);
  return out;
}

inline Json to_json(const OptimalityReport& r) {
  Json out{{"pw_span_dim", r.pw_span_dim},
           {"spanning_certified_optimal", r.spanning_certified_optimal},
           {"status", to_string(r.status)}};
  if (r.subtractable)
    out["subtractable"] = Json{{"P", cmat_to_json(r.subtractable->P)},
                               {"epsilon", r.subtractable->epsilon}};
  return out;
}

inline Json to_json(const ReproClaim& c) {
  return Json{{"description", c.description},
              {"expected", c.expected},
              {"computed", c.computed},
              {"pass", c.pass}};
}

inline Json to_json(const ReproductionReport& rep) {
  Json claims = Json::array();
  for (const auto& c : rep.claims) claims.push_back(to_json(c));
  return Json{{"example_id", rep.example_id},
              {"claims", claims},
              {"seed", rep.seed},
              {"all_pass", rep.all_pass()}};
}

}  // namespace dew

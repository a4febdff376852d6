#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <dew/dew.hpp>

namespace {

constexpr int kOk = 0;
constexpr int kClaimFailed = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct CommonFlags {
  std::uint64_t seed = 0;
  int multistarts = 64;
  int samples = 0;  // 0: use the per-route recommendation
  double tol = -1.0;  // negative: use the subcommand default
  std::string output = "-";
  std::string format = "json";
  std::string input = "-";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool takes_input) {
  cmd->add_option("--seed", flags.seed, "RNG seed; fixes all randomized output");
  cmd->add_option("--multistarts", flags.multistarts, "seesaw restarts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", flags.samples, "family parameter sample count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", flags.tol, "primary tolerance of the subcommand")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", flags.output, "output path, '-' for stdout");
  cmd->add_option("--format", flags.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  if (takes_input)
    cmd->add_option("input", flags.input, "input document path, '-' for stdin");
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dew::InputError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dew::InputError("cannot open output file '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

dew::SeesawOptions seesaw_options(const CommonFlags& flags) {
  dew::SeesawOptions opts;
  opts.multistarts = flags.multistarts;
  opts.seed = flags.seed;
  return opts;
}

std::string render_text_ces(const dew::CesCertificate& cert, double ces_tol) {
  std::ostringstream os;
  os << "is_ces: " << (cert.is_ces ? "true" : "false") << "\n"
     << "max_product_overlap: " << std::setprecision(12) << cert.max_product_overlap
     << "\n"
     << "multistarts_used: " << cert.multistarts_used << "\n"
     << "ces_tol: " << ces_tol << "\n";
  if (cert.witness_vector) os << "witness_vector: present\n";
  return os.str();
}

int cmd_check_ces(const CommonFlags& flags) {
  dew::MatrixDocument doc = dew::parse_document_text(read_input(flags.input));
  if (doc.kind != "subspace")
    throw dew::InputError("check-ces expects a subspace document");
  const double ces_tol = flags.tol > 0.0 ? flags.tol : dew::kCesTol;
  dew::Subspace V{doc.dims, doc.data};
  dew::CesCertificate cert = dew::find_product_vector_in(V, seesaw_options(flags), ces_tol);
  if (flags.format == "json") {
    dew::Json out{{"certificate", dew::to_json(cert)},
                  {"tolerances", dew::Json{{"ces_tol", ces_tol}}}};
    write_output(flags.output, out.dump(2));
  } else {
    write_output(flags.output, render_text_ces(cert, ces_tol));
  }
  return cert.is_ces ? kOk : kClaimFailed;
}

int cmd_analyze_witness(const CommonFlags& flags) {
  dew::MatrixDocument doc = dew::parse_document_text(read_input(flags.input));
  const double ew_tol = flags.tol > 0.0 ? flags.tol : dew::kEwTol;
  dew::Witness W{{}, doc.dims, std::nullopt};
  if (doc.kind == "matrix") {
    dew::check_hermitian(doc.data, "analyze-witness");
    W = dew::dew_from_Q(doc.data, doc.dims);
  } else if (doc.kind == "witness") {
    dew::check_hermitian(doc.data, "analyze-witness");
    W.matrix = doc.data;
    W.provenance = doc.provenance;
    if (!W.provenance) {
      dew::CMat Qcand = dew::partial_transpose(doc.data, doc.dims);
      if (dew::is_psd(Qcand, dew::kHermTol)) {
        W.provenance = dew::WitnessProvenance{
            0.0, dew::CMat::Zero(doc.dims.total(), doc.dims.total()), Qcand};
      }
    }
  } else {
    throw dew::InputError("analyze-witness expects a matrix or witness document");
  }
  dew::SeesawOptions opts = seesaw_options(flags);
  dew::EwVerdict verdict = dew::verify_ew(W, opts, ew_tol);
  dew::OptimalityReport optimality{0, false, std::nullopt,
                                   dew::OptimalityStatus::Undecided};
  bool optimality_ran = false;
  if (verdict.is_ew && W.provenance && W.provenance->a == 0.0) {
    optimality = dew::optimality_analysis(W, opts);
    optimality_ran = true;
  }
  if (flags.format == "json") {
    dew::Json out{{"verdict", dew::to_json(verdict)},
                  {"optimality", dew::to_json(optimality)},
                  {"optimality_ran", optimality_ran},
                  {"tolerances", dew::Json{{"ew_tol", ew_tol}}}};
    write_output(flags.output, out.dump(2));
  } else {
    std::ostringstream os;
    os << "is_ew: " << (verdict.is_ew ? "true" : "false") << "\n"
       << "min_product_value: " << std::setprecision(12) << verdict.min_product_value
       << "\n"
       << "min_eigenvalue: " << verdict.min_eigenvalue << "\n"
       << "ew_tol: " << ew_tol << "\n";
    if (optimality_ran) {
      os << "pw_span_dim: " << optimality.pw_span_dim << "\n"
         << "optimality: " << dew::to_string(optimality.status) << "\n";
      if (optimality.subtractable)
        os << "subtractable_epsilon: " << optimality.subtractable->epsilon << "\n";
    } else if (!verdict.is_ew) {
      os << "optimality: skipped (not an entanglement witness)\n";
    } else {
      os << "optimality: undecided (no a=0 decomposition available)\n";
    }
    write_output(flags.output, os.str());
  }
  return verdict.is_ew ? kOk : kClaimFailed;
}

int cmd_find_product_vectors(const CommonFlags& flags) {
  dew::MatrixDocument doc = dew::parse_document_text(read_input(flags.input));
  if (doc.kind != "subspace")
    throw dew::InputError("find-product-vectors expects a subspace document");
  const double span_tol = flags.tol > 0.0 ? flags.tol : dew::kSpanTol;
  dew::Subspace V{doc.dims, doc.data};
  dew::CesCertificate cert = dew::find_product_vector_in(V, seesaw_options(flags));
  const int k = V.dim();
  dew::ProductFamily fam{V.dims, {}, cert.is_ces};
  if (V.dims.m == 2 && k <= V.dims.n - 1) {
    const int count = flags.samples > 0 ? flags.samples
                                        : dew::recommended_sample_count(V.dims, k);
    fam = dew::family_2xn(V, dew::generic_parameter_samples(count), &cert);
  } else if (k <= V.dims.n - 1) {
    fam = dew::family_general(V, dew::chart_e_samples(V.dims), &cert);
  } else {
    fam = dew::family_general(V, dew::variety_e_samples(V), &cert);
  }
  if (fam.samples.empty())
    throw dew::InputError("no product vectors found orthogonal to the subspace");
  dew::SpanCertificate sc = dew::span_certificate(fam, span_tol);
  if (flags.format == "json") {
    dew::MatrixDocument out_doc{"product_family", V.dims, {}, fam, std::nullopt,
                                dew::Json{{"seed", flags.seed}}};
    dew::Json out = dew::serialize_document(out_doc);
    out["span"] = dew::to_json(sc);
    out["certificate"] = dew::to_json(cert);
    out["tolerances"] = dew::Json{{"span_tol", span_tol}};
    write_output(flags.output, out.dump(2));
  } else {
    std::ostringstream os;
    os << "samples: " << fam.samples.size() << "\n"
       << "family_span_dim: " << sc.family_span_dim << "\n"
       << "pc_span_dim: " << sc.pc_span_dim << "\n"
       << "subspace_certified_ces: " << (fam.certified ? "true" : "false") << "\n"
       << "span_tol: " << span_tol << "\n";
    write_output(flags.output, os.str());
  }
  return kOk;
}

std::string render_text_reports(const std::vector<dew::ReproductionReport>& reports) {
  std::ostringstream os;
  for (const auto& rep : reports) {
    os << "== " << rep.example_id << " (seed " << rep.seed << ") ==\n";
    for (const auto& c : rep.claims)
      os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.description << ": "
         << c.computed << " (expected " << c.expected << ")\n";
    os << "  result: " << (rep.all_pass() ? "all claims pass" : "CLAIMS FAILED")
       << "\n";
  }
  return os.str();
}

int cmd_reproduce(const std::string& id, const CommonFlags& flags) {
  std::vector<dew::ReproductionReport> reports = dew::reproduce(id, flags.seed);
  bool all_pass = true;
  for (const auto& rep : reports) all_pass = all_pass && rep.all_pass();
  if (flags.format == "json") {
    dew::Json arr = dew::Json::array();
    for (const auto& rep : reports) arr.push_back(dew::to_json(rep));
    dew::Json out{{"reports", arr}, {"all_pass", all_pass}};
    write_output(flags.output, out.dump(2));
  } else {
    write_output(flags.output, render_text_reports(reports));
  }
  return all_pass ? kOk : kClaimFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decomposable entanglement witness toolkit"};
  app.require_subcommand(1);

  CommonFlags ces_flags, witness_flags, family_flags, repro_flags;
  std::string repro_id = "all";

  CLI::App* ces = app.add_subcommand("check-ces", "certify a subspace as completely entangled");
  add_common_flags(ces, ces_flags, true);
  CLI::App* wit = app.add_subcommand("analyze-witness", "verify an EW and analyze optimality");
  add_common_flags(wit, witness_flags, true);
  CLI::App* fam = app.add_subcommand("find-product-vectors", "enumerate product vectors orthogonal to a subspace");
  add_common_flags(fam, family_flags, true);
  CLI::App* rep = app.add_subcommand("reproduce", "re-run the built-in example suites");
  add_common_flags(rep, repro_flags, false);
  rep->add_option("id", repro_id, "example id or 'all'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (ces->parsed()) return cmd_check_ces(ces_flags);
    if (wit->parsed()) return cmd_analyze_witness(witness_flags);
    if (fam->parsed()) return cmd_find_product_vectors(family_flags);
    if (rep->parsed()) return cmd_reproduce(repro_id, repro_flags);
    std::cerr << "no subcommand given\n";
    return kInputError;
  } catch (const dew::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

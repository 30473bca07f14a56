#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "apnlab/apn.hpp"
#include "apnlab/bench.hpp"
#include "apnlab/certificate.hpp"
#include "apnlab/runtime.hpp"

using namespace apnlab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInput = 2, kHypothesis = 3, kNotApn = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<Elem> parse_hex_list(const std::string& text) {
  std::vector<Elem> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(static_cast<Elem>(parse_hex(tok)));
  return out;
}

json field_info(unsigned n, const std::string& poly_text) {
  const Field field = poly_text.empty() ? Field(n) : Field(n, parse_hex(poly_text));
  json doc;
  doc["n"] = n;
  doc["poly"] = hex(field.reduction_poly());
  doc["primitive"] = hex(field.primitive());
  doc["trace_mask"] = hex(field.trace_mask());
  doc["log_tables"] = field.has_log_tables();
  if (field.is_even()) {
    doc["half_degree"] = field.half_degree();
    doc["omega"] = hex(field.find_omega());
  }
  return doc;
}

json sbox_json(const SboxReport& r) {
  json doc;
  doc["n"] = r.n;
  doc["m"] = r.m;
  doc["source"] = r.source;
  if (r.walsh_computed) {
    doc["walsh_max_abs"] = r.walsh_max_abs;
    doc["nonlinearity"] = r.nonlinearity;
    doc["is_balanced"] = r.balanced;
    doc["is_bent"] = r.bent;
  } else {
    doc["walsh_max_abs"] = nullptr;
    doc["nonlinearity"] = nullptr;
    doc["is_balanced"] = nullptr;
    doc["is_bent"] = nullptr;
  }
  doc["differential_uniformity"] = r.differential_uniformity;
  doc["is_apn"] = r.apn;
  json hist = json::object();
  for (const auto& [count, pairs] : r.histogram) hist[std::to_string(count)] = pairs;
  doc["histogram"] = hist;
  return doc;
}

json scan_json(const ScanReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"k", l.k}, {"skipped", l.skipped}, {"tested", l.tested}, {"hits", l.hits}, {"runtime_ms", l.runtime_ms}});
  json records = json::array();
  for (const auto& x : r.records)
    records.push_back({{"k", x.k},
                       {"i", x.i},
                       {"a", hex(x.a)},
                       {"bent", x.bent},
                       {"chi_zero_sign", x.chi_zero_sign ? json(to_string(*x.chi_zero_sign)) : json(nullptr)},
                       {"sign_rule_holds", x.sign_rule_holds},
                       {"runtime_ms", x.runtime_ms},
                       {"method", to_string(x.method)}});
  return {{"method", to_string(r.method)}, {"levels", levels}, {"records", records}};
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "k,i,a,bent,chi_zero_sign,sign_rule_holds,runtime_ms,method\n";
  for (const auto& x : r.records)
    out << x.k << ',' << x.i << ',' << hex(x.a) << ',' << (x.bent ? "true" : "false") << ','
        << (x.chi_zero_sign ? to_string(*x.chi_zero_sign) : "") << ',' << (x.sign_rule_holds ? "true" : "false") << ','
        << x.runtime_ms << ',' << to_string(x.method) << '\n';
  return out.str();
}

int exit_for(const ApnCertificate& cert) {
  switch (cert.verdict) {
    case Verdict::APN_VERIFIED: return kOk;
    case Verdict::HYPOTHESIS_FAIL: return kHypothesis;
    case Verdict::NOT_APN: return kNotApn;
  }
  return kMismatch;
}

Family family_from_cli(const std::string& name, const std::string& variant) {
  if (name == "A") {
    if (variant == "faux") return Family::A_FAUX;
    if (variant == "optimal") return Family::A_OPTIMAL;
    throw std::invalid_argument("--variant must be faux or optimal");
  }
  return parse_family(name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apnlab: finite-field Walsh spectra, bent monomials and APN family certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned workers = 0;
  bool override_caps = false;
  std::string out_path;
  app.add_option("--workers", workers, "worker threads (0 = hardware concurrency)");
  app.add_flag("--override-caps", override_caps, "lift the exhaustive-search size caps");
  app.add_option("-o,--out", out_path, "output file (default stdout)");

  // field info
  auto* field_cmd = app.add_subcommand("field", "field data");
  field_cmd->require_subcommand(1);
  auto* field_info_cmd = field_cmd->add_subcommand("info", "reduction polynomial, primitive element, trace mask");
  unsigned fi_n = 0;
  std::string fi_poly;
  field_info_cmd->add_option("--n", fi_n, "extension degree")->required()->check(CLI::Range(1, 32));
  field_info_cmd->add_option("--poly", fi_poly, "reduction polynomial in hex");

  // walsh monomial
  auto* walsh_cmd = app.add_subcommand("walsh", "Walsh spectra");
  walsh_cmd->require_subcommand(1);
  auto* walsh_mono = walsh_cmd->add_subcommand("monomial", "spectrum of Tr(a x^i)");
  unsigned wm_n = 0;
  std::uint64_t wm_i = 0;
  std::string wm_a = "1";
  std::string wm_method = "fast";
  walsh_mono->add_option("--n", wm_n)->required()->check(CLI::Range(2, 24));
  walsh_mono->add_option("--i", wm_i)->required();
  walsh_mono->add_option("--a", wm_a, "coefficient in hex");
  walsh_mono->add_option("--method", wm_method)->check(CLI::IsMember({"naive", "fast", "classes"}));

  // bent-scan
  auto* scan_cmd = app.add_subcommand("bent-scan", "bent monomials Tr(x^i) over a range of k");
  unsigned k_min = 4;
  unsigned k_max = 12;
  std::string scan_method = "classes";
  std::string scan_format = "json";
  scan_cmd->add_option("--k-min", k_min)->required();
  scan_cmd->add_option("--k-max", k_max)->required();
  scan_cmd->add_option("--method", scan_method)->check(CLI::IsMember({"naive", "fast", "classes"}));
  scan_cmd->add_option("--format", scan_format)->check(CLI::IsMember({"json", "csv"}));

  // apn check
  auto* apn_cmd = app.add_subcommand("apn", "differential and Walsh audit");
  apn_cmd->require_subcommand(1);
  auto* apn_check = apn_cmd->add_subcommand("check", "audit a monomial or an S-box file");
  std::uint64_t ac_mono = 0;
  std::string ac_sbox;
  unsigned ac_n = 0;
  auto* mono_opt = apn_check->add_option("--monomial", ac_mono, "exponent of x^i");
  auto* sbox_opt = apn_check->add_option("--sbox", ac_sbox, "table file (hex lines or little-endian uint32)");
  mono_opt->excludes(sbox_opt);
  apn_check->add_option("--n", ac_n)->required()->check(CLI::Range(1, 24));

  // family
  auto* fam_cmd = app.add_subcommand("family", "APN family certificates");
  fam_cmd->require_subcommand(1);
  std::string fam_name;
  std::string fam_variant = "optimal";
  unsigned fam_n = 0;
  std::optional<unsigned> fam_i, fam_j, fam_s;
  std::optional<std::string> fam_b, fam_c, fam_t, fam_s_elem, fam_r, fam_l_kind, fam_l_lambda, fam_l_mu;
  std::size_t fam_budget = 10;
  auto add_family_options = [&](CLI::App* cmd, bool search) {
    cmd->add_option("--name", fam_name, "A|B|C|D|E (or A_FAUX, A_OPTIMAL)")->required();
    cmd->add_option("--variant", fam_variant, "Family A variant")->check(CLI::IsMember({"faux", "optimal"}));
    cmd->add_option("--n", fam_n)->required()->check(CLI::Range(2, 16));
    cmd->add_option("--i", fam_i);
    cmd->add_option("--j", fam_j);
    if (search) {
      cmd->add_option("--budget", fam_budget, "candidates sent to the full sweep");
      return;
    }
    cmd->add_option("--s", fam_s, "Family B exponent");
    cmd->add_option("--b", fam_b, "hex");
    cmd->add_option("--c", fam_c, "hex");
    cmd->add_option("--t", fam_t, "hex");
    cmd->add_option("--s-elem", fam_s_elem, "Family C coefficient s, hex");
    cmd->add_option("--r", fam_r, "Family B r_1..r_(n/2-1), comma-separated hex");
    cmd->add_option("--L-kind", fam_l_kind, "UNIT|SCALED|FROBENIUS_MIX|LINEARIZED (Families D, E)");
    cmd->add_option("--L-lambda", fam_l_lambda, "comma-separated hex coefficients of u^(2^k)");
    cmd->add_option("--L-mu", fam_l_mu, "hex coefficient of v");
  };
  auto* fam_build = fam_cmd->add_subcommand("build", "build and certify one instance");
  add_family_options(fam_build, false);
  auto* fam_search = fam_cmd->add_subcommand("search", "enumerate parameters and certify APN instances");
  add_family_options(fam_search, true);
  auto* fam_verify = fam_cmd->add_subcommand("verify", "rebuild a certificate (or a search result) and compare");
  std::string cert_path;
  fam_verify->add_option("--cert", cert_path)->required();

  // bench walsh
  auto* bench_cmd = app.add_subcommand("bench", "benchmarks");
  bench_cmd->require_subcommand(1);
  auto* bench_walsh_cmd = bench_cmd->add_subcommand("walsh", "naive vs fast vs class-based Walsh timings");
  unsigned bw_n = 0;
  std::vector<std::uint64_t> bw_i;
  unsigned bw_reps = 3;
  bench_walsh_cmd->add_option("--n", bw_n)->required()->check(CLI::Range(2, 16));
  bench_walsh_cmd->add_option("--i", bw_i)->required()->delimiter(',');
  bench_walsh_cmd->add_option("--reps", bw_reps)->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    set_worker_count(workers);
    if (override_caps) set_cap_override(Field::kMaxDegree);

    if (field_info_cmd->parsed()) {
      emit(field_info(fi_n, fi_poly).dump(2), out_path);
      return kOk;
    }

    if (walsh_mono->parsed()) {
      const Field field(wm_n);
      const Elem a = static_cast<Elem>(parse_hex(wm_a));
      const WalshMethod method = parse_walsh_method(wm_method);
      const WalshSpectrum s = walsh_monomial(field, a, wm_i, method);
      json doc{{"n", wm_n}, {"i", wm_i}, {"a", hex(a)}, {"method", wm_method}, {"chi_zero", s[0]},
               {"max_abs", s.max_abs()}};
      doc["bent"] = field.is_even() ? json(is_bent(s, wm_n)) : json(false);
      if (wm_n <= 12) doc["spectrum"] = s.values;
      emit(doc.dump(2), out_path);
      return kOk;
    }

    if (scan_cmd->parsed()) {
      const ScanReport r = bent_scan(k_min, k_max, parse_walsh_method(scan_method));
      emit(scan_format == "csv" ? scan_csv(r) : scan_json(r).dump(2), out_path);
      return kOk;
    }

    if (apn_check->parsed()) {
      VecFn F;
      std::string source;
      if (!ac_sbox.empty()) {
        F = read_sbox_file(ac_sbox);
        if (F.n != ac_n)
          throw std::invalid_argument("S-box has 2^" + std::to_string(F.n) + " entries, expected 2^" + std::to_string(ac_n));
        source = ac_sbox;
      } else if (mono_opt->count() > 0) {
        F = VecFn::power(Field(ac_n), ac_mono);
        source = "x^" + std::to_string(ac_mono);
      } else {
        throw std::invalid_argument("apn check needs --monomial or --sbox");
      }
      emit(sbox_json(audit_sbox(F, source)).dump(2), out_path);
      return kOk;
    }

    if (fam_build->parsed()) {
      const Field field(fam_n);
      FamilyParams p;
      p.family = family_from_cli(fam_name, fam_variant);
      p.n = fam_n;
      p.i = fam_i;
      p.j = fam_j;
      p.s_exp = fam_s;
      auto elem = [](const std::optional<std::string>& v) -> std::optional<Elem> {
        if (!v) return std::nullopt;
        return static_cast<Elem>(parse_hex(*v));
      };
      p.b = elem(fam_b);
      p.c = elem(fam_c);
      p.t = elem(fam_t);
      p.s_elem = elem(fam_s_elem);
      if (fam_r) p.r = parse_hex_list(*fam_r);
      if (fam_l_kind) {
        const std::vector<Elem> lambda = fam_l_lambda ? parse_hex_list(*fam_l_lambda) : std::vector<Elem>{1};
        p.L = make_isomorphism_L(field, parse_iso_kind(*fam_l_kind), lambda, elem(fam_l_mu).value_or(1));
      }
      const ApnCertificate cert = build_family(field, complete_params(field, p));
      emit(to_json(cert).dump(2), out_path);
      if (!cert.diagnostic.empty()) std::cerr << "diagnostic: " << cert.diagnostic << '\n';
      return exit_for(cert);
    }

    if (fam_search->parsed()) {
      const Field field(fam_n);
      SearchOptions opt;
      opt.budget = fam_budget;
      opt.i = fam_i;
      opt.j = fam_j;
      const SearchResult r = search_family(field, family_from_cli(fam_name, fam_variant), opt);
      json certs = json::array();
      for (const auto& c : r.certificates) certs.push_back(to_json(c));
      json doc{{"family", to_string(family_from_cli(fam_name, fam_variant))},
               {"n", fam_n},
               {"candidates", r.candidates},
               {"certificates", certs},
               {"diagnostics", r.diagnostics}};
      emit(doc.dump(2), out_path);
      for (const auto& d : r.diagnostics) std::cerr << "diagnostic: " << d << '\n';
      return kOk;
    }

    if (fam_verify->parsed()) {
      const json doc = read_json(cert_path);
      std::vector<json> certs;
      if (doc.contains("certificates")) {
        for (const auto& c : doc.at("certificates")) certs.push_back(c);
      } else {
        certs.push_back(doc);
      }
      int code = kOk;
      json results = json::array();
      for (const auto& c : certs) {
        const VerifyResult v = verify_certificate(c);
        results.push_back({{"family", c.at("family")},
                           {"verdict", to_string(v.rebuilt.verdict)},
                           {"reproduced", v.reproduced},
                           {"mismatched_keys", v.mismatched_keys}});
        if (!v.reproduced) code = kMismatch;
      }
      emit(json{{"verified", certs.size()}, {"results", results}}.dump(2), out_path);
      return code;
    }

    if (bench_walsh_cmd->parsed()) {
      emit(bench_csv(bench_walsh(bw_n, bw_i, bw_reps)), out_path);
      return kOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed certificate: " << e.what() << '\n';
    return kInput;
  } catch (const std::logic_error& e) {
    // invalid_argument, domain_error and CapError (length_error) are input problems
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}

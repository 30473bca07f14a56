#include "apnlab/certificate.hpp"

#include <cstdio>
#include <stdexcept>

namespace apnlab {

using nlohmann::json;

std::uint64_t table_hash(const VecFn& table) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Elem v : table.table) {
    for (int k = 0; k < 4; ++k) {
      h ^= (v >> (8 * k)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex(const std::string& text) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &pos, 16);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad hex value '" + text + "'");
  }
  if (pos != text.size()) throw std::invalid_argument("bad hex value '" + text + "'");
  return v;
}

namespace {

json iso_json(const Isomorphism& L) {
  json lam = json::array();
  for (Elem l : L.lambda()) lam.push_back(hex(l));
  return {{"kind", to_string(L.kind())}, {"lambda", lam}, {"mu", hex(L.mu())}};
}

Isomorphism iso_from_json(const json& j, const Field& field) {
  std::vector<Elem> lambda;
  for (const auto& l : j.at("lambda")) lambda.push_back(static_cast<Elem>(parse_hex(l.get<std::string>())));
  return make_isomorphism_L(field, parse_iso_kind(j.at("kind").get<std::string>()), std::move(lambda),
                            static_cast<Elem>(parse_hex(j.at("mu").get<std::string>())));
}

std::optional<Elem> elem_field(const json& params, const char* key) {
  if (!params.contains(key)) return std::nullopt;
  return static_cast<Elem>(parse_hex(params.at(key).get<std::string>()));
}

std::optional<unsigned> uint_field(const json& params, const char* key) {
  if (!params.contains(key)) return std::nullopt;
  return params.at(key).get<unsigned>();
}

}  // namespace

json to_json(const ApnCertificate& cert) {
  const FamilyParams& p = cert.params;
  json params = json::object();
  if (p.i) params["i"] = *p.i;
  if (p.j) params["j"] = *p.j;
  if (p.s_exp) params["s"] = *p.s_exp;
  if (p.b) params["b"] = hex(*p.b);
  if (p.c) params["c"] = hex(*p.c);
  if (p.t) params["t"] = hex(*p.t);
  if (p.s_elem) params["s_elem"] = hex(*p.s_elem);
  if (p.family == Family::B) {
    json r = json::array();
    for (Elem v : p.r) r.push_back(hex(v));
    params["r"] = r;
  }
  if (p.L) params["L"] = iso_json(*p.L);

  json report = json::array();
  for (const auto& h : cert.hypothesis_report) report.push_back({{"name", h.name}, {"passed", h.passed}});

  json doc;
  doc["family"] = to_string(p.family);
  doc["n"] = p.n;
  doc["poly"] = hex(cert.poly);
  doc["params"] = params;
  doc["L"] = cert.L ? iso_json(*cert.L) : json(nullptr);
  doc["hypothesis_report"] = report;
  doc["diagnostic"] = cert.diagnostic;
  doc["uniformity"] = cert.measured_uniformity ? json(*cert.measured_uniformity) : json(nullptr);
  doc["verdict"] = to_string(cert.verdict);
  if (cert.function_table) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(table_hash(*cert.function_table)));
    doc["table_hash"] = buf;
    if (p.n <= kInlineTableMaxDegree) doc["table"] = cert.function_table->table;
  } else {
    doc["table_hash"] = nullptr;
  }
  return doc;
}

gf2::Poly poly_from_json(const json& doc) { return parse_hex(doc.at("poly").get<std::string>()); }

FamilyParams params_from_json(const json& doc, const Field& field) {
  FamilyParams p;
  p.family = parse_family(doc.at("family").get<std::string>());
  p.n = doc.at("n").get<unsigned>();
  if (p.n != field.degree()) throw std::invalid_argument("certificate: n does not match the field");
  const json& params = doc.at("params");
  p.i = uint_field(params, "i");
  p.j = uint_field(params, "j");
  p.s_exp = uint_field(params, "s");
  p.b = elem_field(params, "b");
  p.c = elem_field(params, "c");
  p.t = elem_field(params, "t");
  p.s_elem = elem_field(params, "s_elem");
  if (params.contains("r"))
    for (const auto& v : params.at("r")) p.r.push_back(static_cast<Elem>(parse_hex(v.get<std::string>())));
  if (params.contains("L")) p.L = iso_from_json(params.at("L"), field);
  return p;
}

VerifyResult verify_certificate(const json& doc) {
  const unsigned n = doc.at("n").get<unsigned>();
  const Field field(n, poly_from_json(doc));
  VerifyResult out;
  out.rebuilt = build_family(field, params_from_json(doc, field));
  const json again = to_json(out.rebuilt);
  for (auto it = again.begin(); it != again.end(); ++it)
    if (!doc.contains(it.key()) || doc.at(it.key()) != it.value()) out.mismatched_keys.push_back(it.key());
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!again.contains(it.key())) out.mismatched_keys.push_back(it.key());
  out.reproduced = out.mismatched_keys.empty();
  return out;
}

}  // namespace apnlab

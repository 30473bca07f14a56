#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "apnlab/apn.hpp"

namespace apnlab {

/// Tables are written inline up to this n; larger ones keep only the hash.
inline constexpr unsigned kInlineTableMaxDegree = 10;

/// FNV-1a 64 over the table entries as little-endian 32-bit words.
std::uint64_t table_hash(const VecFn& table);

std::string hex(std::uint64_t v);
std::uint64_t parse_hex(const std::string& text);

nlohmann::json to_json(const ApnCertificate& cert);
/// Family, field and parameters of a certificate document (the part that
/// determines everything else).
FamilyParams params_from_json(const nlohmann::json& doc, const Field& field);
gf2::Poly poly_from_json(const nlohmann::json& doc);

struct VerifyResult {
  bool reproduced = false;
  ApnCertificate rebuilt;
  std::vector<std::string> mismatched_keys;
};

/// Rebuilds the certificate from its parameters and compares the documents.
VerifyResult verify_certificate(const nlohmann::json& doc);

}  // namespace apnlab

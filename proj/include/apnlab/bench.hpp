#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apnlab/spectrum.hpp"

namespace apnlab {

enum class WalshMethod { NAIVE, FAST, CLASSES };
const char* to_string(WalshMethod m) noexcept;
WalshMethod parse_walsh_method(std::string_view name);

/// Spectrum of Tr(a x^i) by the chosen method.
WalshSpectrum walsh_monomial(const Field& field, Elem a, std::uint64_t i, WalshMethod method);

struct ScanRecord {
  unsigned k = 0;
  std::uint64_t i = 0;
  Elem a = 1;
  bool bent = false;
  std::optional<Sign> chi_zero_sign;
  bool sign_rule_holds = false;  // chi(0) sign agrees with the gcd rule
  double runtime_ms = 0;
  WalshMethod method = WalshMethod::CLASSES;
};

struct ScanLevel {
  unsigned k = 0;
  bool skipped = false;  // odd k: no bent functions exist
  std::uint64_t tested = 0;
  std::uint64_t hits = 0;
  double runtime_ms = 0;
};

struct ScanReport {
  WalshMethod method = WalshMethod::CLASSES;
  std::vector<ScanLevel> levels;
  std::vector<ScanRecord> records;  // bent hits, ordered by (k, i)
};

/// Default largest k for the scan; raised with the exhaustive-cap override.
inline constexpr unsigned kScanDefaultMaxK = 14;

/// Tests Tr(x^i) for every i in 1..2^k-2 and every even k in [k_min, k_max].
ScanReport bent_scan(unsigned k_min, unsigned k_max, WalshMethod method = WalshMethod::CLASSES);

struct BenchRow {
  unsigned n = 0;
  std::uint64_t i = 0;
  std::uint64_t d = 0;
  std::size_t classes = 0;
  std::size_t class_evaluations = 0;
  double naive_ms = 0;
  double fast_ms = 0;
  double classes_ms = 0;
};

/// Median runtimes of the three methods on Tr(x^i); throws std::logic_error if
/// the spectra disagree. n <= 16.
std::vector<BenchRow> bench_walsh(unsigned n, const std::vector<std::uint64_t>& exponents, unsigned repetitions = 3);
std::string bench_csv(const std::vector<BenchRow>& rows);

/// S-box table from text (one hex value per line; blank lines and '#'
/// comments ignored) or, when the data is not text, little-endian uint32
/// words. The length must be a power of two; m is the widest entry or n.
VecFn parse_sbox(const std::string& bytes);
VecFn read_sbox_file(const std::string& path);

}  // namespace apnlab

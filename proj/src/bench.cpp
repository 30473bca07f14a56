#include "apnlab/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "apnlab/runtime.hpp"

namespace apnlab {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Tr(a x^i) through the log tables: x = alpha^e maps to Tr(alpha^(la + e i)).
BoolFn monomial_trace_by_logs(const Field& field, const std::vector<std::uint8_t>& tau, std::uint64_t i) {
  const std::uint64_t order = field.group_order();
  std::vector<std::uint8_t> t(field.size(), 0);
  const std::uint64_t step = i % order;
  std::uint64_t e = 0;
  for (std::uint64_t k = 0; k < order; ++k) {
    t[field.exp(k)] = tau[e];
    e += step;
    if (e >= order) e -= order;
  }
  return {field.degree(), std::move(t)};
}

}  // namespace

const char* to_string(WalshMethod m) noexcept {
  switch (m) {
    case WalshMethod::NAIVE: return "naive";
    case WalshMethod::FAST: return "fast";
    case WalshMethod::CLASSES: return "classes";
  }
  return "?";
}

WalshMethod parse_walsh_method(std::string_view name) {
  for (WalshMethod m : {WalshMethod::NAIVE, WalshMethod::FAST, WalshMethod::CLASSES})
    if (name == to_string(m)) return m;
  throw std::invalid_argument("unknown Walsh method '" + std::string(name) + "'");
}

WalshSpectrum walsh_monomial(const Field& field, Elem a, std::uint64_t i, WalshMethod method) {
  switch (method) {
    case WalshMethod::NAIVE: return walsh_naive(field, BoolFn::monomial_trace(field, a, i));
    case WalshMethod::FAST: return walsh_fast(field, BoolFn::monomial_trace(field, a, i));
    case WalshMethod::CLASSES: return walsh_monomial_by_classes(field, a, i).spectrum;
  }
  throw std::logic_error("walsh_monomial: unknown method");
}

ScanReport bent_scan(unsigned k_min, unsigned k_max, WalshMethod method) {
  if (k_min < 2 || k_min > k_max) throw std::invalid_argument("bent_scan: need 2 <= k_min <= k_max");
  if (k_max > exhaustive_cap(kScanDefaultMaxK))
    throw CapError("bent_scan: k=" + std::to_string(k_max) + " exceeds cap " +
                   std::to_string(exhaustive_cap(kScanDefaultMaxK)) + " (set APNLAB_MAX_N or --override-caps)");
  ScanReport report;
  report.method = method;
  for (unsigned k = k_min; k <= k_max; ++k) {
    ScanLevel level;
    level.k = k;
    if (k % 2 == 1) {
      level.skipped = true;
      report.levels.push_back(level);
      continue;
    }
    const auto t_level = Clock::now();
    const Field field(k);
    const std::uint64_t top = field.size() - 2;
    std::vector<std::uint8_t> tau(field.group_order());
    for (std::uint64_t e = 0; e < tau.size(); ++e) tau[e] = static_cast<std::uint8_t>(field.abs_trace(field.exp(e)));
    std::optional<CharacterTable> chars;
    std::optional<ClassProber> prober;
    if (method == WalshMethod::NAIVE) chars.emplace(field);
    if (method == WalshMethod::CLASSES) prober.emplace(field);

    for (std::uint64_t i = 1; i <= top; ++i) {
      const auto t0 = Clock::now();
      bool bent = false;
      std::int64_t chi0 = 0;
      if (method == WalshMethod::CLASSES) {
        const ClassBentProbe probe = prober->probe(1, i);
        bent = probe.bent;
        chi0 = probe.chi_zero;
      } else {
        const BoolFn f = monomial_trace_by_logs(field, tau, i);
        const WalshSpectrum s = method == WalshMethod::NAIVE ? chars->walsh(f) : walsh_fast(field, f);
        bent = is_bent(s, k);
        chi0 = s[0];
      }
      ++level.tested;
      if (!bent) continue;
      ScanRecord rec;
      rec.k = k;
      rec.i = i;
      rec.bent = true;
      rec.method = method;
      const BentSign sign = bent_sign_from_chi_zero(k, chi0, i);
      rec.chi_zero_sign = sign.sign;
      rec.sign_rule_holds = sign.consistent;
      rec.runtime_ms = ms_since(t0);
      report.records.push_back(rec);
      ++level.hits;
    }
    level.runtime_ms = ms_since(t_level);
    report.levels.push_back(level);
  }
  return report;
}

std::vector<BenchRow> bench_walsh(unsigned n, const std::vector<std::uint64_t>& exponents, unsigned repetitions) {
  if (n < 2) throw std::invalid_argument("bench_walsh: n must be at least 2");
  require_within_cap(n, kDefaultExhaustiveCap, "bench_walsh");
  if (repetitions == 0) throw std::invalid_argument("bench_walsh: repetitions must be positive");
  const Field field(n);
  std::vector<BenchRow> rows;
  for (std::uint64_t i : exponents) {
    if (i == 0) throw std::invalid_argument("bench_walsh: exponents must be positive");
    const WalshSpectrum ref = walsh_naive(field, BoolFn::monomial_trace(field, 1, i));
    const ClassWalsh cw = walsh_monomial_by_classes(field, 1, i);
    if (walsh_fast(field, BoolFn::monomial_trace(field, 1, i)) != ref || cw.spectrum != ref)
      throw std::logic_error("bench_walsh: methods disagree for i=" + std::to_string(i));

    auto median = [&](auto&& run) {
      std::vector<double> times;
      for (unsigned r = 0; r < repetitions; ++r) {
        const auto t0 = Clock::now();
        run();
        times.push_back(ms_since(t0));
      }
      std::sort(times.begin(), times.end());
      return times[times.size() / 2];
    };
    BenchRow row;
    row.n = n;
    row.i = i;
    row.d = cw.d;
    row.classes = cw.classes;
    row.class_evaluations = cw.evaluations;
    row.naive_ms = median([&] { (void)walsh_naive(field, BoolFn::monomial_trace(field, 1, i)); });
    row.fast_ms = median([&] { (void)walsh_fast(field, BoolFn::monomial_trace(field, 1, i)); });
    row.classes_ms = median([&] { (void)walsh_monomial_by_classes(field, 1, i); });
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n,i,d,classes,class_evaluations,naive_ms,fast_ms,classes_ms,spectra_agree\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.n << ',' << r.i << ',' << r.d << ',' << r.classes << ',' << r.class_evaluations;
    for (double v : {r.naive_ms, r.fast_ms, r.classes_ms}) {
      std::snprintf(buf, sizeof buf, ",%.3f", v);
      out << buf;
    }
    out << ",true\n";
  }
  return out.str();
}

namespace {

bool looks_like_text(const std::string& bytes) {
  return std::all_of(bytes.begin(), bytes.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return c == '\n' || c == '\r' || c == '\t' || (c >= 0x20 && c < 0x7f);
  });
}

VecFn from_entries(std::vector<Elem> entries) {
  const std::size_t len = entries.size();
  if (len < 2 || !std::has_single_bit(len))
    throw std::invalid_argument("S-box length " + std::to_string(len) + " is not a power of two >= 2");
  const auto n = static_cast<unsigned>(std::countr_zero(len));
  Elem widest = 0;
  for (Elem v : entries) widest |= v;
  const auto m = std::max<unsigned>(n, static_cast<unsigned>(std::bit_width(widest)));
  return {n, m, std::move(entries)};
}

}  // namespace

VecFn parse_sbox(const std::string& bytes) {
  std::vector<Elem> entries;
  if (looks_like_text(bytes)) {
    std::istringstream in(bytes);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r,");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r,");
      std::string tok = line.substr(first, last - first + 1);
      if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) tok.erase(0, 2);
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &pos, 16);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size() || tok.empty() || v > 0xffffffffULL)
        throw std::invalid_argument("S-box line " + std::to_string(lineno) + ": bad hex entry '" + tok + "'");
      entries.push_back(static_cast<Elem>(v));
    }
  } else {
    if (bytes.size() % 4 != 0) throw std::invalid_argument("binary S-box size is not a multiple of 4 bytes");
    for (std::size_t k = 0; k < bytes.size(); k += 4) {
      Elem v = 0;
      for (int b = 3; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(bytes[k + static_cast<std::size_t>(b)]);
      entries.push_back(v);
    }
  }
  return from_entries(std::move(entries));
}

VecFn read_sbox_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_sbox(bytes);
}

}  // namespace apnlab

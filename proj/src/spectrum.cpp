#include "apnlab/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "apnlab/runtime.hpp"

namespace apnlab {

namespace {

constexpr unsigned kNaiveCap = 20;
constexpr unsigned kCharacterTableCap = 14;
constexpr unsigned kFastCap = 24;

void require_matching(const Field& field, unsigned n) {
  if (field.degree() != n)
    throw std::invalid_argument("Boolean function dimension does not match the field degree");
}

void hard_cap(unsigned n, unsigned cap, const char* what) {
  if (n > cap) throw CapError(std::string(what) + ": n=" + std::to_string(n) + " exceeds " + std::to_string(cap));
}

}  // namespace

// --- function tables ----------------------------------------------------------

BoolFn::BoolFn(unsigned n_, std::vector<std::uint8_t> table_) : n(n_), table(std::move(table_)) {
  if (n > 30 || table.size() != (std::size_t{1} << n))
    throw std::invalid_argument("BoolFn: table length must be 2^n");
  for (auto& b : table)
    if (b > 1) throw std::invalid_argument("BoolFn: entries must be 0 or 1");
}

BoolFn BoolFn::constant(unsigned n, bool value) {
  return {n, std::vector<std::uint8_t>(std::size_t{1} << n, value ? 1 : 0)};
}

BoolFn BoolFn::monomial_trace(const Field& field, Elem a, std::uint64_t i) {
  field.check(a);
  std::vector<std::uint8_t> t(field.size());
  for (std::uint64_t x = 0; x < field.size(); ++x) {
    // 0^i = 0 for i >= 1; pow(0, 0) is 1.
    const Elem xi = field.pow(static_cast<Elem>(x), i);
    t[x] = static_cast<std::uint8_t>(field.abs_trace(field.mul(a, xi)));
  }
  return {field.degree(), std::move(t)};
}

VecFn::VecFn(unsigned n_, unsigned m_, std::vector<Elem> table_) : n(n_), m(m_), table(std::move(table_)) {
  if (n > 30 || m > 32 || table.size() != (std::size_t{1} << n))
    throw std::invalid_argument("VecFn: table length must be 2^n");
  if (m < 32) {
    for (Elem v : table)
      if (v >> m) throw std::invalid_argument("VecFn: entry exceeds m bits");
  }
}

VecFn VecFn::power(const Field& field, std::uint64_t e) {
  std::vector<Elem> t(field.size());
  for (std::uint64_t x = 0; x < field.size(); ++x) t[x] = field.pow(static_cast<Elem>(x), e);
  return {field.degree(), field.degree(), std::move(t)};
}

VecFn VecFn::tabulate(const Field& field, const std::function<Elem(Elem)>& f) {
  std::vector<Elem> t(field.size());
  for (std::uint64_t x = 0; x < field.size(); ++x) t[x] = f(static_cast<Elem>(x));
  return {field.degree(), field.degree(), std::move(t)};
}

std::int64_t WalshSpectrum::max_abs() const noexcept {
  std::int64_t m = 0;
  for (auto v : values) m = std::max(m, v < 0 ? -v : v);
  return m;
}

std::int64_t WalshSpectrum::energy() const noexcept {
  std::int64_t e = 0;
  for (auto v : values) e += v * v;
  return e;
}

// --- Walsh transforms ---------------------------------------------------------

WalshSpectrum walsh_naive(const Field& field, const BoolFn& f) {
  require_matching(field, f.n);
  hard_cap(f.n, kNaiveCap, "walsh_naive");
  const std::uint64_t size = field.size();
  WalshSpectrum s;
  s.values.assign(size, 0);
  for (std::uint64_t u = 0; u < size; ++u) {
    std::int64_t acc = 0;
    for (std::uint64_t x = 0; x < size; ++x) {
      const unsigned bit = f.table[x] ^ field.abs_trace(field.mul(static_cast<Elem>(u), static_cast<Elem>(x)));
      acc += bit ? -1 : 1;
    }
    s.values[u] = acc;
  }
  return s;
}

CharacterTable::CharacterTable(const Field& field) : n_(field.degree()) {
  hard_cap(n_, kCharacterTableCap, "CharacterTable");
  const std::uint64_t size = field.size();
  words_ = (size + 63) / 64;
  rows_.assign(size * words_, 0);
  for (std::uint64_t u = 0; u < size; ++u) {
    std::uint64_t* row = &rows_[u * words_];
    for (std::uint64_t x = 0; x < size; ++x)
      if (field.abs_trace(field.mul(static_cast<Elem>(u), static_cast<Elem>(x))))
        row[x / 64] |= std::uint64_t{1} << (x % 64);
  }
}

WalshSpectrum CharacterTable::walsh(const BoolFn& f) const {
  if (f.n != n_) throw std::invalid_argument("CharacterTable: dimension mismatch");
  const std::uint64_t size = std::uint64_t{1} << n_;
  std::vector<std::uint64_t> packed(words_, 0);
  for (std::uint64_t x = 0; x < size; ++x)
    if (f.table[x]) packed[x / 64] |= std::uint64_t{1} << (x % 64);
  WalshSpectrum s;
  s.values.resize(size);
  for (std::uint64_t u = 0; u < size; ++u) {
    const std::uint64_t* row = &rows_[u * words_];
    std::int64_t ones = 0;
    for (std::size_t w = 0; w < words_; ++w) ones += std::popcount(row[w] ^ packed[w]);
    s.values[u] = static_cast<std::int64_t>(size) - 2 * ones;
  }
  return s;
}

WalshSpectrum walsh_fast(const Field& field, const BoolFn& f) {
  require_matching(field, f.n);
  hard_cap(f.n, kFastCap, "walsh_fast");
  const std::size_t size = field.size();
  std::vector<std::int32_t> w(size);
  for (std::size_t x = 0; x < size; ++x) w[x] = f.table[x] ? -1 : 1;
  for (std::size_t len = 1; len < size; len <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * len) {
      for (std::size_t j = base; j < base + len; ++j) {
        const std::int32_t a = w[j];
        const std::int32_t b = w[j + len];
        w[j] = a + b;
        w[j + len] = a - b;
      }
    }
  }
  // w[v] uses the bit dot product v.x; Tr(u x) = D(u).x with D(u)_j = Tr(u t^j).
  const unsigned n = field.degree();
  std::vector<std::uint32_t> cols(n);
  for (unsigned k = 0; k < n; ++k) {
    std::uint32_t col = 0;
    for (unsigned j = 0; j < n; ++j)
      col |= field.abs_trace(field.mul(Elem{1} << k, Elem{1} << j)) << j;
    cols[k] = col;
  }
  const gf2::LinearMap dual(cols);
  WalshSpectrum s;
  s.values.resize(size);
  for (std::size_t u = 0; u < size; ++u) s.values[u] = w[dual(static_cast<std::uint32_t>(u))];
  return s;
}

namespace {

std::vector<std::int8_t> trace_signs(const Field& f) {
  if (!f.has_log_tables())
    throw CapError("class-based Walsh evaluation needs n <= " + std::to_string(Field::kLogTableMaxDegree));
  std::vector<std::int8_t> out(f.group_order());
  for (std::uint64_t e = 0; e < out.size(); ++e) out[e] = f.abs_trace(f.exp(e)) ? -1 : 1;
  return out;
}

struct ClassSetup {
  std::uint64_t d = 0;
  std::uint64_t m = 0;               // number of classes = (2^n - 1) / d
  std::vector<std::int32_t> inner;   // inner[r] = sum_k (-1)^Tr(alpha^(r + k m))
  std::vector<std::int8_t> outer;    // outer[r] = (-1)^Tr(a alpha^(r i))

  ClassSetup(const Field& field, const std::vector<std::int8_t>& tau, Elem a, std::uint64_t i) {
    const std::uint64_t order = tau.size();
    d = std::gcd(i, order);
    m = order / d;
    inner.assign(m, 0);
    for (std::uint64_t e = 0; e < order; ++e) inner[e % m] += tau[e];
    outer.resize(m);
    const std::uint64_t la = field.log(a);
    const std::uint64_t step = i % order;
    for (std::uint64_t r = 0; r < m; ++r)
      outer[r] = tau[static_cast<std::uint64_t>((la + static_cast<unsigned __int128>(r) * step) % order)];
  }

  std::int64_t chi_zero() const {
    std::int64_t acc = 0;
    for (auto v : outer) acc += v;
    return 1 + static_cast<std::int64_t>(d) * acc;
  }

  // chi(alpha^b) = 1 + sum over classes x of (-1)^Tr(a x^i) sum_k (-1)^Tr(alpha^b x xi^k)
  std::int64_t chi_at_log(std::uint64_t b) const {
    std::int64_t acc = 1;
    const std::uint64_t shift = b % m;
    const std::uint64_t split = m - shift;
    for (std::uint64_t r = 0; r < split; ++r) acc += outer[r] * inner[r + shift];
    for (std::uint64_t r = split; r < m; ++r) acc += outer[r] * inner[r - split];
    return acc;
  }
};

}  // namespace

ClassWalsh walsh_monomial_by_classes(const Field& field, Elem a, std::uint64_t i) {
  if (a == 0) throw std::invalid_argument("walsh_monomial_by_classes: a must be nonzero");
  if (i == 0) throw std::invalid_argument("walsh_monomial_by_classes: i must be positive");
  field.check(a);
  const ClassSetup setup(field, trace_signs(field), a, i);
  const ClassDecomposition classes = field.class_decomposition(i);

  ClassWalsh out;
  out.d = setup.d;
  out.classes = classes.representatives.size();
  out.spectrum.values.assign(field.size(), 0);
  out.spectrum.values[0] = setup.chi_zero();
  out.evaluations = 1;
  for (Elem beta : classes.representatives) {
    const std::int64_t v = setup.chi_at_log(field.log(beta));
    ++out.evaluations;
    for (Elem z : classes.kernel) out.spectrum.values[field.mul(beta, z)] = v;
  }
  return out;
}

ClassProber::ClassProber(const Field& field) : field_(field), tau_sign_(trace_signs(field)) {}

ClassBentProbe ClassProber::probe(Elem a, std::uint64_t i) const {
  if (a == 0) throw std::invalid_argument("probe_bent_by_classes: a must be nonzero");
  if (i == 0) throw std::invalid_argument("probe_bent_by_classes: i must be positive");
  field_.check(a);
  ClassBentProbe out;
  if (!field_.is_even()) return out;
  const ClassSetup setup(field_, tau_sign_, a, i);
  const std::int64_t target = std::int64_t{1} << field_.half_degree();
  out.chi_zero = setup.chi_zero();
  out.evaluations = 1;
  if (std::llabs(out.chi_zero) != target) return out;
  for (std::uint64_t b = 0; b < setup.m; ++b) {
    const std::int64_t v = setup.chi_at_log(b);
    ++out.evaluations;
    if (std::llabs(v) != target) return out;
  }
  out.bent = true;
  return out;
}

ClassBentProbe probe_bent_by_classes(const Field& field, Elem a, std::uint64_t i) {
  return ClassProber(field).probe(a, i);
}

bool is_balanced(const Field& field, const BoolFn& f) { return walsh_fast(field, f)[0] == 0; }

bool is_bent(const WalshSpectrum& s, unsigned n) {
  if (n % 2 != 0) throw std::invalid_argument("is_bent: n must be even");
  const std::int64_t target = std::int64_t{1} << (n / 2);
  return std::all_of(s.values.begin(), s.values.end(), [&](std::int64_t v) { return v == target || v == -target; });
}

bool is_bent(const Field& field, const BoolFn& f) {
  if (f.n % 2 != 0) throw std::invalid_argument("is_bent: n must be even");
  return is_bent(walsh_fast(field, f), f.n);
}

bool bent_monomial_equivalence_check(const Field& field, Elem b, std::uint64_t i) {
  if (b == 0) throw std::invalid_argument("bent_monomial_equivalence_check: b must be nonzero");
  field.check(b);
  const WalshSpectrum sf = walsh_fast(field, BoolFn::monomial_trace(field, field.pow(b, i), i));
  const WalshSpectrum sg = walsh_fast(field, BoolFn::monomial_trace(field, 1, i));
  const Elem inv_b = field.inverse(b);
  for (std::uint64_t beta = 0; beta < field.size(); ++beta)
    if (sf[beta] != sg[field.mul(static_cast<Elem>(beta), inv_b)]) return false;
  return true;
}

const char* to_string(Sign s) noexcept { return s == Sign::PLUS ? "PLUS" : "MINUS"; }

BentSign bent_sign_from_chi_zero(unsigned n, std::int64_t chi_zero, std::uint64_t i) {
  if (n % 2 != 0) throw std::invalid_argument("bent sign: n must be even");
  const std::int64_t target = std::int64_t{1} << (n / 2);
  if (chi_zero != target && chi_zero != -target)
    throw std::invalid_argument("bent sign: chi(0) is not +-2^(n/2)");
  const std::uint64_t q = std::uint64_t{1} << (n / 2);
  BentSign out;
  out.sign = chi_zero > 0 ? Sign::PLUS : Sign::MINUS;
  out.gcd_plus = std::gcd(i, q + 1);
  out.gcd_minus = std::gcd(i, q - 1);
  out.consistent = ((out.sign == Sign::PLUS) == (out.gcd_plus == 1)) &&
                   ((out.sign == Sign::MINUS) == (out.gcd_minus == 1));
  return out;
}

BentSign bent_sign_check(const Field& field, Elem a, std::uint64_t i) {
  if (!field.is_even()) throw std::invalid_argument("bent_sign_check: n must be even");
  const WalshSpectrum s = walsh_fast(field, BoolFn::monomial_trace(field, a, i));
  if (!is_bent(s, field.degree())) throw std::invalid_argument("bent_sign_check: function is not bent");
  return bent_sign_from_chi_zero(field.degree(), s[0], i);
}

// --- derivatives ---------------------------------------------------------------

DifferentialSpectrum differential_spectrum(const VecFn& F) {
  require_within_cap(F.n, kDefaultExhaustiveCap, "differential_spectrum");
  const std::size_t size = std::size_t{1} << F.n;
  const std::size_t out_size = std::size_t{1} << F.m;
  const unsigned workers = worker_count();
  std::vector<std::vector<std::uint32_t>> counts(workers, std::vector<std::uint32_t>(out_size));
  std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(size + 1, 0));
  parallel_for(
      size - 1,
      [&](std::size_t k, unsigned w) {
        const std::size_t a = k + 1;
        auto& c = counts[w];
        std::fill(c.begin(), c.end(), 0);
        for (std::size_t x = 0; x < size; ++x) ++c[F.table[x] ^ F.table[x ^ a]];
        auto& h = hist[w];
        for (std::uint32_t v : c) ++h[v];
      },
      workers);
  DifferentialSpectrum out;
  for (std::size_t count = 0; count <= size; ++count) {
    std::uint64_t total = 0;
    for (const auto& h : hist) total += h[count];
    if (total != 0) {
      out.histogram[static_cast<std::uint32_t>(count)] = total;
      out.uniformity = static_cast<std::uint32_t>(count);
    }
  }
  return out;
}

std::uint32_t differential_uniformity(const VecFn& F) { return differential_spectrum(F).uniformity; }

bool is_apn(const VecFn& F) {
  if (F.n != F.m) throw std::invalid_argument("is_apn: F must be an (n, n)-function");
  require_within_cap(F.n, kDefaultExhaustiveCap, "is_apn");
  const std::size_t size = std::size_t{1} << F.n;
  const unsigned workers = worker_count();
  std::vector<std::vector<std::uint32_t>> counts(workers, std::vector<std::uint32_t>(size));
  std::atomic<bool> failed{false};
  parallel_for(
      size - 1,
      [&](std::size_t k, unsigned w) {
        if (failed.load(std::memory_order_relaxed)) return;
        const std::size_t a = k + 1;
        auto& c = counts[w];
        std::fill(c.begin(), c.end(), 0);
        for (std::size_t x = 0; x < size; ++x) {
          if (++c[F.table[x] ^ F.table[x ^ a]] > 2) {
            failed.store(true, std::memory_order_relaxed);
            return;
          }
        }
      },
      workers);
  return !failed.load();
}

bool derivative_balance_check(const Field& field, const VecFn& B) {
  if (!field.is_even()) throw std::invalid_argument("derivative_balance_check: n must be even");
  if (B.n != field.degree()) throw std::invalid_argument("derivative_balance_check: dimension mismatch");
  for (Elem v : B.table)
    if (!field.contains(v) || !field.in_half(v)) return false;
  const std::size_t size = field.size();
  const std::uint64_t q = std::uint64_t{1} << field.half_degree();

  bool is_x_q_plus_1 = true;
  for (std::size_t x = 0; x < size && is_x_q_plus_1; ++x)
    is_x_q_plus_1 = B.table[x] == field.pow(static_cast<Elem>(x), q + 1);

  std::vector<std::uint32_t> counts(size);
  for (std::size_t a = 1; a < size; ++a) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t x = 0; x < size; ++x) ++counts[B.table[x] ^ B.table[x ^ a]];
    for (Elem h : field.half_elements())
      if (counts[h] != q) return false;
    if (is_x_q_plus_1) {
      const Elem ea = static_cast<Elem>(a);
      const Elem aq = field.conj(ea);
      const Elem norm = field.mul(aq, ea);
      for (std::size_t x = 0; x < size; ++x) {
        const Elem lhs = B.table[x] ^ B.table[x ^ a];
        const Elem rhs = field.rel_trace_half(field.mul(aq, static_cast<Elem>(x))) ^ norm;
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

// --- S-box audit ---------------------------------------------------------------

SboxReport audit_sbox(const VecFn& F, std::string source) {
  SboxReport r;
  r.n = F.n;
  r.m = F.m;
  r.source = std::move(source);
  const DifferentialSpectrum ds = differential_spectrum(F);
  r.differential_uniformity = ds.uniformity;
  r.histogram = ds.histogram;
  r.apn = F.n == F.m && ds.uniformity <= 2;

  if (F.n >= 1 && F.n <= kAuditWalshCap) {
    const Field field(F.n);
    const std::size_t size = field.size();
    const std::size_t components = std::size_t{1} << F.m;
    r.walsh_computed = true;
    r.balanced = true;
    r.bent = F.n % 2 == 0;
    std::vector<std::uint8_t> t(size);
    for (std::size_t v = 1; v < components; ++v) {
      for (std::size_t x = 0; x < size; ++x)
        t[x] = static_cast<std::uint8_t>(std::popcount(static_cast<std::uint32_t>(v) & F.table[x]) & 1);
      const WalshSpectrum s = walsh_fast(field, BoolFn(F.n, t));
      r.walsh_max_abs = std::max(r.walsh_max_abs, s.max_abs());
      if (s[0] != 0) r.balanced = false;
      if (r.bent && !is_bent(s, F.n)) r.bent = false;
    }
    r.nonlinearity = (std::int64_t{1} << (F.n - 1)) - r.walsh_max_abs / 2;
  }
  return r;
}

}  // namespace apnlab

#include "tkl/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "tkl/errors.hpp"

namespace tkl {
namespace {

// Raw polynomial arithmetic over F_3 used only while building a context
// (before the log tables exist). Little-endian coefficient vectors.
using Poly = std::vector<std::uint8_t>;

std::uint32_t pow3(int e) {
  std::uint32_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

Poly decode(std::uint32_t packed, int len) {
  Poly p(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(packed % 3);
    packed /= 3;
  }
  return p;
}

std::uint32_t encode(const Poly& p) {
  std::uint32_t r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * 3 + p[i];
  return r;
}

int degree_of(const Poly& p) {
  for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
    if (p[static_cast<std::size_t>(d)]) return d;
  return -1;
}

// Remainder of a modulo a monic divisor.
Poly poly_rem(Poly a, const Poly& divisor) {
  const int dd = degree_of(divisor);
  for (int d = degree_of(a); d >= dd; d = degree_of(a)) {
    const std::uint8_t c = a[static_cast<std::size_t>(d)];
    for (int i = 0; i <= dd; ++i) {
      auto& t = a[static_cast<std::size_t>(d - dd + i)];
      t = static_cast<std::uint8_t>((t + 3 - c * divisor[static_cast<std::size_t>(i)] % 3) % 3);
    }
  }
  return a;
}

// Smallest degree of a nontrivial monic factor, or 0 when irreducible.
// Scanning divisor degrees in ascending order guarantees the reported
// degree belongs to an irreducible factor.
int smallest_factor_degree(const Poly& candidate, int n) {
  for (int d = 1; d <= n / 2; ++d) {
    for (std::uint32_t packed = 0; packed < pow3(d); ++packed) {
      Poly divisor = decode(packed, d + 1);
      divisor[static_cast<std::size_t>(d)] = 1;
      if (degree_of(poly_rem(candidate, divisor)) < 0) return d;
    }
  }
  return 0;
}

// Product modulo the field polynomial (c_0..c_{n-1}, monic leading 1).
Poly mul_raw(const Poly& a, const Poly& b, const Poly& mod) {
  const int n = static_cast<int>(mod.size());
  std::vector<int> buf(static_cast<std::size_t>(2 * n - 1), 0);
  for (int i = 0; i < n; ++i) {
    if (!a[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < n; ++j)
      buf[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  for (int d = 2 * n - 2; d >= n; --d) {
    const int c = buf[static_cast<std::size_t>(d)] % 3;
    buf[static_cast<std::size_t>(d)] = 0;
    if (!c) continue;
    // x^n = -(c_0 + c_1 x + ... + c_{n-1} x^{n-1})
    for (int i = 0; i < n; ++i)
      buf[static_cast<std::size_t>(d - n + i)] += c * (3 - mod[static_cast<std::size_t>(i)]);
  }
  Poly out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(buf[static_cast<std::size_t>(i)] % 3);
  return out;
}

Poly pow_raw(Poly base, std::uint64_t e, const Poly& mod) {
  Poly r(mod.size(), 0);
  r[0] = 1;
  while (e) {
    if (e & 1) r = mul_raw(r, base, mod);
    base = mul_raw(base, base, mod);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= v; ++p) {
    if (v % p) continue;
    out.push_back(p);
    while (v % p == 0) v /= p;
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

FieldContext FieldContext::build(int n, std::optional<std::vector<std::uint8_t>> modulus_override,
                                 int degree_cap) {
  if (degree_cap < 1) throw std::invalid_argument("field degree cap must be at least 1");
  if (n < 1) throw std::invalid_argument("field degree must be at least 1");
  if (n > degree_cap)
    throw std::invalid_argument("field degree " + std::to_string(n) + " exceeds cap " +
                                std::to_string(degree_cap));

  FieldContext ctx;
  ctx.n_ = n;
  ctx.q_ = pow3(n);

  if (modulus_override) {
    auto& m = *modulus_override;
    if (static_cast<int>(m.size()) != n)
      throw std::invalid_argument("modulus override must list exactly " + std::to_string(n) +
                                  " coefficients (monic leading term implied)");
    for (auto c : m)
      if (c > 2) throw std::invalid_argument("modulus coefficients must lie in {0,1,2}");
    Poly full(m.begin(), m.end());
    full.push_back(1);
    if (int d = smallest_factor_degree(full, n); d > 0)
      throw std::invalid_argument("modulus is reducible: it has a factor of degree " +
                                  std::to_string(d));
    ctx.modulus_ = m;
  } else {
    for (std::uint32_t packed = 0;; ++packed) {
      Poly full = decode(packed, n + 1);
      full[static_cast<std::size_t>(n)] = 1;
      if (smallest_factor_degree(full, n) == 0) {
        full.pop_back();
        ctx.modulus_ = full;
        break;
      }
    }
  }

  const Poly& mod = ctx.modulus_;
  const std::uint32_t m = ctx.q_ - 1;

  // Generator: first element in packed order with multiplicative order q-1.
  const auto primes = prime_factors(m);
  Poly one(mod.size(), 0);
  one[0] = 1;
  for (std::uint32_t cand = 1;; ++cand) {
    if (cand >= ctx.q_) throw internal_error("no generator found");
    const Poly c = decode(cand, n);
    bool ok = true;
    for (auto p : primes) {
      if (pow_raw(c, m / p, mod) == one) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ctx.gen_ = Elem{cand};
      break;
    }
  }

  // Antilog chain and discrete logs.
  ctx.antilog_.assign(m, 0);
  ctx.log_.assign(ctx.q_, 0);
  std::vector<bool> seen(ctx.q_, false);
  Poly acc = one;
  const Poly g = decode(ctx.gen_.idx, n);
  for (std::uint32_t e = 0; e < m; ++e) {
    const std::uint32_t packed = encode(acc);
    if (packed == 0 || seen[packed]) throw internal_error("antilog chain is not a bijection");
    seen[packed] = true;
    ctx.antilog_[e] = packed;
    ctx.log_[packed] = e;
    acc = mul_raw(acc, g, mod);
  }
  if (encode(acc) != 1) throw internal_error("generator order is not q-1");

  // Trace of each basis monomial, then extend linearly.
  std::vector<std::uint8_t> basis_trace(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Poly b(mod.size(), 0);
    b[static_cast<std::size_t>(i)] = 1;
    Poly s = b;
    Poly frob = b;
    for (int f = 1; f < n; ++f) {
      frob = mul_raw(frob, mul_raw(frob, frob, mod), mod);  // cube
      for (int j = 0; j < n; ++j)
        s[static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>((s[static_cast<std::size_t>(j)] + frob[static_cast<std::size_t>(j)]) % 3);
    }
    if (degree_of(s) > 0) throw internal_error("basis trace is not scalar");
    basis_trace[static_cast<std::size_t>(i)] = s[0];
  }
  ctx.trace_.assign(ctx.q_, 0);
  for (std::uint32_t x = 0; x < ctx.q_; ++x) {
    std::uint32_t v = x;
    int t = 0;
    for (int i = 0; i < n; ++i) {
      t += static_cast<int>(v % 3) * basis_trace[static_cast<std::size_t>(i)];
      v /= 3;
    }
    ctx.trace_[x] = static_cast<std::uint8_t>(t % 3);
  }

  ctx.inv_.assign(ctx.q_, 0);
  for (std::uint32_t e = 0; e < m; ++e)
    ctx.inv_[ctx.antilog_[e]] = ctx.antilog_[(m - e) % m];

  return ctx;
}

Elem FieldContext::element(std::uint32_t packed) const {
  if (packed >= q_)
    throw std::invalid_argument("packed index " + std::to_string(packed) + " out of range for q=" +
                                std::to_string(q_));
  return Elem{packed};
}

std::vector<std::uint8_t> FieldContext::coeffs(Elem a) const {
  std::vector<std::uint8_t> c(static_cast<std::size_t>(n_));
  std::uint32_t v = a.idx;
  for (int i = 0; i < n_; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v % 3);
    v /= 3;
  }
  return c;
}

Elem FieldContext::from_coeffs(std::span<const std::uint8_t> c) const {
  if (static_cast<int>(c.size()) != n_)
    throw std::invalid_argument("coefficient vector must have length " + std::to_string(n_));
  std::uint32_t r = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] > 2) throw std::invalid_argument("coefficients must lie in {0,1,2}");
    r = r * 3 + c[i];
  }
  return Elem{r};
}

Elem FieldContext::add(Elem a, Elem b) const {
  std::uint32_t x = a.idx, y = b.idx, r = 0, place = 1;
  for (int i = 0; i < n_; ++i) {
    r += ((x % 3) + (y % 3)) % 3 * place;
    x /= 3;
    y /= 3;
    place *= 3;
  }
  return Elem{r};
}

Elem FieldContext::neg(Elem a) const {
  std::uint32_t x = a.idx, r = 0, place = 1;
  for (int i = 0; i < n_; ++i) {
    r += (3 - x % 3) % 3 * place;
    x /= 3;
    place *= 3;
  }
  return Elem{r};
}

Elem FieldContext::mul(Elem a, Elem b) const {
  if (a.idx == 0 || b.idx == 0) return Elem{0};
  const std::uint32_t m = q_ - 1;
  return Elem{antilog_[(log_[a.idx] + log_[b.idx]) % m]};
}

Elem FieldContext::inv(Elem a) const {
  if (a.idx == 0) throw std::domain_error("0 has no multiplicative inverse");
  return Elem{inv_[a.idx]};
}

Elem FieldContext::pow(Elem base, long long e) const {
  if (base.idx == 0) {
    if (e == 0) return one();
    if (e > 0) return zero();
    throw std::domain_error("negative power of 0");
  }
  const long long m = static_cast<long long>(q_) - 1;
  const std::uint64_t em = static_cast<std::uint64_t>(((e % m) + m) % m);
  return Elem{antilog_[(static_cast<std::uint64_t>(log_[base.idx]) * em) % static_cast<std::uint64_t>(m)]};
}

std::vector<Elem> FieldContext::trace_level_set(std::uint8_t r) const {
  if (r > 2) throw std::invalid_argument("trace value must lie in {0,1,2}");
  std::vector<Elem> out;
  out.reserve(q_ / 3);
  for (std::uint32_t x = 0; x < q_; ++x)
    if (trace_[x] == r) out.push_back(Elem{x});
  return out;
}

std::uint32_t FieldContext::log(Elem a) const {
  if (a.idx == 0) throw std::domain_error("log of 0 is undefined");
  return log_[a.idx];
}

Elem FieldContext::antilog(std::uint64_t e) const { return Elem{antilog_[e % (q_ - 1)]}; }

bool FieldContext::is_square(Elem a) const { return a.idx == 0 || log_[a.idx] % 2 == 0; }

Elem FieldContext::sqrt(Elem a) const {
  if (a.idx == 0) return Elem{0};
  const std::uint32_t l = log_[a.idx];
  if (l % 2) throw std::domain_error("element is not a square");
  return Elem{antilog_[l / 2]};
}

std::string FieldContext::format(Elem a) const {
  std::ostringstream os;
  std::uint32_t v = a.idx;
  for (int i = 0; i < n_; ++i) {
    if (i) os << ',';
    os << v % 3;
    v /= 3;
  }
  return os.str();
}

Elem FieldContext::parse(std::string_view text) const {
  if (text.empty()) throw std::invalid_argument("empty element literal");
  if (text.find(',') == std::string_view::npos && n_ > 1) {
    std::uint32_t packed = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), packed);
    if (ec != std::errc{} || p != text.data() + text.size())
      throw std::invalid_argument("bad element literal: " + std::string(text));
    return element(packed);
  }
  std::vector<std::uint8_t> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(',', pos), text.size());
    int digit = 0;
    auto [p, ec] = std::from_chars(text.data() + pos, text.data() + next, digit);
    if (ec != std::errc{} || p != text.data() + next || digit < 0 || digit > 2)
      throw std::invalid_argument("bad element literal: " + std::string(text));
    c.push_back(static_cast<std::uint8_t>(digit));
    pos = next + 1;
  }
  return from_coeffs(c);
}

}  // namespace tkl

#include "tkl/padic.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "tkl/errors.hpp"
#include "tkl/traces.hpp"

namespace tkl {
namespace {

std::int64_t pow3ll(int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

std::int64_t floor_mod(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

// Inverse mod 3^k of a value coprime to 3.
std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = floor_mod(a, m);
  while (nr) {
    const std::int64_t qt = r / nr;
    std::swap(t -= qt * nt, nt);
    std::swap(r -= qt * nr, nr);
  }
  if (r != 1) throw std::domain_error("value is not invertible at this modulus");
  return floor_mod(t, m);
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

PadicRing::PadicRing(const FieldContext& ctx, int k) : ctx_(&ctx), k_(k) {
  if (k < 1) throw std::invalid_argument("precision k must be at least 1");
  if (k > kPrecisionCap)
    throw std::invalid_argument("precision k exceeds cap " + std::to_string(kPrecisionCap));
  pk_ = pow3ll(k);
  modulus_.assign(ctx.modulus().begin(), ctx.modulus().end());

  // zeta = (-1 - pi) * 2^{-1}; both coordinates are the scalar -1/2.
  const std::int64_t half = inv_mod(2, pk_);
  const std::int64_t c = floor_mod(-half, pk_);
  zeta_pow_[0] = from_scalar(1);
  zeta_pow_[1] = REl{scalar(c), scalar(c)};
  zeta_pow_[2] = rmul(zeta_pow_[1], zeta_pow_[1]);
  const REl unity = radd(radd(zeta_pow_[2], zeta_pow_[1]), zeta_pow_[0]);
  if (unity != rzero()) throw internal_error("zeta^2 + zeta + 1 != 0 in the ramified ring");

  const std::uint32_t m = ctx.group_order();
  xi_pow_.reserve(m);
  xi_pow_.push_back(one());
  const UElem xi = teichmuller(ctx.generator());
  for (std::uint32_t e = 1; e < m; ++e) xi_pow_.push_back(mul(xi_pow_.back(), xi));
  if (mul(xi_pow_.back(), xi) != one())
    throw internal_error("teichmuller lift of the generator has wrong order");
}

UElem PadicRing::zero() const { return UElem{std::vector<std::int64_t>(ctx_->degree(), 0)}; }

UElem PadicRing::scalar(std::int64_t v) const {
  UElem e = zero();
  e.c[0] = floor_mod(v, pk_);
  return e;
}

UElem PadicRing::add(const UElem& a, const UElem& b) const {
  UElem r = zero();
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (a.c[i] + b.c[i]) % pk_;
  return r;
}

UElem PadicRing::sub(const UElem& a, const UElem& b) const {
  UElem r = zero();
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = floor_mod(a.c[i] - b.c[i], pk_);
  return r;
}

UElem PadicRing::neg(const UElem& a) const {
  UElem r = zero();
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = floor_mod(-a.c[i], pk_);
  return r;
}

UElem PadicRing::mul(const UElem& a, const UElem& b) const {
  const int n = ctx_->degree();
  std::vector<std::int64_t> buf(static_cast<std::size_t>(2 * n - 1), 0);
  for (int i = 0; i < n; ++i) {
    if (!a.c[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < n; ++j)
      buf[static_cast<std::size_t>(i + j)] =
          (buf[static_cast<std::size_t>(i + j)] + a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)]) % pk_;
  }
  for (int d = 2 * n - 2; d >= n; --d) {
    const std::int64_t c = buf[static_cast<std::size_t>(d)];
    buf[static_cast<std::size_t>(d)] = 0;
    if (!c) continue;
    for (int i = 0; i < n; ++i)
      buf[static_cast<std::size_t>(d - n + i)] =
          floor_mod(buf[static_cast<std::size_t>(d - n + i)] - c * modulus_[static_cast<std::size_t>(i)], pk_);
  }
  UElem r = zero();
  for (int i = 0; i < n; ++i) r.c[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(i)];
  return r;
}

UElem PadicRing::scale(const UElem& a, std::int64_t s) const {
  s = floor_mod(s, pk_);
  UElem r = zero();
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] * s % pk_;
  return r;
}

REl PadicRing::rmul(const REl& a, const REl& b) const {
  // (u1 + v1 pi)(u2 + v2 pi) = u1 u2 - 3 v1 v2 + (u1 v2 + v1 u2) pi
  return REl{sub(mul(a.u, b.u), scale(mul(a.v, b.v), 3)),
             add(mul(a.u, b.v), mul(a.v, b.u))};
}

REl PadicRing::pi() const { return REl{zero(), one()}; }

REl PadicRing::pi_power(int w) const {
  if (w < 0) throw std::invalid_argument("negative pi power");
  std::int64_t s = 1;
  for (int i = 0; i < w / 2; ++i) s = floor_mod(s * -3, pk_);
  if (w % 2 == 0) return from_scalar(s);
  return REl{zero(), scalar(s)};
}

const REl& PadicRing::zeta(int t) const { return zeta_pow_[((t % 3) + 3) % 3]; }

UElem PadicRing::teichmuller(Elem a) const {
  if (a.idx == 0) return zero();
  UElem x = zero();
  {
    std::uint32_t v = a.idx;
    for (std::size_t i = 0; i < x.c.size(); ++i) {
      x.c[i] = static_cast<std::int64_t>(v % 3);
      v /= 3;
    }
  }
  const int n = ctx_->degree();
  for (int round = 0; round <= k_; ++round) {
    UElem next = x;
    for (int f = 0; f < n; ++f) next = mul(next, mul(next, next));  // next^3
    if (next == x) return x;
    x = next;
  }
  throw internal_error("teichmuller iteration did not stabilise");
}

const UElem& PadicRing::xi_power(std::uint64_t e) const {
  return xi_pow_[e % xi_pow_.size()];
}

UElem PadicRing::reduce(const UElem& a, int j) const {
  if (j < 0 || j > k_) throw std::invalid_argument("reduction precision out of range");
  const std::int64_t pj = pow3ll(j);
  UElem r = a;
  for (auto& c : r.c) c %= pj;
  return r;
}

REl PadicRing::reduce(const REl& a, int j) const { return REl{reduce(a.u, j), reduce(a.v, j)}; }

int val3(const PadicRing& ring, const UElem& a) {
  int best = ring.precision();
  for (auto c : a.c) {
    if (!c) continue;
    int v = 0;
    while (c % 3 == 0) {
      c /= 3;
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

int val_pi(const PadicRing& ring, const REl& a) {
  return std::min(2 * val3(ring, a.u), 1 + 2 * val3(ring, a.v));
}

bool in_pi_ideal(const PadicRing& ring, const REl& a, int m) {
  if (m < 0) throw std::invalid_argument("negative ideal exponent");
  const int e = m / 2;
  const int need_u = m % 2 ? e + 1 : e;
  if (std::max(need_u, e) > ring.precision())
    throw std::invalid_argument("ideal membership at pi^" + std::to_string(m) +
                                " needs precision k >= " + std::to_string(std::max(need_u, e)));
  return val3(ring, a.u) >= need_u && val3(ring, a.v) >= e;
}

GaussSumRecord gauss_sum(const PadicRing& ring, std::uint32_t j) {
  const FieldContext& ctx = ring.field();
  const std::uint32_t m = ctx.group_order();
  if (j < 1 || j > m - 1)
    throw std::invalid_argument("gauss sum index must lie in [1, q-2]");

  // Scalar coordinates of zeta^t (both lie in Z_3).
  std::int64_t zu[3], zv[3];
  for (int t = 0; t < 3; ++t) {
    const REl& z = ring.zeta(t);
    zu[t] = z.u.c[0];
    zv[t] = z.v.c[0];
  }

  UElem au = ring.zero(), av = ring.zero();
  for (std::uint32_t l = 0; l < m; ++l) {
    const std::uint64_t e = (static_cast<std::uint64_t>(m) - (static_cast<std::uint64_t>(j) * l) % m) % m;
    const UElem& w = ring.xi_power(e);
    const int t = ctx.trace(ctx.antilog(l));
    if (zu[t]) au = ring.add(au, ring.scale(w, zu[t]));
    if (zv[t]) av = ring.add(av, ring.scale(w, zv[t]));
  }
  GaussSumRecord rec;
  rec.j = j;
  rec.weight = wt3(j);
  rec.value = REl{ring.neg(au), ring.neg(av)};
  return rec;
}

GaussSumSet::GaussSumSet(const PadicRing& ring) {
  const std::uint32_t m = ring.field().group_order();
  values_.reserve(m - 1);
  squares_.reserve(m - 1);
  for (std::uint32_t j = 1; j <= m - 1; ++j) {
    values_.push_back(gauss_sum(ring, j));
    squares_.push_back(ring.rmul(values_.back().value, values_.back().value));
  }
}

std::int64_t gamma3(std::int64_t m, int k) {
  if (m < 0) throw std::invalid_argument("gamma3 argument must be nonnegative");
  if (k < 1 || k > PadicRing::kPrecisionCap) throw std::invalid_argument("bad gamma3 precision");
  const std::int64_t pk = pow3ll(k);
  std::int64_t prod = 1;
  for (std::int64_t t = 1; t < m; ++t)
    if (t % 3) prod = prod * (t % pk) % pk;
  if (m % 2) prod = floor_mod(-prod, pk);
  return prod;
}

std::int64_t gamma3_fractional(std::int64_t s, std::int64_t denom, int k) {
  if (denom < 1 || s < 1 || s >= denom)
    throw std::invalid_argument("fractional gamma3 argument must satisfy 0 < s < denom");
  if (denom % 3 == 0) throw std::domain_error("fractional gamma3 denominator must be coprime to 3");
  const std::int64_t pk = pow3ll(k);
  std::int64_t y = s % pk * inv_mod(denom, pk) % pk;
  if (y == 0) y = pk;
  return gamma3(y, k);
}

bool gross_koblitz_check(const PadicRing& ring, const GaussSumSet& sums, std::uint32_t j) {
  const FieldContext& ctx = ring.field();
  const std::uint32_t m = ctx.group_order();
  if (j < 1 || j > m - 1) throw std::invalid_argument("index must lie in [1, q-2]");
  const std::int64_t pk = ring.precision_modulus();

  std::int64_t prod = 1;
  std::uint64_t rot = j;
  for (int i = 0; i < ctx.degree(); ++i) {
    prod = prod * gamma3_fractional(static_cast<std::int64_t>(rot), m, ring.precision()) % pk;
    rot = rot * 3 % m;
  }
  const REl rhs = ring.rscale(ring.pi_power(wt3(j)), prod);
  return sums.g(j) == rhs;
}

bool gross_koblitz_check(const PadicRing& ring, std::uint32_t j) {
  const FieldContext& ctx = ring.field();
  const std::uint32_t m = ctx.group_order();
  if (j < 1 || j > m - 1) throw std::invalid_argument("index must lie in [1, q-2]");
  const std::int64_t pk = ring.precision_modulus();
  std::int64_t prod = 1;
  std::uint64_t rot = j;
  for (int i = 0; i < ctx.degree(); ++i) {
    prod = prod * gamma3_fractional(static_cast<std::int64_t>(rot), m, ring.precision()) % pk;
    rot = rot * 3 % m;
  }
  const REl rhs = ring.rscale(ring.pi_power(wt3(j)), prod);
  return gauss_sum(ring, j).value == rhs;
}

namespace {

int stickelberger_required_k(int weight) { return (weight + 3) / 2; }

bool stickelberger_impl(const PadicRing& ring, const REl& g, std::uint32_t j) {
  const int w = wt3(j);
  if (ring.precision() < stickelberger_required_k(w))
    throw std::invalid_argument("stickelberger at weight " + std::to_string(w) +
                                " needs precision k >= " + std::to_string(stickelberger_required_k(w)));
  std::int64_t fact = 1;
  for (std::uint64_t d = j; d; d /= 3)
    if (d % 3 == 2) fact *= 2;  // digit factorials: 0! = 1! = 1, 2! = 2
  const REl lhs = ring.rsub(ring.rscale(g, fact), ring.pi_power(w));
  return in_pi_ideal(ring, lhs, w + 2);
}

}  // namespace

bool stickelberger_check(const PadicRing& ring, const GaussSumSet& sums, std::uint32_t j) {
  return stickelberger_impl(ring, sums.g(j), j);
}

bool stickelberger_check(const PadicRing& ring, std::uint32_t j) {
  return stickelberger_impl(ring, gauss_sum(ring, j).value, j);
}

namespace {

template <typename Pred>
CheckReport sweep_all_j(const PadicRing& ring, const char* name, Pred&& pred) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport r;
  r.check = name;
  r.n = ring.field().degree();
  r.k = ring.precision();
  const std::uint32_t m = ring.field().group_order();
  const GaussSumSet sums(ring);
  for (std::uint32_t j = 1; j <= m - 1; ++j) {
    ++r.total;
    if (!pred(sums, j)) {
      ++r.failures;
      if (!r.first_failing_j) r.first_failing_j = j;
    }
  }
  r.elapsed_ms = ms_since(start);
  return r;
}

}  // namespace

CheckReport valuation_check(const PadicRing& ring) {
  return sweep_all_j(ring, "valuation", [&](const GaussSumSet& sums, std::uint32_t j) {
    return val_pi(ring, sums.g(j)) == sums.record(j).weight;
  });
}

CheckReport stickelberger_sweep(const PadicRing& ring) {
  return sweep_all_j(ring, "stickelberger", [&](const GaussSumSet& sums, std::uint32_t j) {
    return stickelberger_check(ring, sums, j);
  });
}

CheckReport gross_koblitz_sweep(const PadicRing& ring) {
  return sweep_all_j(ring, "gross-koblitz", [&](const GaussSumSet& sums, std::uint32_t j) {
    return gross_koblitz_check(ring, sums, j);
  });
}

CheckReport wt1lem_check(const PadicRing& ring) {
  if (ring.precision() < 3)
    throw std::invalid_argument("square classification mod 27 needs precision k >= 3");
  return sweep_all_j(ring, "wt1lem", [&](const GaussSumSet& sums, std::uint32_t j) {
    const REl sq = ring.reduce(sums.g_squared(j), 3);
    const int w = sums.record(j).weight;
    std::int64_t expect = 0;
    if (w == 1) expect = 6;
    if (w == 2) expect = 9;
    REl want = ring.reduce(ring.from_scalar(expect), 3);
    return sq == want;
  });
}

bool fourier_congruence_check(const PadicRing& ring, const GaussSumSet& sums, Elem a,
                              int check_k, std::int64_t kloosterman_value) {
  const FieldContext& ctx = ring.field();
  const int n = ctx.degree();
  if (check_k < 1) throw std::invalid_argument("check precision must be at least 1");
  if (check_k > n)
    throw std::invalid_argument("the Fourier congruence only holds mod 3^n; k must satisfy k <= n");
  if (check_k > ring.precision())
    throw std::invalid_argument("ring precision too low for the requested check");

  const std::uint32_t m = ctx.group_order();
  REl rhs = ring.rzero();
  if (a.idx != 0) {
    const std::uint32_t la = ctx.log(a);
    for (std::uint32_t j = 1; j <= m - 1; ++j) {
      const UElem& w = ring.xi_power(static_cast<std::uint64_t>(j) * la);
      const REl& g2 = sums.g_squared(j);
      rhs = ring.radd(rhs, REl{ring.mul(g2.u, w), ring.mul(g2.v, w)});
    }
  }
  rhs = ring.rneg(rhs);
  const REl lhs = ring.from_scalar(kloosterman_value);
  if (ring.reduce(lhs, check_k) != ring.reduce(rhs, check_k)) return false;

  // Mod-27 hat form; needs the mod-27 regime, so n >= 3.
  if (n >= 3 && ring.precision() >= 3) {
    UElem wt1 = ring.zero(), wt2 = ring.zero();
    if (a.idx != 0) {
      const std::uint32_t la = ctx.log(a);
      for (std::uint32_t i = 1; i <= m - 1; ++i) {
        const int w = wt3(i);
        if (w == 1) wt1 = ring.add(wt1, ring.xi_power(static_cast<std::uint64_t>(i) * la));
        if (w == 2) wt2 = ring.add(wt2, ring.xi_power(static_cast<std::uint64_t>(i) * la));
      }
    }
    const UElem hat = ring.add(ring.scale(wt1, 21), ring.scale(wt2, 18));
    if (ring.reduce(ring.scalar(kloosterman_value), 3) != ring.reduce(hat, 3)) return false;
  }
  return true;
}

bool cong3_check(const PadicRing& ring) {
  const FieldContext& ctx = ring.field();
  const std::uint32_t m = ctx.group_order();
  UElem sum = ring.zero();
  for (const Elem z : ctx.trace_level_set(1))
    sum = ring.add(sum, ring.xi_power(m - ctx.log(z)));
  const UElem diff = ring.sub(sum, ring.one());
  return val3(ring, diff) >= 1;
}

}  // namespace tkl

#include "tkl/kloosterman.hpp"

#include <algorithm>
#include <set>

#include "tkl/eisenstein.hpp"
#include "tkl/errors.hpp"
#include "tkl/parallel.hpp"

namespace tkl {
namespace {

// e(x) = Tr(x^{q-2}); x^{q-2} is the inverse for x != 0 and 0 at x = 0.
std::uint8_t char_exponent(const FieldContext& ctx, Elem x) {
  return x.idx == 0 ? std::uint8_t{0} : ctx.trace(ctx.inv(x));
}

std::int64_t isqrt64(std::int64_t v) {
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::int64_t kloosterman_naive(const FieldContext& ctx, Elem a) {
  const std::uint32_t m = ctx.group_order();
  std::int64_t counts[3] = {1, 0, 0};  // x = 0 contributes zeta^0
  if (a.idx == 0) {
    for (std::uint32_t l = 0; l < m; ++l)
      ++counts[char_exponent(ctx, Elem{ctx.antilog(l).idx})];
  } else {
    const std::uint32_t la = ctx.log(a);
    for (std::uint32_t l = 0; l < m; ++l) {
      const Elem x = ctx.antilog(l);
      const int e = (char_exponent(ctx, x) + ctx.trace(ctx.antilog(la + l))) % 3;
      ++counts[e];
    }
  }
  if (counts[1] != counts[2])
    throw internal_error("character sum is not real: N1 != N2");
  return counts[0] - counts[1];
}

KloostermanTable kloosterman_all_naive(const FieldContext& ctx, int parallelism) {
  KloostermanTable t;
  t.n = ctx.degree();
  t.provenance = TableProvenance::naive;
  t.values.assign(ctx.order(), 0);
  parallel_chunks(ctx.order(), parallelism, [&](int, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t a = begin; a < end; ++a)
      t.values[a] = kloosterman_naive(ctx, Elem{static_cast<std::uint32_t>(a)});
  });
  return t;
}

KloostermanTable kloosterman_all_fast(const FieldContext& ctx) {
  const int n = ctx.degree();
  const std::uint32_t q = ctx.order();

  std::vector<EisensteinInt> f(q);
  for (std::uint32_t x = 0; x < q; ++x) f[x] = zeta_power(char_exponent(ctx, Elem{x}));

  // One 3-point transform along every dimension of (Z/3)^n.
  std::uint64_t butterflies = 0;
  std::uint32_t stride = 1;
  for (int dim = 0; dim < n; ++dim, stride *= 3) {
    for (std::uint32_t block = 0; block < q; block += 3 * stride) {
      for (std::uint32_t t = 0; t < stride; ++t) {
        EisensteinInt& x0 = f[block + t];
        EisensteinInt& x1 = f[block + t + stride];
        EisensteinInt& x2 = f[block + t + 2 * stride];
        EisensteinInt y0 = x0 + x1 + x2;
        EisensteinInt y1 = x0 + x1.times_zeta() + x2.times_zeta_sq();
        EisensteinInt y2 = x0 + x1.times_zeta_sq() + x2.times_zeta();
        x0 = std::move(y0);
        x1 = std::move(y1);
        x2 = std::move(y2);
        ++butterflies;
      }
    }
  }

  // Gram matrix of the trace form in the power basis pairs transform
  // frequencies with character indices: K(a) = F[G*a].
  std::vector<std::uint8_t> gram(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    std::uint32_t bi = 1;
    for (int k = 0; k < i; ++k) bi *= 3;
    for (int j = 0; j < n; ++j) {
      std::uint32_t bj = 1;
      for (int k = 0; k < j; ++k) bj *= 3;
      gram[static_cast<std::size_t>(i) * n + j] = ctx.trace(ctx.mul(Elem{bi}, Elem{bj}));
    }
  }

  KloostermanTable t;
  t.n = n;
  t.provenance = TableProvenance::fast;
  t.butterflies = butterflies;
  t.values.assign(q, 0);
  std::vector<bool> hit(q, false);
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(n));
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t v = a;
    for (int i = 0; i < n; ++i) {
      digits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v % 3);
      v /= 3;
    }
    std::uint32_t freq = 0;
    std::uint32_t place = 1;
    for (int j = 0; j < n; ++j, place *= 3) {
      int kj = 0;
      for (int i = 0; i < n; ++i)
        kj += gram[static_cast<std::size_t>(j) * n + i] * digits[static_cast<std::size_t>(i)];
      freq += static_cast<std::uint32_t>(kj % 3) * place;
    }
    if (hit[freq]) throw internal_error("trace-form pairing is not a bijection");
    hit[freq] = true;
    const EisensteinInt& val = f[freq];
    if (!val.is_rational()) throw internal_error("transform output has a nonzero zeta component");
    t.values[a] = val.u.convert_to<std::int64_t>();
  }
  return t;
}

ValueCoverage value_coverage(const KloostermanTable& table) {
  ValueCoverage c;
  c.n = table.n;
  std::int64_t q = 1;
  for (int i = 0; i < table.n; ++i) q *= 3;
  c.bound = isqrt64(4 * q);

  std::set<std::int64_t> attained(table.values.begin(), table.values.end());
  c.attained.assign(attained.begin(), attained.end());

  c.within_closed_bound = true;
  for (std::uint32_t a = 0; a < table.values.size(); ++a) {
    const std::int64_t k = table.values[a];
    if (k * k > 4 * q) c.within_closed_bound = false;
    if (k * k == 4 * q) c.bound_exceptions.push_back(a);
  }

  c.open_range_fully_attained = true;
  for (std::int64_t v = -(c.bound / 3) * 3; v <= c.bound; v += 3) {
    if (!attained.count(v)) c.missing.push_back(v);
    if (v * v < 4 * q && !attained.count(v)) c.open_range_fully_attained = false;
  }
  return c;
}

}  // namespace tkl

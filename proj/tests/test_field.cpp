#include "tkl/field.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"

namespace {

using tkl::Elem;
using tkl::FieldContext;

// Independent polynomial arithmetic over F_3, used as an oracle for the
// table-driven context. Little-endian coefficient vectors, no shared code
// with the library beyond the element encoding.
using Poly = std::vector<int>;

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus) {
  const int n = static_cast<int>(modulus.size()) - 1;  // monic, full vector
  std::vector<int> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % 3;
  // modulus is monic of degree n; fold top terms down.
  for (int d = static_cast<int>(prod.size()) - 1; d >= n; --d) {
    const int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (int i = 0; i < n; ++i) prod[d - n + i] = (prod[d - n + i] + c * (3 - modulus[i])) % 3;
  }
  prod.resize(n);
  return prod;
}

Poly coeffs_of(const FieldContext& ctx, Elem a) {
  Poly out;
  for (std::uint8_t c : ctx.coeffs(a)) out.push_back(c);
  return out;
}

Elem from_poly(const FieldContext& ctx, const Poly& p) {
  std::vector<std::uint8_t> c;
  for (int v : p) c.push_back(static_cast<std::uint8_t>(v));
  return ctx.from_coeffs(c);
}

// Brute-force irreducibility over F_3: a monic degree-n polynomial is
// reducible iff some monic factor of degree 1..n/2 divides it exactly.
bool divides(const Poly& divisor, Poly rem) {
  const int dd = static_cast<int>(divisor.size()) - 1;
  for (int d = static_cast<int>(rem.size()) - 1; d >= dd; --d) {
    const int c = rem[d];
    if (c == 0) continue;
    for (int i = 0; i <= dd; ++i) rem[d - dd + i] = (rem[d - dd + i] + c * (3 - divisor[i])) % 3;
  }
  return std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; });
}

bool brute_irreducible(const Poly& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  for (int d = 1; 2 * d <= n; ++d) {
    std::uint32_t count = 1;
    for (int i = 0; i < d; ++i) count *= 3;
    for (std::uint32_t packed = 0; packed < count; ++packed) {
      Poly f(d + 1, 0);
      std::uint32_t v = packed;
      for (int i = 0; i < d; ++i, v /= 3) f[i] = static_cast<int>(v % 3);
      f[d] = 1;
      if (divides(f, monic)) return false;
    }
  }
  return true;
}

Poly full_modulus(const FieldContext& ctx) {
  Poly m;
  for (std::uint8_t c : ctx.modulus()) m.push_back(c);
  m.push_back(1);
  return m;
}

}  // namespace

TEST_CASE("default moduli are the packed-smallest irreducibles") {
  // Independent search: first monic degree-n polynomial, in packed coefficient
  // order, that survives the brute-force divisibility test.
  for (int n = 1; n <= 6; ++n) {
    std::uint32_t count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    Poly expected;
    for (std::uint32_t packed = 0; packed < count; ++packed) {
      Poly m(n + 1, 0);
      std::uint32_t v = packed;
      for (int i = 0; i < n; ++i, v /= 3) m[i] = static_cast<int>(v % 3);
      m[n] = 1;
      if (brute_irreducible(m)) {
        expected = m;
        break;
      }
    }
    REQUIRE_FALSE(expected.empty());
    const auto ctx = FieldContext::build(n);
    Poly got = full_modulus(ctx);
    CAPTURE(n);
    CHECK(got == expected);
  }
}

TEST_CASE("pinned moduli and generators for small degrees") {
  const auto f9 = FieldContext::build(2);
  CHECK(f9.modulus() == std::vector<std::uint8_t>{1, 0});  // x^2 + 1
  CHECK(f9.generator().idx == 4);                          // 1 + x

  const auto f27 = FieldContext::build(3);
  CHECK(f27.modulus() == std::vector<std::uint8_t>{1, 2, 0});  // x^3 + 2x + 1
  CHECK(f27.generator().idx == 3);                             // x

  const auto f3 = FieldContext::build(1);
  CHECK(f3.order() == 3);
  CHECK(f3.generator().idx == 2);
}

TEST_CASE("mul matches independent polynomial arithmetic") {
  for (int n : {2, 3, 4}) {
    const auto ctx = FieldContext::build(n);
    const Poly m = full_modulus(ctx);
    for (std::uint32_t a = 0; a < ctx.order(); ++a) {
      for (std::uint32_t b = a; b < ctx.order(); ++b) {
        const Elem ea{a}, eb{b};
        const Elem got = ctx.mul(ea, eb);
        const Elem want = from_poly(ctx, poly_mul_mod(coeffs_of(ctx, ea), coeffs_of(ctx, eb), m));
        REQUIRE(got == want);
        REQUIRE(ctx.mul(eb, ea) == got);
      }
    }
  }
}

TEST_CASE("additive structure") {
  const auto ctx = FieldContext::build(3);
  for (std::uint32_t a = 0; a < ctx.order(); ++a) {
    const Elem ea{a};
    CHECK(ctx.add(ea, ctx.zero()) == ea);
    CHECK(ctx.add(ea, ctx.neg(ea)) == ctx.zero());
    CHECK(ctx.sub(ea, ea) == ctx.zero());
    // characteristic 3
    CHECK(ctx.add(ctx.add(ea, ea), ea) == ctx.zero());
    for (std::uint32_t b = 0; b < ctx.order(); ++b) {
      const Elem eb{b};
      CHECK(ctx.add(ea, eb) == ctx.add(eb, ea));
    }
  }
}

TEST_CASE("inverses") {
  const auto f9 = FieldContext::build(2);
  CHECK(f9.inv(Elem{4}) == Elem{5});  // (1+x)(2+x) = 2 + 3x + x^2 = 1
  CHECK_THROWS_AS((void)f9.inv(f9.zero()), std::domain_error);
  for (int n : {1, 2, 3, 4}) {
    const auto ctx = FieldContext::build(n);
    for (std::uint32_t a = 1; a < ctx.order(); ++a)
      CHECK(ctx.mul(Elem{a}, ctx.inv(Elem{a})) == ctx.one());
  }
}

TEST_CASE("pow edge cases and consistency") {
  const auto ctx = FieldContext::build(3);
  CHECK(ctx.pow(ctx.zero(), 0) == ctx.one());
  CHECK(ctx.pow(ctx.zero(), 5) == ctx.zero());
  CHECK_THROWS_AS((void)ctx.pow(ctx.zero(), -1), std::domain_error);
  for (std::uint32_t a = 1; a < ctx.order(); ++a) {
    const Elem ea{a};
    CHECK(ctx.pow(ea, -1) == ctx.inv(ea));
    CHECK(ctx.pow(ea, static_cast<long long>(ctx.group_order())) == ctx.one());
    // repeated-multiplication oracle
    Elem acc = ctx.one();
    for (int e = 0; e <= 30; ++e) {
      CHECK(ctx.pow(ea, e) == acc);
      acc = ctx.mul(acc, ea);
    }
  }
  // x^{q-2} is the inverse map used by the character sum
  for (std::uint32_t a = 1; a < ctx.order(); ++a)
    CHECK(ctx.pow(Elem{a}, static_cast<long long>(ctx.order()) - 2) == ctx.inv(Elem{a}));
}

TEST_CASE("log and antilog are inverse bijections") {
  for (int n : {2, 3, 5}) {
    const auto ctx = FieldContext::build(n);
    CHECK(ctx.log(ctx.one()) == 0);
    std::set<std::uint32_t> seen;
    for (std::uint32_t e = 0; e < ctx.group_order(); ++e) {
      const Elem a = ctx.antilog(e);
      CHECK(ctx.log(a) == e);
      seen.insert(a.idx);
    }
    CHECK(seen.size() == ctx.group_order());
    CHECK(ctx.antilog(ctx.group_order()) == ctx.one());  // exponent reduced
    CHECK_THROWS_AS((void)ctx.log(ctx.zero()), std::domain_error);
  }
}

TEST_CASE("trace is the Frobenius orbit sum and fibers have size q/3") {
  for (int n : {1, 2, 3, 4, 5}) {
    const auto ctx = FieldContext::build(n);
    for (std::uint32_t a = 0; a < ctx.order(); ++a) {
      const Elem ea{a};
      // oracle: sum of a^{3^i} via pow, landing in the prime subfield
      Elem s = ctx.zero();
      long long e = 1;
      for (int i = 0; i < n; ++i, e *= 3) s = ctx.add(s, ctx.pow(ea, e));
      REQUIRE(s.idx <= 2);
      REQUIRE(ctx.trace(ea) == s.idx);
    }
    for (std::uint8_t r = 0; r < 3; ++r) {
      const auto fiber = ctx.trace_level_set(r);
      CHECK(fiber.size() == ctx.order() / 3);
      for (Elem a : fiber) CHECK(ctx.trace(a) == r);
    }
    // linearity
    for (std::uint32_t a = 0; a < ctx.order(); ++a)
      for (std::uint32_t b = 0; b < std::min<std::uint32_t>(ctx.order(), 32); ++b)
        CHECK(ctx.trace(ctx.add(Elem{a}, Elem{b})) ==
              (ctx.trace(Elem{a}) + ctx.trace(Elem{b})) % 3);
  }
}

TEST_CASE("squares by enumeration") {
  for (int n : {2, 3, 4}) {
    const auto ctx = FieldContext::build(n);
    std::set<std::uint32_t> squares;
    for (std::uint32_t b = 0; b < ctx.order(); ++b) squares.insert(ctx.mul(Elem{b}, Elem{b}).idx);
    for (std::uint32_t a = 0; a < ctx.order(); ++a) {
      const bool want = squares.count(a) != 0;
      CHECK(ctx.is_square(Elem{a}) == want);
      if (want) {
        const Elem r = ctx.sqrt(Elem{a});
        CHECK(ctx.mul(r, r) == Elem{a});
      } else {
        CHECK_THROWS_AS((void)ctx.sqrt(Elem{a}), std::domain_error);
      }
    }
    // exactly (q-1)/2 nonzero squares
    CHECK(squares.size() == ctx.group_order() / 2 + 1);
  }
}

TEST_CASE("format and parse round-trip") {
  const auto ctx = FieldContext::build(3);
  CHECK(ctx.format(Elem{7}) == "1,2,0");
  for (std::uint32_t a = 0; a < ctx.order(); ++a) {
    CHECK(ctx.parse(ctx.format(Elem{a})) == Elem{a});
    CHECK(ctx.parse(std::to_string(a)) == Elem{a});  // packed form
  }
  CHECK_THROWS_AS((void)ctx.parse("1,2"), std::invalid_argument);
  CHECK_THROWS_AS((void)ctx.parse("3,0,0"), std::invalid_argument);
  CHECK_THROWS_AS((void)ctx.parse("27"), std::invalid_argument);
  CHECK_THROWS_AS((void)ctx.element(27), std::invalid_argument);

  const auto f3 = FieldContext::build(1);
  CHECK(f3.parse("2") == Elem{2});
  CHECK(f3.format(Elem{2}) == "2");
}

TEST_CASE("modulus override") {
  // x^3 + 2x^2 + 1 is irreducible (no roots in F_3), packed coeffs {1,0,2}.
  const auto alt = FieldContext::build(3, std::vector<std::uint8_t>{1, 0, 2});
  CHECK(alt.modulus() == std::vector<std::uint8_t>{1, 0, 2});
  CHECK(alt.order() == 27);
  for (std::uint32_t a = 1; a < alt.order(); ++a)
    CHECK(alt.mul(Elem{a}, alt.inv(Elem{a})) == alt.one());

  // x^2 + 2x + 1 = (x+1)^2 is reducible; the error names a factor degree.
  CHECK_THROWS_WITH_AS((void)FieldContext::build(2, std::vector<std::uint8_t>{1, 2}),
                       doctest::Contains("degree 1"), std::invalid_argument);
  CHECK_THROWS_AS((void)FieldContext::build(2, std::vector<std::uint8_t>{1, 0, 0}),
                  std::invalid_argument);  // wrong length
  CHECK_THROWS_AS((void)FieldContext::build(2, std::vector<std::uint8_t>{5, 0}),
                  std::invalid_argument);  // coefficient out of range
}

TEST_CASE("degree cap") {
  CHECK_THROWS_AS((void)FieldContext::build(11), std::invalid_argument);
  CHECK_THROWS_AS((void)FieldContext::build(0), std::invalid_argument);
  CHECK_NOTHROW((void)FieldContext::build(11, std::nullopt, 11));
}

#include "tkl/kloosterman.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "tkl/field.hpp"

namespace {

using tkl::Elem;
using tkl::FieldContext;
using tkl::KloostermanTable;
using tkl::TableProvenance;

std::vector<std::int64_t> sorted_copy(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("GF(9) table matches the hand computation") {
  // Worked out from the exponential sum with zeta a cube root of unity,
  // modulus x^2 + 1: packed order 0..8.
  const std::vector<std::int64_t> expected = {0, 6, 3, 0, -3, 3, 0, -3, 3};
  const auto ctx = FieldContext::build(2);
  const auto naive = kloosterman_all_naive(ctx);
  const auto fast = kloosterman_all_fast(ctx);
  CHECK(naive.values == expected);
  CHECK(fast.values == expected);
  CHECK(naive.provenance == TableProvenance::naive);
  CHECK(fast.provenance == TableProvenance::fast);
  CHECK(fast.butterflies == 2 * 3);
}

TEST_CASE("GF(3) table matches the hand computation") {
  // Inverse map is the identity on F_3. K(1) sums zeta^{2x} over x: 0.
  // K(2) sums zeta^{3x} = 1 three times: 3.
  const auto ctx = FieldContext::build(1);
  const auto fast = kloosterman_all_fast(ctx);
  CHECK(fast.values == std::vector<std::int64_t>{0, 0, 3});
  CHECK(kloosterman_all_naive(ctx).values == fast.values);
}

TEST_CASE("single-point naive agrees with the table") {
  const auto ctx = FieldContext::build(3);
  const auto table = kloosterman_all_naive(ctx);
  for (std::uint32_t a = 0; a < ctx.order(); ++a)
    CHECK(kloosterman_naive(ctx, Elem{a}) == table.values[a]);
}

TEST_CASE("fast transform equals the naive sum") {
  for (int n = 1; n <= 4; ++n) {
    const auto ctx = FieldContext::build(n);
    const auto naive = kloosterman_all_naive(ctx);
    const auto fast = kloosterman_all_fast(ctx);
    CAPTURE(n);
    REQUIRE(naive.values == fast.values);
    CHECK(fast.butterflies == static_cast<std::uint64_t>(n) * ctx.order() / 3);
  }
}

TEST_CASE("global table invariants") {
  for (int n = 1; n <= 5; ++n) {
    const auto ctx = FieldContext::build(n);
    const auto table = kloosterman_all_fast(ctx);
    CAPTURE(n);
    CHECK(table.values[0] == 0);
    // total mass: sum over a of K(a) is q
    const std::int64_t mass = std::accumulate(table.values.begin(), table.values.end(), std::int64_t{0});
    CHECK(mass == static_cast<std::int64_t>(ctx.order()));
    for (std::uint32_t a = 0; a < ctx.order(); ++a) {
      CHECK(table.values[a] % 3 == 0);
      // Frobenius invariance K(a^3) = K(a)
      const Elem ea{a};
      const Elem cube = ctx.mul(ctx.mul(ea, ea), ea);
      CHECK(table.values[cube.idx] == table.values[a]);
    }
  }
}

TEST_CASE("parallel naive sweep is deterministic") {
  const auto ctx = FieldContext::build(4);
  const auto serial = kloosterman_all_naive(ctx, 1);
  const auto wide = kloosterman_all_naive(ctx, 7);
  const auto silly = kloosterman_all_naive(ctx, 1000);  // more workers than work
  CHECK(serial.values == wide.values);
  CHECK(serial.values == silly.values);
}

TEST_CASE("table values do not depend on the modulus choice") {
  // Different irreducible modulus gives an isomorphic field: the multiset of
  // Kloosterman values is a field invariant.
  const auto def = FieldContext::build(3);
  const auto alt = FieldContext::build(3, std::vector<std::uint8_t>{1, 0, 2});
  REQUIRE(def.modulus() != alt.modulus());
  const auto tdef = kloosterman_all_fast(def);
  const auto talt = kloosterman_all_fast(alt);
  CHECK(sorted_copy(tdef.values) == sorted_copy(talt.values));
  // and the naive path agrees on the alternative modulus too
  CHECK(kloosterman_all_naive(alt).values == talt.values);
}

TEST_CASE("value coverage at GF(9)") {
  const auto ctx = FieldContext::build(2);
  const auto cov = value_coverage(kloosterman_all_fast(ctx));
  CHECK(cov.n == 2);
  CHECK(cov.bound == 6);  // floor(2 sqrt 9)
  CHECK(cov.attained == std::vector<std::int64_t>{-3, 0, 3, 6});
  CHECK(cov.missing == std::vector<std::int64_t>{-6});
  CHECK(cov.bound_exceptions == std::vector<std::uint32_t>{1});  // K(1) = 6, 36 = 4q
  CHECK(cov.within_closed_bound);
  CHECK(cov.open_range_fully_attained);  // -3, 0, 3 all hit
}

TEST_CASE("value coverage bound arithmetic") {
  for (int n = 1; n <= 6; ++n) {
    const auto ctx = FieldContext::build(n);
    const auto cov = value_coverage(kloosterman_all_fast(ctx));
    CAPTURE(n);
    // floor(2 sqrt q) recomputed by integer search
    std::int64_t b = 0;
    while ((b + 1) * (b + 1) <= 4ll * ctx.order()) ++b;
    CHECK(cov.bound == b);
    CHECK(cov.within_closed_bound);
    for (std::uint32_t a : cov.bound_exceptions) {
      const std::int64_t k = kloosterman_naive(ctx, Elem{a});
      CHECK(k * k == 4ll * ctx.order());
    }
    // attained and missing partition the multiples of 3 in [-bound, bound]
    std::vector<std::int64_t> merged;
    merged.insert(merged.end(), cov.attained.begin(), cov.attained.end());
    merged.insert(merged.end(), cov.missing.begin(), cov.missing.end());
    std::sort(merged.begin(), merged.end());
    std::vector<std::int64_t> expected;
    for (std::int64_t m = -(b - b % 3); m <= b; m += 3) expected.push_back(m);
    CHECK(merged == expected);
  }
}

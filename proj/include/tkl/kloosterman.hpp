#pragma once

#include <cstdint>
#include <vector>

#include "tkl/field.hpp"

namespace tkl {

// K(a) = sum over x in GF(q) of zeta^Tr(x^{q-2} + a*x). Rational integers,
// always divisible by 3, bounded by 2*sqrt(q) in absolute value.

enum class TableProvenance { naive, fast };

struct KloostermanTable {
  int n = 0;
  TableProvenance provenance = TableProvenance::naive;
  std::vector<std::int64_t> values;     // indexed by packed element
  std::uint64_t butterflies = 0;        // fast path only: n * 3^{n-1}
};

// Direct character-sum evaluation for a single a. Checks internally that the
// zeta and zeta^2 term counts agree (the sum is real) and returns N0 - N1.
std::int64_t kloosterman_naive(const FieldContext& ctx, Elem a);

// Full table via per-element naive sums. parallelism < 1 means auto.
KloostermanTable kloosterman_all_naive(const FieldContext& ctx, int parallelism = 1);

// Full table via the radix-3 decimation transform over the coefficient
// basis, computed in exact Eisenstein arithmetic. Output indices are matched
// to characters through the Gram matrix of the trace form, and every output
// is checked to be rational before conversion.
KloostermanTable kloosterman_all_fast(const FieldContext& ctx);

struct ValueCoverage {
  int n = 0;
  std::int64_t bound = 0;                    // floor(2*sqrt(q))
  std::vector<std::int64_t> attained;        // distinct values, sorted
  std::vector<std::int64_t> missing;         // multiples of 3 in [-bound, bound] not attained
  std::vector<std::uint32_t> bound_exceptions;  // packed a with K(a)^2 = 4q
  bool within_closed_bound = false;          // K(a)^2 <= 4q for all a
  bool open_range_fully_attained = false;    // every multiple of 3 with m^2 < 4q attained
};

ValueCoverage value_coverage(const KloostermanTable& table);

}  // namespace tkl

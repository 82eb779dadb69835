#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tkl/field.hpp"
#include "tkl/kloosterman.hpp"
#include "tkl/traces.hpp"

namespace tkl {

// Trace-based residue predictions for K(a) and exhaustive verification
// sweeps against computed tables. Residues are canonical: ((K % m) + m) % m.

// K(a) mod 9 = 3*Tr(a), valid for n >= 2.
int predict_mod9(std::uint8_t tr);

// K(a) is even iff a = 0, or a is a square whose root has nonzero trace.
int predict_mod2(const FieldContext& ctx, Elem a);

// Valid for n >= 3. Evaluates three equivalent forms (two polynomial
// routes and a nine-case table) and insists they agree.
int predict_mod27(const TraceProfile& p);

// CRT of the mod-9 and mod-2 rules, n >= 2, a != 0 (throws std::domain_error
// at 0). Cross-checked against the direct six-row table.
int predict_mod18(const FieldContext& ctx, const TraceTables& tables, Elem a);

// CRT of the mod-27 and mod-2 rules, n >= 3.
int predict_mod54(const FieldContext& ctx, const TraceTables& tables, Elem a);

struct Counterexample {
  std::uint32_t index = 0;
  std::string coeffs;
  std::int64_t predicted = 0;
  std::int64_t actual = 0;
};

struct VerifyReport {
  int n = 0;
  int modulus = 0;
  std::uint64_t total = 0;
  std::uint64_t mismatches = 0;
  std::optional<Counterexample> first_counterexample;
  double elapsed_ms = 0.0;
};

// modulus in {2, 9, 18, 27, 54}. Throws std::invalid_argument when the rule
// does not apply at this degree (9/18 need n >= 2, 27/54 need n >= 3).
// mod 18 skips a = 0. The mod-9 sweep also checks that 9 | K(a) exactly
// when Tr(a) = 0. The counterexample with the smallest packed index wins
// regardless of parallelism.
VerifyReport verify_sweep(const FieldContext& ctx, const TraceTables& tables, int modulus,
                          const KloostermanTable& table, int parallelism = 1);

}  // namespace tkl

#include "tkl/congruence.hpp"

#include <chrono>
#include <stdexcept>
#include <vector>

#include "tkl/errors.hpp"
#include "tkl/parallel.hpp"

namespace tkl {
namespace {

std::int64_t canon(std::int64_t k, std::int64_t m) { return ((k % m) + m) % m; }

int mod27_table(const TraceProfile& p) {
  const int x = p.tau_x, y = p.tau_y;
  switch (p.tr) {
    case 0:
      switch ((y + 2 * x) % 3) {
        case 0: return 0;
        case 1: return 9;
        default: return 18;
      }
    case 1:
      switch (y) {
        case 2: return 3;
        case 0: return 12;
        default: return 21;
      }
    default:
      switch ((y + x) % 3) {
        case 2: return 6;
        case 0: return 15;
        default: return 24;
      }
  }
}

}  // namespace

int predict_mod9(std::uint8_t tr) {
  if (tr > 2) throw std::invalid_argument("trace value must lie in {0,1,2}");
  return 3 * tr;
}

int predict_mod2(const FieldContext& ctx, Elem a) {
  if (a.idx == 0) return 0;
  if (!ctx.is_square(a)) return 1;
  return ctx.trace(ctx.sqrt(a)) != 0 ? 0 : 1;
}

int predict_mod27(const TraceProfile& p) {
  const int t = p.tr, x = p.tau_x, y = p.tau_y, z = p.tau_z;
  const int poly = canon(21 * t * t * t + 18 * t + 18 * x + 9 * t * x + 9 * y, 27);
  const int field_sums = canon(21 * t * t * t + 18 * z + 9 * y + 18 * x, 27);
  const int table = mod27_table(p);
  if (poly != field_sums || poly != table)
    throw internal_error("mod-27 routes disagree: poly=" + std::to_string(poly) +
                         " field_sums=" + std::to_string(field_sums) +
                         " table=" + std::to_string(table));
  return poly;
}

int predict_mod18(const FieldContext& ctx, const TraceTables& tables, Elem a) {
  if (a.idx == 0) throw std::domain_error("mod-18 rule excludes a = 0");
  const int r9 = predict_mod9(tables.tr(a));
  const int r2 = predict_mod2(ctx, a);
  const int crt = (r9 % 2 == r2) ? r9 : r9 + 9;

  // Direct six-row table: rows pair each trace value with the parity rule.
  const bool even = r2 == 0;
  int direct;
  switch (tables.tr(a)) {
    case 0: direct = even ? 0 : 9; break;
    case 1: direct = even ? 12 : 3; break;
    default: direct = even ? 6 : 15; break;
  }
  if (direct != crt) throw internal_error("mod-18 CRT and table rows disagree");
  return crt;
}

int predict_mod54(const FieldContext& ctx, const TraceTables& tables, Elem a) {
  const int r27 = predict_mod27(tables.profile(a));
  const int r2 = predict_mod2(ctx, a);
  return (r27 % 2 == r2) ? r27 : r27 + 27;
}

VerifyReport verify_sweep(const FieldContext& ctx, const TraceTables& tables, int modulus,
                          const KloostermanTable& table, int parallelism) {
  const int n = ctx.degree();
  switch (modulus) {
    case 2:
      break;
    case 9:
    case 18:
      if (n < 2)
        throw std::invalid_argument("mod-" + std::to_string(modulus) + " verification requires n >= 2");
      break;
    case 27:
    case 54:
      if (n < 3)
        throw std::invalid_argument("mod-" + std::to_string(modulus) + " verification requires n >= 3");
      break;
    default:
      throw std::invalid_argument("modulus must be one of 2, 9, 18, 27, 54");
  }
  if (table.values.size() != ctx.order() || table.n != n)
    throw std::invalid_argument("table does not match the field");

  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.n = n;
  report.modulus = modulus;

  struct Partial {
    std::uint64_t total = 0, mismatches = 0;
    std::optional<Counterexample> first;
  };
  const int degree = parallelism < 1 ? default_parallelism() : parallelism;
  std::vector<Partial> parts(static_cast<std::size_t>(std::max(degree, 1)));

  parallel_chunks(ctx.order(), degree, [&](int w, std::uint64_t begin, std::uint64_t end) {
    Partial& part = parts[static_cast<std::size_t>(w)];
    for (std::uint64_t i = begin; i < end; ++i) {
      const Elem a{static_cast<std::uint32_t>(i)};
      if (modulus == 18 && a.idx == 0) continue;
      std::int64_t predicted;
      switch (modulus) {
        case 2: predicted = predict_mod2(ctx, a); break;
        case 9: predicted = predict_mod9(tables.tr(a)); break;
        case 18: predicted = predict_mod18(ctx, tables, a); break;
        case 27: predicted = predict_mod27(tables.profile(a)); break;
        default: predicted = predict_mod54(ctx, tables, a); break;
      }
      const std::int64_t k = table.values[a.idx];
      const std::int64_t actual = canon(k, modulus);
      bool ok = actual == predicted;
      if (modulus == 9 && ok) ok = (canon(k, 9) == 0) == (tables.tr(a) == 0);
      ++part.total;
      if (!ok) {
        ++part.mismatches;
        if (!part.first)
          part.first = Counterexample{a.idx, ctx.format(a), predicted, actual};
      }
    }
  });

  for (const auto& part : parts) {
    report.total += part.total;
    report.mismatches += part.mismatches;
    if (part.first && (!report.first_counterexample ||
                       part.first->index < report.first_counterexample->index))
      report.first_counterexample = part.first;
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tkl

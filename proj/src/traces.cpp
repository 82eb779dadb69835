#include "tkl/traces.hpp"

#include <algorithm>
#include <stdexcept>

#include "tkl/errors.hpp"

namespace tkl {
namespace {

std::uint64_t pow3u(int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

void sort_unique(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void check_closed(const std::vector<std::uint32_t>& s, std::uint32_t m, const char* name) {
  for (auto r : s) {
    const std::uint32_t rotated = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r) * 3) % m);
    if (!std::binary_search(s.begin(), s.end(), rotated))
      throw internal_error(std::string("index set ") + name + " is not closed under *3");
  }
}

}  // namespace

IndexSetFamily build_index_sets(int n) {
  if (n < 1) throw std::invalid_argument("field degree must be at least 1");
  IndexSetFamily f;
  const std::uint64_t q = pow3u(n);
  f.q_minus_1 = static_cast<std::uint32_t>(q - 1);
  const std::uint64_t m = q - 1;

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      f.x.push_back(static_cast<std::uint32_t>((pow3u(i) + pow3u(j)) % m));

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const std::uint64_t raw = pow3u(i) + pow3u(j) + pow3u(k);
        if (n >= 3 && raw >= m) throw internal_error("unexpected reduction in index set y");
        f.y.push_back(static_cast<std::uint32_t>(raw % m));
      }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::uint64_t raw = 2 * pow3u(i) + pow3u(j);
      if (n >= 3 && raw >= m) throw internal_error("unexpected reduction in index set z");
      f.z.push_back(static_cast<std::uint32_t>(raw % m));
    }

  sort_unique(f.x);
  sort_unique(f.y);
  sort_unique(f.z);
  check_closed(f.x, f.q_minus_1, "x");
  check_closed(f.y, f.q_minus_1, "y");
  check_closed(f.z, f.q_minus_1, "z");
  return f;
}

int wt3(std::uint64_t v) {
  int w = 0;
  while (v) {
    w += static_cast<int>(v % 3);
    v /= 3;
  }
  return w;
}

std::uint8_t tau(const FieldContext& ctx, std::span<const std::uint32_t> exponents, Elem a) {
  const std::uint32_t m = ctx.group_order();
  std::vector<std::uint32_t> s(exponents.begin(), exponents.end());
  std::sort(s.begin(), s.end());
  for (auto r : s) {
    if (r >= m) throw std::invalid_argument("exponent residue out of range [0, q-2]");
    const std::uint32_t rotated = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r) * 3) % m);
    if (!std::binary_search(s.begin(), s.end(), rotated))
      throw std::domain_error("exponent set is not closed under *3 mod q-1; the sum would not lie in F_3");
  }

  Elem acc = ctx.zero();
  for (auto r : s) acc = ctx.add(acc, ctx.pow(a, r));
  if (acc.idx > 2) throw internal_error("tau value escaped the prime field");
  return static_cast<std::uint8_t>(acc.idx);
}

TraceTables TraceTables::build(const FieldContext& ctx) {
  TraceTables t;
  t.sets_ = build_index_sets(ctx.degree());
  const std::uint32_t q = ctx.order();
  const std::uint32_t m = ctx.group_order();

  t.tr_.assign(q, 0);
  t.tau_x_.assign(q, 0);
  t.tau_y_.assign(q, 0);
  t.tau_z_.assign(q, 0);

  auto fill = [&](const std::vector<std::uint32_t>& s, std::vector<std::uint8_t>& out) {
    // a = 0: every positive exponent contributes 0, exponent 0 contributes 1.
    {
      std::uint32_t zero_terms = 0;
      for (auto r : s)
        if (r == 0) ++zero_terms;
      out[0] = static_cast<std::uint8_t>(zero_terms % 3);
    }
    for (std::uint32_t l = 0; l < m; ++l) {
      const std::uint32_t a = ctx.antilog(l).idx;
      Elem acc = ctx.zero();
      for (auto r : s)
        acc = ctx.add(acc, ctx.antilog(static_cast<std::uint64_t>(l) * r));
      if (acc.idx > 2) throw internal_error("tau table value escaped the prime field");
      out[a] = static_cast<std::uint8_t>(acc.idx);
    }
  };
  fill(t.sets_.x, t.tau_x_);
  fill(t.sets_.y, t.tau_y_);
  fill(t.sets_.z, t.tau_z_);
  for (std::uint32_t a = 0; a < q; ++a) t.tr_[a] = ctx.trace(Elem{a});

  for (std::uint32_t a = 0; a < q; ++a) {
    const int lhs = t.tr_[a] * t.tau_x_[a] % 3;
    const int rhs = (t.tr_[a] + 2 * t.tau_z_[a]) % 3;
    if (lhs != rhs) throw internal_error("trace profile identity Tr*tau_x = Tr + 2*tau_z failed");
  }
  return t;
}

std::vector<std::array<std::uint8_t, 3>> TraceTables::coverage() const {
  std::vector<std::array<std::uint8_t, 3>> seen;
  for (std::size_t a = 0; a < tr_.size(); ++a)
    seen.push_back({tr_[a], tau_x_[a], tau_y_[a]});
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return seen;
}

}  // namespace tkl

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tkl/field.hpp"

namespace tkl {

// Exponent residue sets modulo q-1, each closed under multiplication by 3:
//   x: 3^i + 3^j               (i, j not necessarily distinct)
//   y: 3^i + 3^j + 3^k         (i, j, k pairwise distinct)
//   z: 2*3^i + 3^j             (i != j)
// Sorted ascending, duplicates removed.
struct IndexSetFamily {
  std::uint32_t q_minus_1 = 0;
  std::vector<std::uint32_t> x, y, z;
};

IndexSetFamily build_index_sets(int n);

// Base-3 digit sum.
int wt3(std::uint64_t v);

// tau_S(a) = sum_{s in S} a^s, an F_3 value whenever S is closed under
// multiplication by 3 mod q-1 (throws std::domain_error otherwise).
// Convention: a^0 = 1 for every a, including a = 0.
std::uint8_t tau(const FieldContext& ctx, std::span<const std::uint32_t> exponents, Elem a);

struct TraceProfile {
  std::uint8_t tr = 0;
  std::uint8_t tau_x = 0;
  std::uint8_t tau_y = 0;
  std::uint8_t tau_z = 0;
};

// Per-field tau tables for the three families plus the absolute trace.
// Construction enforces Tr(a)*tau_x(a) = Tr(a) + 2*tau_z(a) for every a.
class TraceTables {
 public:
  static TraceTables build(const FieldContext& ctx);

  const IndexSetFamily& sets() const { return sets_; }
  TraceProfile profile(Elem a) const {
    return TraceProfile{tr_[a.idx], tau_x_[a.idx], tau_y_[a.idx], tau_z_[a.idx]};
  }
  std::uint8_t tr(Elem a) const { return tr_[a.idx]; }
  std::uint8_t tau_x(Elem a) const { return tau_x_[a.idx]; }
  std::uint8_t tau_y(Elem a) const { return tau_y_[a.idx]; }
  std::uint8_t tau_z(Elem a) const { return tau_z_[a.idx]; }

  // Distinct (Tr, tau_x, tau_y) triples over the whole field, sorted.
  std::vector<std::array<std::uint8_t, 3>> coverage() const;

 private:
  IndexSetFamily sets_;
  std::vector<std::uint8_t> tr_, tau_x_, tau_y_, tau_z_;
};

}  // namespace tkl

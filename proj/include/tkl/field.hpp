#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tkl {

// Element of GF(3^n), stored as the packed index sum(c_i * 3^i) of its
// little-endian coefficient vector (c_0, ..., c_{n-1}) in the power basis.
struct Elem {
  std::uint32_t idx = 0;

  friend constexpr bool operator==(Elem a, Elem b) { return a.idx == b.idx; }
  friend constexpr bool operator!=(Elem a, Elem b) { return a.idx != b.idx; }
  friend constexpr bool operator<(Elem a, Elem b) { return a.idx < b.idx; }
};

// Immutable GF(3^n) context: modulus, generator, log/antilog, trace and
// inverse tables. Safe to share across threads after construction.
//
// The default modulus is the irreducible monic degree-n polynomial whose
// coefficient tuple has the smallest packed index; the generator is the
// smallest element (same order) of multiplicative order q-1.
class FieldContext {
 public:
  static constexpr int kDefaultDegreeCap = 10;

  // modulus_override holds c_0..c_{n-1} of a monic degree-n polynomial
  // (leading coefficient implicit). Throws std::invalid_argument for a bad
  // degree/cap or a reducible override (the message names a factor degree).
  static FieldContext build(int n,
                            std::optional<std::vector<std::uint8_t>> modulus_override = std::nullopt,
                            int degree_cap = kDefaultDegreeCap);

  int degree() const { return n_; }
  std::uint32_t order() const { return q_; }             // q = 3^n
  std::uint32_t group_order() const { return q_ - 1; }   // |GF(q)^x|
  const std::vector<std::uint8_t>& modulus() const { return modulus_; }
  Elem generator() const { return gen_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem element(std::uint32_t packed) const;  // bounds-checked
  std::vector<std::uint8_t> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const std::uint8_t> c) const;

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws std::domain_error for 0

  // pow(0, 0) = 1, pow(0, e>0) = 0, pow(0, e<0) throws; nonzero bases
  // reduce the exponent mod q-1 (negative exponents allowed).
  Elem pow(Elem base, long long e) const;

  std::uint8_t trace(Elem a) const { return trace_[a.idx]; }
  std::vector<Elem> trace_level_set(std::uint8_t r) const;

  std::uint32_t log(Elem a) const;        // discrete log base generator, a != 0
  Elem antilog(std::uint64_t e) const;    // generator^e, e reduced mod q-1

  bool is_square(Elem a) const;           // true iff a = 0 or log(a) even
  Elem sqrt(Elem a) const;                // one root; throws for non-squares

  // Text form "c0,c1,...,c_{n-1}"; parse also accepts the packed index.
  std::string format(Elem a) const;
  Elem parse(std::string_view text) const;

 private:
  FieldContext() = default;

  int n_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint8_t> modulus_;
  Elem gen_;
  std::vector<std::uint32_t> log_;       // size q, log_[0] unused
  std::vector<std::uint32_t> antilog_;   // size q-1
  std::vector<std::uint8_t> trace_;      // size q
  std::vector<std::uint32_t> inv_;       // size q, inv_[0] unused
};

}  // namespace tkl

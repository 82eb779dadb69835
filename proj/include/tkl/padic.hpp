#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tkl/field.hpp"

namespace tkl {

// Truncated 3-adic arithmetic.
//
// W is the unramified extension Z_3[x]/(m(x)) taken mod 3^k, where m is the
// field modulus lifted to integer coefficients. Elements are length-n
// coefficient vectors with entries in [0, 3^k). On top of W sits the
// ramified quadratic piece R = W[pi]/(pi^2 + 3); elements are u + v*pi.
// The cube root of unity lives in R as zeta = (-1 - pi) / 2, so
// pi = -2*zeta - 1 and pi = zeta - 1 up to (pi^2).
//
// pi-adic valuation of u + v*pi is min(2*val3(u), 1 + 2*val3(v)), where
// val3 of a W element is the minimum coefficient valuation (capped at k by
// the truncation).

struct UElem {
  std::vector<std::int64_t> c;

  friend bool operator==(const UElem& a, const UElem& b) { return a.c == b.c; }
  friend bool operator!=(const UElem& a, const UElem& b) { return !(a == b); }
};

struct REl {
  UElem u, v;

  friend bool operator==(const REl& a, const REl& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator!=(const REl& a, const REl& b) { return !(a == b); }
};

class PadicRing {
 public:
  static constexpr int kPrecisionCap = 18;  // 3^18 keeps int64 products exact

  PadicRing(const FieldContext& ctx, int k);

  const FieldContext& field() const { return *ctx_; }
  int precision() const { return k_; }
  std::int64_t precision_modulus() const { return pk_; }  // 3^k

  UElem zero() const;
  UElem one() const { return scalar(1); }
  UElem scalar(std::int64_t v) const;

  UElem add(const UElem& a, const UElem& b) const;
  UElem sub(const UElem& a, const UElem& b) const;
  UElem neg(const UElem& a) const;
  UElem mul(const UElem& a, const UElem& b) const;
  UElem scale(const UElem& a, std::int64_t s) const;

  REl rzero() const { return REl{zero(), zero()}; }
  REl radd(const REl& a, const REl& b) const { return REl{add(a.u, b.u), add(a.v, b.v)}; }
  REl rsub(const REl& a, const REl& b) const { return REl{sub(a.u, b.u), sub(a.v, b.v)}; }
  REl rneg(const REl& a) const { return REl{neg(a.u), neg(a.v)}; }
  REl rmul(const REl& a, const REl& b) const;       // pi^2 = -3
  REl rscale(const REl& a, std::int64_t s) const { return REl{scale(a.u, s), scale(a.v, s)}; }
  REl from_scalar(std::int64_t v) const { return REl{scalar(v), zero()}; }

  REl pi() const;
  REl pi_power(int w) const;     // (-3)^{w/2} or (-3)^{(w-1)/2} * pi
  const REl& zeta(int t) const;  // zeta^t, t in {0, 1, 2}

  // Teichmueller lift: the unique (q-1)-th root of unity over a, found by
  // iterating X <- X^q from the naive lift (at most k rounds).
  UElem teichmuller(Elem a) const;

  // omega(generator)^e with e reduced mod q-1.
  const UElem& xi_power(std::uint64_t e) const;

  UElem reduce(const UElem& a, int j) const;  // coefficients mod 3^j, j <= k
  REl reduce(const REl& a, int j) const;

 private:
  const FieldContext* ctx_;
  int k_;
  std::int64_t pk_;
  std::vector<std::int64_t> modulus_;
  std::vector<UElem> xi_pow_;
  REl zeta_pow_[3];
};

int val3(const PadicRing& ring, const UElem& a);      // capped at k
int val_pi(const PadicRing& ring, const REl& a);      // capped at 2k
bool in_pi_ideal(const PadicRing& ring, const REl& a, int m);

struct GaussSumRecord {
  std::uint32_t j = 0;
  int weight = 0;  // wt3(j); equals val_pi(value)
  REl value;
};

// g(j) = -sum_{x != 0} omega(x)^{-j} * zeta^{Tr(x)}, 1 <= j <= q-2.
GaussSumRecord gauss_sum(const PadicRing& ring, std::uint32_t j);

// All g(j) with their squares, computed once.
class GaussSumSet {
 public:
  explicit GaussSumSet(const PadicRing& ring);
  const REl& g(std::uint32_t j) const { return values_.at(j - 1).value; }
  const GaussSumRecord& record(std::uint32_t j) const { return values_.at(j - 1); }
  const REl& g_squared(std::uint32_t j) const { return squares_.at(j - 1); }

 private:
  std::vector<GaussSumRecord> values_;
  std::vector<REl> squares_;
};

// Morita's 3-adic gamma: Gamma3(m) = (-1)^m * prod of t < m coprime to 3,
// reduced mod 3^k.
std::int64_t gamma3(std::int64_t m, int k);

// Gamma3 at the fractional argument s/denom (0 < s < denom, 3 coprime to
// denom): evaluates at the integer y in [1, 3^k] congruent to s*denom^{-1}.
std::int64_t gamma3_fractional(std::int64_t s, std::int64_t denom, int k);

// g(j) = pi^{wt3(j)} * prod_i Gamma3(<3^i j / (q-1)>), checked mod 3^k.
bool gross_koblitz_check(const PadicRing& ring, std::uint32_t j);
bool gross_koblitz_check(const PadicRing& ring, const GaussSumSet& sums, std::uint32_t j);

// g(j) * prod_i (j_i)!  ==  pi^{wt3(j)}  modulo (pi^{wt3(j)+2}).
// Needs k >= ceil((wt+2)/2); throws std::invalid_argument naming the bound.
bool stickelberger_check(const PadicRing& ring, std::uint32_t j);
bool stickelberger_check(const PadicRing& ring, const GaussSumSet& sums, std::uint32_t j);

struct CheckReport {
  std::string check;
  int n = 0;
  int k = 0;
  std::uint64_t total = 0;
  std::uint64_t failures = 0;
  std::optional<std::uint32_t> first_failing_j;
  double elapsed_ms = 0.0;
};

// val_pi(g(j)) == wt3(j) over every j.
CheckReport valuation_check(const PadicRing& ring);
CheckReport stickelberger_sweep(const PadicRing& ring);
CheckReport gross_koblitz_sweep(const PadicRing& ring);

// g(j)^2 mod 27 lands in {6, 9, 0} according to wt3(j) in {1, 2, >=3}.
// Needs k >= 3.
CheckReport wt1lem_check(const PadicRing& ring);

// K(a) == -sum_j g(j)^2 omega^j(a) mod 3^check_k (check_k <= n), and for
// n >= 3 additionally the mod-27 hat form
// K(a) == 21*sum_{wt=1} omega^i(a) + 18*sum_{wt=2} omega^j(a).
// kloosterman_value must be the exact integer K(a).
bool fourier_congruence_check(const PadicRing& ring, const GaussSumSet& sums, Elem a,
                              int check_k, std::int64_t kloosterman_value);

// sum over z with Tr(z) = 1 of omega(z)^{-1} is 1 mod 3.
bool cong3_check(const PadicRing& ring);

}  // namespace tkl

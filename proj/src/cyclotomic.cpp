#include "minram/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "minram/errors.hpp"
#include "minram/group.hpp"

namespace minram {

DirichletCharacter::DirichletCharacter(std::uint64_t q, std::uint64_t b) : q_(q), b_(b) {
  if (!is_prime(q)) throw DomainError("DirichletCharacter: conductor " + std::to_string(q) + " is not prime");
  if (b == 0 || (q - 1) % b != 0)
    throw DomainError("DirichletCharacter: order " + std::to_string(b) + " does not divide " + std::to_string(q - 1));
  g_ = q == 2 ? 1 : primitive_root(Int(static_cast<unsigned long>(q))).get_ui();
  step_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(q - 1)))) + 1;
  std::uint64_t x = 1;
  for (std::uint64_t j = 0; j < step_; ++j) {
    baby_.emplace(x, j);
    x = mulmod(x, g_, q_);
  }
  giant_ = powmod(powmod(g_, step_, q_), q_ - 2, q_);
}

std::uint64_t DirichletCharacter::discrete_index(const Int& n) const {
  std::uint64_t y = mod_u64(n, q_);
  if (y == 0) throw DomainError("character value at a multiple of the conductor " + std::to_string(q_));
  for (std::uint64_t i = 0; i <= step_; ++i) {
    auto it = baby_.find(y);
    if (it != baby_.end()) return (i * step_ + it->second) % (q_ - 1);
    y = mulmod(y, giant_, q_);
  }
  throw DomainError("discrete_index: no logarithm found");
}

std::uint64_t DirichletCharacter::value(const Int& n) const { return discrete_index(n) % b_; }

std::uint64_t DirichletCharacter::value_order(const Int& n) const {
  std::uint64_t k = value(n);
  return b_ / std::gcd(b_, k);
}

std::uint64_t character_value(const DirichletCharacter& chi, const Int& n) { return chi.value(n); }

ZPoly gaussian_period_poly(std::uint64_t q, std::uint64_t b) {
  if (!is_prime(q)) throw DomainError("gaussian_period_poly: " + std::to_string(q) + " is not prime");
  if (b == 0 || (q - 1) % b != 0)
    throw DomainError("gaussian_period_poly: " + std::to_string(b) + " does not divide " + std::to_string(q) + " - 1");
  const std::uint64_t g = q == 2 ? 1 : primitive_root(Int(static_cast<unsigned long>(q))).get_ui();

  // coset[t] = k when t = g^i with i = k mod b; eta_k = sum of zeta^t over coset k.
  std::vector<std::uint32_t> coset(q, 0);
  std::vector<std::vector<std::uint64_t>> members(b);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i + 1 < q; ++i) {
    coset[x] = static_cast<std::uint32_t>(i % b);
    members[i % b].push_back(x);
    x = mulmod(x, g, q);
  }

  // eta_0 * eta_k = n0[k] + sum_j c[k][j] eta_j, from period vectors of
  // length q (coefficients of zeta^t) built by index addition.
  std::vector<Int> n0(b);
  std::vector<std::vector<Int>> c(b, std::vector<Int>(b));
  std::vector<std::int64_t> vec(q);
  for (std::uint64_t k = 0; k < b; ++k) {
    std::fill(vec.begin(), vec.end(), 0);
    for (std::uint64_t h : members[0])
      for (std::uint64_t t : members[k]) {
        std::uint64_t s = h + t;
        if (s >= q) s -= q;
        ++vec[s];
      }
    n0[k] = static_cast<long>(vec[0]);
    for (std::uint64_t j = 0; j < b; ++j) c[k][j] = static_cast<long>(vec[members[j][0]]);
    for (std::uint64_t t = 1; t < q; ++t)
      if (vec[t] != vec[members[coset[t]][0]]) throw DomainError("gaussian_period_poly: product is not Galois-stable");
  }

  // eta_0^j in the basis (1, eta_0, ..., eta_{b-1}); p_j = Tr(eta_0^j).
  std::vector<Int> power_sums(b + 1);
  Int cst = 0;
  std::vector<Int> a(b, 0);
  a[0] = 1;
  for (std::uint64_t j = 1; j <= b; ++j) {
    Int tr = Int(static_cast<unsigned long>(b)) * cst;
    for (const auto& ai : a) tr -= ai;
    power_sums[j] = tr;
    if (j == b) break;
    Int ncst = 0;
    std::vector<Int> na(b, 0);
    na[0] += cst;
    for (std::uint64_t i = 0; i < b; ++i) {
      if (a[i] == 0) continue;
      // eta_i eta_0 = sigma^i(eta_0 eta_{-i}).
      std::uint64_t k = (b - i) % b;
      ncst += a[i] * n0[k];
      for (std::uint64_t jj = 0; jj < b; ++jj) na[(jj + i) % b] += a[i] * c[k][jj];
    }
    cst = std::move(ncst);
    a = std::move(na);
  }

  // Newton's identities.
  std::vector<Int> e(b + 1);
  e[0] = 1;
  for (std::uint64_t k = 1; k <= b; ++k) {
    Int s = 0;
    for (std::uint64_t i = 1; i <= k; ++i) {
      Int term = e[k - i] * power_sums[i];
      if (i % 2 == 1) s += term;
      else s -= term;
    }
    if (!mpz_divisible_ui_p(s.get_mpz_t(), k)) throw DomainError("gaussian_period_poly: non-integral coefficient");
    e[k] = s / Int(static_cast<unsigned long>(k));
  }
  std::vector<Int> coeffs(b + 1);
  for (std::uint64_t k = 0; k <= b; ++k) coeffs[b - k] = k % 2 == 0 ? e[k] : Int(-e[k]);
  return ZPoly(std::move(coeffs));
}

CyclicFieldSpec cyclic_field(std::uint64_t q, std::uint64_t b) {
  return {q, b, DirichletCharacter(q, b), gaussian_period_poly(q, b)};
}

std::vector<Int> invariant_factors(const std::vector<Int>& orders) {
  std::map<Int, std::vector<Int>> primary;
  for (const auto& n : orders) {
    if (n < 1) throw DomainError("cyclic factor orders must be positive");
    auto f = factorize(n);
    for (std::size_t i = 0; i < f.size();) {
      std::size_t j = i;
      Int pe = 1;
      while (j < f.size() && f[j] == f[i]) pe *= f[j++];
      primary[f[i]].push_back(pe);
      i = j;
    }
  }
  std::vector<std::vector<Int>> per_prime;
  for (auto& [p, v] : primary) per_prime.push_back(v);
  return merge_invariant_factors(per_prime);
}

std::uint64_t find_conductor(std::uint64_t b, const std::set<std::uint64_t>& avoid, const std::vector<std::uint64_t>& extra,
                             const ScanOptions& opts) {
  if (b < 2) throw DomainError("find_conductor: b must be at least 2");
  std::uint64_t m = b;
  for (std::uint64_t e : extra) {
    if (e == 0) throw DomainError("find_conductor: zero modulus");
    m = std::lcm(m, e);
  }
  return least_prime_1_mod(
      m, [&](std::uint64_t q) { return avoid.count(q) == 0; }, opts,
      "conductor q = 1 mod " + std::to_string(m));
}

AbelianRealization realize_with_conductors(const std::vector<Int>& factors, const std::vector<std::uint64_t>& conductors) {
  if (factors.size() != conductors.size()) throw DomainError("one conductor per cyclic factor required");
  AbelianRealization r;
  r.factors = factors;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    r.specs.push_back(cyclic_field(conductors[i], factors[i].get_ui()));
    r.ramified_primes.push_back(conductors[i]);
  }
  return r;
}

AbelianRealization realize_abelian(const std::vector<Int>& orders, const ScanOptions& opts) {
  std::vector<Int> factors = invariant_factors(orders);
  if (factors.empty()) throw DomainError("realize_abelian: the group must be nontrivial");
  std::set<std::uint64_t> chosen;
  std::vector<std::uint64_t> conductors;
  for (const auto& b : factors) {
    if (!b.fits_ulong_p()) throw DomainError("realize_abelian: factor too large");
    std::uint64_t q = find_conductor(b.get_ui(), chosen, {}, opts);
    chosen.insert(q);
    conductors.push_back(q);
  }
  return realize_with_conductors(factors, conductors);
}

}  // namespace minram

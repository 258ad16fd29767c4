#include "minram/arith.hpp"

#include <algorithm>
#include <array>

#include "minram/errors.hpp"

namespace minram {

std::string to_string(const Int& n) { return n.get_str(); }

Int parse_int(const std::string& text) {
  Int out;
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || out.set_str(s, 10) != 0) throw ParseError("not an integer: '" + text + "'");
  return out;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::uint64_t mod_u64(const Int& a, std::uint64_t m) {
  static_assert(sizeof(unsigned long) == 8);
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

Int powmod(const Int& base, const Int& exp, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

namespace {

bool fits_u64(const Int& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const Int& n) { return mpz_get_ui(n.get_mpz_t()); }

bool miller_rabin_round(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 37 * 37) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Sinclair's base set is deterministic below 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

bool is_prime(const Int& n) {
  if (sgn(n) <= 0) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

namespace {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Brent's variant of Pollard rho; n odd composite without small factors.
Int rho_factor(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const Int& v) { return mod(v * v + c, n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mod(q * abs(x - y), n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<Int> factorize(const Int& n) {
  if (n < 1) throw DomainError("factorize expects n >= 1, got " + to_string(n));
  std::vector<Int> out;
  Int m = n;
  for (unsigned long p = 2; p < 1000; ++p) {
    if (!is_prime(static_cast<std::uint64_t>(p))) continue;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out.emplace_back(p);
      m /= p;
    }
    if (m < Int(p) * p) break;
  }
  factor_into(m, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> prime_divisors(const Int& n) {
  auto all = factorize(abs(n));
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

unsigned valuation(Int n, const Int& p) {
  if (n == 0) throw DomainError("valuation of zero");
  unsigned v = 0;
  n = abs(n);
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  auto f = factorize(abs(n));
  return std::adjacent_find(f.begin(), f.end()) == f.end();
}

bool power_residue_u64(std::uint64_t a, std::uint64_t m, std::uint64_t q) {
  return powmod(a, (q - 1) / m, q) == 1;
}

bool power_residue(const Int& a, const Int& m, const Int& q) {
  if (!is_prime(q)) throw DomainError("power_residue: modulus " + to_string(q) + " is not prime");
  if (m < 1 || !mpz_divisible_p(Int(q - 1).get_mpz_t(), m.get_mpz_t()))
    throw DomainError("power_residue: " + to_string(m) + " does not divide " + to_string(q) + " - 1");
  Int r = mod(a, q);
  if (r == 0) throw DomainError("power_residue: " + to_string(q) + " divides " + to_string(a));
  return powmod(r, Int((q - 1) / m), q) == 1;
}

Int multiplicative_order(const Int& a, const Int& m) {
  if (gcd(a, m) != 1) throw DomainError("multiplicative_order: gcd(a, m) != 1");
  if (m == 1) return 1;
  // Euler phi via factorisation, then strip prime factors.
  Int phi = 1;
  auto f = factorize(m);
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    Int pk = 1;
    while (j < f.size() && f[j] == f[i]) {
      pk *= f[j];
      ++j;
    }
    phi *= pk / f[i] * (f[i] - 1);
    i = j;
  }
  Int order = phi;
  for (const Int& p : prime_divisors(phi)) {
    while (mpz_divisible_p(order.get_mpz_t(), p.get_mpz_t()) && powmod(mod(a, m), Int(order / p), m) == 1)
      order /= p;
  }
  return order;
}

Int primitive_root(const Int& q) {
  if (q == 2) return 1;
  if (!is_prime(q)) throw DomainError("primitive_root: " + to_string(q) + " is not prime");
  auto divisors = prime_divisors(Int(q - 1));
  for (Int g = 2;; ++g) {
    bool generator = std::all_of(divisors.begin(), divisors.end(),
                                 [&](const Int& p) { return powmod(g, Int((q - 1) / p), q) != 1; });
    if (generator) return g;
  }
}

Congruence crt(std::span<const Congruence> system) {
  Congruence acc{0, 1};
  for (const auto& c : system) {
    if (c.modulus < 1) throw DomainError("crt: modulus must be positive");
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.modulus.get_mpz_t(), c.modulus.get_mpz_t());
    Int diff = c.residue - acc.residue;
    if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t()))
      throw DomainError("crt: inconsistent residues " + to_string(acc.residue) + " mod " +
                        to_string(acc.modulus) + " and " + to_string(c.residue) + " mod " +
                        to_string(c.modulus));
    Int lcm = acc.modulus / g * c.modulus;
    Int x = acc.residue + acc.modulus * mod(Int(diff / g * s), Int(c.modulus / g));
    acc = {mod(x, lcm), lcm};
  }
  return acc;
}

PrimePower::PrimePower(Int l, unsigned e) : l_(std::move(l)), e_(e) {
  if (!is_prime(l_)) throw DomainError("PrimePower: " + to_string(l_) + " is not prime");
  if (e_ < 1) throw DomainError("PrimePower: exponent must be >= 1");
}

Int PrimePower::value() const {
  Int v;
  mpz_pow_ui(v.get_mpz_t(), l_.get_mpz_t(), e_);
  return v;
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (p == 2 || a == 0) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) throw DomainError("sqrt_mod: not a quadratic residue");
  // Tonelli-Shanks.
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

int legendre(const Int& a, const Int& p) {
  return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t());
}

}  // namespace minram

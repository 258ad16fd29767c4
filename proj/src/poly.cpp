#include "minram/poly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "minram/errors.hpp"

namespace minram {

ZPoly::ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

ZPoly ZPoly::from_ints(std::initializer_list<long> coeffs) {
  std::vector<Int> v;
  for (long x : coeffs) v.emplace_back(x);
  return ZPoly(std::move(v));
}

void ZPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

ZPoly ZPoly::derivative() const {
  std::vector<Int> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<unsigned long>(i));
  return ZPoly(std::move(d));
}

Int ZPoly::content() const {
  Int g = 0;
  for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Int ZPoly::eval(const Int& x) const {
  Int r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

std::string ZPoly::to_string() const {
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& a = c[i];
    if (a == 0) continue;
    Int mag = abs(a);
    if (first) {
      if (a < 0) out << "-";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return ZPoly(std::move(r));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return ZPoly(std::move(r));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> r(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return ZPoly(std::move(r));
}

ZPoly operator*(const Int& k, const ZPoly& a) {
  std::vector<Int> r = a.c;
  for (auto& x : r) x *= k;
  return ZPoly(std::move(r));
}

namespace {

Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
  const int db = b.degree();
  int k = a.degree() - db + 1;
  const Int& lb = b.lead();
  while (!a.is_zero() && a.degree() >= db) {
    Int la = a.lead();
    int shift = a.degree() - db;
    for (auto& x : a.c) x *= lb;
    for (int i = 0; i <= db; ++i) a.c[i + shift] -= la * b.c[i];
    a.trim();
    --k;
  }
  if (k > 0) a = ipow(lb, k) * a;
  return a;
}

ZPoly divexact(ZPoly a, const Int& d) {
  for (auto& x : a.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return a;
}

}  // namespace

Int resultant(const ZPoly& a_in, const ZPoly& b_in) {
  if (a_in.is_zero() || b_in.is_zero()) return 0;
  ZPoly a = a_in, b = b_in;
  int sign = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
  }
  Int ca = a.content(), cb = b.content();
  a = divexact(a, ca);
  b = divexact(b, cb);
  Int t = ipow(ca, b.degree()) * ipow(cb, a.degree());
  Int g = 1, h = 1;
  while (b.degree() > 0) {
    int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) sign = -sign;
    ZPoly r = pseudo_remainder(a, b);
    a = b;
    b = divexact(r, g * ipow(h, delta));
    g = a.lead();
    // h <- g^delta / h^(delta - 1), exact.
    Int num = ipow(g, delta);
    if (delta == 0) {
      h = h * num;
    } else {
      Int den = ipow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.is_zero()) return 0;
  }
  // b is a nonzero constant.
  int da = a.degree();
  Int num = ipow(b.lead(), da);
  Int den = ipow(h, da - 1);
  Int hh;
  if (da == 0) {
    hh = h * num;
  } else {
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return sign * t * hh;
}

Int poly_discriminant(const ZPoly& f) {
  const int n = f.degree();
  if (n < 1) throw DomainError("poly_discriminant: degree must be >= 1");
  if (n == 1) return 1;
  Int r = resultant(f, f.derivative());
  if (r == 0) throw DomainError("poly_discriminant: " + f.to_string() + " is not squarefree");
  Int d;
  mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.lead().get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

// ---------------------------------------------------------------------------
// F_p[x]

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

}  // namespace

FpPoly::FpPoly(std::uint64_t modulus, std::vector<std::uint64_t> coeffs) : p(modulus), c(std::move(coeffs)) {
  for (auto& x : c) x %= p;
  trim();
}

FpPoly FpPoly::reduce(const ZPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> v;
  for (const auto& x : f.c) v.push_back(mod_u64(x, p));
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::constant(std::uint64_t p, std::uint64_t v) { return FpPoly(p, {v}); }

void FpPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

FpPoly FpPoly::monic() const {
  if (c.empty()) return *this;
  std::uint64_t inv = inv_mod(c.back(), p);
  FpPoly r = *this;
  for (auto& x : r.c) x = mulmod(x, inv, p);
  return r;
}

FpPoly FpPoly::derivative() const {
  std::vector<std::uint64_t> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(mulmod(c[i], i % p, p));
  return FpPoly(p, std::move(d));
}

ZPoly FpPoly::lift() const {
  std::vector<Int> v;
  for (auto x : c) v.emplace_back(static_cast<unsigned long>(x));
  return ZPoly(std::move(v));
}

bool FpPoly::operator<(const FpPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  return std::lexicographical_compare(c.rbegin(), c.rend(), o.c.rbegin(), o.c.rend());
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint64_t> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0, y = i < b.c.size() ? b.c[i] : 0;
    r[i] = (x + y) % a.p;
  }
  return FpPoly(a.p, std::move(r));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint64_t> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0, y = i < b.c.size() ? b.c[i] : 0;
    r[i] = (x + a.p - y) % a.p;
  }
  return FpPoly(a.p, std::move(r));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p, {});
  std::vector<std::uint64_t> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = (r[i + j] + mulmod(a.c[i], b.c[j], a.p)) % a.p;
  }
  return FpPoly(a.p, std::move(r));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw DomainError("FpPoly division by zero");
  const std::uint64_t p = a.p;
  FpPoly r = a;
  if (a.degree() < b.degree()) return {FpPoly(p, {}), r};
  std::vector<std::uint64_t> q(a.degree() - b.degree() + 1, 0);
  std::uint64_t inv = inv_mod(b.lead(), p);
  const int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    std::uint64_t k = mulmod(r.lead(), inv, p);
    q[shift] = k;
    for (int i = 0; i <= db; ++i) r.c[i + shift] = (r.c[i + shift] + p - mulmod(k, b.c[i], p)) % p;
    r.trim();
  }
  return {FpPoly(p, std::move(q)), r};
}

FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }
FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& m) {
  FpPoly result = FpPoly::constant(m.p, 1) % m;
  FpPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
FpPoly pth_root(const FpPoly& f) {
  std::vector<std::uint64_t> r;
  for (std::size_t i = 0; i < f.c.size(); i += f.p) r.push_back(f.c[i]);
  return FpPoly(f.p, std::move(r));
}

// Squarefree decomposition: pairs (squarefree monic part, multiplicity).
void squarefree(const FpPoly& f, unsigned mult, std::vector<std::pair<FpPoly, unsigned>>& out) {
  if (f.degree() < 1) return;
  FpPoly df = f.derivative();
  if (df.is_zero()) {
    squarefree(pth_root(f), mult * static_cast<unsigned>(f.p), out);
    return;
  }
  FpPoly c = gcd(f, df);
  FpPoly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree(pth_root(c), mult * static_cast<unsigned>(f.p), out);
}

// Distinct-degree factorization of a squarefree monic f.
std::vector<std::pair<FpPoly, unsigned>> distinct_degree(FpPoly f) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  const std::uint64_t p = f.p;
  const FpPoly x = FpPoly::x(p);
  FpPoly h = x % f;
  for (unsigned d = 1; 2 * static_cast<int>(d) <= f.degree(); ++d) {
    h = powmod(h, Int(static_cast<unsigned long>(p)), f);
    FpPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.push_back({g, d});
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back({f.monic(), static_cast<unsigned>(f.degree())});
  return out;
}

// Cantor-Zassenhaus splitting of a product of degree-d irreducibles.
void equal_degree(const FpPoly& f, unsigned d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t p = f.p;
  Int pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
  for (;;) {
    std::vector<std::uint64_t> coeffs(f.degree());
    for (auto& x : coeffs) x = rng() % p;
    FpPoly a(p, coeffs);
    if (a.degree() < 1) continue;
    FpPoly t;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      t = a % f;
      FpPoly s = t;
      for (unsigned i = 1; i < d; ++i) {
        s = (s * s) % f;
        t = t + s;
      }
    } else {
      t = powmod(a, Int((pd - 1) / 2), f) - FpPoly::constant(p, 1);
    }
    FpPoly g = gcd(t, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpFactor> factor_mod_p(const FpPoly& f) {
  if (f.is_zero()) throw DomainError("factor_mod_p: zero polynomial");
  std::vector<std::pair<FpPoly, unsigned>> sqf;
  squarefree(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x6d696e72616dULL);
  std::vector<FpFactor> out;
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<FpPoly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return a.factor < b.factor;
  });
  return out;
}

std::vector<unsigned> factor_degrees(const FpPoly& f) {
  std::vector<unsigned> out;
  for (const auto& [g, m] : factor_mod_p(f))
    for (unsigned i = 0; i < m; ++i) out.push_back(static_cast<unsigned>(g.degree()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace minram

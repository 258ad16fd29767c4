#include "minram/quadfield.hpp"

#include <algorithm>
#include <set>

#include "minram/errors.hpp"
#include "minram/group.hpp"

namespace minram {

namespace {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// g = s a + t b.
void gcdext(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

bool is_fundamental_discriminant(const Int& d) {
  if (d == 0 || d == 1) return false;
  Int r = mod(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  Int m = d / 4;
  Int rm = mod(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

bool QuadForm::operator<(const QuadForm& o) const {
  if (a != o.a) return a < o.a;
  Int ab = abs(b), ob = abs(o.b);
  if (ab != ob) return ab < ob;
  return b > o.b;
}

QuadForm reduce(QuadForm f) {
  if (f.a <= 0 || f.disc() >= 0) throw DomainError("reduce: form must be positive definite");
  for (;;) {
    if (!(-f.a < f.b && f.b <= f.a)) {
      // b = 2aq + r with -a < r <= a.
      Int two_a = 2 * f.a;
      Int q = fdiv(f.b, two_a);
      Int r = f.b - q * two_a;
      if (r > f.a) {
        r -= two_a;
        q += 1;
      }
      f.c -= (f.b + r) * q / 2;
      f.b = r;
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

bool is_reduced(const QuadForm& f) {
  Int ab = abs(f.b);
  if (!(ab <= f.a && f.a <= f.c)) return false;
  if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
  return true;
}

QuadForm principal_form(const Int& d) {
  if (mod(d, 4) == 0) return {1, 0, -d / 4};
  return {1, 1, (1 - d) / 4};
}

QuadForm compose(const QuadForm& f_in, const QuadForm& g_in) {
  QuadForm f = f_in, g = g_in;
  if (f.disc() != g.disc()) throw DomainError("compose: discriminants differ");
  const Int d = f.disc();
  if (f.a > g.a) std::swap(f, g);
  Int s = (f.b + g.b) / 2;
  Int n = g.b - s;
  Int y1, dd;
  if (mpz_divisible_p(g.a.get_mpz_t(), f.a.get_mpz_t())) {
    y1 = 0;
    dd = f.a;
  } else {
    Int u, v;
    gcdext(g.a, f.a, dd, u, v);
    y1 = u;
  }
  Int x2, y2, d1;
  if (mpz_divisible_p(s.get_mpz_t(), dd.get_mpz_t())) {
    y2 = -1;
    x2 = 0;
    d1 = dd;
  } else {
    gcdext(s, dd, d1, x2, y2);
    y2 = -y2;
  }
  Int v1 = f.a / d1, v2 = g.a / d1;
  Int r = mod(Int(y1 * y2 * n - x2 * g.c), v1);
  Int b3 = g.b + 2 * v2 * r;
  Int a3 = v1 * v2;
  Int c3 = (b3 * b3 - d) / (4 * a3);
  return reduce({a3, b3, c3});
}

QuadForm form_inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

QuadForm form_power(const QuadForm& f, const Int& n) {
  QuadForm base = n < 0 ? form_inverse(f) : reduce(f);
  Int k = abs(n);
  QuadForm r = principal_form(f.disc());
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = compose(r, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return r;
}

std::vector<QuadForm> reduced_forms(const Int& d) {
  if (d >= 0) throw DomainError("reduced_forms: discriminant must be negative");
  std::vector<QuadForm> out;
  const Int ad = -d;
  for (Int a = 1; 3 * a * a <= ad; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      if (mod(Int(b - d), 2) != 0) continue;
      Int num = b * b - d;
      if (!mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t())) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t QuadClassGroup::index_of(const QuadForm& f) const {
  auto it = index_.find(reduce(f));
  if (it == index_.end()) throw DomainError("form not in class group");
  return it->second;
}

unsigned QuadClassGroup::l_rank(unsigned l) const {
  unsigned r = 0;
  for (const auto& x : structure)
    if (mpz_divisible_ui_p(x.get_mpz_t(), l)) ++r;
  return r;
}

bool QuadClassGroup::has_order(const Int& n) const {
  return std::find(orders.begin(), orders.end(), n) != orders.end();
}

std::vector<QuadForm> QuadClassGroup::l_torsion_basis(unsigned l) const {
  std::vector<QuadForm> basis;
  std::set<QuadForm> span{forms[0]};
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (orders[i] != l || span.count(forms[i])) continue;
    basis.push_back(forms[i]);
    std::set<QuadForm> next;
    for (const auto& s : span) {
      QuadForm x = s;
      for (unsigned k = 0; k < l; ++k) {
        next.insert(x);
        x = compose(x, forms[i]);
      }
    }
    span = std::move(next);
  }
  return basis;
}

QuadClassGroup class_group(const Int& d) {
  if (d >= 0) throw DomainError("class_group: discriminant must be negative");
  if (-d > 1000000) throw DomainError("class_group: |D| must be at most 10^6");
  if (!is_fundamental_discriminant(d)) throw DomainError("class_group: " + to_string(d) + " is not fundamental");
  QuadClassGroup cl;
  cl.disc = d;
  cl.forms = reduced_forms(d);
  cl.h = static_cast<unsigned long>(cl.forms.size());
  for (std::size_t i = 0; i < cl.forms.size(); ++i) cl.index_[cl.forms[i]] = i;

  const QuadForm one = principal_form(d);
  const auto hp = prime_divisors(cl.h);
  for (const auto& f : cl.forms) {
    Int ord = cl.h;
    for (const auto& p : hp)
      while (mpz_divisible_p(ord.get_mpz_t(), p.get_mpz_t()) && form_power(f, ord / p) == one) ord /= p;
    cl.orders.push_back(ord);
  }

  // Primary parts from |Cl[p^k]|.
  std::vector<std::vector<Int>> per_prime;
  for (const auto& p : hp) {
    std::vector<unsigned> logs{0};  // log_p |Cl[p^k]|
    Int pk = 1;
    const unsigned target = valuation(cl.h, p);
    while (logs.back() < target) {
      pk *= p;
      std::size_t count = 0;
      for (const auto& o : cl.orders)
        if (mpz_divisible_p(pk.get_mpz_t(), o.get_mpz_t())) ++count;
      logs.push_back(valuation(Int(static_cast<unsigned long>(count)), p));
    }
    std::vector<Int> factors;
    for (std::size_t k = 1; k < logs.size(); ++k) {
      unsigned at_least_k = logs[k] - logs[k - 1];
      unsigned at_least_k1 = k + 1 < logs.size() ? logs[k + 1] - logs[k] : 0;
      Int pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), k);
      for (unsigned i = 0; i < at_least_k - at_least_k1; ++i) factors.push_back(pe);
    }
    per_prime.push_back(std::move(factors));
  }
  cl.structure = merge_invariant_factors(per_prime);
  return cl;
}

// ---------------------------------------------------------------------------
// O_K and its ideals

QuadField::QuadField(Int d) : d_(std::move(d)) {
  if (d_ >= 0 || !is_fundamental_discriminant(d_))
    throw DomainError("QuadField: " + to_string(d_) + " is not a negative fundamental discriminant");
  if (mod(d_, 4) == 1) {
    t_ = 1;
    n_ = (1 - d_) / 4;
  } else {
    t_ = 0;
    n_ = -d_ / 4;
  }
  torsion_ = d_ == -3 ? 6 : d_ == -4 ? 4 : 2;
}

QuadElem QuadField::torsion_generator() const {
  if (torsion_ == 2) return {-1, 0};
  return {0, 1};  // w is a primitive 4th (D = -4) or 6th (D = -3) root of unity
}

QuadElem QuadField::mul(const QuadElem& u, const QuadElem& v) const {
  return {u.x * v.x - n_ * u.y * v.y, u.x * v.y + u.y * v.x + t_ * u.y * v.y};
}

QuadElem QuadField::conj(const QuadElem& u) const { return {u.x + t_ * u.y, -u.y}; }

Int QuadField::norm(const QuadElem& u) const { return u.x * u.x + t_ * u.x * u.y + n_ * u.y * u.y; }

namespace {

QuadIdeal hnf(const std::vector<QuadElem>& vs) {
  Int a = 0, pb = 0, pc = 0;
  for (const auto& v : vs) {
    if (v.y == 0) {
      a = gcd(a, v.x);
      continue;
    }
    if (pc == 0) {
      pb = v.x;
      pc = v.y;
      continue;
    }
    Int g, s, t;
    gcdext(pc, v.y, g, s, t);
    Int x_zero = (v.y / g) * pb - (pc / g) * v.x;
    a = gcd(a, x_zero);
    pb = s * pb + t * v.x;
    pc = g;
  }
  if (pc < 0) {
    pc = -pc;
    pb = -pb;
  }
  if (a == 0 || pc == 0) throw DomainError("ideal lattice is not of full rank");
  return {a, mod(pb, a), pc};
}

}  // namespace

QuadIdeal QuadField::ideal(const std::vector<QuadElem>& gens) const {
  std::vector<QuadElem> vs;
  for (const auto& g : gens) {
    vs.push_back(g);
    vs.push_back(mul(g, {0, 1}));
  }
  return hnf(vs);
}

QuadIdeal QuadField::ideal_mul(const QuadIdeal& i, const QuadIdeal& j) const {
  const QuadElem bi[2] = {{i.a, 0}, {i.b, i.c}};
  const QuadElem bj[2] = {{j.a, 0}, {j.b, j.c}};
  std::vector<QuadElem> vs;
  for (const auto& u : bi)
    for (const auto& v : bj) vs.push_back(mul(u, v));
  return hnf(vs);
}

QuadIdeal QuadField::ideal_pow(const QuadIdeal& i, unsigned long n) const {
  QuadIdeal r{1, 0, 1};
  for (unsigned long k = 0; k < n; ++k) r = ideal_mul(r, i);
  return r;
}

QuadIdeal QuadField::conj(const QuadIdeal& i) const { return hnf({{i.a, 0}, conj(QuadElem{i.b, i.c}), {0, i.a}}); }

bool QuadField::contains(const QuadIdeal& i, const QuadElem& u) const {
  if (!mpz_divisible_p(u.y.get_mpz_t(), i.c.get_mpz_t())) return false;
  Int rest = u.x - (u.y / i.c) * i.b;
  return mpz_divisible_p(rest.get_mpz_t(), i.a.get_mpz_t());
}

QuadIdeal QuadField::ideal_from_form(const QuadForm& f) const {
  if (f.disc() != d_) throw DomainError("ideal_from_form: discriminant mismatch");
  return {f.a, mod(Int((-f.b - t_) / 2), f.a), 1};
}

QuadForm QuadField::form_of(const QuadIdeal& i) const {
  Int a = i.a / i.c, b0 = i.b / i.c;
  Int big_b = -(2 * b0 + t_);
  Int nb = norm(QuadElem{b0, 1});
  return reduce({a, big_b, nb / a});
}

QuadElem QuadField::normalize(const QuadElem& u) const {
  const QuadElem zeta = torsion_generator();
  QuadElem best = u, cur = u;
  bool have = false;
  for (unsigned k = 0; k < torsion_; ++k) {
    if (cur.y >= 0 && (!have || cur.y < best.y || (cur.y == best.y && cur.x < best.x))) {
      best = cur;
      have = true;
    }
    cur = mul(cur, zeta);
  }
  return best;
}

std::optional<QuadElem> QuadField::principal_generator(const QuadIdeal& i) const {
  QuadElem u{i.a, 0}, v{i.b, i.c};
  auto add = [](const QuadElem& p, const QuadElem& q, const Int& k) { return QuadElem{p.x + k * q.x, p.y + k * q.y}; };
  for (;;) {
    if (norm(v) < norm(u)) std::swap(u, v);
    Int nu = norm(u);
    Int two_b = norm(add(u, v, 1)) - nu - norm(v);
    Int mu = fdiv(Int(two_b + nu), Int(2 * nu));
    if (mu == 0) break;
    v = add(v, u, -mu);
  }
  if (norm(u) != i.norm()) return std::nullopt;
  return normalize(u);
}

std::vector<std::uint64_t> QuadField::w_roots(std::uint64_t q) const {
  std::vector<std::uint64_t> out;
  const std::uint64_t t = mod_u64(t_, q), n = mod_u64(n_, q);
  auto is_root = [&](std::uint64_t x) { return (mulmod(x, x, q) + q - mulmod(t, x, q) + n) % q == 0; };
  if (q == 2) {
    for (std::uint64_t x = 0; x < 2; ++x)
      if (is_root(x)) out.push_back(x);
    return out;
  }
  const std::uint64_t dq = mod_u64(d_, q);
  if (dq != 0 && powmod(dq, (q - 1) / 2, q) != 1) return out;
  const std::uint64_t s = sqrt_mod(dq, q), half = (q + 1) / 2;
  std::uint64_t r1 = mulmod((t + s) % q, half, q), r2 = mulmod((t + q - s) % q, half, q);
  out.push_back(std::min(r1, r2));
  if (r1 != r2) out.push_back(std::max(r1, r2));
  return out;
}

bool QuadField::splits(std::uint64_t q) const { return w_roots(q).size() == 2; }

QuadIdeal QuadField::prime_ideal(std::uint64_t q, std::uint64_t root) const {
  auto roots = w_roots(q);
  if (std::find(roots.begin(), roots.end(), root % q) == roots.end())
    throw DomainError("prime_ideal: " + std::to_string(root) + " is not a root of the minimal polynomial of w mod " +
                      std::to_string(q));
  return {Int(static_cast<unsigned long>(q)), Int(static_cast<unsigned long>((q - root % q) % q)), 1};
}

IdealPowerGenerator ideal_power_generator(const QuadField& k, const QuadClassGroup& cl, const QuadForm& f, unsigned l) {
  QuadForm g = reduce(f);
  std::size_t idx = cl.index_of(g);
  if (cl.orders[idx] != l)
    throw DomainError("ideal_power_generator: class of (" + to_string(g.a) + "," + to_string(g.b) + "," + to_string(g.c) +
                      ") has order " + to_string(cl.orders[idx]) + ", not " + std::to_string(l));
  QuadIdeal a = k.ideal_from_form(g);
  QuadIdeal al = k.ideal_pow(a, l);
  auto gen = k.principal_generator(al);
  Int expected;
  mpz_pow_ui(expected.get_mpz_t(), a.norm().get_mpz_t(), l);
  if (!gen || k.norm(*gen) != expected) throw DomainError("ideal_power_generator: A^l is not principal");
  return {idx, g, a, l, *gen};
}

std::uint64_t residue_class(const QuadField& k, const QuadElem& u, std::uint64_t q, std::uint64_t root) {
  auto roots = k.w_roots(q);
  if (roots.empty()) throw DomainError("residue_class: " + std::to_string(q) + " is inert; residue field has q^2 elements");
  if (std::find(roots.begin(), roots.end(), root % q) == roots.end())
    throw DomainError("residue_class: " + std::to_string(root) + " is not a root of the minimal polynomial of w mod " +
                      std::to_string(q));
  if (mod_u64(k.norm(u), q) == 0) throw DomainError("residue_class: " + std::to_string(q) + " divides the norm");
  return (mod_u64(u.x, q) + mulmod(mod_u64(u.y, q), root % q, q)) % q;
}

}  // namespace minram

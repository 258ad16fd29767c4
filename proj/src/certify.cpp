#include "minram/certify.hpp"

#include <algorithm>
#include <set>

#include "minram/errors.hpp"

namespace minram {

namespace {

Int ui(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

std::string cycle_type(std::vector<unsigned> degs) {
  std::map<unsigned, unsigned> count;
  for (unsigned d : degs) ++count[d];
  std::string s;
  for (const auto& [d, k] : count) {
    if (!s.empty()) s += " ";
    s += std::to_string(d);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

void require_monic(const ZPoly& f) {
  if (f.degree() < 1 || !f.is_monic()) throw DomainError("polynomial must be monic of positive degree");
}

}  // namespace

const char* to_string(PrimeStatus s) {
  switch (s) {
    case PrimeStatus::Unramified: return "unramified";
    case PrimeStatus::Ramified: return "ramified";
    case PrimeStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PrimeVerdict dedekind_test(const ZPoly& f, const Int& p, const Int& disc) {
  require_monic(f);
  if (!is_prime(p) || !p.fits_ulong_p()) throw DomainError("dedekind_test: " + to_string(p) + " is not a word-size prime");
  const std::uint64_t pp = p.get_ui();
  PrimeVerdict v;
  v.p = p;
  v.method = "dedekind";
  v.disc_valuation = disc == 0 ? 0 : valuation(disc, p);

  FpPoly fb = FpPoly::reduce(f, pp);
  FpPoly g = FpPoly::constant(pp, 1), h = FpPoly::constant(pp, 1);
  for (const auto& fac : factor_mod_p(fb)) {
    g = g * fac.factor;
    for (unsigned e = 1; e < fac.multiplicity; ++e) h = h * fac.factor;
    if (fac.multiplicity > 1) v.repeated_factor = true;
  }
  ZPoly diff = f - g.lift() * h.lift();
  std::vector<Int> fc;
  for (const auto& c : diff.c) {
    if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) throw Error("internal: Dedekind lift is not divisible by p");
    fc.push_back(c / p);
  }
  FpPoly F = FpPoly::reduce(ZPoly(std::move(fc)), pp);
  FpPoly u = gcd(gcd(F, g), h);
  v.index_degree = static_cast<unsigned>(std::max(0, u.degree()));

  if (v.index_degree == 0) v.status = v.repeated_factor ? PrimeStatus::Ramified : PrimeStatus::Unramified;
  else if (v.disc_valuation <= 2 * v.index_degree) v.status = PrimeStatus::Unramified;
  else v.status = PrimeStatus::Inconclusive;
  return v;
}

bool is_irreducible(const ZPoly& f) {
  require_monic(f);
  const unsigned n = static_cast<unsigned>(f.degree());
  if (n == 1) return true;
  Int disc = 0;
  try {
    disc = poly_discriminant(f);
  } catch (const DomainError&) {
    return false;  // repeated factor over Q
  }
  // Degrees of factors over Q are subset sums of the degree pattern modulo
  // every good prime.
  std::vector<bool> possible(n + 1, true);
  unsigned tried = 0;
  for (std::uint64_t p = 2; tried < 60 && p < 100000; ++p) {
    if (!is_prime(p) || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    ++tried;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (unsigned d : factor_degrees(FpPoly::reduce(f, p)))
      for (unsigned s = n; s-- > 0;)
        if (sums[s] && s + d <= n) sums[s + d] = true;
    bool only_trivial = true;
    for (unsigned s = 1; s < n; ++s) {
      possible[s] = possible[s] && sums[s];
      only_trivial &= !possible[s];
    }
    if (only_trivial) return true;
  }
  return false;
}

FieldReport analyze_field(const ZPoly& f, std::optional<std::pair<std::uint64_t, std::uint64_t>> conductor) {
  require_monic(f);
  FieldReport r;
  r.polynomial = f;
  r.poly_disc = poly_discriminant(f);
  r.irreducible = is_irreducible(f);
  if (conductor) {
    auto [q, b] = *conductor;
    if (static_cast<std::uint64_t>(f.degree()) != b) throw DomainError("conductor data does not match the degree");
    r.conductor = q;
    Int fd;
    mpz_ui_pow_ui(fd.get_mpz_t(), q, b - 1);
    // Sign (-1)^r2: the field is real iff (q - 1)/b is even.
    bool real = b == 1 || ((q - 1) / b) % 2 == 0;
    if (!real && (b / 2) % 2 == 1) fd = -fd;
    r.field_disc = fd;
  }
  for (const auto& p : prime_divisors(r.poly_disc)) {
    PrimeVerdict v = dedekind_test(f, p, r.poly_disc);
    if (r.conductor) {
      PrimeStatus cd = p == ui(*r.conductor) ? PrimeStatus::Ramified : PrimeStatus::Unramified;
      if (v.status == PrimeStatus::Inconclusive) {
        v.status = cd;
        v.method = "conductor-discriminant";
      } else if (v.status != cd) {
        throw Error("Dedekind verdict at " + to_string(p) + " contradicts the conductor-discriminant");
      }
    }
    if (v.status == PrimeStatus::Ramified) r.ramified.push_back(p);
    if (v.status == PrimeStatus::Inconclusive) r.inconclusive.push_back(p);
    r.primes.push_back(std::move(v));
  }
  return r;
}

std::vector<Int> ramified_primes(const ZPoly& f) {
  require_monic(f);
  if (!is_irreducible(f)) throw DomainError("ramified_primes: irreducibility of " + f.to_string() + " not proven");
  FieldReport r = analyze_field(f);
  if (!r.inconclusive.empty()) throw Error("ramified_primes: Dedekind test inconclusive at " + to_string(r.inconclusive[0]));
  return r.ramified;
}

FrobeniusReport frobenius_statistics(const CyclicFieldSpec& spec, std::uint64_t bound) {
  if (bound < 100) throw DomainError("frobenius_statistics: bound must be at least 100");
  FrobeniusReport r;
  r.conductor = spec.conductor;
  r.degree = spec.degree;
  r.bound = bound;
  const Int disc = poly_discriminant(spec.defining_poly);
  for (std::uint64_t p = 2; p < bound; ++p) {
    if (!is_prime(p)) continue;
    if (p == spec.conductor || mpz_divisible_ui_p(disc.get_mpz_t(), p)) {
      r.skipped.push_back(p);
      continue;
    }
    ++r.primes_tested;
    auto degs = factor_degrees(FpPoly::reduce(spec.defining_poly, p));
    const std::uint64_t f = spec.character.value_order(ui(p));
    bool ok = std::all_of(degs.begin(), degs.end(), [&](unsigned d) { return d == f; });
    if (!ok) r.mismatches.push_back(p);
    if (std::all_of(degs.begin(), degs.end(), [](unsigned d) { return d == 1; })) ++r.split_count;
    ++r.cycle_types[cycle_type(degs)];
  }
  r.split_fraction = r.primes_tested ? static_cast<double>(r.split_count) / static_cast<double>(r.primes_tested) : 0.0;
  return r;
}

RamificationReport verify_realization(const AbelianRealization& real) {
  RamificationReport rep;
  std::set<Int> uni;
  if (real.specs.size() != real.factors.size()) rep.problems.push_back("one field per invariant factor required");
  for (const auto& spec : real.specs) {
    FieldReport fr = analyze_field(spec.defining_poly, std::make_pair(spec.conductor, spec.degree));
    const Int q = ui(spec.conductor);
    if (!fr.irreducible) rep.problems.push_back("irreducibility of the degree-" + std::to_string(spec.degree) + " field not proven");
    if (fr.ramified != std::vector<Int>{q})
      rep.problems.push_back("field of conductor " + to_string(q) + " does not ramify exactly at its conductor");
    if (!mpz_divisible_p(fr.poly_disc.get_mpz_t(), fr.field_disc->get_mpz_t()))
      rep.problems.push_back("q^(b-1) does not divide the discriminant for conductor " + to_string(q));
    else if (!mpz_perfect_square_p(Int(fr.poly_disc / *fr.field_disc).get_mpz_t()))
      rep.problems.push_back("discriminant ratio is not a square for conductor " + to_string(q));
    uni.insert(fr.ramified.begin(), fr.ramified.end());
    rep.fields.push_back(std::move(fr));
  }
  rep.ramified_primes.assign(uni.begin(), uni.end());
  std::set<Int> claimed;
  for (auto q : real.ramified_primes) claimed.insert(ui(q));
  rep.expected.assign(claimed.begin(), claimed.end());
  if (rep.ramified_primes != rep.expected) rep.problems.push_back("ramified set differs from the claimed set");
  if (rep.ramified_primes.size() != real.factors.size()) rep.problems.push_back("ramified set size differs from d");
  rep.verdict = rep.problems.empty();
  return rep;
}

RamificationReport certify_polynomials(const std::vector<ZPoly>& polys, const std::vector<Int>& expected) {
  RamificationReport rep;
  std::set<Int> uni;
  for (const auto& f : polys) {
    FieldReport fr = analyze_field(f);
    if (!fr.irreducible) rep.problems.push_back("irreducibility of " + f.to_string() + " not proven");
    for (const auto& p : fr.inconclusive) rep.problems.push_back("Dedekind test inconclusive at " + to_string(p));
    uni.insert(fr.ramified.begin(), fr.ramified.end());
    rep.fields.push_back(std::move(fr));
  }
  rep.ramified_primes.assign(uni.begin(), uni.end());
  std::set<Int> ex(expected.begin(), expected.end());
  rep.expected.assign(ex.begin(), ex.end());
  if (rep.ramified_primes != rep.expected) rep.problems.push_back("ramified set differs from the expected set");
  rep.verdict = rep.problems.empty();
  return rep;
}

}  // namespace minram

#include "minram/scholz.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "minram/errors.hpp"

namespace minram {

namespace {

Int ui(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

Int int_pow(unsigned long b, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

// "a 3rd power", "an 11th power".
std::string power_phrase(const Int& m) {
  const std::string d = m.get_str();
  const unsigned long last2 = mpz_fdiv_ui(m.get_mpz_t(), 100);
  const char* suffix = "th";
  if (last2 < 11 || last2 > 13) {
    switch (last2 % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  const bool an = d[0] == '8' || (d.size() % 3 == 2 && (d.rfind("11", 0) == 0 || d.rfind("18", 0) == 0));
  return std::string(an ? "an " : "a ") + d + suffix + " power";
}

Int l_part(Int b, unsigned l) {
  Int r = 1;
  while (b != 0 && mpz_divisible_ui_p(b.get_mpz_t(), l)) {
    b /= l;
    r *= l;
  }
  return r;
}

std::uint64_t to_u64(const Int& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) throw DomainError(std::string(what) + " does not fit in 64 bits");
  return v.get_ui();
}

Condition finish(Condition c, const FieldData& field) {
  c.holds = replay_condition(c, field);
  return c;
}

Condition congruence(unsigned l, const std::string& role, std::uint64_t q, const Int& modulus) {
  Condition c{"congruence", l, role, {ui(q), Int(1), modulus}, false};
  c.holds = mod(c.args[0] - c.args[1], modulus) == 0;
  return c;
}

Condition residue_condition(const ScholzContext& ctx, bool power, unsigned l, const std::string& role,
                            const QuadElem& u, const Int& m, const PrimeChoice& p) {
  Condition c{power ? "power_residue" : "non_power_residue", l, role, {}, false};
  if (ctx.over_q() || !p.root) c.args = {u.x, m, ui(p.q)};
  else c.args = {u.x, u.y, m, ui(p.q), ui(*p.root)};
  return finish(std::move(c), ctx.field());
}

Condition split_condition(const ScholzContext& ctx, const PrimeChoice& p) {
  Condition c{"power_residue", 0, "q splits in K", {ctx.field().disc, Int(2), ui(p.q)}, false};
  return finish(std::move(c), ctx.field());
}

std::string elem_text(const QuadElem& u) {
  if (u.y == 0) return to_string(u.x);
  std::string s = u.x == 0 ? "" : to_string(u.x) + (u.y < 0 ? " - " : " + ");
  Int ay = u.x == 0 ? u.y : Int(abs(u.y));
  return s + (ay == 1 ? "" : ay == -1 ? "-" : to_string(ay)) + "w";
}

// Active primes of a cyclic kernel: the l | b among the group primes.
std::vector<unsigned> active_primes(const ScholzContext& ctx, const Int& b) {
  std::vector<unsigned> out;
  for (unsigned l : ctx.group_primes())
    if (mpz_divisible_ui_p(b.get_mpz_t(), l)) out.push_back(l);
  return out;
}

Int step_modulus(const ScholzContext& ctx, const std::vector<unsigned>& ls) {
  Int m = 1;
  for (unsigned l : ls) m = lcm(m, ctx.level(l));
  return m;
}

// Fast route of the searches: u64 residues with the same acceptance rules
// as replay_condition.
struct FastElem {
  Int x, y, norm;
};

FastElem fast_elem(const ScholzContext& ctx, const QuadElem& u) {
  return {u.x, u.y, ctx.over_q() ? u.x : ctx.quad().norm(u)};
}

bool fast_residue(const FastElem& e, std::uint64_t q, const std::optional<std::uint64_t>& root, std::uint64_t& out) {
  if (mod_u64(e.norm, q) == 0) return false;
  std::uint64_t r = mod_u64(e.x, q);
  if (root) r = (r + mulmod(mod_u64(e.y, q), *root, q)) % q;
  out = r;
  return r != 0;
}

bool fast_is_power(std::uint64_t r, std::uint64_t m, std::uint64_t q) {
  if (m == 0 || (q - 1) % m != 0) return false;
  return powmod(r, (q - 1) / m, q) == 1;
}

struct LocalTest {
  FastElem elem;
  std::uint64_t m;
  bool power;
};

struct RemoteTest {  // s_generator(candidate) is an m-th power at another prime
  PrimeChoice at;
  std::uint64_t m;
};

struct Search {
  Int step = 1;
  std::set<std::uint64_t> avoid;
  std::vector<LocalTest> local;
  std::vector<RemoteTest> remote;
};

std::optional<PrimeChoice> fast_accept(const ScholzContext& ctx, const Search& s, std::uint64_t q) {
  if (s.avoid.count(q)) return std::nullopt;
  for (const auto& root : ctx.places_above(q)) {
    bool ok = true;
    for (const auto& t : s.local) {
      std::uint64_t r;
      if (!fast_residue(t.elem, q, root, r) || fast_is_power(r, t.m, q) != t.power) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (!s.remote.empty()) {
      PrimeChoice cand{q, root};
      FastElem pi = fast_elem(ctx, ctx.s_generator(cand));
      for (const auto& t : s.remote) {
        std::uint64_t r;
        if (!fast_residue(pi, t.at.q, t.at.root, r) || !fast_is_power(r, t.m, t.at.q)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return PrimeChoice{q, root};
  }
  return std::nullopt;
}

PrimeChoice run_search(const ScholzContext& ctx, const Search& s, const ScanOptions& opts, const std::string& what) {
  std::uint64_t step = to_u64(s.step, "search modulus");
  std::uint64_t q = least_prime_1_mod(
      step, [&](std::uint64_t c) { return fast_accept(ctx, s, c).has_value(); }, opts, what);
  return *fast_accept(ctx, s, q);
}

void require_all(const std::vector<Condition>& conds, const std::string& what) {
  for (const auto& c : conds)
    if (!c.holds) throw Error("internal: search accepted " + what + " but condition '" + c.role + "' fails");
}

std::vector<NamedElem> s_units(const ScholzContext& ctx, const std::vector<PrimeChoice>& t,
                               const std::vector<PrimeChoice>& earlier) {
  std::vector<NamedElem> ks = ctx.s0_units();
  for (const auto& p : t) ks.push_back({"pi" + ctx.prime_name(p), ctx.s_generator(p)});
  for (const auto& p : earlier) ks.push_back({"pi" + ctx.prime_name(p), ctx.s_generator(p)});
  return ks;
}

std::set<std::uint64_t> avoid_set(const ScholzContext& ctx, const std::vector<PrimeChoice>& a,
                                  const std::vector<PrimeChoice>& b) {
  std::set<std::uint64_t> s(ctx.s0().begin(), ctx.s0().end());
  for (const auto& p : a) s.insert(p.q);
  for (const auto& p : b) s.insert(p.q);
  return s;
}

// Integer row echelon form with positive pivots and reduced entries above.
std::vector<std::vector<Int>> hermite_rows(std::vector<std::vector<Int>> rows, std::size_t k) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < rows.size(); ++c) {
    bool found = false;
    while (true) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (piv == rows.size() || abs(rows[i][c]) < abs(rows[piv][c]))) piv = i;
      if (piv == rows.size()) break;
      found = true;
      std::swap(rows[r], rows[piv]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int f = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < k; ++j) rows[i][j] -= f * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (!found) continue;
    if (rows[r][c] < 0)
      for (auto& v : rows[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      Int f;
      mpz_fdiv_q(f.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (f != 0)
        for (std::size_t j = 0; j < k; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::vector<PrimeChoice> prefix(const std::vector<PrimeChoice>& v, std::size_t n) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

}  // namespace

bool replay_condition(const Condition& c, const FieldData& field) {
  try {
    if (c.kind == "congruence") {
      if (c.args.size() != 3 || c.args[2] <= 0) return false;
      return mod(c.args[0] - c.args[1], c.args[2]) == 0;
    }
    bool want;
    if (c.kind == "power_residue") want = true;
    else if (c.kind == "non_power_residue") want = false;
    else return false;
    Int a, m, q;
    if (c.args.size() == 3) {
      a = c.args[0];
      m = c.args[1];
      q = c.args[2];
    } else if (c.args.size() == 5) {
      if (!field.is_quadratic()) return false;
      QuadField k(field.disc);
      m = c.args[2];
      q = c.args[3];
      const Int& root = c.args[4];
      if (q < 2 || !is_prime(q) || root < 0 || root >= q) return false;
      if (mod(root * root - k.trace_w() * root + k.norm_w(), q) != 0) return false;
      if (mod(k.norm({c.args[0], c.args[1]}), q) == 0) return false;
      a = c.args[0] + c.args[1] * root;
    } else {
      return false;
    }
    if (q < 2 || !is_prime(q) || m < 1 || mod(q - 1, m) != 0 || mod(a, q) == 0) return false;
    return power_residue(a, m, q) == want;
  } catch (const Error&) {
    return false;
  }
}

GoverningFieldDescription governing_field(const FieldData& field, unsigned l, unsigned N) {
  if (field.kind == FieldData::Kind::Custom) throw DomainError("governing field needs Q or an imaginary quadratic field");
  if (l == 2 || !is_prime(ui(l))) throw DomainError("governing field: l must be an odd prime");
  GoverningFieldDescription out{l, N, int_pow(l, N), {}};
  if (field.is_rational()) return out;
  if (field.torsion % l == 0)
    throw PreconditionError("torsion clash: l = " + std::to_string(l) + " divides |mu_K| = " + std::to_string(field.torsion));
  ScholzContext ctx(field, {l}, std::max(1u, N));
  out.generators = ctx.kummer(l);
  return out;
}

ScholzContext::ScholzContext(const FieldData& field, std::vector<unsigned> group_primes, unsigned N)
    : field_(field), n_(N) {
  std::sort(group_primes.begin(), group_primes.end());
  group_primes.erase(std::unique(group_primes.begin(), group_primes.end()), group_primes.end());
  if (group_primes.empty()) throw DomainError("at least one group prime is required");
  for (unsigned p : group_primes)
    if (p == 2 || !is_prime(ui(p))) throw DomainError("group primes must be odd primes, got " + std::to_string(p));
  if (N == 0) throw DomainError("the exponent N must be positive");
  if (field.kind == FieldData::Kind::Custom)
    throw PreconditionError("prime searches need Q or an explicit imaginary quadratic field");
  primes_ = std::move(group_primes);

  if (field.is_rational()) {
    for (unsigned p : primes_) s0_.push_back(p);
    units_.push_back({"-1", {Int(-1), Int(0)}});
    for (unsigned p : primes_) units_.push_back({std::to_string(p), {ui(p), Int(0)}});
    return;
  }

  k_.emplace(field.disc);
  cl_.emplace(class_group(field.disc));
  const QuadField& k = *k_;
  const QuadClassGroup& cl = *cl_;
  const std::size_t h = cl.forms.size();

  // S_0: the group primes, then split primes whose classes enlarge the
  // subgroup generated so far until it is all of Cl(K).
  std::set<std::size_t> sub{0};
  auto extend = [&](const QuadForm& f) {
    if (sub.count(cl.index_of(f))) return false;
    std::set<std::size_t> next = sub;
    for (QuadForm pw = f; !sub.count(cl.index_of(pw)); pw = compose(pw, f))
      for (std::size_t s : sub) next.insert(cl.index_of(compose(cl.forms[s], pw)));
    sub = std::move(next);
    return true;
  };
  std::set<std::uint64_t> s0(primes_.begin(), primes_.end());
  for (unsigned p : primes_) {
    auto roots = k.w_roots(p);
    if (roots.empty()) continue;
    QuadIdeal P = k.prime_ideal(p, roots[0]);
    s0_ideals_.push_back(P);
    extend(k.form_of(P));
  }
  for (std::uint64_t p = 2; sub.size() < h; ++p) {
    if (p > 10'000'000) throw Error("internal: no class-group generators among small primes");
    if (s0.count(p) || !is_prime(p)) continue;
    auto roots = k.w_roots(p);
    if (roots.size() != 2) continue;
    QuadIdeal P = k.prime_ideal(p, roots[0]);
    if (extend(k.form_of(P))) {
      s0.insert(p);
      s0_ideals_.push_back(P);
    }
  }
  s0_.assign(s0.begin(), s0.end());

  // Class -> exponent vector over the S_0 ideals (BFS tree) and the
  // relation lattice from Schreier generators.
  const std::size_t nk = s0_ideals_.size();
  std::vector<QuadForm> cls;
  for (const auto& P : s0_ideals_) cls.push_back(k.form_of(P));
  class_path_.assign(h, {});
  class_path_[0].assign(nk, 0);
  std::vector<bool> seen(h, false);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < nk; ++i) {
      std::size_t y = cl.index_of(compose(cl.forms[x], cls[i]));
      if (seen[y]) continue;
      seen[y] = true;
      class_path_[y] = class_path_[x];
      ++class_path_[y][i];
      queue.push_back(y);
    }
  }
  std::vector<std::vector<Int>> rels;
  for (std::size_t x = 0; x < h; ++x)
    for (std::size_t i = 0; i < nk; ++i) {
      std::size_t y = cl.index_of(compose(cl.forms[x], cls[i]));
      std::vector<Int> v(nk);
      bool zero = true;
      for (std::size_t j = 0; j < nk; ++j) {
        v[j] = class_path_[x][j] + (j == i ? 1 : 0) - class_path_[y][j];
        zero &= v[j] == 0;
      }
      if (!zero) rels.push_back(std::move(v));
    }
  auto lattice = hermite_rows(std::move(rels), nk);

  units_.push_back({"zeta", k.torsion_generator()});
  for (std::uint64_t p : s0_) units_.push_back({std::to_string(p), {ui(p), Int(0)}});
  std::size_t idx = 1;
  for (const auto& row : lattice) {
    QuadIdeal J = k.ideal({{Int(1), Int(0)}});
    for (std::size_t i = 0; i < nk; ++i) {
      if (row[i] == 0) continue;
      const QuadIdeal base = row[i] > 0 ? s0_ideals_[i] : k.conj(s0_ideals_[i]);
      J = k.ideal_mul(J, k.ideal_pow(base, to_u64(abs(row[i]), "relation exponent")));
    }
    auto g = k.principal_generator(J);
    if (!g) throw Error("internal: relation ideal is not principal");
    units_.push_back({"gamma" + std::to_string(idx++), *g});
  }

  for (unsigned l : primes_) {
    auto& gens = kummer_[l];
    if (k.torsion() % l == 0) continue;
    auto basis = cl.l_torsion_basis(l);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto g = ideal_power_generator(k, cl, basis[j], l);
      gens.push_back({l, static_cast<unsigned>(j + 1), basis[j], g.generator, l});
    }
  }
}

Int ScholzContext::level(unsigned l) const { return int_pow(l, n_); }

const std::vector<KummerGenerator>& ScholzContext::kummer(unsigned l) const {
  static const std::vector<KummerGenerator> empty;
  auto it = kummer_.find(l);
  return it == kummer_.end() ? empty : it->second;
}

unsigned ScholzContext::max_rank() const {
  std::size_t r = 0;
  for (const auto& [l, g] : kummer_) r = std::max(r, g.size());
  return static_cast<unsigned>(r);
}

QuadElem ScholzContext::s_generator(const PrimeChoice& p) const {
  if (over_q()) return {ui(p.q), Int(0)};
  if (!p.root) throw DomainError("a prime of K needs a root of the minimal polynomial of w");
  const QuadField& k = *k_;
  QuadIdeal J = k.prime_ideal(p.q, *p.root);
  const auto& path = class_path_[cl_->index_of(form_inverse(k.form_of(J)))];
  for (std::size_t i = 0; i < path.size(); ++i)
    if (path[i] > 0) J = k.ideal_mul(J, k.ideal_pow(s0_ideals_[i], static_cast<unsigned long>(path[i])));
  auto g = k.principal_generator(J);
  if (!g) throw Error("internal: S-ideal of " + prime_name(p) + " is not principal");
  return *g;
}

std::string ScholzContext::prime_name(const PrimeChoice& p) const {
  if (over_q() || !p.root) return "(" + std::to_string(p.q) + ")";
  return "(" + std::to_string(p.q) + ", w - " + std::to_string(*p.root) + ")";
}

std::uint64_t ScholzContext::residue(const QuadElem& u, const PrimeChoice& p) const {
  if (over_q()) {
    if (u.y != 0) throw DomainError("residue: element is not rational");
    std::uint64_t r = mod_u64(u.x, p.q);
    if (r == 0) throw DomainError("residue: " + std::to_string(p.q) + " divides " + to_string(u.x));
    return r;
  }
  if (!p.root) throw DomainError("residue: a prime of K needs a root");
  return residue_class(*k_, u, p.q, *p.root);
}

std::vector<std::optional<std::uint64_t>> ScholzContext::places_above(std::uint64_t q) const {
  if (over_q()) return {std::nullopt};
  auto roots = k_->w_roots(q);
  if (roots.size() != 2) return {};
  return {roots[0], roots[1]};
}

// Exceptional set.

std::vector<Condition> exceptional_conditions(const ScholzContext& ctx, unsigned index, const PrimeChoice& p) {
  std::vector<Condition> out;
  for (unsigned l : ctx.group_primes())
    out.push_back(congruence(l, "q = 1 mod " + std::to_string(l) + "^N", p.q, ctx.level(l)));
  if (!ctx.over_q()) out.push_back(split_condition(ctx, p));
  for (unsigned l : ctx.group_primes())
    for (const auto& g : ctx.kummer(l)) {
      bool power = g.index != index;
      std::string role = "a_" + std::to_string(g.index) + " = " + elem_text(g.element) + (power ? " is " : " is not ") +
                         power_phrase(ui(l));
      out.push_back(residue_condition(ctx, power, l, role, g.element, ui(l), p));
    }
  return out;
}

ExceptionalSet find_exceptional_set(const ScholzContext& ctx, const std::set<std::uint64_t>& avoid,
                                    const ScanOptions& opts) {
  ExceptionalSet out{ctx.group_primes(), ctx.N(), {}};
  if (ctx.over_q()) return out;
  for (unsigned l : ctx.group_primes())
    if (ctx.quad().torsion() % l == 0)
      throw PreconditionError("torsion clash: l = " + std::to_string(l) + " divides |mu_K| = " +
                              std::to_string(ctx.quad().torsion()));
  std::set<std::uint64_t> excluded(ctx.s0().begin(), ctx.s0().end());
  excluded.insert(avoid.begin(), avoid.end());
  for (unsigned j = 1; j <= ctx.max_rank(); ++j) {
    Search s;
    s.step = step_modulus(ctx, ctx.group_primes());
    s.avoid = excluded;
    for (unsigned l : ctx.group_primes())
      for (const auto& g : ctx.kummer(l)) s.local.push_back({fast_elem(ctx, g.element), l, g.index != j});
    PrimeChoice p = run_search(ctx, s, opts, "exceptional prime " + std::to_string(j));
    auto conds = exceptional_conditions(ctx, j, p);
    require_all(conds, "exceptional prime " + std::to_string(p.q));
    out.members.push_back({j, p, std::move(conds)});
    excluded.insert(p.q);
  }
  return out;
}

ExceptionalSet find_exceptional_set(const FieldData& field, const std::vector<unsigned>& primes, unsigned N,
                                    const std::set<std::uint64_t>& avoid, const ScanOptions& opts) {
  if (field.is_rational()) {
    // Validate the input the same way a search would.
    ScholzContext ctx(field, primes, N);
    return {ctx.group_primes(), N, {}};
  }
  return find_exceptional_set(ScholzContext(field, primes, N), avoid, opts);
}

// Abelian layer.

bool ConditionReport::pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.holds; });
}

namespace {

ConditionReport scholz_abelian_report(const std::vector<Int>& factors, const std::vector<std::uint64_t>& q,
                                      const ScholzConstraints& c) {
  if (c.l == 2 || !is_prime(ui(c.l))) throw DomainError("Scholz conditions: l must be an odd prime");
  if (factors.size() != q.size()) throw DomainError("Scholz conditions: one conductor per factor required");
  for (const auto& b : factors)
    if (b < c.l || l_part(b, c.l) != b) throw DomainError("Scholz conditions: factor " + to_string(b) + " is not a power of l");
  const FieldData field = FieldData::rationals();
  const Int level = int_pow(c.l, c.N);
  auto res = [&](const std::string& role, const Int& a, const Int& m, std::uint64_t p) {
    return finish({"power_residue", c.l, role, {a, m, ui(p)}, false}, field);
  };
  ConditionReport out;
  for (std::size_t i = 0; i < q.size(); ++i)
    out.conditions.push_back(congruence(c.l, "(i) q_" + std::to_string(i + 1) + " = 1 mod l^N", q[i], level));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (i != j)
        out.conditions.push_back(res("(ii) q_" + std::to_string(i + 1) + " is " + power_phrase(factors[j]) + " mod q_" + std::to_string(j + 1),
                                     ui(q[i]), factors[j], q[j]));
  std::set<std::uint64_t> s0(c.s0.begin(), c.s0.end());
  s0.insert(c.l);
  for (std::uint64_t p : s0)
    for (std::size_t j = 0; j < q.size(); ++j)
      out.conditions.push_back(res("(iii) " + std::to_string(p) + " is " + power_phrase(factors[j]) + " mod q_" +
                                       std::to_string(j + 1),
                                   ui(p), factors[j], q[j]));
  return out;
}

Search split_search(const ScholzContext& ctx, const std::vector<Int>& factors, std::size_t i,
                    const std::vector<PrimeChoice>& earlier, const std::vector<PrimeChoice>& t) {
  Search s;
  auto ls = active_primes(ctx, factors[i]);
  s.step = step_modulus(ctx, ls);
  s.avoid = avoid_set(ctx, t, earlier);
  auto ks = s_units(ctx, t, earlier);
  for (unsigned l : ls) {
    std::uint64_t m = to_u64(l_part(factors[i], l), "factor");
    for (const auto& u : ks) s.local.push_back({fast_elem(ctx, u.elem), m, true});
  }
  for (std::size_t j = 0; j < earlier.size(); ++j)
    for (unsigned l : ctx.group_primes()) {
      Int bj = l_part(factors[j], l);
      if (bj > 1) s.remote.push_back({earlier[j], to_u64(bj, "factor")});
    }
  return s;
}

Search repair_search(const ScholzContext& ctx, const RepairInput& in) {
  Search s;
  auto ls = active_primes(ctx, in.kernel);
  s.step = step_modulus(ctx, ls);
  s.avoid = avoid_set(ctx, in.t, in.ramified);
  auto ks = s_units(ctx, in.t, in.ramified);
  for (unsigned l : ls) {
    std::uint64_t m = to_u64(l_part(in.kernel, l), "kernel");
    for (const auto& u : ks) s.local.push_back({fast_elem(ctx, u.elem), m, true});
  }
  for (unsigned l : ls)
    for (std::size_t j = 0; j < in.layer1.size(); ++j) {
      Int bj = l_part(in.layer1_factors[j], l);
      if (bj > 1) s.remote.push_back({in.layer1[j], to_u64(bj, "factor")});
    }
  return s;
}

}  // namespace

ConditionReport check_scholz_abelian(const AbelianRealization& real, const ScholzConstraints& c) {
  return scholz_abelian_report(real.factors, real.ramified_primes, c);
}

std::vector<Condition> split_conditions(const ScholzContext& ctx, const std::vector<Int>& factors, std::size_t i,
                                        const std::vector<PrimeChoice>& conductors, const std::vector<PrimeChoice>& t) {
  if (i >= factors.size() || i >= conductors.size()) throw DomainError("split_conditions: index out of range");
  const PrimeChoice& p = conductors[i];
  const Int& b = factors[i];
  auto ls = active_primes(ctx, b);
  std::vector<Condition> out;
  for (unsigned l : ls) out.push_back(congruence(l, "q = 1 mod " + std::to_string(l) + "^N", p.q, ctx.level(l)));
  if (!ctx.over_q()) out.push_back(split_condition(ctx, p));
  auto ks = s_units(ctx, t, prefix(conductors, i));
  for (unsigned l : ls) {
    Int bl = l_part(b, l);
    for (const auto& u : ks)
      out.push_back(residue_condition(ctx, true, l, u.name + " is " + power_phrase(bl), u.elem, bl, p));
  }
  const QuadElem pi = ctx.s_generator(p);
  for (std::size_t j = 0; j < i; ++j)
    for (unsigned l : ctx.group_primes()) {
      Int bj = l_part(factors[j], l);
      if (bj > 1)
        out.push_back(residue_condition(ctx, true, l,
                                        "pi" + ctx.prime_name(p) + " is " + power_phrase(bj) + " at " +
                                            ctx.prime_name(conductors[j]),
                                        pi, bj, conductors[j]));
    }
  return out;
}

std::vector<Condition> repair_conditions(const ScholzContext& ctx, const RepairInput& in, const PrimeChoice& p) {
  if (in.layer1.size() != in.layer1_factors.size()) throw DomainError("repair: one conductor per layer-one factor required");
  auto ls = active_primes(ctx, in.kernel);
  std::vector<Condition> out;
  for (unsigned l : ls) out.push_back(congruence(l, "q = 1 mod " + std::to_string(l) + "^N", p.q, ctx.level(l)));
  if (!ctx.over_q()) out.push_back(split_condition(ctx, p));
  auto ks = s_units(ctx, in.t, in.ramified);
  for (unsigned l : ls) {
    Int bl = l_part(in.kernel, l);
    for (const auto& u : ks)
      out.push_back(residue_condition(ctx, true, l, u.name + " is " + power_phrase(bl), u.elem, bl, p));
  }
  const QuadElem pi = ctx.s_generator(p);
  for (unsigned l : ls)
    for (std::size_t j = 0; j < in.layer1.size(); ++j) {
      Int bj = l_part(in.layer1_factors[j], l);
      if (bj > 1)
        out.push_back(residue_condition(ctx, true, l,
                                        "pi" + ctx.prime_name(p) + " is " + power_phrase(bj) + " at " +
                                            ctx.prime_name(in.layer1[j]),
                                        pi, bj, in.layer1[j]));
    }
  return out;
}

RepairResult frattini_step_prime(const ScholzContext& ctx, const RepairInput& in, const ScanOptions& opts) {
  if (in.kernel < 2) throw DomainError("repair: kernel order must exceed 1");
  PrimeChoice p = run_search(ctx, repair_search(ctx, in), opts, "repair prime for kernel " + to_string(in.kernel));
  auto conds = repair_conditions(ctx, in, p);
  require_all(conds, "repair prime " + std::to_string(p.q));
  return {p, std::move(conds)};
}

ScholzAbelianResult find_scholz_abelian(const std::vector<Int>& factors, const ScholzConstraints& c,
                                        const ScanOptions& opts) {
  if (c.l == 2 || !is_prime(ui(c.l))) throw DomainError("Scholz search: l must be an odd prime");
  if (factors.empty()) throw DomainError("Scholz search: the group must be nontrivial");
  std::vector<Int> fs = factors;
  std::sort(fs.begin(), fs.end());
  for (const auto& b : fs)
    if (b < c.l || l_part(b, c.l) != b) throw DomainError("Scholz search: factor " + to_string(b) + " is not a power of l");
  std::vector<unsigned> primes{c.l};
  for (std::uint64_t p : c.s0) primes.push_back(static_cast<unsigned>(p));
  ScholzContext ctx(FieldData::rationals(), primes, c.N);

  ScholzAbelianResult out;
  std::vector<PrimeChoice> chosen;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    PrimeChoice p = run_search(ctx, split_search(ctx, fs, i, chosen, {}), opts,
                               "Scholz conductor for factor " + to_string(fs[i]));
    chosen.push_back(p);
    auto conds = split_conditions(ctx, fs, i, chosen, {});
    require_all(conds, "conductor " + std::to_string(p.q));
    out.step_conditions.push_back(std::move(conds));
  }
  std::vector<std::uint64_t> qs;
  for (const auto& p : chosen) qs.push_back(p.q);
  out.realization = realize_with_conductors(fs, qs);
  out.report = check_scholz_abelian(out.realization, c);
  return out;
}

// Certificates.

std::vector<CertificateStep> required_steps(const ScholzContext& ctx, const CentralTowerPlan& plan,
                                            const std::vector<PrimeChoice>& t,
                                            const std::vector<PrimeChoice>& chosen) {
  std::vector<CertificateStep> out;
  if (plan.steps.empty()) {
    if (!chosen.empty()) throw DomainError("certificate lists primes for the trivial group");
    return out;
  }
  const auto& f1 = plan.steps[0].kernel_cyclic_orders;
  if (chosen.size() < f1.size()) throw DomainError("certificate lists too few primes");
  const std::vector<PrimeChoice> layer1 = prefix(chosen, f1.size());
  unsigned id = 1;
  std::size_t next = 0;
  for (std::size_t i = 0; i < f1.size(); ++i, ++next)
    out.push_back({id++, 1, static_cast<unsigned>(i + 1), "SplitCase", f1[i], chosen[i],
                   split_conditions(ctx, f1, i, layer1, t)});
  for (std::size_t s = 1; s < plan.steps.size(); ++s) {
    const auto& layer = plan.steps[s];
    unsigned sub = 1;
    for (const auto& b : layer.kernel_cyclic_orders) {
      if (!layer.costs_extra_prime) {
        out.push_back({id++, layer.layer, sub++, "FinalRemRam", b, std::nullopt, {}});
        continue;
      }
      out.push_back({id++, layer.layer, sub++, "Existence+RemRam", b, std::nullopt, {}});
      if (next >= chosen.size()) throw DomainError("certificate lists too few primes");
      RepairInput in{b, f1, layer1, prefix(chosen, next), t};
      out.push_back({id++, layer.layer, sub++, "ScholzRepair", b, chosen[next], repair_conditions(ctx, in, chosen[next])});
      ++next;
    }
  }
  if (next != chosen.size()) throw DomainError("certificate lists more primes than the plan uses");
  return out;
}

ScholzCertificate build_certificate(const NilpotentGroup& g, const FieldData& field, const ScanOptions& opts) {
  if (g.is_trivial()) throw DomainError("certificate: the group must be nontrivial");
  ScholzCertificate cert;
  cert.group = g;
  cert.field = field;
  cert.plan = central_tower_plan(g);
  cert.N = g.scholz_exponent();
  BoundReport br = paper_bound_report(g, field);
  ScholzContext ctx(field, g.primes(), cert.N);
  cert.s0 = ctx.s0();
  const std::size_t c = cert.plan.steps.size();
  cert.t = {ctx.group_primes(), cert.N, {}};
  if (!ctx.over_q() && c >= 2) cert.t = find_exceptional_set(ctx, {}, opts);
  std::vector<PrimeChoice> t;
  for (const auto& m : cert.t.members) t.push_back(m.prime);

  std::vector<PrimeChoice> chosen;
  const auto& f1 = cert.plan.steps[0].kernel_cyclic_orders;
  for (std::size_t i = 0; i < f1.size(); ++i)
    chosen.push_back(run_search(ctx, split_search(ctx, f1, i, chosen, t), opts,
                                "layer-one conductor for factor " + to_string(f1[i])));
  const std::vector<PrimeChoice> layer1 = chosen;
  for (std::size_t s = 1; s < c; ++s) {
    const auto& layer = cert.plan.steps[s];
    if (!layer.costs_extra_prime) continue;
    for (const auto& b : layer.kernel_cyclic_orders) {
      RepairInput in{b, f1, layer1, chosen, t};
      chosen.push_back(run_search(ctx, repair_search(ctx, in), opts, "repair prime for kernel " + to_string(b)));
    }
  }
  cert.steps = required_steps(ctx, cert.plan, t, chosen);
  for (const auto& st : cert.steps) require_all(st.conditions, "step " + std::to_string(st.id));

  std::set<std::uint64_t> total;
  for (const auto& p : t) total.insert(p.q);
  for (const auto& p : chosen) total.insert(p.q);
  cert.total_ramified.assign(total.begin(), total.end());
  cert.bound = br.value;
  cert.fallback = br.fallback;
  cert.bound_ok = cert.total_ramified.size() <= cert.bound;
  return cert;
}

namespace {

bool same_plan(const CentralTowerPlan& a, const CentralTowerPlan& b) {
  if (a.predicted_prime_count != b.predicted_prime_count || a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const auto& x = a.steps[i];
    const auto& y = b.steps[i];
    if (x.layer != y.layer || x.kind != y.kind || x.kernel_cyclic_orders != y.kernel_cyclic_orders ||
        x.costs_extra_prime != y.costs_extra_prime)
      return false;
  }
  return true;
}

}  // namespace

VerifyReport verify_certificate(const ScholzCertificate& cert) {
  VerifyReport rep;
  auto fail = [&](const std::string& msg) {
    rep.valid = false;
    rep.problems.push_back(msg);
  };
  auto replay_all = [&](const std::vector<Condition>& conds, const std::string& where) {
    for (const auto& c : conds) {
      ++rep.conditions_replayed;
      bool h = replay_condition(c, cert.field);
      if (h != c.holds) fail(where + ": recorded outcome of '" + c.role + "' disagrees with replay");
      else if (!h) fail(where + ": condition '" + c.role + "' does not hold");
    }
  };

  // Conditions are replayed from their operands before anything else.
  for (const auto& m : cert.t.members) replay_all(m.conditions, "exceptional prime " + std::to_string(m.index));
  for (const auto& s : cert.steps) replay_all(s.conditions, "step " + std::to_string(s.id));

  if (cert.group.is_trivial()) {
    fail("group is trivial");
    return rep;
  }
  if (!same_plan(cert.plan, central_tower_plan(cert.group))) fail("tower plan does not match the group");
  if (cert.N != cert.group.scholz_exponent()) fail("N does not match the group exponent");

  try {
    ScholzContext ctx(cert.field, cert.group.primes(), cert.group.scholz_exponent());
    if (cert.s0 != ctx.s0()) fail("S_0 does not match the field and group");
    if (cert.t.primes != ctx.group_primes() || cert.t.N != cert.N) fail("exceptional set header mismatch");
    const std::size_t c = cert.plan.steps.size();
    const std::size_t t_size = !ctx.over_q() && c >= 2 ? ctx.max_rank() : 0;
    if (cert.t.members.size() != t_size) fail("exceptional set has the wrong size");
    std::vector<PrimeChoice> t;
    for (std::size_t j = 0; j < cert.t.members.size(); ++j) {
      const auto& m = cert.t.members[j];
      t.push_back(m.prime);
      if (m.index != j + 1) fail("exceptional members out of order");
      if (exceptional_conditions(ctx, m.index, m.prime) != m.conditions)
        fail("exceptional prime " + std::to_string(m.index) + ": conditions differ from the required ones");
    }
    std::vector<PrimeChoice> chosen;
    for (const auto& s : cert.steps)
      if (s.prime) chosen.push_back(*s.prime);
    auto expected = required_steps(ctx, central_tower_plan(cert.group), t, chosen);
    if (expected.size() != cert.steps.size()) {
      fail("step count differs from the plan");
    } else {
      for (std::size_t i = 0; i < expected.size(); ++i)
        if (!(expected[i] == cert.steps[i])) fail("step " + std::to_string(cert.steps[i].id) + " differs from the required step");
    }

    std::set<std::uint64_t> all;
    std::size_t count = 0;
    for (const auto* list : {&t, &chosen})
      for (const auto& p : *list) {
        ++count;
        all.insert(p.q);
        if (!is_prime(p.q)) fail(std::to_string(p.q) + " is not prime");
        if (std::find(ctx.s0().begin(), ctx.s0().end(), p.q) != ctx.s0().end()) fail(std::to_string(p.q) + " lies in S_0");
      }
    if (all.size() != count) fail("ramified primes are not distinct");
    if (std::vector<std::uint64_t>(all.begin(), all.end()) != cert.total_ramified) fail("total_ramified mismatch");
  } catch (const Error& e) {
    fail(std::string("rebuild failed: ") + e.what());
  }

  try {
    BoundReport br = paper_bound_report(cert.group, cert.field);
    if (br.value != cert.bound || br.fallback != cert.fallback) fail("bound does not match the recomputed bound");
  } catch (const Error& e) {
    fail(std::string("bound: ") + e.what());
  }
  if (cert.bound_ok != (cert.total_ramified.size() <= cert.bound)) fail("bound_ok flag is inconsistent");
  if (!cert.bound_ok) fail("more ramified primes than the bound");
  return rep;
}

Restriction restrict_to_prime(const ScholzCertificate& cert, unsigned l) {
  auto primes = cert.group.primes();
  if (std::find(primes.begin(), primes.end(), l) == primes.end())
    throw DomainError("restriction: " + std::to_string(l) + " does not divide |G|");
  Restriction r{l, 0, true, {}};
  auto take = [&](const std::vector<Condition>& conds) {
    for (const auto& c : conds) {
      if (c.l != 0 && c.l != l) continue;
      ++r.conditions;
      if (!replay_condition(c, cert.field)) r.conditions_pass = false;
    }
  };
  for (const auto& m : cert.t.members) take(m.conditions);
  for (const auto& s : cert.steps) take(s.conditions);

  if (cert.field.is_rational() && !cert.plan.steps.empty()) {
    std::vector<Int> fs;
    std::vector<std::uint64_t> qs;
    for (const auto& s : cert.steps) {
      if (s.justification != "SplitCase" || !s.prime) continue;
      Int bl = l_part(s.kernel, l);
      if (bl > 1) {
        fs.push_back(bl);
        qs.push_back(s.prime->q);
      }
    }
    r.abelian_report = scholz_abelian_report(fs, qs, {l, cert.N, cert.s0});
  }
  return r;
}

}  // namespace minram

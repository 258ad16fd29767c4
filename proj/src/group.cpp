#include "minram/group.hpp"

#include <algorithm>
#include <unordered_map>

#include "minram/errors.hpp"
#include "minram/field_data.hpp"

namespace minram {

namespace {

constexpr std::uint64_t kEnumerationCap = 1ULL << 20;
constexpr std::uint64_t kRegularCheckCap = 6561;  // 3^8

std::uint64_t ipow_u64(std::uint64_t b, unsigned e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

Int ipow(unsigned long b, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

Word to_word(const Exponents& e) {
  Word w;
  for (unsigned i = 0; i < e.size(); ++i)
    if (e[i] != 0) w.push_back({i, static_cast<long>(e[i])});
  return w;
}

}  // namespace

PcGroup::PcGroup(unsigned l, unsigned m, std::vector<Word> powers,
                 std::map<std::pair<unsigned, unsigned>, Word> comms)
    : l_(l), m_(m), powers_(std::move(powers)), comms_(std::move(comms)) {
  if (!is_prime(static_cast<std::uint64_t>(l))) throw PresentationError("prime " + std::to_string(l) + " is not prime");
  if (l == 2) throw PreconditionError("l = 2 is not supported for pc-presentations (odd primes only)");
  if (powers_.empty()) powers_.resize(m);
  if (powers_.size() != m)
    throw PresentationError("expected " + std::to_string(m) + " power relations, got " + std::to_string(powers_.size()));
  for (unsigned i = 0; i < m; ++i)
    for (const auto& lt : powers_[i])
      if (lt.gen <= i || lt.gen >= m)
        throw PresentationError("power relation of g" + std::to_string(i + 1) + " uses g" + std::to_string(lt.gen + 1));
  for (const auto& [key, w] : comms_) {
    auto [j, i] = key;
    if (!(j > i && j < m))
      throw PresentationError("commutator [g" + std::to_string(j + 1) + ", g" + std::to_string(i + 1) + "] must have j > i");
    for (const auto& lt : w)
      if (lt.gen <= j || lt.gen >= m)
        throw PresentationError("commutator [g" + std::to_string(j + 1) + ", g" + std::to_string(i + 1) + "] uses g" +
                                std::to_string(lt.gen + 1));
  }

  // Normalize relation words bottom-up; collecting a word in generators > i
  // only consults relations that are already normalized.
  comm_table_.assign(m, std::vector<Word>(m));
  gen_inverse_.assign(m, Exponents{});
  for (unsigned i = m; i-- > 0;) {
    powers_[i] = to_word(collect(powers_[i]));
    for (unsigned j = i + 1; j < m; ++j) {
      auto it = comms_.find({j, i});
      if (it == comms_.end()) continue;
      it->second = to_word(collect(it->second));
      comm_table_[j][i] = it->second;
    }
    gen_inverse_[i] = inverse(generator(i));
  }
  for (auto it = comms_.begin(); it != comms_.end();) {
    it = it->second.empty() ? comms_.erase(it) : std::next(it);
  }
  verify_consistency();
}

PcGroup PcGroup::trivial(unsigned l) { return PcGroup(l, 0, {}, {}); }

PcGroup PcGroup::cyclic(unsigned l, unsigned e) { return abelian(l, {e}); }

PcGroup PcGroup::abelian(unsigned l, const std::vector<unsigned>& exps) {
  unsigned m = 0;
  for (unsigned e : exps) m += e;
  std::vector<Word> powers(m);
  unsigned base = 0;
  for (unsigned e : exps) {
    for (unsigned k = 0; k + 1 < e; ++k) powers[base + k] = {{base + k + 1, 1}};
    base += e;
  }
  return PcGroup(l, m, std::move(powers), {});
}

Int PcGroup::order() const { return ipow(l_, m_); }

Exponents PcGroup::generator(unsigned i) const {
  Exponents e(m_, 0);
  e.at(i) = 1;
  return e;
}

void PcGroup::mul_gen(Exponents& e, unsigned k) const {
  // x = P g_k^e_k T with T in generators > k; x g_k = P g_k^(e_k+1) T^g_k.
  Word tail;
  for (unsigned j = k + 1; j < m_; ++j) {
    if (e[j] != 0) {
      tail.push_back({j, static_cast<long>(e[j])});
      e[j] = 0;
    }
  }
  if (++e[k] == l_) {
    e[k] = 0;
    mul_word(e, powers_[k]);
  }
  for (const auto& [j, a] : tail) {
    const Word& c = comm_table_[j][k];
    for (long t = 0; t < a; ++t) {
      mul_gen(e, j);
      mul_word(e, c);
    }
  }
}

void PcGroup::mul_word(Exponents& e, const Word& w) const {
  for (const auto& [gen, exp] : w) {
    if (exp >= 0) {
      for (long t = 0; t < exp; ++t) mul_gen(e, gen);
    } else {
      const Exponents& inv = gen_inverse_[gen];
      for (long t = 0; t < -exp; ++t) e = mul(e, inv);
    }
  }
}

Exponents PcGroup::collect(const Word& w) const {
  for (const auto& lt : w)
    if (lt.gen >= m_) throw PresentationError("word uses g" + std::to_string(lt.gen + 1) + " beyond the presentation");
  Exponents e = identity();
  for (const auto& [gen, exp] : w) {
    if (exp >= 0) {
      for (long t = 0; t < exp; ++t) mul_gen(e, gen);
    } else {
      Exponents inv = gen_inverse_[gen].empty() ? inverse(generator(gen)) : gen_inverse_[gen];
      for (long t = 0; t < -exp; ++t) e = mul(e, inv);
    }
  }
  return e;
}

Exponents PcGroup::mul(const Exponents& a, const Exponents& b) const {
  Exponents e = a;
  for (unsigned j = 0; j < m_; ++j)
    for (unsigned t = 0; t < b[j]; ++t) mul_gen(e, j);
  return e;
}

Exponents PcGroup::inverse(const Exponents& a) const {
  Exponents z = a, y = identity();
  for (unsigned k = 0; k < m_; ++k) {
    unsigned need = (l_ - z[k]) % l_;
    for (unsigned t = 0; t < need; ++t) {
      mul_gen(z, k);
      mul_gen(y, k);
    }
  }
  return y;
}

Exponents PcGroup::pow(const Exponents& a, long n) const {
  Exponents base = n < 0 ? inverse(a) : a;
  unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
  Exponents r = identity();
  while (k) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return r;
}

Exponents PcGroup::commutator(const Exponents& a, const Exponents& b) const {
  return mul(mul(inverse(a), inverse(b)), mul(a, b));
}

Exponents PcGroup::conjugate(const Exponents& a, const Exponents& by) const {
  return mul(mul(inverse(by), a), by);
}

bool PcGroup::is_identity(const Exponents& a) const {
  return std::all_of(a.begin(), a.end(), [](unsigned x) { return x == 0; });
}

Int PcGroup::element_order(const Exponents& a) const {
  Int order = 1;
  Exponents x = a;
  while (!is_identity(x)) {
    x = pow(x, l_);
    order *= l_;
  }
  return order;
}

std::vector<Exponents> PcGroup::elements() const {
  std::uint64_t n = ipow_u64(l_, m_, kEnumerationCap);
  if (n > kEnumerationCap) throw DomainError("group of order " + to_string(order()) + " exceeds the enumeration cap 2^20");
  std::vector<Exponents> out;
  out.reserve(n);
  Exponents e = identity();
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(e);
    for (unsigned k = m_; k-- > 0;) {
      if (++e[k] < l_) break;
      e[k] = 0;
    }
  }
  return out;
}

void PcGroup::verify_consistency() const {
  auto fail = [](const std::string& what) { throw PresentationError("inconsistent presentation: " + what); };
  auto gname = [](unsigned i) { return "g" + std::to_string(i + 1); };

  for (unsigned k = 0; k < m_; ++k) {
    for (unsigned j = 0; j < k; ++j)
      for (unsigned i = 0; i < j; ++i)
        if (mul(mul(generator(k), generator(j)), generator(i)) != mul(generator(k), mul(generator(j), generator(i))))
          fail("associativity of " + gname(k) + " " + gname(j) + " " + gname(i));
  }
  for (unsigned i = 0; i < m_; ++i) {
    Exponents gi = generator(i), pi = collect(powers_[i]);
    Exponents gi_lm1 = identity();
    gi_lm1[i] = l_ - 1;
    if (mul(pi, gi) != mul(gi, pi)) fail(gname(i) + "^l commuting with " + gname(i));
    for (unsigned j = i + 1; j < m_; ++j) {
      Exponents gj = generator(j), pj = collect(powers_[j]);
      Exponents gj_lm1 = identity();
      gj_lm1[j] = l_ - 1;
      if (mul(pj, gi) != mul(gj_lm1, mul(gj, gi))) fail("power " + gname(j) + "^l against " + gname(i));
      if (mul(gj, pi) != mul(mul(gj, gi), gi_lm1)) fail(gname(j) + " against power " + gname(i) + "^l");
    }
  }

  std::uint64_t n = ipow_u64(l_, m_, kRegularCheckCap);
  if (n > kRegularCheckCap) return;

  // Right-regular action: the maps x -> x g_i must satisfy every defining
  // relation; transitivity then forces |G| = l^m.
  auto index = [&](const Exponents& e) {
    std::uint64_t idx = 0;
    for (unsigned x : e) idx = idx * l_ + x;
    return idx;
  };
  std::vector<Exponents> elems = elements();
  std::vector<std::vector<std::uint32_t>> act(m_, std::vector<std::uint32_t>(n));
  for (unsigned i = 0; i < m_; ++i) {
    std::vector<bool> hit(n, false);
    for (std::uint64_t x = 0; x < n; ++x) {
      Exponents e = elems[x];
      mul_gen(e, i);
      std::uint64_t y = index(e);
      if (hit[y]) fail("right multiplication by " + gname(i) + " is not injective");
      hit[y] = true;
      act[i][x] = static_cast<std::uint32_t>(y);
    }
  }
  auto apply = [&](std::uint64_t x, const Word& w) {
    for (const auto& [gen, exp] : w)
      for (long t = 0; t < exp; ++t) x = act[gen][x];
    return x;
  };
  for (std::uint64_t x = 0; x < n; ++x) {
    for (unsigned i = 0; i < m_; ++i) {
      std::uint64_t y = x;
      for (unsigned t = 0; t < l_; ++t) y = act[i][y];
      if (y != apply(x, powers_[i])) fail("power relation of " + gname(i) + " fails in the regular action");
      for (unsigned j = i + 1; j < m_; ++j) {
        std::uint64_t lhs = act[i][act[j][x]];
        std::uint64_t rhs = apply(act[j][act[i][x]], comm_table_[j][i]);
        if (lhs != rhs) fail("commutator relation [" + gname(j) + ", " + gname(i) + "] fails in the regular action");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Subgroups

namespace {

std::optional<unsigned> depth(const Exponents& e) {
  for (unsigned i = 0; i < e.size(); ++i)
    if (e[i] != 0) return i;
  return std::nullopt;
}

}  // namespace

Subgroup Subgroup::generated(const PcGroup& g, const std::vector<Exponents>& gens) {
  Subgroup s(g);
  for (const auto& x : gens) s.insert(x);
  s.close(false);
  return s;
}

Subgroup Subgroup::normal_closure(const PcGroup& g, const std::vector<Exponents>& gens) {
  Subgroup s(g);
  for (const auto& x : gens) s.insert(x);
  s.close(true);
  return s;
}

Subgroup Subgroup::whole(const PcGroup& g) {
  Subgroup s(g);
  for (unsigned i = 0; i < g.num_gens(); ++i) s.seq_[i] = g.generator(i);
  return s;
}

Int Subgroup::order() const { return ipow(g_->prime(), seq_.size()); }

Exponents Subgroup::sift(Exponents x) const {
  const unsigned l = g_->prime();
  for (;;) {
    auto d = depth(x);
    if (!d) return x;
    auto it = seq_.find(*d);
    if (it == seq_.end()) return x;
    x = g_->mul(x, g_->pow(it->second, l - x[*d]));
  }
}

bool Subgroup::contains(const Exponents& x) const { return g_->is_identity(sift(x)); }

bool Subgroup::insert(const Exponents& x) {
  Exponents y = sift(x);
  auto d = depth(y);
  if (!d) return false;
  const unsigned l = g_->prime();
  unsigned a = y[*d];
  unsigned inv = static_cast<unsigned>(powmod(a, l - 2, l));
  seq_[*d] = g_->pow(y, inv);
  return true;
}

void Subgroup::close(bool normal) {
  const unsigned l = g_->prime();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Exponents> cur = generators();
    for (std::size_t a = 0; a < cur.size(); ++a) {
      changed |= insert(g_->pow(cur[a], l));
      for (std::size_t b = 0; b < a; ++b) changed |= insert(g_->commutator(cur[a], cur[b]));
      if (normal)
        for (unsigned i = 0; i < g_->num_gens(); ++i) changed |= insert(g_->conjugate(cur[a], g_->generator(i)));
    }
  }
}

std::vector<Exponents> Subgroup::generators() const {
  std::vector<Exponents> out;
  for (const auto& [d, x] : seq_) out.push_back(x);
  return out;
}

std::vector<Int> abelian_invariants(const PcGroup& g, const Subgroup& h, const Subgroup& k) {
  const unsigned l = g.prime();
  const unsigned base = k.log_order();
  std::vector<unsigned> n;  // n[t] = log_l |(H/K)^(l^t)|
  std::vector<Exponents> hgens = h.generators(), kgens = k.generators();
  for (unsigned long t = 0;; ++t) {
    std::vector<Exponents> gens = kgens;
    for (const auto& x : hgens) gens.push_back(g.pow(x, ipow(l, t).get_si()));
    unsigned v = Subgroup::generated(g, gens).log_order() - base;
    n.push_back(v);
    if (v == 0) break;
  }
  std::vector<Int> out;
  for (unsigned e = 1; e < n.size(); ++e) {
    unsigned above_prev = n[e - 1] - n[e];
    unsigned above = e + 1 < n.size() ? n[e] - n[e + 1] : 0;
    for (unsigned i = 0; i < above_prev - above; ++i) out.push_back(ipow(l, e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

unsigned generator_rank(const PcGroup& g) {
  std::vector<Exponents> gens;
  const unsigned m = g.num_gens();
  for (unsigned i = 0; i < m; ++i) {
    gens.push_back(g.pow(g.generator(i), g.prime()));
    for (unsigned j = i + 1; j < m; ++j) gens.push_back(g.commutator(g.generator(j), g.generator(i)));
  }
  return m - Subgroup::normal_closure(g, gens).log_order();
}

SeriesReport series_report(const PcGroup& g) {
  SeriesReport r;
  Subgroup cur = Subgroup::whole(g);
  r.lcs_orders.push_back(cur.order());
  while (cur.log_order() > 0) {
    std::vector<Exponents> comms;
    for (const auto& h : cur.generators())
      for (unsigned i = 0; i < g.num_gens(); ++i) comms.push_back(g.commutator(h, g.generator(i)));
    Subgroup next = Subgroup::normal_closure(g, comms);
    if (next.log_order() == cur.log_order()) throw PresentationError("lower central series does not terminate");
    auto factors = abelian_invariants(g, cur, next);
    r.quotient_ranks.push_back(static_cast<unsigned>(factors.size()));
    r.quotient_factors.push_back(std::move(factors));
    r.lcs_orders.push_back(next.order());
    cur = next;
  }
  r.nilpotency_class = static_cast<unsigned>(r.quotient_ranks.size());
  r.d = generator_rank(g);
  for (const auto& x : g.elements()) {
    Int o = g.element_order(x);
    if (o > r.exponent) r.exponent = o;
  }
  return r;
}

Int center_order(const PcGroup& g) {
  Int count = 0;
  for (const auto& x : g.elements()) {
    bool central = true;
    for (unsigned i = 0; i < g.num_gens() && central; ++i)
      central = g.mul(x, g.generator(i)) == g.mul(g.generator(i), x);
    if (central) ++count;
  }
  return count;
}

namespace {

CentralTowerPlan plan_from_layers(const std::vector<std::vector<Int>>& layers, unsigned d) {
  CentralTowerPlan plan;
  const unsigned c = static_cast<unsigned>(layers.size());
  plan.predicted_prime_count = d;
  for (unsigned i = 1; i <= c; ++i) {
    TowerLayer step{i, i == 1 ? StepKind::Split : StepKind::Frattini, layers[i - 1], i >= 2 && i < c};
    if (step.costs_extra_prime) plan.predicted_prime_count += static_cast<unsigned>(step.kernel_cyclic_orders.size());
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

}  // namespace

CentralTowerPlan central_tower_plan(const PcGroup& g) {
  SeriesReport r = series_report(g);
  return plan_from_layers(r.quotient_factors, r.d);
}

// ---------------------------------------------------------------------------
// Nilpotent groups

NilpotentGroup::NilpotentGroup(std::vector<PcGroup> sylows) {
  for (auto& s : sylows) {
    const unsigned l = s.prime();
    if (sylows_.count(l)) throw PresentationError("two Sylow subgroups for l = " + std::to_string(l));
    if (s.num_gens() == 0) continue;
    reports_.emplace(l, series_report(s));
    sylows_.emplace(l, std::move(s));
  }
}

std::vector<unsigned> NilpotentGroup::primes() const {
  std::vector<unsigned> out;
  for (const auto& [l, s] : sylows_) out.push_back(l);
  return out;
}

Int NilpotentGroup::order() const {
  Int n = 1;
  for (const auto& [l, s] : sylows_) n *= s.order();
  return n;
}

Int NilpotentGroup::radical() const {
  Int a = 1;
  for (const auto& [l, s] : sylows_) a *= l;
  return a;
}

unsigned NilpotentGroup::scholz_exponent() const {
  unsigned n = 0;
  for (const auto& [l, r] : reports_) n = std::max(n, valuation(r.exponent, Int(l)));
  return n;
}

bool NilpotentGroup::is_abelian() const {
  return std::all_of(reports_.begin(), reports_.end(), [](const auto& kv) { return kv.second.nilpotency_class <= 1; });
}

unsigned NilpotentGroup::d() const {
  unsigned d = 0;
  for (const auto& [l, r] : reports_) d = std::max(d, r.d);
  return d;
}

unsigned NilpotentGroup::nilpotency_class() const {
  unsigned c = 0;
  for (const auto& [l, r] : reports_) c = std::max(c, r.nilpotency_class);
  return c;
}

Int NilpotentGroup::exponent() const {
  Int e = 1;
  for (const auto& [l, r] : reports_) e *= r.exponent;
  return e;
}

std::vector<Int> merge_invariant_factors(const std::vector<std::vector<Int>>& per_prime) {
  std::size_t width = 0;
  for (const auto& f : per_prime) width = std::max(width, f.size());
  std::vector<Int> out(width, 1);
  for (auto f : per_prime) {
    std::sort(f.rbegin(), f.rend());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] *= f[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

CentralTowerPlan central_tower_plan(const NilpotentGroup& g) {
  const unsigned c = g.nilpotency_class();
  std::vector<std::vector<Int>> layers;
  for (unsigned i = 0; i < c; ++i) {
    std::vector<std::vector<Int>> per_prime;
    for (unsigned l : g.primes()) {
      const auto& r = g.report(l);
      if (i < r.quotient_factors.size()) per_prime.push_back(r.quotient_factors[i]);
    }
    layers.push_back(merge_invariant_factors(per_prime));
  }
  return plan_from_layers(layers, g.d());
}

BoundReport paper_bound_report(const NilpotentGroup& g, const FieldData& field) {
  BoundReport out;
  if (g.is_abelian()) {
    out.value = g.d();
    return out;
  }
  unsigned r = 0;
  bool fallback = false;
  for (unsigned l : g.primes()) {
    if (field.torsion % l == 0)
      throw PreconditionError("torsion clash: l = " + std::to_string(l) + " divides |mu_K| = " +
                              std::to_string(field.torsion));
    r = std::max(r, field.l_rank(l));
    fallback |= field.has_l_squared_class(l);
  }
  const unsigned t = r + field.unit_rank;
  if (fallback) {
    unsigned n = 0;
    for (const auto& [l, s] : g.sylows()) n = std::max(n, s.num_gens());
    out.value = n + t;
    out.fallback = true;
    return out;
  }
  out.value = central_tower_plan(g).predicted_prime_count + t;
  return out;
}

unsigned paper_bound(const NilpotentGroup& g, const FieldData& field) { return paper_bound_report(g, field).value; }

unsigned boston_bound(const NilpotentGroup& g) { return std::max(1u, g.d()); }

PcGroup free_class2_exponent_l(unsigned n, unsigned l) {
  if (n < 1) throw DomainError("free_class2_exponent_l: n must be >= 1");
  unsigned m = n;
  std::map<std::pair<unsigned, unsigned>, Word> comms;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) comms[{j, i}] = {{m++, 1}};
  return PcGroup(l, m, std::vector<Word>(m), std::move(comms));
}

Sgl3Family sgl3_family(unsigned n, unsigned l) {
  if (n < 1) throw DomainError("sgl3_family: n must be >= 1");
  const unsigned k = n * (n - 1) / 2;
  std::string claim = n == 1 ? "G cyclic of order " + std::to_string(l) + "; no central class field"
                             : "M(G/Z(G)) = Z(G) = [G,G], elementary abelian of rank " + std::to_string(k);
  return {n, ipow(l, k), claim, free_class2_exponent_l(n, l)};
}

}  // namespace minram

#include "minram/field_data.hpp"

#include "minram/errors.hpp"
#include "minram/quadfield.hpp"

namespace minram {

FieldData FieldData::rationals() { return FieldData{}; }

FieldData FieldData::imaginary_quadratic(const Int& disc) {
  QuadField k(disc);
  QuadClassGroup cl = class_group(disc);
  FieldData f;
  f.kind = Kind::ImaginaryQuadratic;
  f.disc = disc;
  f.unit_rank = 0;
  f.torsion = k.torsion();
  f.class_number = cl.h;
  f.class_structure = cl.structure;
  return f;
}

FieldData FieldData::custom(unsigned s, std::map<unsigned, unsigned> r, Int h, unsigned mu, std::set<unsigned> l_squared) {
  if (h < 1) throw DomainError("custom field: class number must be positive");
  if (mu < 2 || mu % 2 != 0) throw DomainError("custom field: |mu_K| must be even and >= 2");
  FieldData f;
  f.kind = Kind::Custom;
  f.unit_rank = s;
  f.torsion = mu;
  f.class_number = std::move(h);
  f.l_ranks = std::move(r);
  f.l_squared = std::move(l_squared);
  return f;
}

unsigned FieldData::l_rank(unsigned l) const {
  switch (kind) {
    case Kind::Rational:
      return 0;
    case Kind::ImaginaryQuadratic: {
      unsigned r = 0;
      for (const auto& x : class_structure)
        if (mpz_divisible_ui_p(x.get_mpz_t(), l)) ++r;
      return r;
    }
    case Kind::Custom: {
      auto it = l_ranks.find(l);
      return it == l_ranks.end() ? 0 : it->second;
    }
  }
  return 0;
}

bool FieldData::has_l_squared_class(unsigned l) const {
  switch (kind) {
    case Kind::Rational:
      return false;
    case Kind::ImaginaryQuadratic:
      for (const auto& x : class_structure)
        if (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(l) * l)) return true;
      return false;
    case Kind::Custom:
      return l_squared.count(l) > 0;
  }
  return false;
}

std::string FieldData::describe() const {
  switch (kind) {
    case Kind::Rational:
      return "Q";
    case Kind::ImaginaryQuadratic:
      return "Q(sqrt(" + to_string(disc) + "))";
    case Kind::Custom:
      return "custom(s=" + std::to_string(unit_rank) + ", h=" + to_string(class_number) + ")";
  }
  return "?";
}

}  // namespace minram

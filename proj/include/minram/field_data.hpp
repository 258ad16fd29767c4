#pragma once

// Arithmetic data of the base field K consumed by the bounds and planners.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "minram/arith.hpp"

namespace minram {

struct FieldData {
  enum class Kind { Rational, ImaginaryQuadratic, Custom };

  Kind kind = Kind::Rational;
  Int disc = 1;                          // imaginary quadratic only
  unsigned unit_rank = 0;                // s
  unsigned torsion = 2;                  // |mu_K|
  Int class_number = 1;                  // h
  std::vector<Int> class_structure;      // invariant factors, ascending (quadratic)
  std::map<unsigned, unsigned> l_ranks;  // user-supplied r_l (custom)
  std::set<unsigned> l_squared;          // user-supplied: l with a class of order l^2

  static FieldData rationals();
  // Computes the class group; throws DomainError for non-fundamental D.
  static FieldData imaginary_quadratic(const Int& disc);
  static FieldData custom(unsigned s, std::map<unsigned, unsigned> r, Int h, unsigned mu = 2,
                          std::set<unsigned> l_squared = {});

  // dim_F_l Cl(K)/l.
  unsigned l_rank(unsigned l) const;
  bool has_l_squared_class(unsigned l) const;
  bool is_rational() const { return kind == Kind::Rational; }
  bool is_quadratic() const { return kind == Kind::ImaginaryQuadratic; }
  std::string describe() const;
};

}  // namespace minram

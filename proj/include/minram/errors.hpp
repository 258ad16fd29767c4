#pragma once

#include <stdexcept>
#include <string>

namespace minram {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its mathematical domain (e.g. m does not
// divide q - 1 in a power-residue test).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The pc-presentation does not define a group of the advertised order.
class PresentationError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of a bound or construction does not hold (torsion clash,
// non-fundamental discriminant, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A deterministic prime scan reached its cap without finding a candidate.
class SearchLimitError : public Error {
 public:
  SearchLimitError(const std::string& what, std::string bound)
      : Error(what + " (scan limit " + bound + ")"), bound_(std::move(bound)) {}
  const std::string& bound() const { return bound_; }

 private:
  std::string bound_;
};

}  // namespace minram

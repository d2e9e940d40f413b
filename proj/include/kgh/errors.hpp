#pragma once

#include <stdexcept>
#include <string>

namespace kgh {

// Base of every error raised by the library. Callers that only care about
// "the computation could not be carried out" catch this one.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
public:
  using Error::Error;
};

class PoleAtRadius : public Error {
public:
  PoleAtRadius(double r, double denominator)
      : Error("potential pole at r=" + std::to_string(r) +
              " (|1 - q exp(-alpha r)| = " + std::to_string(denominator) + ")"),
        radius(r) {}
  double radius;
};

class NonRealA : public Error {
public:
  explicit NonRealA(double radicand)
      : Error("parameter a is not real (radicand " + std::to_string(radicand) + " < 0)"),
        radicand(radicand) {}
  double radicand;
};

class ConstraintViolated : public Error {
public:
  explicit ConstraintViolated(std::string inequality)
      : Error("constraint violated: " + inequality), inequality(std::move(inequality)) {}
  std::string inequality;
};

class DegenerateLevel : public Error {
public:
  using Error::Error;
};

class NoRealK : public Error {
public:
  using Error::Error;
};

class NoPhysicalBranch : public Error {
public:
  using Error::Error;
};

class UnsupportedSigma : public Error {
public:
  using Error::Error;
};

class NoRoot : public Error {
public:
  using Error::Error;
};

class NoSignChange : public Error {
public:
  using Error::Error;
};

class QuadratureFailure : public Error {
public:
  using Error::Error;
};

class InvalidQuantumNumbers : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

} // namespace kgh

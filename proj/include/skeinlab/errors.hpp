/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every skeinlab module.
 *
 * The CLI maps these onto exit codes: validation-type errors exit with 2,
 * budget errors with 3.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skeinlab {

/// Base of all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative factorial, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A label triple violates parity or the triangle inequality.
class AdmissibilityError : public Error {
  public:
    using Error::Error;
};

/// A coefficient would divide by zero.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

/// Malformed diagram / network / packing (dangling ports, bad references, ...).
class StructuralError : public Error {
  public:
    using Error::Error;
};

/// Input parsed fine but is outside the supported class (e.g. non-planar rotation system).
class UnsupportedError : public Error {
  public:
    using Error::Error;
};

/// The recoupling reducer hit its move budget or an irreducible configuration.
class ReductionFailure : public Error {
  public:
    using Error::Error;
};

/// Circle configuration that cannot exist (negative Descartes discriminant, ...).
class GeometryError : public Error {
  public:
    using Error::Error;
};

/// A packing edge that cannot carry a chromatic label (negative or non-integer).
class LabelingError : public Error {
  public:
    using Error::Error;
};

/// Analytic continuation hit a gamma pole.
class PoleError : public Error {
  public:
    PoleError(const std::string& what, double argument) : Error(what), argument_(argument) {}
    double argument() const noexcept { return argument_; }

  private:
    double argument_;
};

/// State enumeration would exceed the configured budget. Carries the exact count.
class BudgetError : public Error {
  public:
    BudgetError(const std::string& what, std::string state_count)
        : Error(what), state_count_(std::move(state_count)) {}
    const std::string& state_count() const noexcept { return state_count_; }

  private:
    std::string state_count_;
};

/// A file could not be read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace skeinlab

#pragma once

#include <stdexcept>
#include <string>

namespace pdm {

/// Argument outside the mathematical domain of a function (q <= 0, |y| > 700, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole of cosech_q / coth_q.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Quantum number outside the admissible bound-state range.
class IndexError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Value outside the range of a mapping (inverse requested for unattainable y).
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Iterative method (quadrature, root finder, eigensolver) exhausted its budget.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite intermediate result that would otherwise saturate silently.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// eta == 0 in the Rosen-Morse energy formula.
class DegenerateStateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Scarf branch whose energy has a non-negligible imaginary part.
class NonRealEnergyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A complex wavefunction that stays complex after global phase removal.
class PhaseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pdm

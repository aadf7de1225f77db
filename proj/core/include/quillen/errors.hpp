#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace quillen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (CLI exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured size or arithmetic budget was exceeded (CLI exit code 3).
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class OrderTooLarge : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class MixedRings : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class MixedGroups : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NonAbelianGroup : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotNormal : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InvalidBoundary : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotInvertible : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotAcyclic : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class RankMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class MismatchedBase : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Machine-checkable certificate that a construction cannot be carried out.
///
/// `vectors` holds integer coordinate vectors whose meaning is given by
/// `kind`; `moduli` gives the modulus of each coordinate (0 = free) where
/// that applies.
struct ObstructionData {
  std::string kind;
  std::string description;
  std::vector<std::vector<mpz_class>> vectors;
  std::vector<mpz_class> moduli;
};

/// A well-formed negative answer (CLI exit code 1).
class Obstruction : public Error {
 public:
  Obstruction(const std::string& what, ObstructionData data)
      : Error(what), data_(std::move(data)) {}
  const ObstructionData& data() const noexcept { return data_; }

 private:
  ObstructionData data_;
};

class NotLiftable : public Obstruction {
 public:
  using Obstruction::Obstruction;
};

class NotPerfect : public Obstruction {
 public:
  using Obstruction::Obstruction;
};

class NotASummand : public Obstruction {
 public:
  using Obstruction::Obstruction;
};

class NotOneSidedH : public Obstruction {
 public:
  using Obstruction::Obstruction;
};

}  // namespace quillen

#pragma once

#include <stdexcept>
#include <string>

namespace tensorlsd {

// Caller supplied an argument outside an operation's contract (bad dims,
// cap exceeded, missing tau moments, ...).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine failed or produced a result outside its tolerance
// (solver did not converge, imaginary residue on a Hermitian trace, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tensorlsd

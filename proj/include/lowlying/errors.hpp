#pragma once

#include <stdexcept>
#include <string>

namespace lowlying {

/// Argument outside the mathematical domain of an operation (p not prime, gcd > 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A precondition on structured input failed (spacing, ranges, sizes).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical procedure could not certify its result.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File has the wrong magic, version or layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed line in a text input; line() is 1-based.
class LineFormatError : public FormatError {
 public:
  LineFormatError(int line, const std::string& what)
      : FormatError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A zero list does not reach the height the test function needs.
class TruncatedZeroListError : public PreconditionError {
 public:
  TruncatedZeroListError(double have, double need)
      : PreconditionError("zero list truncated below required height: T = " + std::to_string(have) +
                          ", need " + std::to_string(need)),
        have_(have),
        need_(need) {}
  double have() const { return have_; }
  double need() const { return need_; }

 private:
  double have_, need_;
};

class ChecksumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The weight box contains no lattice point at the requested scale.
class EmptyFamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lowlying

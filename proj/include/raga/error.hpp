#pragma once

#include <stdexcept>
#include <string>

namespace raga {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input errors: malformed tokens, bad shapes, unsatisfied preconditions.
/// The CLI maps these to exit status 2.
class InputError : public Error {
public:
  using Error::Error;
};

class RangeError : public InputError {
public:
  using InputError::InputError;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& token, std::size_t position, const std::string& why)
      : InputError("cannot parse token '" + token + "' at position " +
                   std::to_string(position) + ": " + why),
        token_(token),
        position_(position) {}

  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

private:
  std::string token_;
  std::size_t position_;
};

class InsufficientDataError : public InputError {
public:
  using InputError::InputError;
};

class EmptyDataError : public InputError {
public:
  using InputError::InputError;
};

class DegenerateScaleError : public InputError {
public:
  using InputError::InputError;
};

class SplitError : public InputError {
public:
  using InputError::InputError;
};

class ShapeError : public InputError {
public:
  using InputError::InputError;
};

class UnknownStateError : public InputError {
public:
  using InputError::InputError;
};

/// Numeric failures (non-finite loss, every sweep cell diverged).
/// The CLI maps these to exit status 3.
class NumericError : public Error {
public:
  using Error::Error;
};

class DivergenceError : public NumericError {
public:
  DivergenceError(std::size_t epoch, double eta)
      : NumericError("training diverged (non-finite loss) at epoch " +
                     std::to_string(epoch) + " with eta=" + std::to_string(eta)),
        epoch_(epoch),
        eta_(eta) {}

  std::size_t epoch() const noexcept { return epoch_; }
  double eta() const noexcept { return eta_; }

private:
  std::size_t epoch_;
  double eta_;
};

class SweepError : public NumericError {
public:
  using NumericError::NumericError;
};

}  // namespace raga

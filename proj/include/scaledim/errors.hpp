#pragma once

#include <stdexcept>
#include <string>

namespace scaledim {

// One class per CLI exit code; documented in the CLI help text.
enum class ErrorClass : int {
  usage = 2,
  degenerate_input = 3,
  parameter = 4,
  csv_format = 5,
  io = 6,
  missing_null = 7,
  cache_integrity = 8,
  numeric_escape = 9,
  internal = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& msg)
      : std::runtime_error(msg), cls_(cls) {}

  ErrorClass error_class() const noexcept { return cls_; }
  int exit_code() const noexcept { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

struct DegenerateInputError : Error {
  explicit DegenerateInputError(const std::string& m)
      : Error(ErrorClass::degenerate_input, m) {}
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& m)
      : Error(ErrorClass::parameter, m) {}
};

// count exceeds the number of points available around a center
struct InsufficientPointsError : ParameterError {
  explicit InsufficientPointsError(const std::string& m) : ParameterError(m) {}
};

// apex coincides with the center, or every base vector is zero
struct DegenerateAngleError : ParameterError {
  explicit DegenerateAngleError(const std::string& m) : ParameterError(m) {}
};

struct CsvFormatError : Error {
  explicit CsvFormatError(const std::string& m)
      : Error(ErrorClass::csv_format, m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorClass::io, m) {}
};

struct MissingNullError : Error {
  explicit MissingNullError(const std::string& m)
      : Error(ErrorClass::missing_null, m) {}
};

struct CacheIntegrityError : Error {
  explicit CacheIntegrityError(const std::string& m)
      : Error(ErrorClass::cache_integrity, m) {}
};

struct NumericEscapeError : Error {
  explicit NumericEscapeError(const std::string& m)
      : Error(ErrorClass::numeric_escape, m) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& m)
      : Error(ErrorClass::internal, m) {}
};

}  // namespace scaledim

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace e2ecd {

// Every failure raised by the library derives from Error so callers can catch
// one type; the subclasses carry the category the contracts talk about.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

class DegenerateTransform : public Error {
 public:
  using Error::Error;
};

class UnsupportedGeometry : public Error {
 public:
  using Error::Error;
};

class MissingParameter : public Error {
 public:
  MissingParameter(const std::string& tensor, const std::string& context = {})
      : Error(context.empty() ? "missing parameter '" + tensor + "'"
                              : context + ": missing parameter '" + tensor + "'"),
        tensor_(tensor) {}
  const std::string& tensor() const noexcept { return tensor_; }

 private:
  std::string tensor_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Errors that point at a byte position in some textual or binary input.
class OffsetError : public Error {
 public:
  OffsetError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), detail_(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }
  // Message without the offset suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t offset_;
};

class ParseError : public OffsetError {
 public:
  using OffsetError::OffsetError;
};

class FormatError : public OffsetError {
 public:
  using OffsetError::OffsetError;
};

}  // namespace e2ecd

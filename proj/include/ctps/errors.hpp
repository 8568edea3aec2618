#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctps {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collinear sources, fewer than three points, or a vanishing pivot.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

// Two source points closer than 1e-9 px. Also a degenerate configuration.
class DuplicateControlPoints : public DegenerateConfiguration {
 public:
  using DegenerateConfiguration::DegenerateConfiguration;
};

class CountMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidDimensions : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class PredictorFailure : public Error {
 public:
  using Error::Error;
};

class TooSmall : public Error {
 public:
  using Error::Error;
};

// File and document errors.
class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ParseError : public FormatError {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : FormatError(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class SchemaError : public FormatError {
 public:
  explicit SchemaError(std::string field)
      : FormatError("missing or invalid field: " + field), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class BadMagic : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedFile : public FormatError {
 public:
  using FormatError::FormatError;
};

class UnsupportedFormat : public FormatError {
 public:
  using FormatError::FormatError;
};

class DecodeError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace ctps

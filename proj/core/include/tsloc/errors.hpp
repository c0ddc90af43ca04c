#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsloc {

// Root of every error thrown by the library. Callers that only care about
// "something went wrong in tsloc" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

// generators
class InvalidParam : public Error {
 public:
  InvalidParam(std::string param, const std::string& what)
      : Error(what), param_(std::move(param)) {}
  const std::string& param() const noexcept { return param_; }

 private:
  std::string param_;
};

class MissingParam : public Error {
 public:
  MissingParam(std::string param, const std::string& what)
      : Error(what), param_(std::move(param)) {}
  const std::string& param() const noexcept { return param_; }

 private:
  std::string param_;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

class DuplicateName : public Error {
 public:
  using Error::Error;
};

class GeneratorContractViolation : public Error {
 public:
  using Error::Error;
};

// builder
enum class ConfigErrorCode {
  kNoClasses,
  kNonContiguousLabels,
  kEmptyClass,
  kInvalidExtent,
  kMisalignedFeatures,
  kNegativeLabel,
};

class ConfigError : public Error {
 public:
  ConfigError(ConfigErrorCode code, const std::string& what)
      : Error(what), code_(code) {}
  ConfigErrorCode code() const noexcept { return code_; }

 private:
  ConfigErrorCode code_;
};

class NoClassScope : public Error {
 public:
  using Error::Error;
};

class ChannelOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidPlacement : public Error {
 public:
  using Error::Error;
};

// config
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}
  // 1-based; 0 when the position is unknown.
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class ValueError : public Error {
 public:
  ValueError(std::string path, const std::string& what)
      : Error(what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// metrics
class AllSamplesDegenerate : public Error {
 public:
  using Error::Error;
};

class UnknownMetric : public Error {
 public:
  using Error::Error;
};

// io
class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsloc

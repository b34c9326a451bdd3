#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pvcast {

/**
 * @brief Base class for all library errors.
 *
 * Every error carries a stable machine-parsable category string (e.g.
 * "NotFound", "SchemaError") used by the CLI to emit single-line
 * diagnostics of the form `error: <category>: <message>`.
 */
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(category + ": " + message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

#define PVCAST_DEFINE_ERROR(NAME, CATEGORY)                                 \
  class NAME : public Error {                                               \
   public:                                                                  \
    explicit NAME(const std::string& message) : Error(CATEGORY, message) {} \
  }

PVCAST_DEFINE_ERROR(EmptyAlignmentError, "EmptyAlignment");
PVCAST_DEFINE_ERROR(NetworkError, "NetworkError");
PVCAST_DEFINE_ERROR(NotFoundError, "NotFound");
PVCAST_DEFINE_ERROR(SchemaError, "SchemaError");
PVCAST_DEFINE_ERROR(RowError, "RowError");
PVCAST_DEFINE_ERROR(EmptyInputError, "EmptyInput");
PVCAST_DEFINE_ERROR(UnderdeterminedError, "Underdetermined");
PVCAST_DEFINE_ERROR(SingularError, "Singular");
PVCAST_DEFINE_ERROR(MissingExogenousError, "MissingExogenous");
PVCAST_DEFINE_ERROR(VersionMismatchError, "VersionMismatch");
PVCAST_DEFINE_ERROR(CorruptFileError, "CorruptFile");
PVCAST_DEFINE_ERROR(LengthMismatchError, "LengthMismatch");
PVCAST_DEFINE_ERROR(NoValidHoursError, "NoValidHours");
PVCAST_DEFINE_ERROR(IndexMismatchError, "IndexMismatch");
PVCAST_DEFINE_ERROR(ConfigError, "ConfigError");
PVCAST_DEFINE_ERROR(IoError, "IoError");
PVCAST_DEFINE_ERROR(ModelNotFoundError, "ModelNotFound");

#undef PVCAST_DEFINE_ERROR

}  // namespace pvcast

#pragma once

#include <stdexcept>
#include <string>

namespace qmsym {

enum class ErrorCategory {
    config,
    precondition,
    kind_mismatch,
    dimension,
    domain,
    model_mismatch,
    numerical,
};

inline const char *to_string(ErrorCategory c) {
    switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::precondition: return "precondition";
    case ErrorCategory::kind_mismatch: return "kind-mismatch";
    case ErrorCategory::dimension: return "dimension";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::model_mismatch: return "model-mismatch";
    case ErrorCategory::numerical: return "numerical";
    }
    return "unknown";
}

/// Base of every error thrown by the library. The category drives the CLI
/// exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCategory category, const std::string &what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

  private:
    ErrorCategory category_;
};

class ConfigError : public Error {
  public:
    ConfigError(std::string field, const std::string &what)
        : Error(ErrorCategory::config,
                field.empty() ? what : field + ": " + what),
          field_(std::move(field)) {}

    [[nodiscard]] const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

class PreconditionError : public Error {
  public:
    explicit PreconditionError(const std::string &what)
        : Error(ErrorCategory::precondition, what) {}
};

class KindError : public Error {
  public:
    explicit KindError(const std::string &what)
        : Error(ErrorCategory::kind_mismatch, what) {}
};

class DimensionError : public Error {
  public:
    explicit DimensionError(const std::string &what)
        : Error(ErrorCategory::dimension, what) {}
};

class DomainError : public Error {
  public:
    explicit DomainError(const std::string &what)
        : Error(ErrorCategory::domain, what) {}
};

class ModelMismatchError : public Error {
  public:
    explicit ModelMismatchError(const std::string &what)
        : Error(ErrorCategory::model_mismatch, what) {}
};

class NumericalError : public Error {
  public:
    explicit NumericalError(const std::string &what)
        : Error(ErrorCategory::numerical, what) {}
};

} // namespace qmsym

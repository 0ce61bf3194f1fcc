#pragma once

#include <stdexcept>
#include <string>

namespace abelian {

/// Malformed or non-normalized input documents (wrong shapes, bad JSON,
/// weights that do not sum to one).
class SchemaError : public std::invalid_argument {
 public:
  explicit SchemaError(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input that violates a mathematical precondition of an
/// operation (mismatched groups, element of the wrong order, m out of range).
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace abelian

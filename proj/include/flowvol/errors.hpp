#pragma once

#include <stdexcept>
#include <string>

namespace flowvol {

// F_G(a) has no real point.
class EmptyPolytopeError : public std::runtime_error {
 public:
  explicit EmptyPolytopeError(const std::string& what) : std::runtime_error(what) {}
};

// The Ehrhart interpolant disagreed with the extra guard point.
class GuardMismatchError : public std::runtime_error {
 public:
  explicit GuardMismatchError(const std::string& what) : std::runtime_error(what) {}
};

class NodeBudgetError : public std::runtime_error {
 public:
  explicit NodeBudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A flow handed to the bijection inverse is not in its image.
class NotInImageError : public std::runtime_error {
 public:
  explicit NotInImageError(const std::string& what) : std::runtime_error(what) {}
};

// A constant term or coefficient cannot be computed under the expansion
// convention (e.g. a factor with no dominant term).
class ExpansionError : public std::runtime_error {
 public:
  explicit ExpansionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flowvol

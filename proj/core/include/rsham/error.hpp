#pragma once

#include <stdexcept>
#include <string>

namespace rsham {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range vertices, repeated vertices, bad sizes.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside of its defined domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested parameters cannot be met by any digraph.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConnectionFailure : public Error {
 public:
  using Error::Error;
};

class FamilyFailure : public Error {
 public:
  FamilyFailure(const std::string& what, std::size_t worst_vertex,
                std::size_t worst_coverage)
      : Error(what), worst_vertex(worst_vertex), worst_coverage(worst_coverage) {}
  std::size_t worst_vertex;
  std::size_t worst_coverage;
};

class ReservoirFailure : public Error {
 public:
  ReservoirFailure(const std::string& what, double worst_margin)
      : Error(what), worst_margin(worst_margin) {}
  double worst_margin;
};

class CoverFailure : public Error {
 public:
  CoverFailure(const std::string& what, std::size_t paths, std::size_t leftover)
      : Error(what), paths(paths), leftover(leftover) {}
  std::size_t paths;
  std::size_t leftover;
};

class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

class AbsorptionFailure : public Error {
 public:
  AbsorptionFailure(const std::string& what, std::size_t vertex)
      : Error(what), vertex(vertex) {}
  std::size_t vertex;
};

}  // namespace rsham

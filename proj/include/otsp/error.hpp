#pragma once

#include <stdexcept>
#include <string>

namespace otsp {

enum class ErrorKind { Parameter, Parse, Precondition, Resource, Consistency };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Bad arguments: k out of range, odd |Q|, overlapping chains, ...
struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error(ErrorKind::Parameter, w) {}
};

// Malformed instance / dump documents. The message carries the location.
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};

// An input violated an operation's precondition (infeasible stroll, non-Eulerian M, ...).
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error(ErrorKind::Precondition, w) {}
};

// Caps: oracle size, cut rounds, decomposition scale, brute-force support.
struct ResourceError : Error {
  explicit ResourceError(const std::string& w) : Error(ErrorKind::Resource, w) {}
};

// An internal identity failed. Always a bug.
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& w) : Error(ErrorKind::Consistency, w) {}
};

}  // namespace otsp

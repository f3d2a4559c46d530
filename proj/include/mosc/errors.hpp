#pragma once

#include <stdexcept>
#include <string>

namespace mosc {

// Base class for everything this library throws on its own behalf.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// A row of a matrix that must be normalised has zero weight.
class IsolatedNodeError : public Error {
 public:
  explicit IsolatedNodeError(int node)
      : Error("node " + std::to_string(node) + " has zero degree in the requested operator"),
        node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

class DisconnectedGraphError : public Error {
 public:
  explicit DisconnectedGraphError(const std::string& what) : Error(what) {}
};

// A cut criterion evaluated on a set where a required volume vanishes.
class UndefinedCriterionError : public Error {
 public:
  UndefinedCriterionError(const std::string& criterion, std::size_t set_size)
      : Error("criterion " + criterion + " undefined for a set of " +
              std::to_string(set_size) + " node(s): zero denominator") {}
};

class EigensolverError : public Error {
 public:
  EigensolverError(const std::string& what, double best_residual)
      : Error(what + "; best residual " + std::to_string(best_residual)),
        best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace mosc

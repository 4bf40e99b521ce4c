#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sygus {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name)
      : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class SortMismatch : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

/// Ill-sorted term in a problem file; `path` locates the offending subterm.
class SortError : public Error {
 public:
  SortError(std::string path, const std::string& what)
      : Error("sort error at " + path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class UnknownSymbol : public Error {
 public:
  UnknownSymbol(std::string symbol, std::size_t line, std::size_t col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": unknown symbol '" + symbol +
              "'"),
        symbol_(std::move(symbol)) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(std::uint64_t budget)
      : Error("resource limit of " + std::to_string(budget) + " steps exceeded"), budget_(budget) {}
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

class GrammarError : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class GrammarNotIteCapable : public Error {
 public:
  using Error::Error;
};

class PropertyNotExpressible : public Error {
 public:
  using Error::Error;
};

/// The solver and the evaluator disagree; continuing would loop or lie.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace sygus

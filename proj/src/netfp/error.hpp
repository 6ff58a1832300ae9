#pragma once

#include <stdexcept>
#include <string>

namespace netfp {

enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kReference,
  kIo,
  kData,
};

// Base for every recoverable failure raised by the library. Contract
// violations by callers surface as kInvalidArgument.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::kParse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::kInvalidArgument, what);
}

}  // namespace netfp

#pragma once

#include <stdexcept>
#include <string>

namespace nlft {

// Error classes double as CLI exit codes: parse failures (2), bad exponents
// or malformed queries (3), unit-disc / log-domain violations (4), I/O (5).
enum class ErrorClass { parse = 2, bad_argument = 3, domain = 4, io = 5 };

class Error : public std::runtime_error {
public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }

private:
  ErrorClass class_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorClass::parse, w) {}
};
struct BadExponent : Error {
  explicit BadExponent(const std::string& w) : Error(ErrorClass::bad_argument, w) {}
};
struct BadInterval : Error {
  explicit BadInterval(const std::string& w) : Error(ErrorClass::bad_argument, w) {}
};
struct TooLarge : Error {
  explicit TooLarge(const std::string& w) : Error(ErrorClass::bad_argument, w) {}
};
struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& w) : Error(ErrorClass::bad_argument, w) {}
};
struct EmptyPotential : Error {
  explicit EmptyPotential(const std::string& w) : Error(ErrorClass::bad_argument, w) {}
};
struct BadRadius : Error {
  explicit BadRadius(const std::string& w) : Error(ErrorClass::domain, w) {}
};
struct OutOfDisc : Error {
  explicit OutOfDisc(const std::string& w) : Error(ErrorClass::domain, w) {}
};
struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& w) : Error(ErrorClass::domain, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorClass::io, w) {}
};

}  // namespace nlft

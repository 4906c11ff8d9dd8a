// Error codes shared across the library and mapped to CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace cuspgamma {

enum class Errc {
  NotPrime,
  FieldTooLarge,
  NoPrimitivePolynomial,
  NotInSubfield,
  BadDivisor,
  EvalAtZero,
  EnumerationTooLarge,
  NotUnipotent,
  SingularMatrix,
  SizeOrder,
  BadK,
  NotAdmissible,
  ZeroScalar,
  BadInput,
  CacheError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace cuspgamma

#pragma once

#include <stdexcept>
#include <string>

namespace bcs {

enum class ErrorCode {
  kShape,         // dimension mismatch between operands
  kDomain,        // value outside its mathematical domain
  kPrecondition,  // caller violated a documented precondition
  kCapacity,      // exhaustive check requested beyond its size limit
  kNumerical,     // NaN/Inf in iterates or factorization breakdown
  kIo,            // file read/write failure
  kConfig,        // bad key or value in a configuration source
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bcs

#pragma once

#include <stdexcept>
#include <string>

namespace pentapath {

enum class ErrorCode {
  kInvalidArgument = 1,
  kSchema = 2,
  kInfeasiblePath = 3,
  kDegenerate = 4,
  kIo = 5,
  kInternal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pentapath

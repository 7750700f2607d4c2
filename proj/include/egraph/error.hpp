#pragma once

#include <stdexcept>
#include <string>

namespace egraph {

enum class ErrorCode {
  kInvalidArgument = 1,
  kInvalidGraph,
  kInvalidState,
  kCapExceeded,
  kParse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace egraph

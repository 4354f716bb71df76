#pragma once

#include <stdexcept>
#include <string>

namespace rsp {

enum class Errc {
  OddN = 1,
  OutOfRange,
  Parity,
  NonConvergence,
  BadBracket,
  NoSignChange,
  BracketExpansionFailed,
  DecompositionFailure,
  InvalidArgument,
  Internal,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Throws OddN unless n is even and at least 2.
void require_even_n(int n);

}  // namespace rsp

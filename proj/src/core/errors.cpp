#include "core/errors.hpp"

namespace rsp {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::OddN: return "OddN";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::Parity: return "ParityError";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::BadBracket: return "BadBracket";
    case Errc::NoSignChange: return "NoSignChange";
    case Errc::BracketExpansionFailed: return "BracketExpansionFailed";
    case Errc::DecompositionFailure: return "DecompositionFailure";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

void require_even_n(int n) {
  if (n < 2 || n % 2 != 0) {
    throw Error(Errc::OddN, "exact distribution requires even N >= 2, got N=" +
                                std::to_string(n));
  }
}

}  // namespace rsp

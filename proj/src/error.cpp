#include "countprob/error.hpp"

namespace countprob {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::TailTooHeavy: return "TailTooHeavy";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::InadmissiblePmf: return "InadmissiblePmf";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace countprob

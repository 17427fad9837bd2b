#include "fvspectra/error.hpp"

#include <sstream>

namespace fvspectra {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ZeroSize: return "ZeroSize";
    case ErrorKind::OddN: return "OddN";
    case ErrorKind::XiOutOfRange: return "XiOutOfRange";
    case ErrorKind::NonPositiveStep: return "NonPositiveStep";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MeshMismatch: return "MeshMismatch";
    case ErrorKind::OddP: return "OddP";
    case ErrorKind::SingularStencil: return "SingularStencil";
    case ErrorKind::UnknownScheme: return "UnknownScheme";
    case ErrorKind::NoDissipation: return "NoDissipation";
    case ErrorKind::SizeNotDivisible: return "SizeNotDivisible";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::InconsistentCorrection: return "InconsistentCorrection";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::UnstableBlowup: return "UnstableBlowup";
    case ErrorKind::BadArgs: return "BadArgs";
  }
  return "Unknown";
}

namespace {

std::string blowup_message(double time, double ratio) {
  std::ostringstream os;
  os << "solution norm grew by a factor " << ratio << " at t = " << time;
  return os.str();
}

}  // namespace

BlowupError::BlowupError(double time, double norm_ratio)
    : Error(ErrorKind::UnstableBlowup, blowup_message(time, norm_ratio)),
      time_(time),
      norm_ratio_(norm_ratio) {}

}  // namespace fvspectra

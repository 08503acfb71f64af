#include "pdmosc/error.hpp"

namespace pdmosc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeOverflow: return "degree_overflow";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::NegativeDiscriminant: return "negative_discriminant";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NonNormalizable: return "non_normalizable";
    case ErrorKind::NonPhysical: return "non_physical";
    case ErrorKind::NonPositiveZ: return "non_positive_z";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace pdmosc

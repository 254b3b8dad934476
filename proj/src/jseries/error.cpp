#include "pseudoabel/error.hpp"

namespace pseudoabel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::InvalidSeries: return "InvalidSeries";
    case ErrorCode::SectorOutOfRange: return "SectorOutOfRange";
    case ErrorCode::CertificateLoss: return "CertificateLoss";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::ContourInvalid: return "ContourInvalid";
    case ErrorCode::ZeroOnContour: return "ZeroOnContour";
    case ErrorCode::DegenerateLeadingTerm: return "DegenerateLeadingTerm";
    case ErrorCode::ResidualNotZero: return "ResidualNotZero";
    case ErrorCode::BranchError: return "BranchError";
    case ErrorCode::OnSeparatrix: return "OnSeparatrix";
    case ErrorCode::NoCenterFound: return "NoCenterFound";
    case ErrorCode::TraceDiverged: return "TraceDiverged";
    case ErrorCode::SaddleTooClose: return "SaddleTooClose";
    case ErrorCode::PoleOnOval: return "PoleOnOval";
    case ErrorCode::TransversalityFailure: return "TransversalityFailure";
    case ErrorCode::InversionDiverged: return "InversionDiverged";
    case ErrorCode::Config: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace pseudoabel

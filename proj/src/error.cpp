#include "dcs/error.hpp"

namespace dcs {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonManifold: return "NonManifold";
    case Errc::Disconnected: return "Disconnected";
    case Errc::DegenerateFace: return "DegenerateFace";
    case Errc::NonPositiveLength: return "NonPositiveLength";
    case Errc::NotEmbeddable: return "NotEmbeddable";
    case Errc::InvalidRadicand: return "InvalidRadicand";
    case Errc::NoRealLength: return "NoRealLength";
    case Errc::TanhOutOfRange: return "TanhOutOfRange";
    case Errc::BranchFailure: return "BranchFailure";
    case Errc::FaceNotEmbeddable: return "FaceNotEmbeddable";
    case Errc::CompatibilityViolated: return "CompatibilityViolated";
    case Errc::PerturbationInvalid: return "PerturbationInvalid";
    case Errc::WrongFamily: return "WrongFamily";
    case Errc::NotSimplyConnected: return "NotSimplyConnected";
    case Errc::InconsistentCocycle: return "InconsistentCocycle";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::UnsupportedSignPattern: return "UnsupportedSignPattern";
    case Errc::WrongGeometry: return "WrongGeometry";
    case Errc::ProviderFailure: return "ProviderFailure";
    case Errc::NotClassifiable: return "NotClassifiable";
    case Errc::InconsistentConstant: return "InconsistentConstant";
    case Errc::InfeasibleTarget: return "InfeasibleTarget";
    case Errc::StepDegenerate: return "StepDegenerate";
    case Errc::MaxIterations: return "MaxIterations";
    case Errc::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace dcs

#include "ssresf/error.hpp"

namespace ssresf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredNet: return "UndeclaredNet";
    case ErrorKind::UnknownMaster: return "UnknownMaster";
    case ErrorKind::DuplicateModule: return "DuplicateModule";
    case ErrorKind::RecursiveHierarchy: return "RecursiveHierarchy";
    case ErrorKind::MultipleDrivers: return "MultipleDrivers";
    case ErrorKind::CombinationalLoop: return "CombinationalLoop";
    case ErrorKind::UnknownModule: return "UnknownModule";
    case ErrorKind::TooFewCells: return "TooFewCells";
    case ErrorKind::EmptyCluster: return "EmptyCluster";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::NonMonotoneLET: return "NonMonotoneLET";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::UnknownCellType: return "UnknownCellType";
    case ErrorKind::MissingFaultRecord: return "MissingFaultRecord";
    case ErrorKind::TargetNotFound: return "TargetNotFound";
    case ErrorKind::EventAfterDuration: return "EventAfterDuration";
    case ErrorKind::NetSetMismatch: return "NetSetMismatch";
    case ErrorKind::BadStimulus: return "BadStimulus";
    case ErrorKind::ZeroFluence: return "ZeroFluence";
    case ErrorKind::SingleClassDataset: return "SingleClassDataset";
    case ErrorKind::NonPositiveHyperparameter: return "NonPositiveHyperparameter";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::FeatureMaskMismatch: return "FeatureMaskMismatch";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace ssresf

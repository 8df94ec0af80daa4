#pragma once

#include <stdexcept>
#include <string>

namespace ssresf {

enum class ErrorKind {
  // netlist front-end
  SyntaxError,
  UndeclaredNet,
  UnknownMaster,
  DuplicateModule,
  RecursiveHierarchy,
  MultipleDrivers,
  CombinationalLoop,
  UnknownModule,
  // clustering
  TooFewCells,
  EmptyCluster,
  // fault database
  SchemaError,
  NonMonotoneLET,
  KindMismatch,
  UnknownCellType,
  MissingFaultRecord,
  // simulation
  TargetNotFound,
  EventAfterDuration,
  NetSetMismatch,
  BadStimulus,
  // campaign
  ZeroFluence,
  // learning
  SingleClassDataset,
  NonPositiveHyperparameter,
  TooFewSamples,
  LengthMismatch,
  FeatureMaskMismatch,
  // generic I/O
  IoError,
};

const char* to_string(ErrorKind kind);

/// Toolkit-wide exception. `kind` keys machine-readable error reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(std::move(message)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace ssresf

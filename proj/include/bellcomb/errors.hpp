#pragma once

#include <stdexcept>
#include <string>

namespace bellcomb {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidMass : public Error {
 public:
  explicit InvalidMass(const std::string& what) : Error("InvalidMass: " + what) {}
};

class DegenerateDistribution : public Error {
 public:
  explicit DegenerateDistribution(const std::string& what)
      : Error("DegenerateDistribution: " + what) {}
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(const std::string& what) : Error("NotNormalized: " + what) {}
};

class DuplicateLabel : public Error {
 public:
  explicit DuplicateLabel(const std::string& what) : Error("DuplicateLabel: " + what) {}
};

class SupportMismatch : public Error {
 public:
  explicit SupportMismatch(const std::string& what) : Error("SupportMismatch: " + what) {}
};

class MissingValue : public Error {
 public:
  explicit MissingValue(const std::string& what) : Error("MissingValue: " + what) {}
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& what) : Error("UnknownLabel: " + what) {}
};

class UnknownAction : public Error {
 public:
  explicit UnknownAction(const std::string& what) : Error("UnknownAction: " + what) {}
};

class UnknownOutcome : public Error {
 public:
  explicit UnknownOutcome(const std::string& what) : Error("UnknownOutcome: " + what) {}
};

class NoHypotheses : public Error {
 public:
  explicit NoHypotheses(const std::string& what) : Error("NoHypotheses: " + what) {}
};

class NoJointPrior : public Error {
 public:
  explicit NoJointPrior(const std::string& what) : Error("NoJointPrior: " + what) {}
};

class InvalidProbability : public Error {
 public:
  explicit InvalidProbability(const std::string& what)
      : Error("InvalidProbability: " + what) {}
};

class InvalidCredence : public Error {
 public:
  explicit InvalidCredence(const std::string& what) : Error("InvalidCredence: " + what) {}
};

class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error("InvalidState: " + what) {}
};

class InvalidThreshold : public Error {
 public:
  explicit InvalidThreshold(const std::string& what) : Error("InvalidThreshold: " + what) {}
};

class SettingsMismatch : public Error {
 public:
  explicit SettingsMismatch(const std::string& what) : Error("SettingsMismatch: " + what) {}
};

}  // namespace bellcomb

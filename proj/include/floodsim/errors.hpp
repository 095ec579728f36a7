#pragma once

#include <stdexcept>
#include <string>

namespace floodsim {

// Base class for everything thrown by the library.
class SimError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// --- numerical failures (CLI exit code 3) ---------------------------------

class NumericsError : public SimError {
public:
  using SimError::SimError;
};

class NonFiniteState : public NumericsError {
public:
  using NumericsError::NumericsError;
};

class NonPhysicalState : public NumericsError {
public:
  using NumericsError::NumericsError;
};

class DegenerateRiemann : public NumericsError {
public:
  using NumericsError::NumericsError;
};

class NegativeDepth : public NumericsError {
public:
  using NumericsError::NumericsError;
};

class OrderingViolated : public NumericsError {
public:
  using NumericsError::NumericsError;
};

class NoConvergence : public NumericsError {
public:
  using NumericsError::NumericsError;
};

// --- configuration problems (CLI exit code 2) -----------------------------

class ConfigError : public SimError {
public:
  using SimError::SimError;
};

class ParseError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class UnknownKey : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class DimensionMismatch : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class NonFiniteValue : public ConfigError {
public:
  using ConfigError::ConfigError;
};

// --- filesystem problems (CLI exit code 4) --------------------------------

class IoError : public SimError {
public:
  using SimError::SimError;
};

} // namespace floodsim

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hope {

// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  config = 2,
  wood_anomaly = 3,
  closure_resonance = 4,
  solver = 5,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::failure; }
};

// Invalid or rejected configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::config; }
};

// A lattice mode with |gamma| below the Wood tolerance.
class WoodAnomalyError : public ConfigError {
 public:
  WoodAnomalyError(int p, int q, char face, double magnitude);
  ExitCode exit_code() const noexcept override { return ExitCode::wood_anomaly; }
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  char face() const noexcept { return face_; }

 private:
  int p_, q_;
  char face_;
};

// Interior Dirichlet resonance of the divergence-closure problem, 2*gamma*h = n*pi.
class ResonanceError : public ConfigError {
 public:
  ResonanceError(int p, int q, double sin_value);
  ExitCode exit_code() const noexcept override { return ExitCode::closure_resonance; }
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }

 private:
  int p_, q_;
};

class SolverError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::solver; }
};

class SingularModeError : public SolverError {
 public:
  SingularModeError(int p, int q, double condition);
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  double condition() const noexcept { return cond_; }

 private:
  int p_, q_;
  double cond_;
};

class NonConvergenceError : public SolverError {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> history)
      : SolverError(what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace hope

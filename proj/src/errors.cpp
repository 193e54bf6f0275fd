#include "hope/errors.hpp"

#include <cstdio>

namespace hope {

namespace {

std::string mode_message(const char* prefix, int p, int q, const char* tail,
                         double value) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s at mode (p=%d, q=%d): %s %.3e", prefix, p, q,
                tail, value);
  return buf;
}

}  // namespace

WoodAnomalyError::WoodAnomalyError(int p, int q, char face, double magnitude)
    : ConfigError(mode_message(face == 'u' ? "Wood anomaly (upper exterior)"
                                           : "Wood anomaly (lower exterior)",
                               p, q, "|gamma| =", magnitude)),
      p_(p),
      q_(q),
      face_(face) {}

ResonanceError::ResonanceError(int p, int q, double sin_value)
    : ConfigError(mode_message("divergence-closure resonance", p, q,
                               "|sin(2 gamma h)| =", sin_value)),
      p_(p),
      q_(q) {}

SingularModeError::SingularModeError(int p, int q, double condition)
    : SolverError(mode_message("singular per-mode system", p, q,
                               "condition number", condition)),
      p_(p),
      q_(q),
      cond_(condition) {}

}  // namespace hope

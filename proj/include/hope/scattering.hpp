#pragma once

#include <vector>

#include "hope/field.hpp"

namespace hope {

struct OrderEfficiency {
  int p = 0, q = 0;
  double efficiency = 0.0;
  Vec3c amplitude{};  // outgoing plane-wave amplitude at the face
};

struct Efficiencies {
  std::vector<OrderEfficiency> reflected;
  std::vector<OrderEfficiency> transmitted;
  double R_total = 0.0;
  double T_total = 0.0;
  double energy_defect = 0.0;  // 1 - R_total - T_total
  double specular_R = 0.0;     // reflected (0, 0) order
  double specular_T = 0.0;
};

// Efficiencies of the propagating orders of a total field E on [-h, h]: the
// reflected part is E - E_inc at z = h, the transmitted part is E at z = -h.
Efficiencies efficiencies(const VectorFieldCoeffs& E_total);

// Outgoing power of E - E_inc through both faces, relative to the incident
// power. Zero for an unperturbed matched slab.
double scattered_energy(const VectorFieldCoeffs& E_total);

}  // namespace hope

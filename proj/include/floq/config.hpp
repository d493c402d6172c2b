#pragma once

#include <numbers>

namespace floq {

// Power-law exponents at or above this cutoff are treated as strictly
// nearest-neighbor: 1/r^a underflows long before a = 1e3 and an explicit
// cutoff avoids silent denormals. Infinity is accepted too.
inline constexpr double kNearestNeighborExponent = 1e3;

inline constexpr int kMaxSites = 24;

// Kicked long-range chain:
//   H = -sum_{i<j} [ J_x/|i-j|^a (Sx_i Sx_j + Sy_i Sy_j) + J_z/|i-j|^b Sz_i Sz_j ]
// open boundary, spin-1/2, followed each period tau by a random local
// z-rotation of strength theta.
struct ChainConfig {
  int L = 12;
  double J_x = 1.0;
  double J_z = 1.0;
  double a = 1.0;      // tunneling exponent, > 0; >= 1e3 means nearest-neighbor
  double b = 1.0;      // Ising exponent, > 0; >= 1e3 means nearest-neighbor
  double theta = std::numbers::pi;  // kick strength, in [0, pi]
  double tau = 0.1;    // drive period, > 0

  friend bool operator==(const ChainConfig&, const ChainConfig&) = default;
};

inline bool nearest_neighbor_only(double exponent) {
  return exponent >= kNearestNeighborExponent;
}

// J / d^exponent with the nearest-neighbor cutoff applied.
double power_law_coupling(double J, double exponent, int distance);

// Throws std::invalid_argument naming the offending field.
void validate_config(const ChainConfig& config);

}  // namespace floq

#pragma once

// All internal quantities are SI (m, s, m/s). km/h appears only at the
// scenario-file and report boundaries; convert there and nowhere else.

namespace mcdas {

inline constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }
inline constexpr double mps_to_kmh(double mps) { return mps * 3.6; }

}  // namespace mcdas

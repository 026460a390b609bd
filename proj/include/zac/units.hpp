#pragma once

// Unit conversion factors. Everything inside the library is in atomic
// units; conversions happen only where external values enter (config
// files, documented defaults).
namespace zac::units {

inline constexpr double cm1_to_au = 4.556335e-6;  // 1 cm^-1 in hartree
inline constexpr double au_time_fs = 0.02418884;  // 1 atomic time unit in fs
inline constexpr double fs_to_au = 1.0 / au_time_fs;

}  // namespace zac::units

#pragma once

#include <cmath>

namespace judrs::units {

// Decibel conversions. All model arithmetic is done in linear SI units;
// dB/dBm appear only at configuration boundaries.

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

} // namespace judrs::units

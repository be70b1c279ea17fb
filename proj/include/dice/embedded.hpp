// Data files compiled into the library by tools/embedgen.cpp.
#pragma once

#include <cstdint>
#include <string>

namespace dice::embedded {

extern const char* const defaults_cfg;
extern const uint64_t defaults_cfg_fnv1a64;
extern const char* const damage_estimates_csv;
extern const uint64_t damage_estimates_csv_fnv1a64;
extern const char* const state_table_csv;
extern const uint64_t state_table_csv_fnv1a64;

} // namespace dice::embedded

namespace dice {

uint64_t fnv1a64(const std::string& s);

// Throws std::runtime_error on checksum mismatch; returns the verified bytes.
std::string verified_embedded(const char* data, uint64_t expected, const char* what);

} // namespace dice

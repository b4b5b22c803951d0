#pragma once

#include <string>

#include "fastspread/field.hpp"

namespace fastspread {

struct Snapshot {
  ScalarField field;
  double time = 0.0;
};

/// Format: one UTF-8 JSON header line
///   {"dim":..,"n":[..],"half_length":[..],"topology":"full_space"|"channel","time":..}
/// terminated by '\n', followed by row-major little-endian 64-bit floats.
void write_snapshot(const std::string& path, const ScalarField& f, double time);
Snapshot read_snapshot(const std::string& path);

}  // namespace fastspread

#pragma once

#include <string>

#include "leray/field.hpp"

namespace leray {

/// Binary vector-field checkpoint.  Layout (all little-endian):
///   bytes 0..3   magic "LRSF"
///   u32          format version (currently 1)
///   f64          n (points per axis, stored as a double)
///   f64          L (box half-width)
///   3 * n^3 f64  component samples, row-major (i, j, k), x then y then z
void write_checkpoint(const std::string& path, const VectorField& f);
VectorField read_checkpoint(const std::string& path);

}  // namespace leray

#pragma once

#include <cstdint>
#include <string>

#include "leray/field.hpp"

namespace leray {

/// Built-in divergence-free initial conditions.  The trigonometric presets
/// use scaled coordinates theta = pi*x/L so they stay periodic on any box
/// (literal sin x etc. at the default half-width pi); the Gaussian vortex
/// uses sigma = L/8, negligible at the boundary.
enum class PresetKind { taylor_green, abc_flow, gaussian_vortex };

PresetKind preset_from_name(const std::string& name);
std::string preset_name(PresetKind kind);

/// Sample a preset on a grid.  A nonzero `perturb` adds a solenoidal
/// low-mode perturbation of that amplitude, drawn deterministically from
/// `seed`.
VectorField preset_field(PresetKind kind, const GridSpec& grid,
                         double perturb = 0.0, std::uint64_t seed = 0);

}  // namespace leray

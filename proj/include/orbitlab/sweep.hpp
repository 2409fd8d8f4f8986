#pragma once

// Spectrum family generators for the regime sweeps, plus validation that a
// generated spectrum lands in the regime its family name promises.

#include "orbitlab/rng.hpp"
#include "orbitlab/spectrum.hpp"

#include <optional>
#include <string>

namespace orbitlab {

enum class Family { Generic, OneGap, OneGap4_2, TwoGap, TwoGap1Nm1 };

std::string to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

// Expected regime tag for a family; Generic has no constraint.
std::optional<RegimeKind> expected_regime(Family f);

// Deterministic in (family, n, T, seed, row).  Throws when the family is
// incompatible with n (one-gap-4-2 needs n = 4, two-gap needs n >= 4) or the
// generated spectrum fails its regime validation.
Spectrum make_family_spectrum(Family f, int n, double T, std::uint64_t seed,
                              std::uint64_t row);

}  // namespace orbitlab

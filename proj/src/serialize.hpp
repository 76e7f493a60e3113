// JSON and CSV encodings of the public value types. Emitted numbers are
// rounded to 9 significant digits; loaders accept small normalization
// drift (1e-6) and renormalize.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fringes.hpp"
#include "invariants.hpp"
#include "paths.hpp"
#include "qstate.hpp"

namespace topo {

double round9(double x);
std::string fmt9(double x);

// { "basis": [tag, tag, tag], "amps": [[re, im] x 8] }
std::string state_to_json(const ThreeQubitState& psi);
ThreeQubitState state_from_json(const std::string& text);

// { "breakpoints": { "s": [[t, value], ...], "o": ..., "i": ... } }
std::string path_to_json(const PhasePath& path);
PhasePath path_from_json(const std::string& text);

// { tangle, purities[3], slocc, spectrum } -- spectrum is null when the
// family is not known constructively.
std::string invariants_to_json(const ThreeQubitState& psi, const std::optional<FamilySpec>& family);

// Single sample: {"V": ..., "Phi": ...}; Phi is null below the
// visibility floor.
std::string sample_to_json(const PancharatnamSample& s);
// Sweep: {"samples": [{"t", "V", "Phi"}, ...]}
std::string samples_to_json(const std::vector<PancharatnamSample>& samples);

std::string fringe_to_json(const FringeCurve& curve);
std::string fringe_to_csv(const FringeCurve& curve);

// Snapped endpoint phase plus diagnostic fields.
std::string phase_report_to_json(const PancharatnamSample& end, bool cyclic,
                                 const std::optional<SnappedPhase>& snapped);

} // namespace topo

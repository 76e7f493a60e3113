#include "serialize.hpp"

#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace topo {

using ordered_json = nlohmann::ordered_json;

double round9(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt9(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

namespace {

ordered_json amps_json(const ThreeQubitState& psi) {
    ordered_json amps = ordered_json::array();
    for (const auto& a : psi.amps()) amps.push_back({round9(a.real()), round9(a.imag())});
    return amps;
}

const ordered_json& require_field(const ordered_json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw Error(Errc::InvalidArgument, std::string(what) + " is missing the \"" + key + "\" field");
    return *it;
}

double require_number(const ordered_json& j, const char* what) {
    if (!j.is_number()) throw Error(Errc::InvalidArgument, std::string(what) + " must be a number");
    return j.get<double>();
}

ordered_json parse_json(const std::string& text, const char* what) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error(Errc::InvalidArgument, std::string("invalid JSON for ") + what);
    return j;
}

} // namespace

std::string state_to_json(const ThreeQubitState& psi) {
    ordered_json j;
    j["basis"] = {basis_name(psi.basis()[0]), basis_name(psi.basis()[1]), basis_name(psi.basis()[2])};
    j["amps"] = amps_json(psi);
    return j.dump();
}

ThreeQubitState state_from_json(const std::string& text) {
    const ordered_json j = parse_json(text, "a state");
    const auto& basis = require_field(j, "basis", "state JSON");
    const auto& amps = require_field(j, "amps", "state JSON");
    if (!basis.is_array() || basis.size() != 3)
        throw Error(Errc::InvalidArgument, "state JSON \"basis\" must list three tags");
    if (!amps.is_array() || amps.size() != 8)
        throw Error(Errc::InvalidArgument, "state JSON \"amps\" must list eight [re, im] pairs");
    QubitBasis qb;
    for (int k = 0; k < 3; ++k) {
        const auto& tag = basis[static_cast<std::size_t>(k)];
        if (!tag.is_string()) throw Error(Errc::InvalidArgument, "basis tags must be strings");
        qb[static_cast<std::size_t>(k)] = basis_from_name(tag.get<std::string>());
    }
    std::array<Complex, 8> a{};
    for (std::size_t i = 0; i < 8; ++i) {
        const auto& pair = amps[i];
        if (!pair.is_array() || pair.size() != 2)
            throw Error(Errc::InvalidArgument, "each amplitude must be an [re, im] pair");
        a[i] = Complex(require_number(pair[0], "amplitude"), require_number(pair[1], "amplitude"));
    }
    return ThreeQubitState::from_amplitudes(a, qb, 1e-6);
}

namespace {

ordered_json breakpoints_json(const BreakpointList& bps) {
    ordered_json arr = ordered_json::array();
    for (const auto& bp : bps) arr.push_back({round9(bp.t), round9(bp.value)});
    return arr;
}

BreakpointList breakpoints_from_json(const ordered_json& j, const char* name) {
    if (!j.is_array())
        throw Error(Errc::InvalidArgument, std::string("path component \"") + name + "\" must be an array");
    BreakpointList bps;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw Error(Errc::InvalidArgument, "each breakpoint must be a [t, value] pair");
        bps.push_back({require_number(pair[0], "breakpoint t"), require_number(pair[1], "breakpoint value")});
    }
    return bps;
}

} // namespace

std::string path_to_json(const PhasePath& path) {
    ordered_json j;
    j["breakpoints"]["s"] = breakpoints_json(path.s());
    j["breakpoints"]["o"] = breakpoints_json(path.o());
    j["breakpoints"]["i"] = breakpoints_json(path.i());
    return j.dump();
}

PhasePath path_from_json(const std::string& text) {
    const ordered_json j = parse_json(text, "a path");
    const auto& bps = require_field(j, "breakpoints", "path JSON");
    return PhasePath(breakpoints_from_json(require_field(bps, "s", "path JSON"), "s"),
                     breakpoints_from_json(require_field(bps, "o", "path JSON"), "o"),
                     breakpoints_from_json(require_field(bps, "i", "path JSON"), "i"));
}

std::string invariants_to_json(const ThreeQubitState& psi, const std::optional<FamilySpec>& family) {
    ordered_json j;
    j["tangle"] = round9(three_tangle(psi));
    ordered_json purities = ordered_json::array();
    for (int k = 0; k < 3; ++k) purities.push_back(round9(reduced_density(psi, k).purity()));
    j["purities"] = purities;
    j["slocc"] = slocc_name(classify_slocc(psi));
    if (family) {
        ordered_json spectrum = ordered_json::array();
        for (const double v : diagonal_phase_spectrum(*family)) spectrum.push_back(round9(v));
        j["spectrum"] = spectrum;
    } else {
        j["spectrum"] = nullptr;
    }
    return j.dump();
}

namespace {

ordered_json sample_json_fields(const PancharatnamSample& s, bool with_t) {
    ordered_json j;
    if (with_t) j["t"] = round9(s.t);
    j["V"] = round9(s.visibility);
    if (s.phase)
        j["Phi"] = round9(*s.phase);
    else
        j["Phi"] = nullptr;
    return j;
}

} // namespace

std::string sample_to_json(const PancharatnamSample& s) {
    return sample_json_fields(s, false).dump();
}

std::string samples_to_json(const std::vector<PancharatnamSample>& samples) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : samples) arr.push_back(sample_json_fields(s, true));
    ordered_json j;
    j["samples"] = arr;
    return j.dump();
}

std::string fringe_to_json(const FringeCurve& curve) {
    ordered_json j;
    j["t"] = round9(curve.t);
    j["c0"] = round9(curve.c0);
    ordered_json theta = ordered_json::array();
    for (const double x : curve.theta) theta.push_back(round9(x));
    j["theta"] = theta;
    ordered_json samples = ordered_json::array();
    for (const double x : curve.samples) samples.push_back(round9(x));
    j["samples"] = samples;
    return j.dump();
}

std::string fringe_to_csv(const FringeCurve& curve) {
    std::string out = "theta,C\n";
    char buf[96];
    for (std::size_t j = 0; j < curve.theta.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.9f,%s\n", curve.theta[j], fmt9(curve.samples[j]).c_str());
        out += buf;
    }
    return out;
}

std::string phase_report_to_json(const PancharatnamSample& end, bool cyclic,
                                 const std::optional<SnappedPhase>& snapped) {
    ordered_json j;
    j["V"] = round9(end.visibility);
    if (end.phase)
        j["Phi"] = round9(*end.phase);
    else
        j["Phi"] = nullptr;
    j["cyclic"] = cyclic;
    if (snapped) {
        j["topological_phase"] = round9(snapped->value);
        j["snap_residual"] = round9(snapped->residual);
    } else {
        j["topological_phase"] = nullptr;
    }
    return j.dump();
}

} // namespace topo

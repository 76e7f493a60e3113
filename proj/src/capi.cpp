// extern "C" surface of the shared library. Exceptions from the core
// are mapped to status codes; messages land in a thread-local slot.

#include "topophase.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include <json.hpp>

#include "dsl.hpp"
#include "elements.hpp"
#include "fringes.hpp"
#include "invariants.hpp"
#include "paths.hpp"
#include "selfcheck.hpp"
#include "serialize.hpp"

struct topo_state {
    topo::ThreeQubitState psi;
    std::optional<topo::FamilySpec> family;
};

struct topo_path {
    topo::PhasePath path;
};

struct topo_plan {
    topo::dsl::ExperimentPlan plan;
};

namespace {

thread_local std::string t_last_error;

topo_status map_code(topo::Errc code) {
    switch (code) {
        case topo::Errc::InvalidArgument: return TOPO_ERR_INVALID_ARGUMENT;
        case topo::Errc::BasisMismatch: return TOPO_ERR_BASIS_MISMATCH;
        case topo::Errc::NotUnitary: return TOPO_ERR_NOT_UNITARY;
        case topo::Errc::NonCyclic: return TOPO_ERR_NOT_CYCLIC;
        case topo::Errc::SnapFailure: return TOPO_ERR_SNAP_FAILURE;
        case topo::Errc::Borderline: return TOPO_ERR_BORDERLINE;
        case topo::Errc::ScenarioMismatch: return TOPO_ERR_SCENARIO_MISMATCH;
        case topo::Errc::ParseError: return TOPO_ERR_PARSE;
        case topo::Errc::SemanticError: return TOPO_ERR_SEMANTIC;
        case topo::Errc::Io: return TOPO_ERR_IO;
    }
    return TOPO_ERR_INTERNAL;
}

template <typename Fn>
topo_status wrap(Fn&& fn) {
    try {
        return fn();
    } catch (const topo::Error& e) {
        t_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return TOPO_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown internal error";
        return TOPO_ERR_INTERNAL;
    }
}

topo_status invalid(const char* msg) {
    t_last_error = msg;
    return TOPO_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) return nullptr;
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

topo_status emit_string(const std::string& s, char** out) {
    *out = dup_string(s);
    if (!*out) {
        t_last_error = "out of memory";
        return TOPO_ERR_INTERNAL;
    }
    return TOPO_OK;
}

std::optional<topo::FamilySpec> family_for(const topo::PreparationRecipe& recipe) {
    using topo::RecipeKind;
    switch (recipe.kind) {
        case RecipeKind::X: return topo::x_class_family(0.5, 0.5, 0.5, 0.5);
        case RecipeKind::Ghz: return topo::ghz_family();
        case RecipeKind::Bghz: return topo::bghz_family(recipe.alpha, recipe.beta);
        case RecipeKind::ProdX:
        case RecipeKind::ProdBghz: return topo::product_family();
    }
    return std::nullopt;
}

} // namespace

extern "C" {

const char* topo_version(void) { return "1.0.0"; }

const char* topo_status_name(topo_status status) {
    switch (status) {
        case TOPO_OK: return "ok";
        case TOPO_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case TOPO_ERR_BASIS_MISMATCH: return "basis-mismatch";
        case TOPO_ERR_NOT_UNITARY: return "not-unitary";
        case TOPO_ERR_PARSE: return "parse-error";
        case TOPO_ERR_SEMANTIC: return "semantic-error";
        case TOPO_ERR_NOT_CYCLIC: return "not-cyclic";
        case TOPO_ERR_SNAP_FAILURE: return "snap-failure";
        case TOPO_ERR_BORDERLINE: return "borderline";
        case TOPO_ERR_SCENARIO_MISMATCH: return "scenario-mismatch";
        case TOPO_ERR_IO: return "io-error";
        case TOPO_ERR_CHECK_FAILED: return "check-failed";
        default: return "internal-error";
    }
}

const char* topo_last_error(void) { return t_last_error.c_str(); }

void topo_string_free(char* s) { std::free(s); }
void topo_state_free(topo_state* s) { delete s; }
void topo_path_free(topo_path* p) { delete p; }
void topo_plan_free(topo_plan* p) { delete p; }

topo_status topo_state_prepare(const char* recipe, double alpha_re, double alpha_im,
                               double beta_re, double beta_im, topo_state** out) {
    if (!recipe || !out) return invalid("recipe and out must be non-null");
    return wrap([&] {
        const topo::RecipeKind kind = topo::recipe_from_name(recipe);
        const topo::PreparationRecipe r = topo::make_recipe(
            kind, topo::Complex(alpha_re, alpha_im), topo::Complex(beta_re, beta_im));
        *out = new topo_state{topo::prepare(r), family_for(r)};
        return TOPO_OK;
    });
}

topo_status topo_state_from_json(const char* json, topo_state** out) {
    if (!json || !out) return invalid("json and out must be non-null");
    return wrap([&] {
        *out = new topo_state{topo::state_from_json(json), std::nullopt};
        return TOPO_OK;
    });
}

topo_status topo_state_to_json(const topo_state* s, char** out) {
    if (!s || !out) return invalid("state and out must be non-null");
    return wrap([&] { return emit_string(topo::state_to_json(s->psi), out); });
}

topo_status topo_state_amplitudes(const topo_state* s, double out_re_im[16]) {
    if (!s || !out_re_im) return invalid("state and out must be non-null");
    for (int j = 0; j < 8; ++j) {
        out_re_im[2 * j] = s->psi.amps()[static_cast<std::size_t>(j)].real();
        out_re_im[2 * j + 1] = s->psi.amps()[static_cast<std::size_t>(j)].imag();
    }
    return TOPO_OK;
}

topo_status topo_state_change_basis(const topo_state* s, const char* target, topo_state** out) {
    if (!s || !target || !out) return invalid("state, target and out must be non-null");
    return wrap([&] {
        const topo::Basis b = topo::basis_from_name(target);
        *out = new topo_state{topo::change_basis(s->psi, {b, b, b}), s->family};
        return TOPO_OK;
    });
}

topo_status topo_state_overlap(const topo_state* a, const topo_state* b, double* out_re,
                               double* out_im) {
    if (!a || !b || !out_re || !out_im) return invalid("states and outputs must be non-null");
    return wrap([&] {
        const topo::Complex o = topo::overlap(a->psi, b->psi);
        *out_re = o.real();
        *out_im = o.imag();
        return TOPO_OK;
    });
}

topo_status topo_state_apply_diagonal(const topo_state* s, double phi_s, double phi_o,
                                      double phi_i, topo_state** out) {
    if (!s || !out) return invalid("state and out must be non-null");
    return wrap([&] {
        const topo::ThreeQubitState circ = s->psi.basis() == topo::kAllCircular
                                               ? s->psi
                                               : topo::change_basis(s->psi, topo::kAllCircular);
        *out = new topo_state{topo::apply_local(topo::diagonal_phase(phi_s),
                                                topo::diagonal_phase(phi_o),
                                                topo::diagonal_phase(phi_i), circ),
                              std::nullopt};
        return TOPO_OK;
    });
}

topo_status topo_invariants_json(const topo_state* s, char** out) {
    if (!s || !out) return invalid("state and out must be non-null");
    return wrap([&] { return emit_string(topo::invariants_to_json(s->psi, s->family), out); });
}

topo_status topo_path_named(const char* id, topo_path** out) {
    if (!id || !out) return invalid("id and out must be non-null");
    return wrap([&] {
        *out = new topo_path{topo::named_path(topo::named_path_from_string(id))};
        return TOPO_OK;
    });
}

topo_status topo_path_from_json(const char* json, topo_path** out) {
    if (!json || !out) return invalid("json and out must be non-null");
    return wrap([&] {
        *out = new topo_path{topo::path_from_json(json)};
        return TOPO_OK;
    });
}

topo_status topo_path_to_json(const topo_path* p, char** out) {
    if (!p || !out) return invalid("path and out must be non-null");
    return wrap([&] { return emit_string(topo::path_to_json(p->path), out); });
}

topo_status topo_path_eval(const topo_path* p, double t, double out_phi[3]) {
    if (!p || !out_phi) return invalid("path and out must be non-null");
    return wrap([&] {
        const auto phi = p->path.eval(t);
        out_phi[0] = phi[0];
        out_phi[1] = phi[1];
        out_phi[2] = phi[2];
        return TOPO_OK;
    });
}

topo_status topo_pancharatnam(const topo_state* s, const topo_path* p, double t, double* out_v,
                              double* out_phi, int* out_phi_defined) {
    if (!s || !p || !out_v || !out_phi || !out_phi_defined)
        return invalid("state, path and outputs must be non-null");
    return wrap([&] {
        const topo::PancharatnamSample sample = topo::pancharatnam(s->psi, p->path, t);
        *out_v = sample.visibility;
        *out_phi = sample.phase.value_or(0.0);
        *out_phi_defined = sample.phase.has_value() ? 1 : 0;
        return TOPO_OK;
    });
}

topo_status topo_is_cyclic(const topo_state* s, const topo_path* p, double tol, int* out) {
    if (!s || !p || !out) return invalid("state, path and out must be non-null");
    return wrap([&] {
        *out = topo::is_cyclic(s->psi, p->path, tol > 0 ? tol : 1e-9) ? 1 : 0;
        return TOPO_OK;
    });
}

topo_status topo_topological_phase(const topo_state* s, const topo_path* p, double snap_tol,
                                   double* out_phase, double* out_residual) {
    if (!s || !p || !out_phase || !out_residual)
        return invalid("state, path and outputs must be non-null");
    return wrap([&] {
        const topo::SnappedPhase sp =
            topo::topological_phase(s->psi, p->path, snap_tol > 0 ? snap_tol : 1e-6);
        *out_phase = sp.value;
        *out_residual = sp.residual;
        return TOPO_OK;
    });
}

topo_status topo_fringe_curve(const topo_state* s, const topo_path* p, double t, int n_theta,
                              double c0, const char* format, char** out) {
    if (!s || !p || !format || !out) return invalid("state, path, format and out must be non-null");
    return wrap([&] {
        const auto grid = topo::theta_grid(n_theta > 0 ? n_theta : 256);
        const topo::FringeCurve curve = topo::coincidence_curve(s->psi, p->path, t, grid, c0);
        const std::string fmt = format;
        if (fmt == "json") return emit_string(topo::fringe_to_json(curve), out);
        if (fmt == "csv") return emit_string(topo::fringe_to_csv(curve), out);
        throw topo::Error(topo::Errc::InvalidArgument, "format must be 'json' or 'csv'");
    });
}

topo_status topo_closed_form(const char* id, double t, double theta, const double phi3[3],
                             double* out) {
    if (!id || !out) return invalid("id and out must be non-null");
    return wrap([&] {
        topo::FormulaParams params;
        if (phi3) params.phi = {{phi3[0], phi3[1], phi3[2]}};
        *out = topo::closed_form(topo::formula_from_name(id), params, t, theta);
        return TOPO_OK;
    });
}

topo_status topo_cross_validate(const topo_state* s, const topo_path* p, const char* formula,
                                int t_points, int theta_points, double tol, char** out) {
    if (!s || !p || !formula || !out)
        return invalid("state, path, formula and out must be non-null");
    return wrap([&] {
        topo::GridSpec grid;
        if (t_points > 0) grid.t_points = t_points;
        if (theta_points > 0) grid.theta_points = theta_points;
        const topo::FormulaId id = topo::formula_from_name(formula);
        const topo::ValidationReport r =
            topo::cross_validate(s->psi, p->path, id, grid, tol > 0 ? tol : 1e-9);
        nlohmann::ordered_json j;
        j["formula"] = topo::formula_name(id);
        j["max_abs_dev"] = topo::round9(r.max_abs_dev);
        j["sign_flip_dev"] = topo::round9(r.sign_flip_dev);
        j["pass"] = r.pass;
        return emit_string(j.dump(), out);
    });
}

topo_status topo_figure_data(const char* figure, const char* format, char** out) {
    if (!figure || !format || !out) return invalid("figure, format and out must be non-null");
    return wrap([&] {
        const topo::FigureId id = topo::figure_from_name(figure);
        const std::string fmt = format;
        if (fmt == "csv") return emit_string(topo::figure_csv(id), out);
        if (fmt == "json") return emit_string(topo::figure_json(id), out);
        throw topo::Error(topo::Errc::InvalidArgument, "format must be 'csv' or 'json'");
    });
}

topo_status topo_script_format(const char* text, const char* name, char** out) {
    if (!text || !out) return invalid("text and out must be non-null");
    return wrap([&] {
        const topo::dsl::Ast ast =
            topo::dsl::parse({text, name ? std::string(name) : std::string("<script>")});
        return emit_string(topo::dsl::format(ast), out);
    });
}

topo_status topo_plan_compile(const char* text, const char* name, topo_plan** out) {
    if (!text || !out) return invalid("text and out must be non-null");
    return wrap([&] {
        const topo::dsl::Ast ast =
            topo::dsl::parse({text, name ? std::string(name) : std::string("<script>")});
        *out = new topo_plan{topo::dsl::compile(ast)};
        return TOPO_OK;
    });
}

topo_status topo_plan_run(const topo_plan* p, char** out) {
    if (!p || !out) return invalid("plan and out must be non-null");
    return wrap([&] {
        const auto outputs = topo::dsl::run_plan(p->plan);
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& o : outputs) {
            nlohmann::ordered_json item;
            item["kind"] = topo::dsl::emit_kind_name(o.kind);
            if (o.dest.empty())
                item["dest"] = nullptr;
            else
                item["dest"] = o.dest;
            item["format"] = o.format;
            item["content"] = o.content;
            arr.push_back(item);
        }
        nlohmann::ordered_json j;
        j["outputs"] = arr;
        return emit_string(j.dump(), out);
    });
}

topo_status topo_check_run(double default_tol, const char* format, char** out) {
    if (!format || !out) return invalid("format and out must be non-null");
    return wrap([&]() -> topo_status {
        const topo::CheckReport report =
            topo::run_checks(default_tol > 0 ? default_tol : 1e-9);
        const std::string fmt = format;
        std::string text;
        if (fmt == "table")
            text = topo::check_table(report);
        else if (fmt == "json")
            text = topo::check_json(report);
        else
            throw topo::Error(topo::Errc::InvalidArgument, "format must be 'table' or 'json'");
        const topo_status rc = emit_string(text, out);
        if (rc != TOPO_OK) return rc;
        if (!report.all_passed()) {
            t_last_error = "verification matrix reported failures";
            return TOPO_ERR_CHECK_FAILED;
        }
        return TOPO_OK;
    });
}

topo_status topo_parse_number(const char* text, double* out) {
    if (!text || !out) return invalid("text and out must be non-null");
    return wrap([&] {
        *out = topo::dsl::parse_number(text);
        return TOPO_OK;
    });
}

} // extern "C"

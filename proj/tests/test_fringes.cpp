#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fringes.hpp"
#include "helpers.hpp"

using namespace topo;
using namespace testutil;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("theta grid is uniform over [0, 2pi)") {
    const auto grid = theta_grid(256);
    REQUIRE(grid.size() == 256);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() < 2.0 * kPi);
    for (std::size_t j = 1; j < grid.size(); ++j) CHECK(grid[j] > grid[j - 1]);
    CHECK_THROWS_AS(theta_grid(1), Error);
}

TEST_CASE("coincidence curve values at the reference instants") {
    const ThreeQubitState x = prepare(make_recipe(RecipeKind::X));
    const PhasePath ux1 = named_path(NamedPath::UX1);
    const auto grid = theta_grid(256);

    const FringeCurve at0 = coincidence_curve(x, ux1, 0.0, grid, 1.0);
    CHECK(std::fabs(at0.samples[0] - 2.0) < 1e-12); // theta = 0, O = 1

    const FringeCurve at1 = coincidence_curve(x, ux1, 1.0, grid, 1.0);
    for (std::size_t j = 0; j < grid.size(); ++j)
        CHECK(std::fabs(at1.samples[j] - (1.0 - std::sin(grid[j]))) < 1e-9);

    const ThreeQubitState prod = prepare(make_recipe(RecipeKind::ProdX));
    const FringeCurve flat = coincidence_curve(prod, ux1, 1.0, grid, 1.0);
    for (const double v : flat.samples) CHECK(std::fabs(v - 1.0) < 1e-12);
}

TEST_CASE("curves stay within [0, 2 C0] and average to C0") {
    std::mt19937 rng(41);
    const auto grid = theta_grid(256);
    const PhasePath ux1 = named_path(NamedPath::UX1);
    for (int trial = 0; trial < 25; ++trial) {
        const ThreeQubitState psi = random_state(rng);
        const double c0 = 0.5 + trial * 0.1;
        const FringeCurve curve = coincidence_curve(psi, ux1, trial / 25.0, grid, c0);
        double mean = 0.0;
        for (const double v : curve.samples) {
            CHECK(v >= -1e-9);
            CHECK(v <= 2.0 * c0 + 1e-9);
            mean += v;
        }
        mean /= static_cast<double>(curve.samples.size());
        CHECK(std::fabs(mean - c0) < 1e-9);
    }
    CHECK_THROWS_AS(coincidence_curve(random_state(rng), ux1, 0.0, grid, 0.0), Error);
}

TEST_CASE("curve equals C0 (1 + V cos(theta + Phi)) everywhere") {
    std::mt19937 rng(42);
    const auto grid = theta_grid(256);
    const struct {
        RecipeKind recipe;
        NamedPath path;
    } scenarios[] = {{RecipeKind::X, NamedPath::UX1},
                     {RecipeKind::X, NamedPath::UX2},
                     {RecipeKind::Ghz, NamedPath::UBghz},
                     {RecipeKind::ProdX, NamedPath::UX1}};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& sc : scenarios) {
        const PreparationRecipe recipe =
            sc.recipe == RecipeKind::Bghz
                ? make_recipe(sc.recipe, 0.5, std::sqrt(3.0) / 2.0)
                : make_recipe(sc.recipe);
        const ThreeQubitState psi = prepare(recipe);
        const PhasePath path = named_path(sc.path);
        for (int trial = 0; trial < 8; ++trial) {
            const double t = unit(rng);
            const PancharatnamSample sample = pancharatnam(psi, path, t);
            const FringeCurve curve = coincidence_curve(psi, path, t, grid, 1.0);
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const double expected =
                    1.0 + sample.visibility *
                              std::cos(grid[j] + (sample.phase ? *sample.phase : 0.0));
                CHECK(std::fabs(curve.samples[j] - expected) < 1e-9);
            }
        }
    }
}

TEST_CASE("closed-form spot values") {
    CHECK(std::fabs(closed_form(FormulaId::C1XUx1, {}, 1.0, 0.0) - 1.0) < 1e-12);
    CHECK(std::fabs(closed_form(FormulaId::C31Ghz, {}, 0.0, 0.0) - 2.0) < 1e-12);
    FormulaParams p;
    p.phi = {{-kPi, -kPi, -kPi}};
    for (const double theta : {0.0, 1.0, 2.5})
        CHECK(std::fabs(closed_form(FormulaId::CpProd, p, 0.0, theta) - 1.0) < 1e-12);
}

TEST_CASE("closed-form parameter mismatches are rejected") {
    FormulaParams with_phi;
    with_phi.phi = {{0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(closed_form(FormulaId::C0XGeneral, {}, 0.0, 0.0), Error);
    CHECK_THROWS_AS(closed_form(FormulaId::C1XUx1, with_phi, 0.0, 0.0), Error);
    CHECK_THROWS_AS(formula_from_name("bogus"), Error);
}

TEST_CASE("the simultaneous-ramp formula is the general formula specialized") {
    const auto grid = theta_grid(256);
    double dev = 0.0;
    for (int j = 0; j <= 64; ++j) {
        const double t = static_cast<double>(j) / 64.0;
        FormulaParams p;
        p.phi = {{-kPi * t, -kPi * t, -kPi * t}};
        for (const double theta : grid)
            dev = std::max(dev, std::fabs(closed_form(FormulaId::C1XUx1, {}, t, theta) -
                                          closed_form(FormulaId::C0XGeneral, p, 0.0, theta)));
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("cross-validation passes for the six faithful formulas") {
    const ThreeQubitState x = prepare(make_recipe(RecipeKind::X));
    const ThreeQubitState ghz = prepare(make_recipe(RecipeKind::Ghz));
    const ThreeQubitState prod = prepare(make_recipe(RecipeKind::ProdX));
    const ThreeQubitState prodb =
        prepare(make_recipe(RecipeKind::ProdBghz, 0.5, std::sqrt(3.0) / 2.0));
    const PhasePath ux1 = named_path(NamedPath::UX1);
    const PhasePath ux2 = named_path(NamedPath::UX2);
    const PhasePath ub = named_path(NamedPath::UBghz);

    for (const auto& [psi, path, id] :
         {std::tuple<const ThreeQubitState*, const PhasePath*, FormulaId>{&x, &ux1,
                                                                          FormulaId::C0XGeneral},
          {&x, &ux1, FormulaId::C1XUx1},
          {&x, &ux2, FormulaId::C2XUx2},
          {&prod, &ux1, FormulaId::CpProd},
          {&prod, &ux2, FormulaId::CpProd},
          {&ghz, &ub, FormulaId::C31Ghz},
          {&prodb, &ub, FormulaId::C3pProdBghz}}) {
        const ValidationReport report = cross_validate(*psi, *path, id);
        CHECK(report.pass);
        CHECK(report.max_abs_dev < 1e-9);
    }
}

TEST_CASE("the biased-GHZ formula deviates as printed and matches sign-negated") {
    const ThreeQubitState bghz = prepare(make_recipe(RecipeKind::Bghz, 0.5, std::sqrt(3.0) / 2.0));
    const ValidationReport report =
        cross_validate(bghz, named_path(NamedPath::UBghz), FormulaId::C3Bghz);
    CHECK_FALSE(report.pass);
    CHECK(report.sign_flip_dev < 1e-9);
    // The discrepancy is the full sin(theta) sin(pi t) cross term; the
    // grid contains theta = pi/2 and t = 1/2, so the max is 1.
    CHECK(std::fabs(report.max_abs_dev - 1.0) < 1e-9);
}

TEST_CASE("cross-validation rejects mismatched scenarios") {
    const ThreeQubitState ghz = prepare(make_recipe(RecipeKind::Ghz));
    const ThreeQubitState x = prepare(make_recipe(RecipeKind::X));
    CHECK_THROWS_AS(cross_validate(ghz, named_path(NamedPath::UX1), FormulaId::C1XUx1), Error);
    CHECK_THROWS_AS(cross_validate(x, named_path(NamedPath::UBghz), FormulaId::C1XUx1), Error);
    CHECK_THROWS_AS(cross_validate(x, named_path(NamedPath::UX1), FormulaId::C1XUx1, {1, 1}),
                    Error);
}

TEST_CASE("figure datasets have the documented layout and reference columns") {
    const std::string csv = figure_csv(FigureId::Balgor4);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 257); // header + 256 grid rows
    REQUIRE(rows[0].size() == 11); // theta + 2 states x 5 instants
    CHECK(rows[0][0] == "theta");
    CHECK(rows[0][1] == "x:t/T=0");
    CHECK(rows[0][10] == "prod_x:t/T=1");

    // x at t/T = 1 is 1 - sin(theta).
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const double theta = std::stod(rows[r][0]);
        const double value = std::stod(rows[r][5]);
        CHECK(std::fabs(value - (1.0 - std::sin(theta))) < 1e-6);
    }

    // Sequential ramp: dark fringe at t/T = 1/2 on the entangled side.
    const auto rows5 = parse_csv(figure_csv(FigureId::Balgor5));
    for (std::size_t r = 1; r < rows5.size(); ++r)
        CHECK(std::fabs(std::stod(rows5[r][3]) - 1.0) < 1e-9);

    // GHZ panel of the three-state figure: flat at t/T = 1/2.
    const auto rows3 = parse_csv(figure_csv(FigureId::Balgor3));
    REQUIRE(rows3[0].size() == 21); // theta + 4 states x 5 instants
    CHECK(rows3[0][11] == "ghz:t/T=0");
    for (std::size_t r = 1; r < rows3.size(); ++r)
        CHECK(std::fabs(std::stod(rows3[r][13]) - 1.0) < 1e-9);
}

TEST_CASE("figure datasets are byte-stable") {
    CHECK(figure_csv(FigureId::Balgor3) == figure_csv(FigureId::Balgor3));
    CHECK(figure_json(FigureId::Balgor4) == figure_json(FigureId::Balgor4));
    CHECK_THROWS_AS(figure_from_name("balgor9"), Error);
}

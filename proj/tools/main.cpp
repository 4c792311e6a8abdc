// Command-line surface: compute bodies, run verification suites, run the
// experiments, and emit JSON reports plus layered SVG figures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "subex/experiments.hpp"
#include "subex/json_io.hpp"
#include "subex/suites.hpp"
#include "subex/svg.hpp"
#include "subex/transforms.hpp"

namespace {

using namespace subex;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnbounded = 3;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << std::endl;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

int emit_report(const Report& rep, const std::string& out_path) {
    write_text(out_path, report_to_json(rep).dump(2));
    return rep.all_pass() ? kExitPass : kExitVerifyFail;
}

int cmd_body(const std::string& input_path, const std::string& spec_path, int grid_n,
             const std::string& out_path, const std::string& svg_path) {
    Json input = read_json_file(input_path);
    ExpectationSpec spec = spec_from_json(read_json_file(spec_path));
    DirectionGrid grid = DirectionGrid::uniform(grid_n);

    BodyEstimate body;
    SvgFigure fig;
    if (input.contains("points")) {
        WeightedSample mu = sample_from_json(input);
        body = floating_like_body(mu, spec, grid);
        std::vector<Vec2> pts;
        for (const auto& p : mu.points) pts.push_back({p[0], p[1]});
        fig.add_points(pts, "sample");
    } else {
        ConvexShape K = shape_from_json(input);
        body = floating_like_body(K, spec, grid);
        fig.add_outline(K.outline(), "source", true);
    }
    if (body.unbounded) {
        std::cerr << "unbounded body\n";
        write_text(out_path, body_to_json(body).dump(2));
        return kExitUnbounded;
    }
    fig.add_polygon(body.outer, "body");
    write_text(out_path, body_to_json(body).dump(2));
    if (!svg_path.empty()) write_text(svg_path, fig.render());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convex bodies from sublinear expectations of planar measures"};
    app.require_subcommand(1);

    // body
    std::string body_input, body_spec, body_out, body_svg;
    int body_grid = 720;
    auto* body = app.add_subcommand("body", "compute a floating-like body");
    body->add_option("--input", body_input, "shape or sample JSON file")->required();
    body->add_option("--spec", body_spec, "expectation spec JSON file")->required();
    body->add_option("--grid", body_grid, "direction grid resolution");
    body->add_option("--out", body_out, "output body JSON path (default stdout)");
    body->add_option("--svg", body_svg, "output SVG path");

    // verify
    std::string verify_suite, verify_out;
    std::uint64_t verify_seed = 0;
    double verify_tol = 0.0;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", verify_suite,
                       "duals | axioms | inclusion | bob | metronoid | centroid | continuity")
        ->required();
    verify->add_option("--seed", verify_seed, "random seed");
    verify->add_option("--tol", verify_tol, "override all suite tolerances");
    verify->add_option("--out", verify_out, "output report JSON path (default stdout)");

    // experiment
    std::string exp_name, exp_out, exp_svg;
    std::uint64_t exp_seed = 0;
    double exp_alpha = 0.5, exp_eps = 0.5, exp_a = 0.8, exp_c = 0.0;
    double exp_tau = 0.75, exp_p = 1.0;
    size_t exp_n = 100000;
    int exp_seeds = 200, exp_grid = 0, exp_pairs = 20;
    long exp_m = 8;
    auto* exp = app.add_subcommand("experiment", "run a paper experiment");
    exp->add_option("name", exp_name,
                    "concentration | expected-polytope | nonmonotone | "
                    "minkowski-conjecture | fingerprint")
        ->required();
    exp->add_option("--alpha", exp_alpha, "tail level");
    exp->add_option("--eps", exp_eps, "sandwich tolerance (concentration)");
    exp->add_option("--a", exp_a, "box half-width (nonmonotone)");
    exp->add_option("--tau", exp_tau, "expectile level");
    exp->add_option("--p", exp_p, "moment order");
    exp->add_option("--c", exp_c, "fingerprint exponent constant");
    exp->add_option("--m", exp_m, "polytope size / fingerprint order cap");
    exp->add_option("--n", exp_n, "sample size");
    exp->add_option("--seeds", exp_seeds, "number of seeded repetitions");
    exp->add_option("--pairs", exp_pairs, "number of random polygon pairs");
    exp->add_option("--grid", exp_grid, "direction grid resolution");
    exp->add_option("--seed", exp_seed, "random seed");
    exp->add_option("--out", exp_out, "output report JSON path (default stdout)");
    exp->add_option("--svg", exp_svg, "output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (body->parsed())
            return cmd_body(body_input, body_spec, body_grid, body_out, body_svg);

        if (verify->parsed()) {
            Report rep = suites::run_suite(verify_suite, verify_seed, verify_tol);
            return emit_report(rep, verify_out);
        }

        if (exp->parsed()) {
            using namespace experiments;
            if (exp_name == "concentration") {
                ConcentrationParams p;
                p.alpha = exp_alpha == 0.5 ? 0.3 : exp_alpha;
                p.eps = exp_eps;
                p.n = exp_n;
                p.seeds = exp_seeds;
                p.grid_n = exp_grid > 0 ? exp_grid : 64;
                ConvexShape square = ConvexShape::box({0.0, 0.0}, {1.0, 1.0});
                return emit_report(run_concentration(square, p, exp_seed), exp_out);
            }
            if (exp_name == "expected-polytope") {
                ConvexShape square = ConvexShape::box({0.5, 0.5}, {0.5, 0.5});
                std::vector<long> ms = {2, 3, 5};
                if (exp_m != 8) ms = {exp_m};
                return emit_report(run_expected_polytope(square, ms, exp_n, exp_seed,
                                                         exp_grid > 0 ? exp_grid : 64),
                                   exp_out);
            }
            if (exp_name == "nonmonotone") {
                auto res = run_nonmonotone(exp_a, 0.1, exp_alpha, exp_seed,
                                           exp_grid > 0 ? exp_grid : 720);
                if (!exp_svg.empty()) {
                    SvgFigure fig;
                    fig.add_outline(res.l1.outline(), "l1 ball", true);
                    fig.add_outline(res.box.outline(), "box", true);
                    fig.add_polygon(res.body_l1.outer, "E_alpha(l1)");
                    fig.add_polygon(res.body_box.outer, "E_alpha(box)");
                    write_text(exp_svg, fig.render());
                }
                return emit_report(res.rep, exp_out);
            }
            if (exp_name == "minkowski-conjecture")
                return emit_report(run_minkowski_conjecture(exp_pairs, exp_alpha, exp_seed,
                                                            exp_grid > 0 ? exp_grid : 256),
                                   exp_out);
            if (exp_name == "fingerprint") {
                ScalarLaw law1 = ScalarLaw::empirical({0.0, 1.0});
                ScalarLaw law2 = ScalarLaw::empirical({0.25, 0.75});
                return emit_report(run_fingerprint(law1, law2, exp_c, exp_m, exp_seed),
                                   exp_out);
            }
            std::cerr << "unknown experiment: " << exp_name << "\n";
            return kExitUsage;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        std::cerr << "malformed JSON: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

// invgamma: command-line front end.
//
// Exit status: 0 success, 2 domain or usage error, 3 non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "invgamma/invgamma.hpp"
#include "invgamma/io.hpp"

namespace ig = invgamma;
using nlohmann::json;

namespace {

enum class Format { plain, csv, json };

struct Globals {
    std::string tol;
    int max_iter = 0;
    std::string format;
    std::string out;
};

constexpr int exit_usage = 2;
constexpr int exit_nonconvergence = 3;

/// 15 significant digits, fixed point for moderate magnitudes.
std::string fmt_scalar(double v) {
    char buf[64];
    const double a = std::abs(v);
    if (v == 0.0) {
        std::snprintf(buf, sizeof buf, "%.14f", v);
    } else if (a >= 1e-3 && a < 1e15) {
        const int digits = std::max(0, 14 - static_cast<int>(std::floor(std::log10(a))));
        std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    } else {
        std::snprintf(buf, sizeof buf, "%.14e", v);
    }
    return buf;
}

Format resolve_format(const std::string& name, Format fallback) {
    if (name.empty()) return fallback;
    if (name == "plain") return Format::plain;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ig::DomainError("unknown format '" + name + "' (plain, csv, json)");
}

double number(const std::string& text) { return ig::parse_real(text); }

std::vector<double> number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(number(item));
    return out;
}

/// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ig::DomainError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void emit_json(const Globals& g, const json& j) {
    Sink sink(g.out);
    sink.os() << j.dump(2) << '\n';
}

void emit_text(const Globals& g, const std::string& text) {
    Sink sink(g.out);
    sink.os() << text;
}

std::string complex_plain(ig::Complex z) { return fmt_scalar(z.real()) + " " + fmt_scalar(z.imag()) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    // Tolerance override from the environment, read once.
    std::string env_tol;
    if (const char* v = std::getenv("INVGAMMA_TOL")) env_tol = v;

    CLI::App app{"Branches of the inverse Gamma function"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "relative residual tolerance (default 1e-11, or INVGAMMA_TOL)");
    app.add_option("--max-iter", g.max_iter, "iteration limit for the solvers");
    app.add_option("--format", g.format, "plain, csv or json");
    app.add_option("--out", g.out, "write output to this file");

    auto solve_config = [&] {
        ig::SolveConfig cfg;
        const std::string& tol = !g.tol.empty() ? g.tol : env_tol;
        if (!tol.empty()) cfg.residual_rel_tol = number(tol);
        if (g.max_iter != 0) cfg.max_iter = g.max_iter;
        cfg.validate();
        return cfg;
    };

    int kmin = -5;
    auto* critical = app.add_subcommand("critical", "table of psi_k and gamma_k for k = 0 down to kmin");
    critical->add_option("--kmin", kmin, "lowest branch (<= 0)");

    std::string arg_g, arg_re, arg_im, arg_x;
    int branch = 0;
    bool below = false;

    auto* inv = app.add_subcommand("inv", "real inverse: x with Gamma(x) = g on branch k");
    inv->add_option("g", arg_g)->required();
    inv->add_option("-k,--branch", branch, "branch index (<= 0)");

    auto* inv_complex = app.add_subcommand("inv-complex", "complex inverse on branch 0 or -1");
    inv_complex->add_option("re", arg_re)->required();
    inv_complex->add_option("im", arg_im)->required();
    inv_complex->add_option("-k,--branch", branch, "branch index (0 or -1)");
    inv_complex->add_flag("--below", below, "on a cut, take the limit from below");

    auto* approx = app.add_subcommand("approx", "Stirling/Lambert-W approximation to the principal inverse");
    approx->add_option("x", arg_x)->required();

    auto* domain = app.add_subcommand("domain", "x-interval of branch k that attains g");
    domain->add_option("g", arg_g)->required();
    domain->add_option("-k,--branch", branch, "branch index (<= 0)");

    std::string anchors_text, explore_text;
    bool mirror = false;
    double axis_tol = 1e-3;
    int samples = 65;
    auto* contours = app.add_subcommand("contours", "trimmed contour atlas (json or csv)");
    contours->add_option("-k,--branch", branch, "branch index (0 or -1)");
    contours->add_option("--anchors", anchors_text, "comma-separated g values on branch k");
    contours->add_option("--explore", explore_text, "comma-separated g values on branch k-1");
    contours->add_flag("--mirror", mirror, "also erect the downward contours");
    contours->add_option("--axis-tol", axis_tol, "how close an image end must come to the real axis");
    contours->add_option("--samples", samples, "initial samples per contour");

    int boundary_n = 64;
    auto* boundary = app.add_subcommand("boundary", "cuts of branch k mapped through the complex inverse");
    boundary->add_option("-k,--branch", branch, "branch index (0 or -1)");
    boundary->add_option("-n,--points", boundary_n, "points per cut segment");

    auto* gamma_cmd = app.add_subcommand("gamma", "Gamma(re + i im)");
    gamma_cmd->add_option("re", arg_re)->required();
    gamma_cmd->add_option("im", arg_im);
    auto* digamma_cmd = app.add_subcommand("digamma", "Psi(re + i im)");
    digamma_cmd->add_option("re", arg_re)->required();
    digamma_cmd->add_option("im", arg_im);
    auto* lambertw = app.add_subcommand("lambertw", "principal branch of Lambert W");
    lambertw->add_option("x", arg_x)->required();
    auto* branch_cmd = app.add_subcommand("branch", "branch whose real range contains x");
    branch_cmd->add_option("x", arg_x)->required();
    auto* strip_cmd = app.add_subcommand("strip", "k with re + i im in the strip D_k");
    strip_cmd->add_option("re", arg_re)->required();
    strip_cmd->add_option("im", arg_im);
    auto* on_cut = app.add_subcommand("on-cut", "whether re + i im lies on a cut of branch k");
    on_cut->add_option("re", arg_re)->required();
    on_cut->add_option("im", arg_im);
    on_cut->add_option("-k,--branch", branch, "branch index (0 or -1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    auto complex_arg = [&] { return ig::Complex(number(arg_re), arg_im.empty() ? 0.0 : number(arg_im)); };

    try {
        if (*critical) {
            if (kmin > 0) throw ig::InvalidBranch("kmin must be <= 0 (no branches for k >= 1)");
            if (resolve_format(g.format, Format::csv) == Format::json) {
                emit_json(g, ig::io::critical_json(kmin));
            } else {
                std::ostringstream os;
                ig::io::write_critical_csv(os, kmin);
                emit_text(g, os.str());
            }
        } else if (*inv) {
            const double value = number(arg_g);
            const ig::RealInverse r = ig::solve_real_inverse(value, branch, solve_config());
            if (r.reduced_accuracy) std::cerr << "warning: reduced accuracy near a branch point or pole\n";
            if (resolve_format(g.format, Format::plain) == Format::json)
                emit_json(g, {{"g", value}, {"branch", branch}, {"x", r.x}, {"reduced_accuracy", r.reduced_accuracy}});
            else
                emit_text(g, fmt_scalar(r.x) + "\n");
        } else if (*inv_complex) {
            const ig::Complex z = complex_arg();
            const auto side = below ? ig::CutSide::below : ig::CutSide::above;
            const ig::ComplexInverse r = ig::solve_complex_inverse(z, branch, solve_config(), side);
            if (r.near_branch_point) std::cerr << "warning: reduced accuracy near a branch point\n";
            if (!r.in_strip) std::cerr << "warning: result lies outside the strip D_" << branch << "\n";
            const Format f = resolve_format(g.format, Format::plain);
            if (f == Format::json)
                emit_json(g, {{"z", ig::io::point(z)},
                              {"branch", branch},
                              {"w", ig::io::point(r.w)},
                              {"near_branch_point", r.near_branch_point},
                              {"in_strip", r.in_strip}});
            else if (f == Format::csv)
                emit_text(g, "re,im\n" + ig::io::fmt17(r.w.real()) + "," + ig::io::fmt17(r.w.imag()) + "\n");
            else
                emit_text(g, complex_plain(r.w));
        } else if (*approx) {
            emit_text(g, fmt_scalar(ig::stirling_inverse_approx(number(arg_x))) + "\n");
        } else if (*domain) {
            const ig::RealInterval iv = ig::real_gamma_domain(number(arg_g), branch);
            if (resolve_format(g.format, Format::plain) == Format::json) {
                emit_json(g, {{"lo", iv.lo},
                              {"hi", iv.hi_infinite() ? json(nullptr) : json(iv.hi)},
                              {"lo_open", iv.lo_open},
                              {"hi_open", iv.hi_open}});
            } else {
                const std::string hi = iv.hi_infinite() ? "inf" : fmt_scalar(iv.hi);
                emit_text(g, std::string(iv.lo_open ? "(" : "[") + fmt_scalar(iv.lo) + ", " + hi +
                                 (iv.hi_open ? ")" : "]") + "\n");
            }
        } else if (*contours) {
            ig::AtlasAnchors anchors = ig::default_atlas_anchors(branch);
            if (!anchors_text.empty() || !explore_text.empty())
                anchors = {number_list(anchors_text), number_list(explore_text)};
            const ig::Atlas atlas = ig::build_atlas(branch, anchors.anchors, anchors.explore, {axis_tol, mirror, samples});
            if (resolve_format(g.format, Format::json) == Format::csv) {
                std::ostringstream os;
                ig::io::write_atlas_csv(os, atlas);
                emit_text(g, os.str());
            } else {
                emit_json(g, ig::io::atlas_json(atlas));
            }
        } else if (*boundary) {
            const auto curves = ig::branch_boundary(branch, boundary_n, solve_config());
            if (resolve_format(g.format, Format::json) == Format::csv) {
                std::ostringstream os;
                ig::io::write_boundary_csv(os, curves);
                emit_text(g, os.str());
            } else {
                emit_json(g, ig::io::boundary_json(branch, curves));
            }
        } else if (*gamma_cmd || *digamma_cmd) {
            const ig::Complex z = complex_arg();
            const ig::Complex v = *gamma_cmd ? ig::gamma(z) : ig::digamma(z);
            emit_text(g, arg_im.empty() ? fmt_scalar(v.real()) + "\n" : complex_plain(v));
        } else if (*lambertw) {
            emit_text(g, fmt_scalar(ig::lambert_w0(number(arg_x))) + "\n");
        } else if (*branch_cmd) {
            emit_text(g, std::to_string(ig::branch_containing(number(arg_x))) + "\n");
        } else if (*strip_cmd) {
            emit_text(g, std::to_string(ig::strip_index(complex_arg())) + "\n");
        } else if (*on_cut) {
            emit_text(g, std::string(ig::is_on_branch_cut(complex_arg(), branch) ? "true" : "false") + "\n");
        }
    } catch (const ig::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool numeric = e.code() == ig::ErrorCode::non_convergence || e.code() == ig::ErrorCode::trim_failure;
        return numeric ? exit_nonconvergence : exit_usage;
    }
    return 0;
}

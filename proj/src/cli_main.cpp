#include "curvetop/errors.hpp"
#include "curvetop/parse.hpp"
#include "curvetop/plane_topology.hpp"
#include "curvetop/pls_graph.hpp"
#include "curvetop/space_topology.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace curvetop;

int log_level() {
    const char* v = std::getenv("CURVETOP_LOG");
    if (!v || !*v) return 0;
    return std::atoi(v) > 0 ? std::atoi(v) : 1;
}

void log_line(const std::string& msg) {
    if (log_level() > 0) std::cerr << "[curvetop] " << msg << "\n";
}

// Inputs are either literal polynomial text or a path to a file holding it.
std::string read_input(const std::string& arg) {
    std::ifstream in(arg);
    if (!in.good()) return arg;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

MultiPoly parse_input(const std::string& arg) {
    std::string text = read_input(arg);
    try {
        return parse_poly(text);
    } catch (const ParseError& e) {
        // Report line/column of the offending character.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < e.position && i < text.size(); ++i) {
            if (text[i] == '\n') { ++line; col = 1; }
            else ++col;
        }
        std::ostringstream os;
        os << "parse error at line " << line << ", column " << col << ": " << e.what();
        throw std::runtime_error(os.str());
    }
}

Rational parse_width(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::runtime_error("bad --refine-width: " + s);
    r.canonicalize();
    if (sign_of(r) <= 0) throw std::runtime_error("--refine-width must be positive");
    return r;
}

void refine_graph(PLSGraph& g, const Rational& width) {
    for (PLSVertex& v : g.vertices)
        for (RealAlgebraicNumber& c : v.coords) c.refine_below(width);
}

struct OutputConfig {
    std::string format = "json";
    std::string out;
};

void emit(const PLSGraph& g, const OutputConfig& oc) {
    auto write_or_print = [&](const std::string& payload, const char* ext) {
        if (oc.out.empty()) {
            std::cout << payload;
            if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
            return;
        }
        std::string path = oc.out + ext;
        std::ofstream f(path);
        if (!f.good()) throw std::runtime_error("cannot write " + path);
        f << payload;
        log_line("wrote " + path);
    };
    if (oc.format == "json" || oc.format == "both") write_or_print(export_json(g), ".json");
    if (oc.format == "obj" || oc.format == "both") write_or_print(export_obj(g), ".obj");
}

// The human-readable report goes to stdout when artifacts go to files, and to
// stderr when the artifact itself occupies stdout.
std::ostream& report_stream(const OutputConfig& oc) {
    return oc.out.empty() ? std::cerr : std::cout;
}

void print_report(std::ostream& os, const PLSGraph& g, double seconds) {
    ComponentStats st = component_stats(g);
    os << "vertices: " << g.vertices.size() << "\n"
       << "edges: " << g.edges.size() << "\n"
       << "components: " << st.components << "\n"
       << "cycle rank: " << st.cycle_rank << "\n";
    auto put = [&](const char* name, const std::optional<bool>& v) {
        if (v.has_value()) os << name << ": " << (*v ? "pass" : "fail") << "\n";
    };
    put("plane-generic", g.certificates.plane_generic);
    put("pseudo-generic", g.certificates.pseudo_generic);
    put("space-generic", g.certificates.space_generic);
    for (const std::string& s : g.certificates.shears) os << "shear: " << s << "\n";
    for (const std::string& n : g.certificates.notes) os << "note: " << n << "\n";
    os << "wall time: " << seconds << " s\n";
}

int run_plane(const std::string& input, const ShearRetryPolicy& policy,
              const Rational& width, const OutputConfig& oc) {
    MultiPoly f = parse_input(input);
    auto t0 = std::chrono::steady_clock::now();
    PlaneTopologyResult res = plane_topology(f, policy);
    refine_graph(res.graph, width);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(res.graph, oc);
    print_report(report_stream(oc), res.graph, dt);
    return 0;
}

int run_space(const std::string& in1, const std::string& in2, const SpaceOptions& opts,
              const Rational& width, const OutputConfig& oc) {
    MultiPoly p1 = parse_input(in1);
    MultiPoly p2 = parse_input(in2);
    auto t0 = std::chrono::steady_clock::now();
    SpaceTopologyResult res = space_topology(p1, p2, opts);
    refine_graph(res.graph, width);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(res.graph, oc);
    print_report(report_stream(oc), res.graph, dt);
    return 0;
}

// Certify the inputs exactly as given (no shear retries): exit 0 when the
// certificates pass, 2 when the input is certified non-generic.
int run_check(const std::vector<std::string>& inputs) {
    if (inputs.size() == 1) {
        MultiPoly f = parse_input(inputs[0]);
        GenericityReport rep = certify_plane_generic(MultiPoly::squarefree_part(f, Var::Y));
        if (rep.status == GenericityStatus::Generic) {
            std::cout << "plane-generic: pass\n";
            return 0;
        }
        std::cout << "plane-generic: fail";
        if (rep.witness)
            std::cout << " (witness k=" << rep.witness->k << ", i=" << rep.witness->i << ")";
        std::cout << "\n";
        return 2;
    }
    MultiPoly p1 = parse_input(inputs[0]);
    MultiPoly p2 = parse_input(inputs[1]);
    DeltaDecomposition dd = delta_decomposition(p1, p2);
    GammaDecomposition gd = gamma_decomposition(dd.h);
    GenericityReport plane = certify_plane_generic(gd);
    bool plane_ok = plane.status == GenericityStatus::Generic;
    std::cout << "plane-generic (projection): " << (plane_ok ? "pass" : "fail") << "\n";
    PseudoGenericReport pseudo = certify_pseudo_generic(dd);
    std::cout << "pseudo-generic: " << (pseudo.ok ? "pass" : "fail") << "\n";
    if (!plane_ok || !pseudo.ok) return 2;
    SingularityClassification cls = classify_singularities(dd, gd);
    SpaceGenericReport space = certify_space_generic(dd, gd, cls);
    std::cout << "space-generic: " << (space.ok ? "pass" : "fail");
    if (!space.ok) std::cout << " (" << space.reason << ")";
    std::cout << "\n";
    return space.ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified topology of plane and space algebraic curves"};
    app.require_subcommand(1);

    OutputConfig oc;
    int budget = 32;
    std::string width_str = "1/1073741824"; // 2^-30
    bool parallel = false;
    std::vector<std::string> inputs;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", oc.format, "json | obj | both")
            ->check(CLI::IsMember({"json", "obj", "both"}));
        sub->add_option("--out", oc.out, "output path prefix (suffix .json/.obj is appended)");
        sub->add_option("--shear-budget", budget, "number of nonzero shears to try");
        sub->add_option("--refine-width", width_str, "rational bound on coordinate interval width");
        sub->add_flag("--parallel", parallel, "lift regular fibers concurrently");
    };

    CLI::App* plane = app.add_subcommand("plane", "topology of f(x,y) = 0");
    plane->add_option("poly", inputs, "polynomial text or file")->expected(1);
    add_common(plane);

    CLI::App* space = app.add_subcommand("space", "topology of p1 = p2 = 0");
    space->add_option("polys", inputs, "two polynomials (text or files)")->expected(2);
    add_common(space);

    CLI::App* check = app.add_subcommand("check-generic", "certify generic position only");
    check->add_option("polys", inputs, "one or two polynomials")->expected(1, 2);
    add_common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        Rational width = parse_width(width_str);
        ShearRetryPolicy policy;
        policy.budget = budget;
        if (plane->parsed()) return run_plane(inputs[0], policy, width, oc);
        if (space->parsed()) {
            SpaceOptions opts;
            opts.shear = policy;
            opts.parallel = parallel;
            return run_space(inputs[0], inputs[1], opts, width, oc);
        }
        return run_check(inputs);
    } catch (const ShearBudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CommonComponent&) {
        std::cerr << "error: input surfaces share a component\n";
        return 1;
    } catch (const CurveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// toric-futaki: command-line front end.
//
//   toric-futaki list
//   toric-futaki validate <name|fan.json> [--json]
//   toric-futaki analyze  <name|file> [--from-fan | --from-vertices] [--polytope] [--barycentre]
//                         [--futaki ETA]... [--embedding] [--selftest N] [--mc SAMPLES]
//                         [--tolerance K] [--json]
//   toric-futaki export   <name|file> [--format fan|vertices|polytope|off] [-o FILE]
//
// Exit codes: 0 success, 1 mathematical failure, 2 I/O or parse failure.

#include <toric/io.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

namespace {

using namespace toric;

constexpr int kExitMath = 1;
constexpr int kExitInput = 2;
constexpr std::uint64_t kDefaultSeed = 42;

struct MathFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t mc_seed() {
    if (const char* s = std::getenv("FUTAKI_MC_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw ParseError(std::string("FUTAKI_MC_SEED: not an unsigned integer: ") + s);
        }
    }
    return kDefaultSeed;
}

std::string fmt(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

std::string fmt(const std::vector<double>& v) {
    std::ostringstream os;
    os << std::setprecision(10) << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

// What an input argument resolved to.
struct Input {
    const CatalogEntry* entry = nullptr;
    std::optional<Fan> fan;
    std::optional<VertexInput> vertices;
    std::string label;
};

Input resolve(const std::string& arg, bool want_vertices) {
    Input in;
    in.label = arg;
    if (const auto* e = find_entry(arg)) {
        in.entry = e;
        in.fan = e->fan;
        if (e->printed_vertices) in.vertices = VertexInput{*e->printed_vertices, true};
        return in;
    }
    json j = parse_json_text(read_file(arg), arg);
    if (want_vertices || (j.is_object() && j.contains("vertices") && !j.contains("rays")))
        in.vertices = vertices_from_json(j);
    else
        in.fan = fan_from_json(j);
    return in;
}

void print_report(const ValidationReport& r, const std::string& label) {
    std::cout << label << "\n"
              << "  fan axioms:  " << (r.axioms_ok ? "ok" : "VIOLATED") << "\n"
              << "  complete:    " << (r.complete ? "yes" : "no") << "\n"
              << "  simplicial:  " << (r.simplicial ? "yes" : "no") << "\n"
              << "  smooth:      " << (r.smooth ? "yes" : "no") << "\n";
    for (const auto& v : r.violations) std::cout << "  [" << to_string(v.kind) << "] " << v.detail << "\n";
}

int cmd_list() {
    for (const auto& e : catalog()) {
        std::cout << e.name << " - " << e.description << " [" << to_string(e.fan_provenance);
        if (e.fan_provenance == Provenance::Derived && !e.printed_fan) std::cout << " control";
        std::cout << "]\n";
        for (const auto& n : e.notes) std::cout << "    " << n << "\n";
    }
    return 0;
}

int cmd_validate(const std::string& arg, bool as_json) {
    Input in = resolve(arg, false);
    if (!in.fan) throw ParseError(arg + ": no fan to validate");
    auto rep = validate_fan(*in.fan);
    if (as_json) {
        json j = to_json(rep);
        j["name"] = in.fan->name.empty() ? arg : in.fan->name;
        std::cout << j.dump(2) << "\n";
    } else {
        print_report(rep, in.fan->name.empty() ? arg : in.fan->name);
    }
    return rep.axioms_ok ? 0 : kExitMath;
}

struct AnalyzeOptions {
    bool from_fan = false, from_vertices = false;
    bool polytope = false, barycentre = false, embedding = false, as_json = false;
    std::vector<std::string> futaki;
    int selftest = 0;
    std::uint64_t mc = 0;
    double tolerance = 3.0;
};

int cmd_analyze(const std::string& arg, const AnalyzeOptions& o) {
    Input in = resolve(arg, o.from_vertices);
    bool use_vertices = in.vertices && !o.from_fan;
    if (o.from_fan && !in.fan) throw ParseError(arg + ": no fan available");
    if (o.from_vertices && !in.vertices) throw ParseError(arg + ": no vertex list available");

    json out;
    out["input"] = arg;
    std::optional<VPolytope> P;  // internal P_{-K}
    BigInt k = 1;
    if (use_vertices) {
        out["route"] = "vertices";
        std::vector<QVec> pts = in.vertices->vertices;
        if (in.vertices->negated)
            for (auto& v : pts) v = -v;
        try {
            P = convex_hull(pts);
        } catch (const DegeneratePolytope& e) {
            throw MathFailure(e.what());
        }
    } else {
        out["route"] = "fan";
        auto rep = validate_fan(*in.fan);
        if (!rep.axioms_ok) throw MathFailure("fan axioms violated; run validate for details");
        if (!rep.complete) throw MathFailure("fan is not complete; run validate for details");
        GorensteinData g;
        try {
            g = gorenstein_data(*in.fan);
        } catch (const NotQGorenstein& e) {
            throw MathFailure(std::string("not Q-Gorenstein: ") + e.what());
        }
        auto af = is_almost_fano(*in.fan, g);
        if (!af.almost_fano) {
            std::string why = "not almost Fano:";
            if (!af.full_dimensional) why += " conv{-k_sigma} is not full-dimensional;";
            for (auto c : af.non_extremal) why += " -k_sigma of cone " + std::to_string(c) + " is not a vertex;";
            for (auto [a, b] : af.coincident) why += " cones " + std::to_string(a) + "," + std::to_string(b) + " share k_sigma;";
            for (auto [c, v] : af.non_convex) why += " <v" + std::to_string(v) + ", k_sigma" + std::to_string(c) + "> >= 1;";
            throw MathFailure(why);
        }
        k = g.index;
        out["gorenstein_index"] = g.index.str();
        P = anticanonical_polytope(*in.fan, g);
    }

    const bool any = o.polytope || o.barycentre || !o.futaki.empty() || o.embedding || o.selftest || o.mc;
    const bool show_bary = o.barycentre || !any;
    const MomentData m = moments(*P);
    const std::size_t n = P->dim;
    std::ostringstream text;
    text << (in.entry ? in.entry->name : arg) << " (" << out["route"].get<std::string>() << " route)\n";

    if (o.polytope) {
        out["polytope"] = to_json(*P);
        text << "P_{-K}: " << P->vertices.size() << " vertices, " << P->facets.size() << " facets\n";
        for (const auto& v : P->vertices) text << "  " << fmt(v) << "\n";
    }
    if (show_bary) {
        out["moments"] = to_json(m);
        FutakiReport rep = futaki_report(m);
        out["degree"] = rep.degree.str();
        text << "volume " << m.volume << ", degree (-K)^" << n << " = " << rep.degree << "\n"
             << "barycentre a of P_{-K}:      " << fmt(m.barycentre) << "\n"
             << "barycentre of -P_{-K}:        " << fmt(-m.barycentre) << "\n"
             << "first moments / degree (-P):  " << fmt(-degree_normalized_moment(m)) << "\n";
        if (in.entry && in.entry->printed_barycentre && use_vertices) {
            MomentData neg{m.volume, -m.first_moments, -m.barycentre};
            auto match = compare_printed_barycentre(*in.entry->printed_barycentre, neg);
            out["printed_barycentre"] = to_json(*in.entry->printed_barycentre);
            out["printed_match"] = to_string(match);
            text << "published barycentre of -P_{-K}: " << fmt(*in.entry->printed_barycentre) << " ";
            switch (match) {
            case BarycentreMatch::Exact: text << "[matches exactly]\n"; break;
            case BarycentreMatch::DegreeNormalized:
                text << "[matches first moments / degree; the Euclidean barycentre is " << n << "! times larger]\n";
                break;
            case BarycentreMatch::Mismatch: text << "[MISMATCH with exact integration]\n"; break;
            }
        }
    }
    if (!o.futaki.empty()) {
        std::vector<TorusField> fields;
        for (const auto& s : o.futaki) {
            try {
                fields.push_back(TorusField::parse(s));
            } catch (const std::exception& e) {
                throw ParseError(std::string("--futaki: ") + e.what());
            }
            if (fields.back().rank() != n)
                throw ParseError("--futaki \"" + s + "\": expected " + std::to_string(n) + " coefficients");
        }
        FutakiReport rep = futaki_report(m, fields);
        out["futaki"] = to_json(rep);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto& v = rep.values[i];
            text << "Re F(" << o.futaki[i] << ") = " << std::setprecision(12) << v.re_value
                 << "  [= -(2pi)^" << n << " * " << v.moment_factor << "; sign "
                 << (v.sign > 0 ? "+" : v.sign < 0 ? "-" : "0") << "]\n";
        }
    }
    if (o.embedding || o.selftest) {
        EmbeddingData e = use_vertices ? build_embedding(*P, k) : build_embedding(*in.fan);
        out["embedding"] = to_json(e);
        text << "embedding: k = " << e.k << ", " << e.exponents.size() << " lattice points, N = " << e.N << "\n";
        if (o.selftest) {
            std::vector<std::vector<double>> pts;
            double err = gradient_selftest(e, o.selftest, mc_seed(), &pts);
            VPolytope kP = scaled(*P, Rat(e.k));
            double worst = 0;
            for (const auto& x : pts) {
                auto mu = moment_map(e, x);
                for (const auto& h : kP.facets) worst = std::min(worst, h.eval(std::span<const double>(mu)));
            }
            out["selftest"] = {{"trials", o.selftest}, {"max_gradient_error", err}, {"worst_facet_slack", worst}};
            text << "selftest: max |central difference of f - 2 mu| = " << err << " over " << o.selftest
                 << " points; worst facet slack of mu = " << worst << "\n";
        }
    }
    if (o.mc) {
        const std::uint64_t seed = mc_seed();
        auto est = mc_moments(*P, seed, o.mc);
        bool vol_ok = est.volume_agrees(m.volume, o.tolerance);
        bool bary_ok = est.barycentre_agrees(m.barycentre, o.tolerance);
        json j = to_json(est);
        j["seed"] = seed;
        j["agrees"] = vol_ok && bary_ok;
        out["monte_carlo"] = j;
        text << "monte carlo (seed " << seed << ", " << o.mc << " samples): volume " << est.volume << " +- "
             << est.volume_stderr << ", barycentre " << fmt(est.barycentre) << " -> "
             << (vol_ok && bary_ok ? "agrees" : "DISAGREES") << " with exact within " << o.tolerance << " stderr\n";
    }

    if (o.as_json) std::cout << out.dump(2) << "\n";
    else std::cout << text.str();
    return 0;
}

int cmd_export(const std::string& arg, const std::string& format, const std::string& path) {
    Input in = resolve(arg, format == "vertices");
    std::ostringstream os;
    if (format == "fan") {
        if (!in.fan) throw ParseError(arg + ": no fan to export");
        os << to_json(*in.fan).dump(2) << "\n";
    } else if (format == "vertices") {
        if (!in.vertices) throw ParseError(arg + ": no vertex list to export");
        os << vertices_to_json(in.vertices->vertices, in.vertices->negated).dump(2) << "\n";
    } else {
        VPolytope P;
        try {
            if (in.vertices) {
                std::vector<QVec> pts = in.vertices->vertices;
                if (in.vertices->negated)
                    for (auto& v : pts) v = -v;
                P = convex_hull(pts);
            } else {
                P = checked_anticanonical_polytope(*in.fan);
            }
        } catch (const std::runtime_error& e) {
            throw MathFailure(e.what());
        } catch (const DegeneratePolytope& e) {
            throw MathFailure(e.what());
        }
        if (format == "polytope") os << to_json(P).dump(2) << "\n";
        else if (format == "off") write_off(P, os);
        else throw ParseError("--format: unknown format " + format);
    }
    if (path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(path);
        if (!f) throw ParseError(path + ": cannot write");
        f << os.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact anticanonical polytopes, barycentres and Futaki invariants of toric almost Fano varieties"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List the built-in catalog");

    std::string input;
    bool as_json = false;
    auto* validate = app.add_subcommand("validate", "Check fan axioms, completeness and smoothness");
    validate->add_option("input", input, "catalog name or fan JSON file")->required();
    validate->add_flag("--json", as_json, "JSON output");

    AnalyzeOptions ao;
    auto* analyze = app.add_subcommand("analyze", "Anticanonical polytope, barycentre and Futaki invariant");
    analyze->add_option("input", input, "catalog name, fan JSON file or vertex JSON file")->required();
    auto* ff = analyze->add_flag("--from-fan", ao.from_fan, "use the fan even when a vertex list exists");
    analyze->add_flag("--from-vertices", ao.from_vertices, "input is a vertex list; skip the fan stages")->excludes(ff);
    analyze->add_flag("--polytope", ao.polytope, "print P_{-K}");
    analyze->add_flag("--barycentre", ao.barycentre, "print volume, degree and barycentre (default)");
    analyze->add_option("--futaki", ao.futaki, "torus field coefficients, e.g. \"1,0,-1/2\" or \"i,1+2i,0\"");
    analyze->add_flag("--embedding", ao.embedding, "lattice points of k P_{-K}");
    analyze->add_option("--selftest", ao.selftest, "moment-map gradient self-test with N random points");
    analyze->add_option("--mc", ao.mc, "Monte Carlo cross-check with this many samples (seed: FUTAKI_MC_SEED, default 42)");
    analyze->add_option("--tolerance", ao.tolerance, "Monte Carlo agreement threshold in standard errors")->default_val(3.0);
    analyze->add_flag("--json", ao.as_json, "JSON output");

    std::string format = "fan", out_path;
    auto* exp = app.add_subcommand("export", "Write a catalog fan, vertex list or hull to a file");
    exp->add_option("input", input, "catalog name or file")->required();
    exp->add_option("--format", format, "fan | vertices | polytope | off")->default_val("fan");
    exp->add_option("-o,--output", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (*list) return cmd_list();
        if (*validate) return cmd_validate(input, as_json);
        if (*analyze) return cmd_analyze(input, ao);
        if (*exp) return cmd_export(input, format, out_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const MathFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const NonPrimitiveRay& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}

#ifndef CUBIC_MW_CLI_HPP
#define CUBIC_MW_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "decompose.hpp"
#include "enumerate.hpp"
#include "relations.hpp"
#include "split_surface.hpp"
#include "version.hpp"

namespace cubic_mw {

namespace cli_detail {

inline std::vector<BigInt> parse_list(const std::string& text, std::size_t expected, const char* what) {
    std::vector<BigInt> v;
    try {
        v = parse_integers(text);
    } catch (const Error&) {
        throw Error(ErrorCode::ParseError, std::string("bad ") + what + " '" + text + "'");
    }
    if (expected != 0 && v.size() != expected) {
        throw Error(ErrorCode::ParseError,
                    std::string(what) + " needs " + std::to_string(expected) + " integers, got " + std::to_string(v.size()));
    }
    return v;
}

inline CubicSurface surface_from(const std::string& coeffs) { return CubicSurface::diagonal(parse_list(coeffs, 4, "--coeffs")); }

inline unsigned resolve_threads(unsigned flag) { return flag > 0 ? flag : default_threads(); }

inline std::string header() { return std::string("# ") + kToolName + " " + kToolVersion; }

inline std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

/// "default" or six points "x,y,z;x,y,z;...".
inline std::array<ProjPoint, 6> parse_base(const std::string& text, FieldTag f) {
    if (text == "default") return default_base(f);
    std::vector<ProjPoint> pts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) pts.push_back(normalize(parse_list(item, 3, "--base point"), f));
    if (pts.size() != 6) throw Error(ErrorCode::ParseError, "--base needs six points separated by ';'");
    return {pts[0], pts[1], pts[2], pts[3], pts[4], pts[5]};
}

struct Options {
    // enumerate / compose / decompose
    std::string coeffs = "1,2,3,4";
    std::int64_t height = 0;
    std::string out;
    bool no_sieve = false;
    std::string x, y;
    std::string points;
    std::string report;
    int max_generations = -1;
    // verify-relations
    std::size_t samples_surface = 10'000;
    std::int64_t prime = 101;
    // split-demo / plane-closure
    std::string field = "fp:101";
    std::string base = "default";
    std::size_t samples = 100;
    std::optional<std::int64_t> cap;
    std::vector<std::string> extra;
    std::vector<std::string> targets;
    // common
    unsigned threads = 0;
    std::uint64_t seed = 0;
};

inline int cmd_enumerate(const Options& o, std::ostream& out) {
    const auto coeffs = parse_list(o.coeffs, 4, "--coeffs");
    EnumerateOptions eo;
    eo.threads = resolve_threads(o.threads);
    eo.sieve = !o.no_sieve;
    const PointRegistry reg = enumerate_points(coeffs, o.height, eo);
    const std::string config = "config: subcommand=enumerate coeffs=" + format_coords(coeffs, ",") + " height=" + std::to_string(o.height) +
                               " bound=le sieve=" + (eo.sieve ? "on" : "off");
    save_registry(reg, o.out, {config});
    out << "wrote " << reg.size() << " points with height <= " << o.height << " to " << o.out << "\n";
    return 0;
}

inline int cmd_compose(const Options& o, std::ostream& out) {
    const CubicSurface s = surface_from(o.coeffs);
    const SurfacePoint x = make_surface_point(s, normalize(parse_list(o.x, 4, "--x")));
    const SurfacePoint y = make_surface_point(s, normalize(parse_list(o.y, 4, "--y")));
    out << format_point(secant_compose(s, x, y).point) << "\n";
    return 0;
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
    const CubicSurface s = surface_from(o.coeffs);
    const PointRegistry reg = load_registry(o.points, s);
    const CompositionTable table = build_table(reg, resolve_threads(o.threads));
    const int maxgen = o.max_generations < 0 ? kUnlimitedGenerations : o.max_generations;
    const DecompositionReport rep = decompose(table, maxgen);

    nlohmann::ordered_json config;
    config["tool"] = kToolName;
    config["version"] = kToolVersion;
    config["subcommand"] = "decompose";
    config["coeffs"] = format_coords(s.form().diagonal_coefficients(), ",");
    config["points_file"] = o.points;
    config["height"] = reg.bound();
    config["max_generations"] = o.max_generations < 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(o.max_generations);
    config["undefined_pairs"] = table.undefined_count();

    std::ofstream f(o.report, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + o.report);
    f << report_to_json(rep, reg, config).dump(2) << "\n";
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + o.report);

    out << "points " << rep.points << " strong " << rep.strong_count() << " weak_only " << rep.weak_only_count() << " generators "
        << rep.generator_count() << "\n";
    out << "generator ranks:";
    for (const auto g : rep.generators) out << " " << g;
    out << "\n";
    return 0;
}

inline void print_suite(std::ostream& out, const SuiteResult& r) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << " checked=" << r.checked << " skipped=" << r.skipped
        << " skip_rate=" << fixed(r.skip_rate(), 4) << " failures=" << r.failures << "\n";
    for (const auto& f : r.failure_samples) out << "  counterexample " << f << "\n";
}

inline int cmd_verify_relations(const Options& o, std::ostream& out) {
    const CubicSurface s = surface_from(o.coeffs);
    const std::int64_t h = o.height > 0 ? o.height : 200;
    EnumerateOptions eo;
    eo.threads = resolve_threads(o.threads);
    const PointRegistry reg = o.points.empty() ? enumerate_points(s.form().diagonal_coefficients(), h, eo) : load_registry(o.points, s);
    RelationsConfig cfg;
    cfg.seed = o.seed;
    cfg.surface_configs = o.samples_surface;
    cfg.prime = o.prime;
    out << header() << "\n";
    out << "# config: subcommand=verify-relations coeffs=" << format_coords(s.form().diagonal_coefficients(), ",")
        << " registry=" << (o.points.empty() ? "height<=" + std::to_string(h) : o.points) << " points=" << reg.size()
        << " seed=" << o.seed << " samples=" << cfg.surface_configs << " prime=" << cfg.prime << "\n";
    bool ok = true;
    for (const auto& r : surface_suites(reg, cfg)) {
        print_suite(out, r);
        ok = ok && r.passed();
    }
    for (const auto& r : plane_cubic_suites(cfg)) {
        print_suite(out, r);
        ok = ok && r.passed();
    }
    out << (ok ? "all suites passed" : "some suites failed") << "\n";
    return ok ? 0 : 1;
}

inline int cmd_split_demo(const Options& o, std::ostream& out) {
    const FieldTag f = parse_field(o.field);
    const auto base = parse_base(o.base, f);
    out << header() << "\n";
    out << "# config: subcommand=split-demo field=" << f.to_string() << " base=" << o.base << " samples=" << o.samples
        << " seed=" << o.seed << "\n";
    out << "base:";
    for (const auto& b : base) out << " (" << format_coords(b.coords(), ":") << ")";
    out << "\n";
    const auto gp = check_general_position(base);
    out << "general position: " << (gp.ok ? "yes" : "no") << "\n";
    for (const auto& v : gp.violations) out << "  " << v << "\n";
    if (!gp.ok) throw Error(ErrorCode::DegeneratePosition, "base points not in general position");

    const BlowupModel model(f, base);
    for (std::size_t i = 0; i < 4; ++i) out << "f" << i << " = " << model.cubics()[i].to_string() << "\n";
    out << "surface: " << model.surface().to_string() << " = 0\n";

    std::mt19937_64 rng(o.seed);
    std::size_t on_surface = 0;
    std::set<ProjPoint> images;
    std::set<PlaneRep> preimages;
    for (std::size_t i = 0; i < o.samples; ++i) {
        const PlaneRep q = random_plane_rep(model, rng);
        const ProjPoint e = embed(model, q.point());
        on_surface += reduce(eval(model.surface(), e), f) == 0;
        preimages.insert(q);
        images.insert(e);
    }
    out << "embedded samples on surface: " << on_surface << "/" << o.samples << "\n";
    out << "embedding injective on samples: " << (images.size() == preimages.size() ? "yes" : "no") << " (" << preimages.size()
        << " distinct preimages)\n";

    const Claim1Report c1 = claim1_suite(model, o.samples, o.seed + 1, resolve_threads(o.threads));
    out << "star vs section composition: " << c1.held << "/" << c1.verified << " non-degenerate quadruples, " << c1.degenerate << " degenerate draws";
    for (const auto& [why, n] : c1.degenerate_reasons) out << " " << why << "=" << n;
    out << "\n";
    for (const auto& fail : c1.failures) out << "  counterexample " << fail << "\n";
    const bool ok = on_surface == o.samples && c1.held == c1.verified && c1.verified == o.samples;
    return ok ? 0 : 1;
}

inline int cmd_plane_closure(const Options& o, std::ostream& out) {
    const FieldTag f = parse_field(o.field);
    std::vector<ProjPoint> seeds{normalize({1, 0, 0}, f), normalize({0, 1, 0}, f), normalize({0, 0, 1}, f), normalize({1, 1, 1}, f)};
    for (const auto& e : o.extra) seeds.push_back(normalize(parse_list(e, 3, "--extra"), f));
    PlaneClosureOptions po;
    po.height_cap = o.cap;
    if (o.max_generations >= 0) {
        po.max_generations = o.max_generations;
    } else if (f.is_rational()) {
        po.max_generations = 3;
    }
    const PlaneClosure pc = plane_closure(f, seeds, po);
    out << header() << "\n";
    out << "# config: subcommand=plane-closure field=" << f.to_string();
    if (o.cap) out << " cap=" << *o.cap;
    for (const auto& e : o.extra) out << " extra=" << e;
    out << " max_generations=" << (po.max_generations == std::numeric_limits<int>::max() ? std::string("unlimited") : std::to_string(po.max_generations))
        << "\n";
    out << "seeds:";
    for (const auto& s : seeds) out << " (" << format_coords(s.coords(), ":") << ")";
    out << "\n";
    for (std::size_t g = 0; g < pc.sizes.size(); ++g) out << "generation " << g << ": " << pc.sizes[g] << " points\n";
    out << "closure size: " << pc.points.size() << (pc.saturated ? " (saturated)" : " (generation limit reached)") << "\n";
    bool ok = true;
    if (!f.is_rational()) {
        const std::int64_t p = f.prime();
        const auto expected = static_cast<std::size_t>(p * p + p + 1);
        out << "expected |P^2(F_" << p << ")| = " << expected << ": " << (pc.points.size() == expected ? "match" : "MISMATCH") << "\n";
        ok = pc.points.size() == expected;
    }
    for (const auto& t : o.targets) {
        const ProjPoint q = normalize(parse_list(t, 3, "--target"), f);
        const bool in = pc.contains(q);
        out << "target (" << format_coords(q.coords(), ":") << "): " << (in ? "reached" : "not reached") << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace cli_detail

/// Entry point of the cubic-mw tool. Exit codes: 0 success, 1 domain error or
/// failed check, 2 usage error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    Options o;
    CLI::App app{"Secant/tangent arithmetic on cubic surfaces", kToolName};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    auto* en = app.add_subcommand("enumerate", "List rational points of height <= H on a diagonal cubic surface");
    en->add_option("--coeffs", o.coeffs, "Diagonal coefficients a1,a2,a3,a4")->required();
    en->add_option("--height", o.height, "Height bound H (inclusive)")->required()->check(CLI::PositiveNumber);
    en->add_option("--out", o.out, "Output point file")->required();
    en->add_option("--threads", o.threads, "Worker threads (default: CUBIC_MW_THREADS or all cores)");
    en->add_flag("--no-sieve", o.no_sieve, "Disable the cubic-residue prefilter");

    auto* co = app.add_subcommand("compose", "Third intersection x o y of the secant through x and y");
    co->add_option("--coeffs", o.coeffs, "Diagonal coefficients a1,a2,a3,a4")->required();
    co->add_option("--x", o.x, "First point, e.g. 1,0,1,-1")->required();
    co->add_option("--y", o.y, "Second point")->required();

    auto* de = app.add_subcommand("decompose", "Strong/weak decompositions and generators of a point list");
    de->add_option("--points", o.points, "Point file written by enumerate")->required()->check(CLI::ExistingFile);
    de->add_option("--coeffs", o.coeffs, "Diagonal coefficients a1,a2,a3,a4")->required();
    de->add_option("--report", o.report, "JSON report path")->required();
    de->add_option("--max-generations", o.max_generations, "Limit on weak-closure generations (default: unlimited)")
        ->check(CLI::NonNegativeNumber);
    de->add_option("--threads", o.threads, "Worker threads for the composition table");

    auto* vr = app.add_subcommand("verify-relations", "Randomized property suites for the composition laws");
    vr->add_option("--coeffs", o.coeffs, "Diagonal coefficients a1,a2,a3,a4")->capture_default_str();
    vr->add_option("--height", o.height, "Enumerate the registry at this bound (default 200)")->check(CLI::PositiveNumber);
    vr->add_option("--points", o.points, "Use this point file instead of enumerating")->check(CLI::ExistingFile);
    vr->add_option("--samples", o.samples_surface, "Checked configurations per surface suite")->capture_default_str();
    vr->add_option("--prime", o.prime, "Prime for the plane-cubic suites")->capture_default_str();
    vr->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    vr->add_option("--threads", o.threads, "Worker threads for enumeration");

    auto* sd = app.add_subcommand("split-demo", "Blow-up model of P^2 at six points; checks *(a,b;c,d) against the section composition");
    sd->add_option("--field", o.field, "q or fp:<p>")->capture_default_str();
    sd->add_option("--base", o.base, "'default' or six points x,y,z;x,y,z;...")->capture_default_str();
    sd->add_option("--samples", o.samples, "Random samples for each check")->capture_default_str()->check(CLI::PositiveNumber);
    sd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sd->add_option("--threads", o.threads, "Worker threads for the quadruple checks");

    auto* pc = app.add_subcommand("plane-closure", "Close points of P^2 under intersections of joining lines");
    pc->add_option("--field", o.field, "q or fp:<p>")->required();
    pc->add_option("--cap", o.cap, "Max |coordinate| of kept points (required over q, <= 10000)");
    pc->add_option("--extra", o.extra, "Additional seed x,y,z (repeatable)");
    pc->add_option("--target", o.targets, "Report whether x,y,z is reached (repeatable)");
    pc->add_option("--max-generations", o.max_generations, "Generation limit (default: unlimited over F_p, 3 over q)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kToolName << " " << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    try {
        if (en->parsed()) return cmd_enumerate(o, out);
        if (co->parsed()) return cmd_compose(o, out);
        if (de->parsed()) return cmd_decompose(o, out);
        if (vr->parsed()) return cmd_verify_relations(o, out);
        if (sd->parsed()) return cmd_split_demo(o, out);
        if (pc->parsed()) return cmd_plane_closure(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace cubic_mw

#endif

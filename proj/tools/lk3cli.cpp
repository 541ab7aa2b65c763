#include "lk3/lattice.hpp"
#include "lk3/points.hpp"
#include "lk3/textio.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

using namespace lk3;

namespace {

constexpr int kOk = 0, kParse = 2, kSemantic = 3, kMismatch = 4;

// geometric mismatch between the input and the requested run
struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Flags {
    std::string primes;
    long height = -1;
    long budget_points = -1, budget_fibers = -1, orbit_len = -1;
    long seed = -1;
    std::string out;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--primes", f.primes, "finite primes of S, comma separated, or none");
    cmd->add_option("--out", f.out, "write the record to this file");
}

void add_generation(CLI::App* cmd, Flags& f) {
    cmd->add_option("--height", f.height, "height bound for seed searches")->check(CLI::PositiveNumber);
    cmd->add_option("--budget-points", f.budget_points, "maximum number of points")->check(CLI::NonNegativeNumber);
    cmd->add_option("--budget-fibers", f.budget_fibers, "maximum number of fibers")->check(CLI::NonNegativeNumber);
    cmd->add_option("--orbit-len", f.orbit_len, "points per fiber")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "seed recorded with the run")->check(CLI::NonNegativeNumber);
}

void apply_flags(const Flags& f, RunConfig& cfg) {
    if (!f.primes.empty()) cfg.primes = parse_primes(f.primes);
    if (f.height > 0) cfg.budget.height = f.height;
    if (f.budget_points >= 0) cfg.budget.max_points = static_cast<std::size_t>(f.budget_points);
    if (f.budget_fibers >= 0) cfg.budget.max_fibers = static_cast<std::size_t>(f.budget_fibers);
    if (f.orbit_len > 0) cfg.budget.orbit_len = static_cast<int>(f.orbit_len);
    if (f.seed >= 0) cfg.rng_seed = static_cast<unsigned long>(f.seed);
}

HomogForm read_cubic(const std::string& path) {
    std::string text = read_text_file(path);
    // either a bare coefficient list or a config with a cubic line
    auto words = split_words(text);
    HomogForm f = !words.empty() && words[0] == "cubic" ? *parse_config(text).cubic : parse_form(text);
    if (f.nvars() != 3 || f.degree() != 3) throw std::invalid_argument("expected a ternary cubic");
    return f;
}

std::string lines_text(const std::vector<HomogForm>& ls) {
    std::string s;
    for (const auto& l : ls) s += (s.empty() ? "" : " | ") + l.str();
    return s.empty() ? "-" : s;
}

std::string cmd_classify(const std::string& path) {
    PlaneCubic d(read_cubic(path));
    CubicClass c = classify(d);
    Record r;
    r.set("command", "classify");
    r.set("cubic", d.form().coeff_list());
    r.set("class", to_string(c));
    auto sing = singular_points(d);
    std::vector<Flex> flexes;
    if (c == CubicClass::Smooth || c == CubicClass::Nodal || c == CubicClass::Cuspidal) flexes = rational_flexes(d);
    r.set("singular_points", std::to_string(sing.size()));
    r.set("flexes", std::to_string(flexes.size()));
    for (const auto& s : sing)
        r.line("singular " + s.point.str() + " multiplicity " + std::to_string(s.multiplicity) + " " + to_string(s.kind));
    for (const auto& f : flexes)
        r.line("flex " + f.point.str() + (f.smooth ? " smooth" : " singular") + " lines " + lines_text(f.lines));
    return r.str();
}

std::string cmd_lines(const std::string& path) {
    CubicSurface s{PlaneCubic(read_cubic(path))};
    auto rl = rational_lines(s);
    Record r;
    r.set("command", "lines");
    r.set("cubic", s.F().coeff_list());
    r.set("lines", std::to_string(rl.lines.size()));
    r.set("coplanar", rl.common_plane ? "true" : "false");
    r.set("common_plane", rl.common_plane ? rl.common_plane->str() : "-");
    r.set("flex_lines_without_rational_line", std::to_string(rl.flex_lines_without_rational_line));
    for (const auto& l : rl.lines)
        r.line("line " + l.L4.str() + " = " + l.E4.str() + " = 0 flex " + l.flex.str() + " flexline " + l.flexline.str());
    return r.str();
}

SurfaceLine pick_axis(const CubicSurface& s, std::size_t axis) {
    auto rl = rational_lines(s);
    if (axis >= rl.lines.size())
        throw std::invalid_argument("axis " + std::to_string(axis) + " not available: the surface has " +
                                    std::to_string(rl.lines.size()) + " rational lines");
    return rl.lines[axis];
}

std::string cmd_beukers(const std::string& path, std::size_t axis, const std::vector<std::string>& params, int count) {
    CubicSurface s{PlaneCubic(read_cubic(path))};
    ConicFibration mu{s, pick_axis(s, axis)};
    std::vector<std::pair<Int, Int>> us;
    for (const auto& p : params) {
        std::string t = p;
        std::replace(t.begin(), t.end(), ',', ' ');
        std::replace(t.begin(), t.end(), ':', ' ');
        auto w = split_words(t);
        if (w.size() != 2) throw ParseError("--param expects a,b");
        ProjPoint u = parse_point(w, 0, 1);
        us.emplace_back(u[0], u[1]);
    }
    if (us.empty()) {
        // [a:b] by increasing height
        for (long h = 0; static_cast<int>(us.size()) < count; ++h)
            for (long a = -h; a <= h && static_cast<int>(us.size()) < count; ++a)
                for (long b : {h, -h})
                    if ((std::abs(a) == h || std::abs(b) == h) && std::gcd(a, b) == 1 && (b > 0 || (b == 0 && a > 0))) {
                        if (std::find(us.begin(), us.end(), std::make_pair(Int(a), Int(b))) == us.end())
                            us.emplace_back(a, b);
                    }
    }
    Record r;
    r.set("command", "beukers");
    r.set("cubic", s.F().coeff_list());
    r.set("axis", mu.axis.str());
    r.set("fibers", std::to_string(us.size()));
    for (const auto& [a, b] : us) {
        BeukersConic bc = fiber(mu, a, b);
        std::string head = "fiber " + a.get_str() + " " + b.get_str();
        if (bc.degenerate) {
            r.line(head + " degenerate");
            continue;
        }
        std::string at;
        int total = 0;
        for (const auto& [p, m] : bc.infinity.rational_points) {
            at += " " + p.str() + "^" + std::to_string(m);
            total += m;
        }
        InfinityType inf = infinity_type(bc.plane_conic, s.F());
        r.line(head + " conic " + bc.plane_conic.str() + " infinity " + to_string(inf.tag) + " rational" +
               (at.empty() ? " -" : at) + " total " + std::to_string(total));
    }
    return r.str();
}

IntegralityContext context_for(const RunConfig& cfg) {
    if (cfg.ambient == "surface") return IntegralityContext::surface(cfg.primes);
    if (!cfg.cubic) throw std::invalid_argument("config has no cubic");
    if (cfg.ambient == "plane") return IntegralityContext::plane(*cfg.cubic, cfg.primes);
    if (cfg.blowups.size() != 1) throw std::invalid_argument("blow-up ambient needs exactly one blowup point");
    if (!on_curve(*cfg.cubic, cfg.blowups[0])) throw std::invalid_argument("blowup point is not on the cubic");
    return IntegralityContext::blowup(*cfg.cubic, cfg.blowups[0], cfg.primes, cfg.ambient == "blowupE");
}

void header_of(Record& r, const RunConfig& cfg) {
    r.set("primes", primes_text(cfg.primes));
    r.set("height", std::to_string(cfg.budget.height));
    r.set("budget_points", std::to_string(cfg.budget.max_points));
    r.set("budget_fibers", std::to_string(cfg.budget.max_fibers));
    r.set("orbit_len", std::to_string(cfg.budget.orbit_len));
    r.set("seed", std::to_string(cfg.rng_seed));
}

void report_body(Record& r, const GenerationReport& rep, std::size_t kmin) {
    r.set("points", std::to_string(rep.points.size()));
    r.set("surface_points", std::to_string(rep.surface_points.size()));
    r.set("fibers_processed", std::to_string(rep.fibers_processed));
    r.set("degenerate_skipped", std::to_string(rep.degenerate_skipped));
    r.set("no_automorphism_skipped", std::to_string(rep.no_automorphism_skipped));
    r.set("lambda_fibers", std::to_string(rep.lambda_counts.size()));
    r.set("lambda_fibers_at_least_" + std::to_string(kmin), std::to_string(rep.lambda_fibers_with_at_least(static_cast<int>(kmin))));
    r.set("mu_fibers", std::to_string(rep.mu_counts.size()));
    r.set("mu_fibers_at_least_" + std::to_string(kmin), std::to_string(rep.mu_fibers_with_at_least(static_cast<int>(kmin))));
    for (const auto& p : rep.points) r.line("P " + point_words(p));
    for (const auto& p : rep.surface_points) r.line("S " + point_words(p));
    for (const auto& [u, c] : rep.lambda_counts) r.line("L " + u.first.get_str() + " " + u.second.get_str() + " " + std::to_string(c));
    for (const auto& [u, c] : rep.mu_counts) r.line("M " + u.first.get_str() + " " + u.second.get_str() + " " + std::to_string(c));
}

std::string cmd_generate_single(const RunConfig& cfg) {
    if (!cfg.divisor || cfg.pencil.size() != 2 || !cfg.center)
        throw std::invalid_argument("single mode needs divisor, two pencil lines and a center");
    CurvePencil pencil{cfg.pencil[0], cfg.pencil[1]};
    auto ctx = IntegralityContext::plane(*cfg.divisor, cfg.primes);
    GenerationReport rep;
    try {
        rep = single_fibration_generate(pencil, *cfg.center, ctx, cfg.seeds, cfg.budget);
    } catch (const std::invalid_argument& e) {
        throw Mismatch(e.what());
    }
    for (const auto& p : rep.points)
        if (!is_integral(p, ctx)) throw Mismatch("re-verification failed for " + p.str());
    Record r;
    r.set("command", "generate");
    r.set("mode", "single");
    r.set("divisor", cfg.divisor->coeff_list());
    header_of(r, cfg);
    r.set("all_verified", rep.all_verified ? "true" : "false");
    report_body(r, rep, 5);
    return r.str();
}

std::string cmd_generate(const RunConfig& cfg) {
    if (cfg.mode == "single") return cmd_generate_single(cfg);
    if (!cfg.cubic) throw std::invalid_argument("config has no cubic");
    if (cfg.blowups.size() != 1) throw std::invalid_argument("double fibration needs exactly one blowup point");
    PlaneCubic d(*cfg.cubic);
    classify(d);  // rejects non-reduced input
    BlowupSurface x(d, cfg.blowups[0]);
    CubicSurface s{d};
    ConicFibration mu{s, pick_axis(s, cfg.axis)};
    std::vector<ProjPoint> seeds = cfg.seeds;
    if (cfg.seed_mode == SeedMode::AxisSearch) {
        auto found = search_integral_points(mu.axis.param(), IntegralityContext::surface(cfg.primes), cfg.budget.height);
        seeds.insert(seeds.end(), found.begin(), found.end());
    }
    GenerationReport rep;
    try {
        rep = double_fibration_generate(x, mu, seeds, cfg.primes, cfg.budget);
    } catch (const std::invalid_argument& e) {
        throw Mismatch(e.what());
    }
    // every emitted point is checked again
    auto hat = IntegralityContext::blowup(d.form(), x.P, cfg.primes, false);
    auto surf = IntegralityContext::surface(cfg.primes);
    for (const auto& p : rep.points)
        if (!is_integral(p, hat)) throw Mismatch("re-verification failed for " + p.str());
    for (const auto& p : rep.surface_points)
        if (!s.contains(p) || !is_integral(p, surf)) throw Mismatch("re-verification failed for " + p.str());
    Record r;
    r.set("command", "generate");
    r.set("mode", "double");
    r.set("cubic", d.form().coeff_list());
    r.set("blowup", point_words(x.P));
    r.set("axis", mu.axis.str());
    r.set("seeds", std::to_string(seeds.size()));
    header_of(r, cfg);
    r.set("all_verified", rep.all_verified ? "true" : "false");
    report_body(r, rep, 5);
    return r.str();
}

std::string join(const std::vector<Int>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x.get_str();
    return "(" + s + ")";
}

std::string cmd_topology(const RunConfig& cfg) {
    if (!cfg.cubic) throw std::invalid_argument("config has no cubic");
    BlowupConfig bc{*cfg.cubic, cfg.blowups};
    HatDivisor hd = hat_divisor(bc);
    if (!hd.valid) throw std::invalid_argument("invalid configuration: " + hd.reason);
    TopologyResult t = simply_connected(bc);
    ConfigAnalysis a = analyze_config(bc);
    Record r;
    r.set("command", "topology");
    r.set("cubic", cfg.cubic->coeff_list());
    r.set("blowups", std::to_string(cfg.blowups.size()));
    r.set("shape", to_string(a.shape));
    r.set("simply_connected", t.simply_connected ? "true" : "false");
    r.set("reason", to_string(t.reason));
    r.set("smith_simply_connected", t.smith_simply_connected ? "true" : "false");
    r.set("routes_agree", t.simply_connected == t.smith_simply_connected ? "true" : "false");
    r.set("elementary_divisors", join(t.elementary_divisors));
    r.set("rank", std::to_string(t.rank));
    r.set("hat_class", hd.cls.str());
    for (const auto& p : cfg.blowups) r.line("blowup " + p.str());
    for (const auto& c : hd.components) r.line("component " + c.str());
    for (long n = 2; n <= 12; ++n) {
        auto k = cyclic_cover_kernel(hd.components, n);
        std::string s = "kernel " + std::to_string(n) + (k.empty() ? " trivial" : "");
        for (const auto& v : k) s += " " + join(v);
        r.line(s);
    }
    return r.str();
}

std::string cmd_verify(const RunConfig& cfg, const std::string& points_path, bool& all_ok) {
    PointFile pf = parse_point_file(read_text_file(points_path));
    IntegralityContext ctx = cfg.ambient == "surface" ? IntegralityContext::surface(cfg.primes) : context_for(cfg);
    auto surf = IntegralityContext::surface(cfg.primes);
    std::optional<CubicSurface> s;
    if (cfg.cubic) s.emplace(PlaneCubic(*cfg.cubic));
    Record r;
    r.set("command", "verify");
    r.set("ambient", cfg.ambient);
    r.set("primes", primes_text(cfg.primes));
    std::size_t good = 0, bad = 0;
    auto judge = [&](const ProjPoint& p, const IntegralityContext& c, char tag) {
        std::string verdict;
        try {
            verdict = is_integral(p, c) ? "integral" : "not_integral";
        } catch (const std::invalid_argument&) {
            verdict = "on_divisor";
        }
        if (tag == 'S' && s && !s->contains(p)) verdict = "off_surface";
        (verdict == "integral" ? good : bad)++;
        r.line(std::string(1, tag) + " " + point_words(p) + " " + verdict);
    };
    if (cfg.ambient != "surface")
        for (const auto& p : pf.plane) judge(p, ctx, 'P');
    for (const auto& p : pf.surface) judge(p, surf, 'S');
    r.set("checked", std::to_string(good + bad));
    r.set("integral", std::to_string(good));
    r.set("failed", std::to_string(bad));
    all_ok = bad == 0;
    return r.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral points on complements of plane cubics and their blow-ups"};
    app.require_subcommand(1);
    Flags flags;
    std::string file, points_file;
    std::size_t axis = 0;
    std::vector<std::string> params;
    int count = 5;

    auto* classify_cmd = app.add_subcommand("classify", "classify a plane cubic");
    classify_cmd->add_option("cubic", file, "coefficient-list file")->required();
    add_common(classify_cmd, flags);
    auto* lines_cmd = app.add_subcommand("lines", "rational lines of w^3 = F");
    lines_cmd->add_option("cubic", file, "coefficient-list file")->required();
    add_common(lines_cmd, flags);
    auto* beukers_cmd = app.add_subcommand("beukers", "fibers of the conic fibration through a rational line");
    beukers_cmd->add_option("cubic", file, "coefficient-list file")->required();
    beukers_cmd->add_option("--axis", axis, "index of the rational line");
    beukers_cmd->add_option("--param", params, "fiber parameter a,b (repeatable)");
    beukers_cmd->add_option("--count", count, "number of fibers when no --param is given")->check(CLI::PositiveNumber);
    add_common(beukers_cmd, flags);
    auto* generate_cmd = app.add_subcommand("generate", "generate integral points");
    generate_cmd->add_option("config", file, "run configuration")->required();
    add_common(generate_cmd, flags);
    add_generation(generate_cmd, flags);
    auto* topology_cmd = app.add_subcommand("topology", "simple connectedness of the complement");
    topology_cmd->add_option("config", file, "configuration with cubic and blowup points")->required();
    add_common(topology_cmd, flags);
    auto* verify_cmd = app.add_subcommand("verify", "re-check a point file against a context");
    verify_cmd->add_option("config", file, "configuration with the context")->required();
    verify_cmd->add_option("points", points_file, "point file")->required();
    add_common(verify_cmd, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        std::string out;
        int code = kOk;
        if (*classify_cmd) {
            out = cmd_classify(file);
        } else if (*lines_cmd) {
            out = cmd_lines(file);
        } else if (*beukers_cmd) {
            out = cmd_beukers(file, axis, params, count);
        } else {
            RunConfig cfg = parse_config(read_text_file(file));
            apply_flags(flags, cfg);
            if (*generate_cmd) {
                out = cmd_generate(cfg);
            } else if (*topology_cmd) {
                out = cmd_topology(cfg);
            } else {
                bool ok = true;
                out = cmd_verify(cfg, points_file, ok);
                if (!ok) code = kMismatch;
            }
        }
        emit(out, flags.out);
        return code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const Mismatch& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return kMismatch;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kSemantic;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include "lk3/textio.hpp"

#include <fstream>
#include <sstream>

namespace lk3 {

namespace {

Int parse_int_word(const std::string& w) {
    Rat r;
    try {
        r = parse_rat(w);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + w + "'");
    }
    if (r.get_den() != 1) throw ParseError("not an integer: '" + w + "'");
    return r.get_num();
}

long parse_long_word(const std::string& w, long lo) {
    Int v = parse_int_word(w);
    if (!v.fits_slong_p() || v < lo) throw ParseError("value out of range: '" + w + "'");
    return v.get_si();
}

void require_count(const std::vector<std::string>& w, std::size_t n) {
    if (w.size() != n) throw ParseError("'" + w[0] + "' expects " + std::to_string(n - 1) + " values");
}

}  // namespace

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line.substr(0, line.find('#')));
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

HomogForm parse_form(const std::string& text) {
    auto w = split_words(text);
    if (w.size() < 2) throw ParseError("coefficient list: expected degree and number of variables");
    long degree = parse_long_word(w[0], 0), nvars = parse_long_word(w[1], 1);
    if (nvars > 4 || degree > 12) throw ParseError("coefficient list: unsupported degree or number of variables");
    const std::size_t n = monomials(static_cast<int>(nvars), static_cast<int>(degree)).size();
    if (w.size() != n + 2)
        throw ParseError("coefficient list: expected " + std::to_string(n) + " coefficients, got " +
                         std::to_string(w.size() - 2));
    std::vector<Rat> c;
    for (std::size_t i = 2; i < w.size(); ++i) {
        try {
            c.push_back(parse_rat(w[i]));
        } catch (const std::exception&) {
            throw ParseError("coefficient list: bad coefficient '" + w[i] + "'");
        }
    }
    return HomogForm(static_cast<int>(nvars), static_cast<int>(degree), c);
}

ProjPoint parse_point(const std::vector<std::string>& words, std::size_t first, std::size_t dim) {
    if (words.size() != first + dim + 1) throw ParseError("point: expected " + std::to_string(dim + 1) + " coordinates");
    std::vector<Int> c;
    bool zero = true;
    for (std::size_t i = first; i < words.size(); ++i) {
        c.push_back(parse_int_word(words[i]));
        zero = zero && c.back() == 0;
    }
    if (zero) throw ParseError("point: all coordinates are zero");
    return ProjPoint(c);
}

PrimeSet parse_primes(const std::string& text) {
    std::string t = text;
    for (auto& ch : t)
        if (ch == ',') ch = ' ';
    auto w = split_words(t);
    std::vector<long> ps;
    for (const auto& x : w) {
        if (x == "none") continue;
        long p = parse_long_word(x, 2);
        if (!is_prime(Int(p))) throw ParseError("primes: " + x + " is not prime");
        ps.push_back(p);
    }
    return PrimeSet(ps);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto w = split_words(line);
        if (w.empty()) continue;
        const std::string& k = w[0];
        try {
            if (k == "cubic") {
                HomogForm f = parse_form(line.substr(line.find("cubic") + 5));
                if (f.nvars() != 3 || f.degree() != 3) throw ParseError("cubic: expected a ternary cubic");
                cfg.cubic = f;
            } else if (k == "divisor" || k == "pencil") {
                HomogForm f = parse_form(line.substr(line.find(k) + k.size()));
                if (f.nvars() != 3) throw ParseError(k + ": expected a ternary form");
                if (k == "divisor") cfg.divisor = f;
                else cfg.pencil.push_back(f);
            } else if (k == "center") {
                cfg.center = parse_point(w, 1, 2);
            } else if (k == "mode") {
                require_count(w, 2);
                if (w[1] != "double" && w[1] != "single") throw ParseError("mode: expected double or single");
                cfg.mode = w[1];
            } else if (k == "blowup") {
                cfg.blowups.push_back(parse_point(w, 1, 2));
            } else if (k == "primes") {
                cfg.primes = parse_primes(line.substr(line.find("primes") + 6));
            } else if (k == "seed") {
                if (w.size() == 2 && w[1] == "axis") {
                    cfg.seed_mode = SeedMode::AxisSearch;
                } else {
                    if (w.size() < 4 || w.size() > 5) throw ParseError("seed: expected 3 or 4 coordinates, or 'axis'");
                    cfg.seeds.push_back(parse_point(w, 1, w.size() - 2));
                }
            } else if (k == "height") {
                require_count(w, 2);
                cfg.budget.height = parse_long_word(w[1], 1);
            } else if (k == "budget_points") {
                require_count(w, 2);
                cfg.budget.max_points = static_cast<std::size_t>(parse_long_word(w[1], 0));
            } else if (k == "budget_fibers") {
                require_count(w, 2);
                cfg.budget.max_fibers = static_cast<std::size_t>(parse_long_word(w[1], 0));
            } else if (k == "orbit_len") {
                require_count(w, 2);
                cfg.budget.orbit_len = static_cast<int>(parse_long_word(w[1], 1));
            } else if (k == "axis") {
                require_count(w, 2);
                cfg.axis = static_cast<std::size_t>(parse_long_word(w[1], 0));
            } else if (k == "rng_seed") {
                require_count(w, 2);
                cfg.rng_seed = static_cast<unsigned long>(parse_long_word(w[1], 0));
            } else if (k == "ambient") {
                require_count(w, 2);
                if (w[1] != "plane" && w[1] != "surface" && w[1] != "blowup" && w[1] != "blowupE")
                    throw ParseError("ambient: expected plane, surface, blowup or blowupE");
                cfg.ambient = w[1];
            } else {
                throw ParseError("unknown key '" + k + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

PointFile parse_point_file(const std::string& text) {
    PointFile pf;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto w = split_words(line);
        if (w.empty() || (w[0] != "P" && w[0] != "S")) continue;
        try {
            if (w[0] == "P") pf.plane.push_back(parse_point(w, 1, 2));
            else pf.surface.push_back(parse_point(w, 1, 3));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return pf;
}

void Record::set(const std::string& key, const std::string& value) { header_.emplace_back(key, value); }

void Record::line(const std::string& text) { body_.push_back(text); }

std::string Record::str() const {
    std::ostringstream os;
    for (const auto& [k, v] : header_) os << k << " " << v << "\n";
    os << "---\n";
    for (const auto& l : body_) os << l << "\n";
    return os.str();
}

std::string point_words(const ProjPoint& p) {
    std::string s;
    for (int i = 0; i <= p.dim(); ++i) s += (i ? " " : "") + p[i].get_str();
    return s;
}

std::string primes_text(const PrimeSet& s) {
    if (s.empty()) return "none";
    std::string out;
    for (long p : s.primes()) out += (out.empty() ? "" : ",") + std::to_string(p);
    return out;
}

}  // namespace lk3

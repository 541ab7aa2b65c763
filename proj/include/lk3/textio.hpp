#pragma once

#include "lk3/lattice.hpp"
#include "lk3/points.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lk3 {

/// Malformed text input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "degree nvars c1 c2 ..." with coefficients in graded-lex order.
HomogForm parse_form(const std::string& text);
std::vector<std::string> split_words(const std::string& line);
ProjPoint parse_point(const std::vector<std::string>& words, std::size_t first, std::size_t dim);
PrimeSet parse_primes(const std::string& text);
std::string read_text_file(const std::string& path);

enum class SeedMode { Explicit, AxisSearch };

struct RunConfig {
    std::optional<HomogForm> cubic;
    std::vector<ProjPoint> blowups;
    PrimeSet primes;
    std::vector<ProjPoint> seeds;
    SeedMode seed_mode = SeedMode::Explicit;
    GenerationBudget budget;
    std::size_t axis = 0;
    unsigned long rng_seed = 1;
    std::string ambient = "blowup";  // plane | surface | blowup | blowupE
    // single-fibration runs
    std::string mode = "double";     // double | single
    std::optional<HomogForm> divisor;
    std::vector<HomogForm> pencil;
    std::optional<ProjPoint> center;
};

/// Line-oriented "key value..." file; '#' starts a comment.
RunConfig parse_config(const std::string& text);

/// Records of a point file: 'P' lines are points of P^2, 'S' lines points of P^3.
struct PointFile {
    std::vector<ProjPoint> plane, surface;
};
PointFile parse_point_file(const std::string& text);

/// Header lines "key value", then "---", then the body.
class Record {
public:
    void set(const std::string& key, const std::string& value);
    void line(const std::string& text);
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> header_;
    std::vector<std::string> body_;
};

std::string point_words(const ProjPoint& p);
std::string primes_text(const PrimeSet& s);

}  // namespace lk3

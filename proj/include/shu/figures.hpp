// Tabulated data for the six standard plots of S_n: two families of curves
// and four overlays of S against a leading-term approximant.
//
//   id  sweep          fixed  range (default)  overlay
//   1   t (log)        x = 3  [0.05, 20]       -
//   2   x (log)        t = 3  [0.5, 12]        -
//   3   t (log)        x = 3  [0.01, 0.5]      small-t leading term
//   4   x (log)        t = 3  [0.01, 1]        small-z leading term
//   5   t (log)        x = 3  [5, 60]          K_n(x)
//   6   x (log)        t = 3  [6, 40]          large-z leading term (empty for x <= 2t)

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace shu {

struct FigureOptions {
    int id = 1;
    int points = 60;
    std::vector<double> orders{0, 1, 2, 3};
    std::optional<double> lo, hi;  // sweep range override
    std::optional<double> fixed;   // fixed x (figs 1, 3, 5) or t (figs 2, 4, 6)
    unsigned threads = 0;
};

struct FigureTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;  // empty cell = out of domain
};

/// Throws DomainError for a bad id, point count, range or order list.
FigureTable make_figure(const FigureOptions& options);

/// %.17g: the shortest fixed format that round-trips every double.
std::string format_double(double v);

/// Comma-separated with a header row and "\n" line endings.
std::string to_csv(const FigureTable& table);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int n);

}  // namespace shu

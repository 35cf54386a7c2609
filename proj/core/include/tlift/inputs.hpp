#pragma once

#include "tlift/modforms.hpp"

#include <string>

namespace tlift {

// Products and quotients of E4, E6, Delta (alias Delta12, delta12), j and J with integer exponents,
// e.g. "E4^2E6/Delta^2", "J", "1/Delta". Throws std::invalid_argument on malformed input.
QSeries parse_form_expression(const std::string& expr, int terms);

// Weakly holomorphic form of weight -2k used for `raised:k`: J for k = 0, otherwise E_{12r-2k}/Δ^r with the
// smallest r >= 1 such that 12r-2k is 4 or at least 6, E_w = E4^a E6^b with b ∈ {0,1}.
QSeries reference_form(int k, int terms);
std::string reference_form_name(int k);

struct InputSpec {
    enum class Kind { Series, Poincare };
    Kind kind = Kind::Series;
    std::string text;
    QSeries series;  // Series only
    int k = 0;       // weight -2k for harmonic inputs
    int m = 1;       // Poincaré principal part q^{-m}
};

// Accepted: an expression as above, "weaklyhol:<expr>", "delta12", "raised:k", "poincare:k,m".
InputSpec parse_input(const std::string& text, int terms);

}  // namespace tlift

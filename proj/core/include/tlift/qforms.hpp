#pragma once

#include "tlift/numeric.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tlift {

// 2x2 integer matrix [[a,b],[c,d]].
struct Mat2i {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const;
    Mat2i operator*(const Mat2i& o) const;
    Mat2i inverse() const;  // requires det = ±1
    bool operator==(const Mat2i&) const = default;

    static Mat2i identity() { return {}; }
    static Mat2i S() { return {0, -1, 1, 0}; }
    static Mat2i T(std::int64_t n = 1) { return {1, n, 0, 1}; }
};

struct Mat2Big {
    BigInt a, b, c, d;
};

struct Mat2r {
    Real a, b, c, d;

    Mat2r operator*(const Mat2r& o) const;
    static Mat2r from(const Mat2i& m);
};

// Moebius action and automorphy factor j(g,z) = cz + d.
Complex act(const Mat2r& g, const Complex& z);
Complex act(const Mat2i& g, const Complex& z);
Complex automorphy(const Mat2r& g, const Complex& z);
Complex automorphy(const Mat2i& g, const Complex& z);

// Binary quadratic form ax^2 + bxy + cy^2.
struct QuadForm {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t disc() const;
    bool positive_definite() const { return disc() < 0 && a > 0; }
    std::int64_t content() const;  // gcd(a,b,c)
    QuadForm primitive() const;
    std::int64_t value(std::int64_t x, std::int64_t y) const;
    // (Q∘g)(x,y) = Q(g(x,y)).
    QuadForm transform(const Mat2i& g) const;
    // [a,b,c] -> [-a,b,-c]
    QuadForm sign_flip() const { return {-a, b, -c}; }

    auto operator<=>(const QuadForm&) const = default;
    std::string str() const;
};

// Checked int64 helpers; throw std::overflow_error.
std::int64_t checked_mul(std::int64_t x, std::int64_t y);
std::int64_t checked_add(std::int64_t x, std::int64_t y);

bool is_discriminant(std::int64_t D);
bool is_square(std::int64_t n, std::int64_t* root = nullptr);
std::int64_t isqrt(std::int64_t n);

struct Reduction {
    QuadForm form;
    Mat2i gamma;  // Q∘gamma == form
};

// Gauss reduction of a positive definite form.
Reduction reduce_definite(const QuadForm& q);

// Canonical representative [0,n,c], 0 <= c < n, for square D = n^2.
Reduction reduce_square(const QuadForm& q);

// Indefinite, non-square D: reduced means 0 < b < sqrt(D), sqrt(D)-b < 2|a| < sqrt(D)+b.
bool is_reduced_indefinite(const QuadForm& q);
// One step of the reduction operator rho; returns the form and the matrix used.
Reduction rho(const QuadForm& q);
// Reduce an arbitrary indefinite non-square form to a reduced one (equivalent).
Reduction reduce_indefinite(const QuadForm& q);
// Canonical cycle representative (lexicographically smallest reduced form in the cycle).
Reduction canonical_indefinite(const QuadForm& q);

struct ClassSet {
    std::int64_t discriminant = 0;
    std::vector<QuadForm> representatives;
    std::vector<int> stabilizer_orders;
    // Generator of the stabilizer for D > 0 non-square; empty otherwise.
    std::vector<std::optional<Mat2Big>> automorphs;

    std::size_t size() const { return representatives.size(); }
};

// D < 0: positive definite classes only. Throws std::invalid_argument for D = 2,3 mod 4 or D = 0.
ClassSet enumerate_classes(std::int64_t D);

// Class key used for equivalence tests: reduced / canonical representative.
QuadForm canonical_form(const QuadForm& q);

int stabilizer_order(const QuadForm& q);

struct PellSolution {
    BigInt t, u;
};
// Minimal positive solution of t^2 - D u^2 = 4 (D > 0 non-square).
PellSolution pell4(std::int64_t D);
// [[(t-bu)/2, -cu],[au, (t+bu)/2]] built from the primitive part of q.
Mat2Big automorph(const QuadForm& q);

int kronecker(std::int64_t a, std::int64_t n);
bool is_fundamental(std::int64_t delta);

struct GenusCharContext {
    std::int64_t delta = 1;
    explicit GenusCharContext(std::int64_t d);
};

// χ_Δ(Q) = (Δ/n) for n represented by Q with (n, Δ) = 1, 0 if (a,b,c,Δ) > 1 or Δ ∤ D. When D/Δ is not a
// discriminant the value depends on n; the n of least |n| is used then (see is_genus_character).
int genus_character(const GenusCharContext& ctx, const QuadForm& q);
// true when D/Δ ≡ 0,1 mod 4, i.e. χ_Δ is a genuine genus character on forms of discriminant D.
bool is_genus_character(std::int64_t delta, std::int64_t D);

Complex cm_point(const QuadForm& q);

struct GeodesicFrame {
    QuadForm form;
    Mat2r g;              // Q∘g = [0, -sqrt(D), 0]
    bool infinite = false;
    std::optional<Real> epsilon;  // > 1, closed geodesics only
    std::array<Real, 2> endpoints;  // g(0), g(∞); ∞ encoded as +inf flagged below
    std::array<bool, 2> endpoint_at_infinity{false, false};
    int orientation = 1;  // +1: traversed from g(0) to g(∞)
};

GeodesicFrame geodesic_frame(const QuadForm& q);

// For square D the frame h = g (or g*S) factors as h = gamma * A with gamma integral
// and A = [[alpha, beta], [0, 1/alpha]], so F|h = F|A for level-one F.
struct CuspFactorization {
    Mat2i gamma;
    Real alpha;
    Real beta;
};
CuspFactorization cusp_factorization(const GeodesicFrame& frame, bool times_S);

}  // namespace tlift

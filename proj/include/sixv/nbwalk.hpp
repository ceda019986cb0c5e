#pragma once

// Generating function F_n(x, y) of non-backtracking walk weights and the
// closed form / upper bound used in the Peierls union bound.

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace sixv {

// Weight of one walk string over {S, L, R}.  The walk alternates between two
// "modes"; straights keep the mode, turns switch it first.  The first step is
// always straight and contributes the starting mode, so g_a(SLRSSL) = a^4 b^2.
template <typename Real>
Real walk_weight_g(const std::string& s, Real alpha, Real beta) {
    if (s.empty() || s[0] != 'S')
        throw std::invalid_argument("walk string must start with S");
    Real w = 1;
    bool in_alpha = true;
    for (char ch : s) {
        if (ch == 'L' || ch == 'R')
            in_alpha = !in_alpha;
        else if (ch != 'S')
            throw std::invalid_argument("walk string chars must be S/L/R");
        w *= in_alpha ? alpha : beta;
    }
    return w;
}

// F_n(x,y) = sum over mode strings s in {x,y}^n of 2^{switches(s)} times the
// product of the modes.  Equivalently: sum of g_alpha over both starting
// modes and all S/L/R walk strings of length n.  Both forms are computed and
// must agree; exponential in n, used only as an oracle.
template <typename Real>
Real F_brute(int n, Real x, Real y) {
    assert(n >= 1 && n <= 24);
    Real by_modes = 0;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        Real term = 1;
        for (int i = 0; i < n; ++i) {
            term *= ((mask >> i) & 1) ? x : y;
            if (i > 0 && (((mask >> i) ^ (mask >> (i - 1))) & 1)) term *= 2;
        }
        by_modes += term;
    }
    if (n <= 13) {
        Real by_walks = 0;
        std::string s(n, 'S');
        std::vector<int> digits(n, 0);  // 0=S,1=L,2=R for positions 1..n-1
        while (true) {
            for (int i = 1; i < n; ++i) s[i] = "SLR"[digits[i]];
            by_walks += walk_weight_g(s, x, y) + walk_weight_g(s, y, x);
            int i = 1;
            while (i < n && digits[i] == 2) digits[i++] = 0;
            if (i >= n) break;
            ++digits[i];
        }
        assert(std::abs(double(by_walks - by_modes)) <=
               1e-9 * (1 + std::abs(double(by_modes))));
    }
    return by_modes;
}

// Exact rational variant of the mode-string sum.
inline Rational F_brute_rational(int n, const Rational& x, const Rational& y) {
    assert(n >= 1 && n <= 24);
    Rational total = 0;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        Rational term = 1;
        for (int i = 0; i < n; ++i) {
            term *= ((mask >> i) & 1) ? x : y;
            if (i > 0 && (((mask >> i) ^ (mask >> (i - 1))) & 1)) term *= 2;
        }
        total += term;
    }
    return total;
}

// Linear recurrence on (ends-in-x, ends-in-y) totals:
//   F_{n+1,x} = x F_{n,x} + 2x F_{n,y},  F_{n+1,y} = 2y F_{n,x} + y F_{n,y}.
template <typename Real>
Real F_recurrence(int n, Real x, Real y) {
    assert(n >= 1);
    Real fx = x, fy = y;
    for (int k = 1; k < n; ++k) {
        Real nfx = x * fx + 2 * x * fy;
        Real nfy = 2 * y * fx + y * fy;
        fx = nfx;
        fy = nfy;
    }
    return fx + fy;
}

// Eigenvalues of the recurrence matrix.
inline double lambda2(double x, double y) {
    return (x + y + std::sqrt(x * x + 14 * x * y + y * y)) / 2;
}
inline double lambda1(double x, double y) {
    return (x + y - std::sqrt(x * x + 14 * x * y + y * y)) / 2;
}

// Closed form via the eigendecomposition, floating point.
inline double F_closed_form(int n, double x, double y) {
    assert(n >= 1);
    double s = x + y, q = x * x + 6 * x * y + y * y;
    double m = std::sqrt(x * x + 14 * x * y + y * y);
    return ((q + m * s) * std::pow(lambda2(x, y), n - 1) -
            (q - m * s) * std::pow(lambda1(x, y), n - 1)) /
           (2 * m);
}

// Element p + q sqrt(D) of the real quadratic field Q(sqrt(D)).
struct QuadExt {
    Rational p, q, D;
    QuadExt operator*(const QuadExt& o) const {
        assert(D == o.D);
        return {p * o.p + q * o.q * D, p * o.q + q * o.p, D};
    }
    QuadExt operator-(const QuadExt& o) const {
        assert(D == o.D);
        return {p - o.p, q - o.q, D};
    }
};

inline QuadExt quadext_pow(QuadExt base, unsigned long e) {
    QuadExt r{1, 0, base.D};
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// Exact closed form over Q(sqrt(D)), D = x^2 + 14xy + y^2.  The result of
//   [(q + s sqrt(D)) l2^{n-1} - (q - s sqrt(D)) l1^{n-1}] / (2 sqrt(D))
// must be rational: the rational component of the bracket vanishes and the
// value is half its sqrt(D) coefficient.
inline Rational F_closed_form_rational(int n, const Rational& x,
                                       const Rational& y) {
    assert(n >= 1);
    Rational s = x + y, q = x * x + 6 * x * y + y * y;
    Rational D = x * x + 14 * x * y + y * y;
    QuadExt l2{s / 2, Rational(1, 2), D}, l1{s / 2, Rational(-1, 2), D};
    QuadExt b = QuadExt{q, s, D} * quadext_pow(l2, n - 1) -
                QuadExt{q, -s, D} * quadext_pow(l1, n - 1);
    if (b.p != 0) throw std::logic_error("closed form is not rational");
    return b.q / 2;
}

// Union-bound envelope F_n(x,y) <= 3 (x+y) lambda2^{n-1} for x, y > 0.
inline double F_upper_bound(int n, double x, double y) {
    return 3 * (x + y) * std::pow(lambda2(x, y), n - 1);
}

// Antiferroelectric decay condition.  The hypothesis 3ab + ac + bc < c^2
// implies a + b + sqrt(a^2 + 14ab + b^2) < 2c, i.e. lambda2(a/c, b/c) < 1.
inline bool afe_hypothesis(const Rational& a, const Rational& b,
                           const Rational& c) {
    return 3 * a * b + a * c + b * c < c * c;
}

inline bool afe_conclusion(const Rational& a, const Rational& b,
                           const Rational& c) {
    Rational r = 2 * c - a - b;
    return r > 0 && r * r > a * a + 14 * a * b + b * b;
}

// lambda2(a/c, b/c): geometric rate of the Peierls series over walk length.
inline double decay_base(double a, double b, double c) {
    return (a + b + std::sqrt(a * a + 14 * a * b + b * b)) / (2 * c);
}

}  // namespace sixv

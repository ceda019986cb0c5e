#pragma once

// Correlated random walk analytics: exact PDF (closed form and DP oracle),
// simulation, unimodality, return probability, the marginal bound f(x), its
// critical point, the maximum log marginal h(n), tail bounds, and tethered
// NE-path deviation tails under Gamma(mu, n).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "rng.hpp"

namespace sixv {

struct CrwSpec {
    long long n = 1;   // walk has 2n steps
    double p = 0.5;    // momentum: repeat previous step with probability p
    double mu = 1.0;   // p = mu / (1 + mu)

    static CrwSpec from_p(long long n, double p) {
        if (n < 1 || p < 0 || p > 1)
            throw std::invalid_argument("need n >= 1 and p in [0,1]");
        return {n, p, p < 1 ? p / (1 - p)
                            : std::numeric_limits<double>::infinity()};
    }
    static CrwSpec from_mu(long long n, double mu) {
        if (n < 1 || !(mu > 0))
            throw std::invalid_argument("need n >= 1 and mu > 0");
        return {n, mu / (1 + mu), mu};
    }
};

namespace detail {

inline double log_binom(long long n, long long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
           std::lgamma(double(n - k + 1));
}

inline double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

}  // namespace detail

// P(S_{2n} = 2m), the two-case closed form, evaluated in log space.
inline double pdf_exact(long long n, long long m, double p) {
    if (m < 0 || m > n) throw std::invalid_argument("need 0 <= m <= n");
    if (p <= 0) return m == 0 ? 1.0 : 0.0;  // strict alternation
    if (p >= 1) return m == n ? 0.5 : 0.0;  // never turns
    if (m == n) return 0.5 * std::exp((2.0 * n - 1) * std::log(p));
    double sum = 0;
    const double lp = std::log(p), lq = std::log1p(-p);
    for (long long k = 1; k <= n - m; ++k) {
        double coef = (n * (1 - p) + k * (2 * p - 1)) / double(k);
        double lg = detail::log_binom(n + m - 1, k - 1) +
                    detail::log_binom(n - m - 1, k - 1) + (2 * k - 1) * lq +
                    (2.0 * n - 1 - 2 * k) * lp + std::log(coef);
        sum += std::exp(lg);
    }
    return sum;
}

inline double pdf_exact(const CrwSpec& s, long long m) {
    return pdf_exact(s.n, m, s.p);
}

// log P(S_{2n} = 2m) via log-sum-exp over the same terms; stays accurate far
// below the double underflow threshold.
inline double log_pdf_exact(long long n, long long m, double p) {
    if (m < 0 || m > n) throw std::invalid_argument("need 0 <= m <= n");
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (p <= 0) return m == 0 ? 0.0 : ninf;
    if (p >= 1) return m == n ? std::log(0.5) : ninf;
    if (m == n) return std::log(0.5) + (2.0 * n - 1) * std::log(p);
    const double lp = std::log(p), lq = std::log1p(-p);
    std::vector<double> lgs;
    lgs.reserve(std::size_t(n - m));
    double lmax = ninf;
    for (long long k = 1; k <= n - m; ++k) {
        double coef = (n * (1 - p) + k * (2 * p - 1)) / double(k);
        double lg = detail::log_binom(n + m - 1, k - 1) +
                    detail::log_binom(n - m - 1, k - 1) + (2 * k - 1) * lq +
                    (2.0 * n - 1 - 2 * k) * lp + std::log(coef);
        lgs.push_back(lg);
        lmax = std::max(lmax, lg);
    }
    double sum = 0;
    for (double lg : lgs) sum += std::exp(lg - lmax);
    return lmax + std::log(sum);
}

// Same closed form over exact rationals.
inline Rational pdf_exact_rational(long long n, long long m,
                                   const Rational& p) {
    if (m < 0 || m > n) throw std::invalid_argument("need 0 <= m <= n");
    if (p == 0) return m == 0 ? Rational(1) : Rational(0);
    if (p == 1) return m == n ? Rational(1, 2) : Rational(0);
    if (m == n) return rational_pow(p, 2 * n - 1) / 2;
    Rational q = Rational(1) - p, sum = 0;
    for (long long k = 1; k <= n - m; ++k) {
        Rational coef =
            (Rational(n) * q + Rational(k) * (2 * p - 1)) / Rational(k);
        Rational term = Rational(binomial(n + m - 1, k - 1)) *
                        Rational(binomial(n - m - 1, k - 1)) *
                        rational_pow(q, 2 * k - 1) *
                        rational_pow(p, 2 * n - 1 - 2 * k) * coef;
        sum += term;
    }
    return sum;
}

// DP oracle: exact distribution of S_{2n} over even positions.  Entry [m+n]
// is P(S_{2n} = 2m) for m in [-n, n].  State: (position, last direction),
// first step uniform on {-1, +1}.
template <typename Real>
std::vector<Real> pdf_oracle_impl(long long n, Real p) {
    const long long T = 2 * n;
    const long long W = 2 * T + 1;  // raw positions -T..T, offset +T
    // cur[pos][d], d=0 last step -1, d=1 last step +1
    std::vector<Real> cur(W * 2, Real(0)), nxt(W * 2);
    cur[(T - 1) * 2 + 0] = Real(1) / 2;
    cur[(T + 1) * 2 + 1] = Real(1) / 2;
    Real q = Real(1) - p;
    for (long long t = 2; t <= T; ++t) {
        std::fill(nxt.begin(), nxt.end(), Real(0));
        long long lo = T - (t - 1), hi = T + (t - 1);
        for (long long x = lo; x <= hi; ++x) {
            Real down = cur[x * 2 + 0], up = cur[x * 2 + 1];
            if (down != Real(0)) {
                nxt[(x - 1) * 2 + 0] += down * p;
                nxt[(x + 1) * 2 + 1] += down * q;
            }
            if (up != Real(0)) {
                nxt[(x + 1) * 2 + 1] += up * p;
                nxt[(x - 1) * 2 + 0] += up * q;
            }
        }
        cur.swap(nxt);
    }
    std::vector<Real> out(2 * n + 1, Real(0));
    for (long long j = -n; j <= n; ++j)
        out[j + n] = cur[(T + 2 * j) * 2 + 0] + cur[(T + 2 * j) * 2 + 1];
    return out;
}

inline std::vector<double> pdf_oracle(long long n, double p) {
    return pdf_oracle_impl<double>(n, p);
}
inline std::vector<double> pdf_oracle(const CrwSpec& s) {
    return pdf_oracle_impl<double>(s.n, s.p);
}
inline std::vector<Rational> pdf_oracle_rational(long long n,
                                                 const Rational& p) {
    return pdf_oracle_impl<Rational>(n, p);
}

// One sampled walk: the 2n step directions.
inline std::vector<int> simulate(const CrwSpec& s, Rng& rng) {
    std::vector<int> x(2 * s.n);
    x[0] = rng.next_bool() ? 1 : -1;
    for (long long t = 1; t < 2 * s.n; ++t)
        x[t] = rng.bernoulli(s.p) ? x[t - 1] : -x[t - 1];
    return x;
}

inline std::vector<int> simulate(const CrwSpec& s, std::uint64_t seed,
                                 std::uint64_t stream = 0) {
    Rng rng(seed, stream);
    return simulate(s, rng);
}

// Empirical distribution over even final positions, same layout as the
// oracle.
inline std::vector<double> empirical_distribution(const CrwSpec& s,
                                                  long long samples,
                                                  std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples >= 1");
    Rng rng(seed);
    std::vector<double> out(2 * s.n + 1, 0.0);
    for (long long k = 0; k < samples; ++k) {
        long long pos = 0;
        int last = rng.next_bool() ? 1 : -1;
        pos += last;
        for (long long t = 1; t < 2 * s.n; ++t) {
            last = rng.bernoulli(s.p) ? last : -last;
            pos += last;
        }
        out[pos / 2 + s.n] += 1.0;
    }
    for (auto& v : out) v /= double(samples);
    return out;
}

struct UnimodalReport {
    bool unimodal = true;
    long long first_violation_m = -1;  // P(2(m+1)) > P(2m) here
};

// Checks P(S_{2n}=2m) >= P(S_{2n}=2(m+1)) for m = 0..n-1 on the oracle
// distribution, with a relative slack of 1e-12 for float noise.
inline UnimodalReport is_unimodal(const CrwSpec& s) {
    auto d = pdf_oracle(s);
    for (long long m = 0; m + 1 <= s.n; ++m) {
        double a = d[m + s.n], b = d[m + 1 + s.n];
        if (b > a * (1 + 1e-12) + 1e-300) return {false, m};
    }
    return {true, -1};
}

// Threshold n >= (1/(1-p)) (p^2/(2(1-p)) + 1 - 2p) from the unimodality
// proof's boundary case m = n-1 vs m = n.
inline double unimodal_threshold(double p) {
    if (!(p > 0 && p < 1)) throw std::invalid_argument("p in (0,1)");
    return (p * p / (2 * (1 - p)) + 1 - 2 * p) / (1 - p);
}

// P(S_{2n}=0) sqrt(mu pi n); tends to 1 (Gillis).
inline double return_probability_ratio(long long n, double mu) {
    if (!(mu > 0)) throw std::invalid_argument("mu > 0");
    double p = mu / (1 + mu);
    return pdf_exact(n, 0, p) * std::sqrt(mu * M_PI * double(n));
}

// log f(x) for the Stirling upper bound Eq. (5.1); continuous on [0, n-m].
inline double log_marginal_bound_f(double x, double n, double m, double mu) {
    if (x < 0 || x > n - m) throw std::invalid_argument("x in [0, n-m]");
    using detail::xlogx;
    if (x == 0) return 0.0;
    if (x == n - m) return -2 * (n - m) * std::log(mu);
    return xlogx(n + m) - xlogx(x) - xlogx(n + m - x) + xlogx(n - m) -
           xlogx(x) - xlogx(n - m - x) - 2 * x * std::log(mu);
}

inline double marginal_bound_f(double x, double n, double m, double mu) {
    return std::exp(log_marginal_bound_f(x, n, m, mu));
}

// g'(x) = log[ ((n-x)^2 - m^2) / (mu x)^2 ], the log-derivative of f.
inline double f_log_derivative(double x, double n, double m, double mu) {
    return std::log(((n - x) * (n - x) - m * m) / ((mu * x) * (mu * x)));
}

// Critical point of f: x* = (n^2 - m^2)/(2n) if mu = 1, else
// (n/(1-mu^2))(1 - sqrt(mu^2 + (1-mu^2) m^2/n^2)); both cases are computed
// through the cancellation-free equivalent (n^2-m^2)/(n (1 + sqrt(D))).
inline double critical_point(double n, double m, double mu) {
    if (!(m >= 0 && m < n && mu > 0))
        throw std::invalid_argument("need 0 <= m < n, mu > 0");
    double r = m / n;
    double D = mu * mu + (1 - mu * mu) * r * r;
    double xs = (n * n - m * m) / (n * (1 + std::sqrt(D)));
    if (std::abs(f_log_derivative(xs, n, m, mu)) > 1e-9)
        throw std::logic_error("critical point fails g'(x*) = 0 check");
    return xs;
}

struct MaxLogMarginal {
    double h;            // -log[ (mu/(1+mu))^{2n} f(x*) ]
    double h_symmetric;  // equivalent two-term form
};

inline MaxLogMarginal max_log_marginal(double n, double m, double mu) {
    double xs = critical_point(n, m, mu);
    double h = -(2 * n * std::log(mu / (1 + mu)) +
                 log_marginal_bound_f(xs, n, m, mu));
    double c = (1 + mu) / mu;
    double hs = (n + m) * std::log(c * (1 - xs / (n + m))) +
                (n - m) * std::log(c * (1 - xs / (n - m)));
    return {h, hs};
}

// Gaussian-type tail bound: P(S_{2n} = 2m) <= e^{-(1-eps) m^2 / (mu n)}.
inline double tail_bound(double n, double m, double mu, double eps) {
    return std::exp(-(1 - eps) * m * m / (mu * n));
}

struct TailCheck {
    bool ok = true;
    long long first_violation_m = -1;
};

// Compare the oracle PDF against the bound for every m in [1, m_max].  The
// DP oracle is used directly while its values are representable doubles;
// once either side drops below the underflow floor, the comparison switches
// to log space via the log-sum-exp closed form (identical math, checked
// against the DP elsewhere).
inline TailCheck verify_tail(const CrwSpec& s, double eps, long long m_max) {
    auto d = pdf_oracle(s);
    constexpr double floor = 1e-290;  // comfortably above denormal range
    for (long long m = 1; m <= m_max && m <= s.n; ++m) {
        double b = tail_bound(double(s.n), double(m), s.mu, eps);
        if (d[m + s.n] >= floor || b >= floor) {
            if (d[m + s.n] > b) return {false, m};
        } else {
            double lb = -(1 - eps) * double(m) * double(m) / (s.mu * s.n);
            if (log_pdf_exact(s.n, m, s.p) > lb) return {false, m};
        }
    }
    return {true, -1};
}

// --- tethered paths: Gamma(mu, n) ----------------------------------------
//
// A tethered path takes 2n NE steps from (0,0) to (n,n); Pr(gamma) is
// proportional to mu^{# straights}.  Under N=+1/E=-1 the prefix sums S_i
// give the deviation max_i |S_i|, and straights are exactly the repeats of a
// correlated walk, so Gamma(mu,n) is a CRW conditioned on S_{2n} = 0.
// endpoint_bias additionally weights mu^{[X_1 = E]} mu^{[X_2n = E]}, the
// convention induced by a horizontal-entry/horizontal-exit six-vertex path
// whose entry and exit stubs also form straights.

namespace detail {

// log of the total weight of tethered paths with deviation <= max_dev
// (max_dev < 0 means unconstrained), with per-layer rescaling.
inline long double tethered_log_weight(long long n, long double mu,
                                       long long max_dev, bool endpoint_bias) {
    const long long T = 2 * n, off = n;
    const long long W = 2 * n + 1;  // displacements -n..n
    std::vector<long double> cur(W * 2, 0.0L), nxt(W * 2);
    long double logscale = 0.0L;
    auto okdev = [&](long long k) {
        return max_dev < 0 || std::llabs(k) <= max_dev;
    };
    // first step: d=1 means N (+1), d=0 means E (-1)
    if (okdev(1)) cur[(off + 1) * 2 + 1] = 1.0L;
    if (okdev(-1)) cur[(off - 1) * 2 + 0] = endpoint_bias ? mu : 1.0L;
    for (long long t = 2; t <= T; ++t) {
        std::fill(nxt.begin(), nxt.end(), 0.0L);
        for (long long k = -n; k <= n; ++k) {
            long double e = cur[(off + k) * 2 + 0], nn = cur[(off + k) * 2 + 1];
            if (e != 0.0L) {
                if (k - 1 >= -n && okdev(k - 1))
                    nxt[(off + k - 1) * 2 + 0] += e * mu;  // straight E,E
                if (k + 1 <= n && okdev(k + 1))
                    nxt[(off + k + 1) * 2 + 1] += e;  // turn E,N
            }
            if (nn != 0.0L) {
                if (k + 1 <= n && okdev(k + 1))
                    nxt[(off + k + 1) * 2 + 1] += nn * mu;  // straight N,N
                if (k - 1 >= -n && okdev(k - 1))
                    nxt[(off + k - 1) * 2 + 0] += nn;  // turn N,E
            }
        }
        cur.swap(nxt);
        long double mx = 0.0L;
        for (auto v : cur) mx = std::max(mx, v);
        if (mx == 0.0L) return -std::numeric_limits<long double>::infinity();
        for (auto& v : cur) v /= mx;
        logscale += std::log(mx);
    }
    long double endN = cur[off * 2 + 1], endE = cur[off * 2 + 0];
    if (endpoint_bias) endE *= mu;
    long double total = endN + endE;
    if (total == 0.0L) return -std::numeric_limits<long double>::infinity();
    return logscale + std::log(total);
}

}  // namespace detail

// P(deviation >= 2m) under Gamma(mu, n), exactly from the weight DP.
inline double tethered_deviation_tail(long long n, double mu, long long m,
                                      bool endpoint_bias = false) {
    if (n < 1 || !(mu > 0) || m < 0)
        throw std::invalid_argument("need n >= 1, mu > 0, m >= 0");
    if (m == 0) return 1.0;
    long double full = detail::tethered_log_weight(n, mu, -1, endpoint_bias);
    long double capped =
        detail::tethered_log_weight(n, mu, 2 * m - 1, endpoint_bias);
    if (capped == -std::numeric_limits<long double>::infinity()) return 1.0;
    return static_cast<double>(1.0L - std::exp(capped - full));
}

// P(max_i |S_i| >= 2m | S_{2n} = 0) for the CRW: the other side of the
// measure-preserving bijection, via a probability DP sharing no code with
// the weight DP above.
inline double crw_conditional_deviation_tail(long long n, double p,
                                             long long m) {
    if (n < 1 || !(p > 0 && p < 1) || m < 0)
        throw std::invalid_argument("need n >= 1, p in (0,1), m >= 0");
    if (m == 0) return 1.0;
    const long long T = 2 * n, off = 2 * n;
    const long long W = 4 * n + 1;  // raw positions
    auto run = [&](long long cap) {  // mass at S_T = 0 with max|S| <= cap
        std::vector<long double> cur(W * 2, 0.0L), nxt(W * 2);
        if (1 <= cap) {
            cur[(off + 1) * 2 + 1] = 0.5L;
            cur[(off - 1) * 2 + 0] = 0.5L;
        }
        long double q = 1.0L - (long double)p;
        for (long long t = 2; t <= T; ++t) {
            std::fill(nxt.begin(), nxt.end(), 0.0L);
            for (long long x = -cap; x <= cap; ++x) {
                long double dn = cur[(off + x) * 2 + 0],
                            up = cur[(off + x) * 2 + 1];
                if (dn != 0.0L) {
                    if (std::llabs(x - 1) <= cap)
                        nxt[(off + x - 1) * 2 + 0] += dn * (long double)p;
                    if (std::llabs(x + 1) <= cap)
                        nxt[(off + x + 1) * 2 + 1] += dn * q;
                }
                if (up != 0.0L) {
                    if (std::llabs(x + 1) <= cap)
                        nxt[(off + x + 1) * 2 + 1] += up * (long double)p;
                    if (std::llabs(x - 1) <= cap)
                        nxt[(off + x - 1) * 2 + 0] += up * q;
                }
            }
            cur.swap(nxt);
        }
        return cur[off * 2 + 0] + cur[off * 2 + 1];
    };
    long double at_zero = run(T);               // unconstrained: cap >= T
    long double capped = run(2 * m - 1);
    return static_cast<double>(1.0L - capped / at_zero);
}

// Exact sampler for Gamma(mu, n) by backward DP + forward rolling.
// Returns the 2n step directions as 'N'/'E'.
inline std::vector<char> tethered_sample(long long n, double mu, Rng& rng,
                                         bool endpoint_bias = false) {
    if (n < 1 || n > 2000 || !(mu > 0))
        throw std::invalid_argument("need 1 <= n <= 2000, mu > 0");
    const long long T = 2 * n, off = n, W = 2 * n + 1;
    // B[t][k][d]: weight of completions from (t steps done, disp k, last d),
    // each layer normalized (only within-layer ratios are used).
    std::vector<std::vector<double>> B(T + 1,
                                       std::vector<double>(W * 2, 0.0));
    B[T][off * 2 + 1] = 1.0;
    B[T][off * 2 + 0] = endpoint_bias ? mu : 1.0;
    for (long long t = T - 1; t >= 1; --t) {
        auto& b = B[t];
        const auto& nx = B[t + 1];
        double mx = 0;
        for (long long k = -n; k <= n; ++k) {
            // last step E at disp k: next E (straight) or N (turn)
            double wE = 0, wN = 0;
            if (k - 1 >= -n) {
                wE += mu * nx[(off + k - 1) * 2 + 0];
                wN += nx[(off + k - 1) * 2 + 0];
            }
            if (k + 1 <= n) {
                wE += nx[(off + k + 1) * 2 + 1];
                wN += mu * nx[(off + k + 1) * 2 + 1];
            }
            b[(off + k) * 2 + 0] = wE;
            b[(off + k) * 2 + 1] = wN;
            mx = std::max(mx, std::max(wE, wN));
        }
        if (mx > 0)
            for (auto& v : b) v /= mx;
    }
    std::vector<char> steps;
    steps.reserve(T);
    // first step
    double w_n = B[1][(off + 1) * 2 + 1];
    double w_e = (endpoint_bias ? mu : 1.0) * B[1][(off - 1) * 2 + 0];
    long long k;
    int d;
    if (rng.next_double() * (w_n + w_e) < w_n) {
        steps.push_back('N');
        k = 1;
        d = 1;
    } else {
        steps.push_back('E');
        k = -1;
        d = 0;
    }
    for (long long t = 1; t < T; ++t) {
        double wN = 0, wE = 0;
        if (k + 1 <= n)
            wN = (d == 1 ? mu : 1.0) * B[t + 1][(off + k + 1) * 2 + 1];
        if (k - 1 >= -n)
            wE = (d == 0 ? mu : 1.0) * B[t + 1][(off + k - 1) * 2 + 0];
        if (rng.next_double() * (wN + wE) < wN) {
            steps.push_back('N');
            ++k;
            d = 1;
        } else {
            steps.push_back('E');
            --k;
            d = 0;
        }
    }
    return steps;
}

// Deviation of a step sequence: max_i |#N - #E| over prefixes, which equals
// max_i ||(x_i, y_i) - (i/2, i/2)||_1 for the path the steps trace.
inline long long steps_deviation(const std::vector<char>& steps) {
    long long s = 0, dev = 0;
    for (char c : steps) {
        s += (c == 'N') ? 1 : -1;
        dev = std::max(dev, std::llabs(s));
    }
    return dev;
}

inline long long straights_count(const std::vector<char>& steps) {
    long long k = 0;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        if (steps[i] == steps[i + 1]) ++k;
    return k;
}

}  // namespace sixv

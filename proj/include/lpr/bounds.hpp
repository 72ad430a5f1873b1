#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "lpr/rational.hpp"
#include "lpr/types.hpp"

namespace lpr::bounds {

using Dec50 = boost::multiprecision::cpp_dec_float_50;
using Dec100 = boost::multiprecision::cpp_dec_float_100;
using Dec200 = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<200>>;

namespace detail {

inline void require_tau_args(int i, const Params& p) {
    if (p.r < 2 || p.r > p.k) throw RangeError("tau needs 2 <= r <= k");
    if (i < 1 || i > p.r - 1)
        throw RangeError("tau needs 1 <= i <= r-1, got i=" + std::to_string(i));
}

template <class F>
F rational_to(const Rational& q) {
    return F(boost::multiprecision::numerator(q)) / F(boost::multiprecision::denominator(q));
}

// 1/(k-r+1) + ln(1 + (r-2)/(k-r+1)), cached per (k, r).
template <class F>
F con_log_factor(int k, int r) {
    static std::map<std::pair<int, int>, F> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({k, r});
    if (it != cache.end()) return it->second;
    F value = F(1) / (k - r + 1) + log(F(1) + F(r - 2) / (k - r + 1));
    cache.emplace(std::pair<int, int>{k, r}, value);
    return value;
}

// Guarded multi-level comparison lhs <= rhs. Both sides are generic lambdas
// evaluated at the tag's precision; the ladder starts at double with a
// conservative guard and escalates through 50, 100 and 200 decimal digits.
// A difference inside the guard band escalates; a tie at the top level
// counts as failure.
template <class LhsFn, class RhsFn>
bool guarded_leq(const LhsFn& lhs, const RhsFn& rhs) {
    {
        const double r = rhs(double{});
        const double d = r - lhs(double{});
        const double guard = 1e-9 * std::max(1.0, std::abs(r));
        if (d > guard) return true;
        if (d < -guard) return false;
    }
    {
        Dec50 d = rhs(Dec50{}) - lhs(Dec50{});
        if (d > Dec50("1e-35")) return true;
        if (d < Dec50("-1e-35")) return false;
    }
    {
        Dec100 d = rhs(Dec100{}) - lhs(Dec100{});
        if (d > Dec100("1e-85")) return true;
        if (d < Dec100("-1e-85")) return false;
    }
    Dec200 d = rhs(Dec200{}) - lhs(Dec200{});
    if (d > Dec200("1e-175")) return true;
    return false;
}

}  // namespace detail

// Round threshold seed: tau_1 = 0 and, for 2 <= r <= k, 1 <= i <= r-1,
//   tau_i = (i-1) * ( l/(k-r+1) + (l+1)/(k-r+2) + ... + (l+1)/(k-i) ),
// where the harmonic block is empty at i = r-1, collapsing to
// (r-2) * l/(k-r+1). Exact rational, no floating arithmetic.
inline Rational tau(int i, const Params& p) {
    detail::require_tau_args(i, p);
    Rational s(p.ell, p.k - p.r + 1);
    for (int d = p.k - p.r + 2; d <= p.k - i; ++d) s += Rational(p.ell + 1, d);
    return Rational(i - 1) * s;
}

// t_i = tau_i + 2(i-1): the per-round trash-bin cap.
inline Rational t_bin(int i, const Params& p) {
    return tau(i, p) + Rational(2 * (i - 1));
}

// Exact termination threshold for round i:
//   i = 1, r = 2:   l
//   i = 1, r >= 3:  (k-1) tau_2 + l + 1
//   i >= 2:         (k-i)/(i-1) tau_i
inline Rational round_target(int i, const Params& p) {
    detail::require_tau_args(i, p);
    if (i == 1) {
        if (p.r == 2) return Rational(p.ell);
        return Rational(p.k - 1) * tau(2, p) + Rational(p.ell + 1);
    }
    return Rational(p.k - i, i - 1) * tau(i, p);
}

// Smallest n guaranteeing the multi-round DFS finder succeeds:
//   r = 2:   (2k-2) l + k, exact
//   r >= 3:  ceil of k(l+1)r (1 + 1/(k-r+1) + ln(1 + (r-2)/(k-r+1))),
//            evaluated at >= 100 decimal digits and rounded up so the
//            returned n satisfies the real-valued inequality.
inline long n_min_con(const Params& p) {
    if (p.r < 2 || p.r > p.k)
        throw RangeError("n_min_con needs 2 <= r <= k; for r > k use the selfish reduction");
    if (p.ell < 3) throw RangeError("n_min_con needs ell >= 3");
    if (p.r == 2) return (2L * p.k - 2) * p.ell + p.k;

    auto eval = [&](auto tag) {
        using F = decltype(tag);
        return F(p.k) * (p.ell + 1) * p.r *
               (F(1) + detail::con_log_factor<F>(p.k, p.r));
    };
    {
        Dec100 v = eval(Dec100{});
        Dec100 lo = v - Dec100("1e-80"), hi = v + Dec100("1e-80");
        if (floor(lo) == floor(hi))
            return static_cast<long>(static_cast<long long>(floor(hi)) + 1);
    }
    // The value is irrational for r >= 3; 200 digits settle any boundary.
    Dec200 v = eval(Dec200{});
    return static_cast<long>(static_cast<long long>(floor(v + Dec200("1e-175"))) + 1);
}

// Selfish-reduction threshold 2^{r+1} l + (k-2) l r, exact.
inline long n_min_con2(const Params& p) {
    if (p.k < 2) throw RangeError("n_min_con2 needs k >= 2");
    if (p.ell < 3) throw RangeError("n_min_con2 needs ell >= 3");
    if (p.r < 2) throw RangeError("n_min_con2 needs r >= 2");
    if (p.r > 60) throw RangeError("n_min_con2 threshold exceeds 64 bits");
    return static_cast<long>((1LL << (p.r + 1)) * p.ell + static_cast<long long>(p.k - 2) * p.ell * p.r);
}

struct NMinCor1 {
    long main;        // ceil of k(l+1)r (1 + ln(1 + (r-1)/(k-r)))
    long simplified;  // ceil of k(l+1)r (1 + ln r)
};

inline NMinCor1 n_min_cor1(const Params& p) {
    if (p.r < 2 || p.r > p.k - 1) throw RangeError("n_min_cor1 needs 2 <= r <= k-1");
    if (p.ell < 3) throw RangeError("n_min_cor1 needs ell >= 3");
    auto ceil_of = [&](auto factor) {
        auto eval = [&](auto tag) {
            using F = decltype(tag);
            return F(p.k) * (p.ell + 1) * p.r * (F(1) + log(factor(F{})));
        };
        Dec100 v = eval(Dec100{});
        Dec100 lo = v - Dec100("1e-80"), hi = v + Dec100("1e-80");
        if (floor(lo) == floor(hi))
            return static_cast<long>(static_cast<long long>(floor(hi)) + 1);
        Dec200 w = eval(Dec200{});
        return static_cast<long>(static_cast<long long>(floor(w + Dec200("1e-175"))) + 1);
    };
    NMinCor1 out;
    out.main = ceil_of([&](auto tag) {
        using F = decltype(tag);
        return F(1) + F(p.r - 1) / (p.k - p.r);
    });
    out.simplified = ceil_of([&](auto tag) {
        using F = decltype(tag);
        return F(p.r);
    });
    return out;
}

struct BoundEntry {
    std::string id;
    Rational value;
    bool constructive;
    std::string validity;
};

// All upper-bound and threshold values applicable to the given parameters.
inline std::vector<BoundEntry> bound_table(const Params& p) {
    if (p.k < 2) throw RangeError("bound_table needs k >= 2");
    if (p.r < 2) throw RangeError("bound_table needs r >= 2");
    if (p.ell < 0) throw RangeError("bound_table needs ell >= 0");
    std::vector<BoundEntry> out;
    if (p.ell >= 3)
        out.push_back({"thm_non", Rational(static_cast<long long>(p.k - 1) * p.ell * p.r), false,
                       "all k>=2, ell>=3, r>=2"});
    if (p.k >= 3 && p.ell >= 3)
        out.push_back({"eq_TRL", Rational(static_cast<long long>(p.k) * p.ell * p.r, 2), false,
                       "large r only"});
    if (p.k >= 3 && p.ell == 3)
        out.push_back({"eq_TR3", Rational(static_cast<long long>(p.k) * p.r), false,
                       "large r only; ell=3"});
    if (p.k == 3 && p.ell == 3)
        out.push_back({"eq_TR", Rational(3LL * p.r), false, "k=ell=3, all r>=3"});
    if (p.k == 2)
        out.push_back({"eq_EG", Rational(static_cast<long long>(p.r) * p.ell), false, "graphs"});
    if (p.ell >= 3) {
        if (p.r <= p.k)
            out.push_back({"n_min_con", Rational(n_min_con(p)), true, "finder threshold"});
        out.push_back({"n_min_con2", Rational(n_min_con2(p)), true, "reduction threshold"});
        if (p.r <= p.k - 1) {
            NMinCor1 c = n_min_cor1(p);
            out.push_back({"n_min_cor1", Rational(c.main), true, "finder threshold, r<=k-1"});
            out.push_back({"n_min_cor1_simplified", Rational(c.simplified), true,
                           "weaker but simpler variant"});
        }
    }
    return out;
}

// tau_i <= (i-1)(l+1) (1/(k-r+1) + ln(1 + (r-2)/(k-r+1))).
// Exact-rational left side against a guarded high-precision right side; a
// within-guard tie escalates and ultimately fails. A double-precision screen
// with a conservative error allowance settles the far-from-tie bulk without
// touching exact arithmetic.
inline bool check_claim_tau(int i, const Params& p) {
    detail::require_tau_args(i, p);
    if (i == 1) return true;  // both sides exactly zero
    {
        double s = static_cast<double>(p.ell) / (p.k - p.r + 1);
        for (int d = p.k - p.r + 2; d <= p.k - i; ++d)
            s += static_cast<double>(p.ell + 1) / d;
        const double lhs = (i - 1) * s;
        const double rhs = static_cast<double>(i - 1) * (p.ell + 1) *
                           (1.0 / (p.k - p.r + 1) +
                            std::log1p(static_cast<double>(p.r - 2) / (p.k - p.r + 1)));
        const double guard = 1e-9 * std::max(1.0, std::abs(rhs));
        if (rhs - lhs > guard) return true;
        if (rhs - lhs < -guard) return false;
    }
    const Rational lhs = tau(i, p);
    return detail::guarded_leq(
        [&](auto tag) {
            using F = decltype(tag);
            return detail::rational_to<F>(lhs);
        },
        [&](auto tag) {
            using F = decltype(tag);
            return F(i - 1) * (p.ell + 1) * detail::con_log_factor<F>(p.k, p.r);
        });
}

// 1/(k-r+1) + ln(1 + (r-2)/(k-r+1)) <= ln(1 + (r-1)/(k-r)), for 2 <= r <= k-1.
inline bool check_claim_cor(int k, int r) {
    if (r < 2 || r > k - 1) throw RangeError("check_claim_cor needs 2 <= r <= k-1");
    return detail::guarded_leq(
        [&](auto tag) {
            using F = decltype(tag);
            return detail::con_log_factor<F>(k, r);
        },
        [&](auto tag) {
            using F = decltype(tag);
            return log(F(1) + F(r - 1) / (k - r));
        });
}

}  // namespace lpr::bounds

#pragma once

#include <mpfr.h>

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "itkit/rational.hpp"

namespace itkit {
namespace detail {

// If value == base^t for an integer t >= 0, returns t. Requires base > 1 and
// value >= 1, both canonical. The candidate exponent is pinned by the bit
// lengths of the matching components and confirmed by integer powering, so the
// answer is certain either way.
inline std::optional<unsigned long> exact_power_exponent(const Rational& base,
                                                         const Rational& value) {
    const BigInt& p = base.get_num();
    const BigInt& q = base.get_den();
    const BigInt& vn = value.get_num();
    const BigInt& vd = value.get_den();
    if (value == 1) return 0UL;

    auto candidate = [](const BigInt& target, const BigInt& root) -> unsigned long {
        signed long te = 0, re = 0;
        double tm = mpz_get_d_2exp(&te, target.get_mpz_t());
        double rm = mpz_get_d_2exp(&re, root.get_mpz_t());
        double lt = std::log2(tm) + static_cast<double>(te);
        double lr = std::log2(rm) + static_cast<double>(re);
        if (lr <= 0.0) return 0;
        double t = lt / lr;
        return t <= 0.0 ? 0UL : static_cast<unsigned long>(t + 0.5);
    };

    unsigned long t;
    if (q == 1) {
        if (vd != 1) return std::nullopt;
        t = candidate(vn, p);
    } else {
        if (vd == 1) return std::nullopt;
        t = candidate(vd, q);
    }
    for (long shift = -1; shift <= 1; ++shift) {
        if (shift < 0 && t == 0) continue;
        unsigned long tt = t + shift;
        BigInt pn, pd;
        mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), tt);
        mpz_pow_ui(pd.get_mpz_t(), q.get_mpz_t(), tt);
        if (pn == vn && pd == vd) return tt;
    }
    return std::nullopt;
}

// Exact bracketing: largest t >= 0 with base^t <= value, for value >= 1.
// Powers are kept as coprime (numerator, denominator) integer pairs so no
// gcd work is ever done; comparisons cross-multiply.
struct Bracket {
    BigInt t;
    bool exact;
};

inline Bracket floor_log_bracket(const Rational& base, const Rational& value) {
    struct Pq {
        BigInt n, d;
    };
    const Pq v{value.get_num(), value.get_den()};
    auto leq = [](const Pq& a, const Pq& b) {
        BigInt lhs = a.n * b.d;
        BigInt rhs = b.n * a.d;
        return cmp(lhs, rhs) <= 0;
    };
    auto eq = [](const Pq& a, const Pq& b) {
        BigInt lhs = a.n * b.d;
        BigInt rhs = b.n * a.d;
        return cmp(lhs, rhs) == 0;
    };
    Pq b{base.get_num(), base.get_den()};
    if (!leq(b, v)) return {BigInt(0), value == 1};
    std::vector<Pq> pows;
    pows.push_back(b);
    for (;;) {
        Pq sq{pows.back().n * pows.back().n, pows.back().d * pows.back().d};
        if (!leq(sq, v)) break;
        pows.push_back(std::move(sq));
    }
    const std::size_t k = pows.size() - 1;
    Pq cur = pows[k];
    BigInt t = BigInt(1) << k;
    for (std::size_t j = k; j-- > 0;) {
        Pq cand{cur.n * pows[j].n, cur.d * pows[j].d};
        if (leq(cand, v)) {
            cur = std::move(cand);
            t += BigInt(1) << j;
        }
    }
    return {t, eq(cur, v)};
}

// Certified interval evaluation of log(value)/log(base) for value > 1 that is
// known not to be an exact power of base. Directed rounding gives a rigorous
// enclosure; escalate precision until the floor is pinned, give up at the cap.
inline std::optional<BigInt> floor_log_interval(const Rational& base, const Rational& value) {
    for (mpfr_prec_t prec = 96; prec <= (mpfr_prec_t(1) << 20); prec *= 2) {
        mpfr_t vlo, vhi, blo, bhi, xlo, xhi;
        mpfr_inits2(prec, vlo, vhi, blo, bhi, xlo, xhi, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_q(vlo, value.get_mpq_t(), MPFR_RNDD);
        mpfr_log(vlo, vlo, MPFR_RNDD);
        mpfr_set_q(vhi, value.get_mpq_t(), MPFR_RNDU);
        mpfr_log(vhi, vhi, MPFR_RNDU);
        mpfr_set_q(blo, base.get_mpq_t(), MPFR_RNDD);
        mpfr_log(blo, blo, MPFR_RNDD);
        mpfr_set_q(bhi, base.get_mpq_t(), MPFR_RNDU);
        mpfr_log(bhi, bhi, MPFR_RNDU);
        std::optional<BigInt> found;
        if (mpfr_sgn(blo) > 0) {
            mpfr_div(xlo, vlo, bhi, MPFR_RNDD);
            mpfr_div(xhi, vhi, blo, MPFR_RNDU);
            mpfr_floor(xlo, xlo);
            mpfr_floor(xhi, xhi);
            if (mpfr_cmp(xlo, xhi) == 0) {
                BigInt out;
                mpfr_get_z(out.get_mpz_t(), xlo, MPFR_RNDN);
                found = out;
            }
        }
        mpfr_clears(vlo, vhi, blo, bhi, xlo, xhi, static_cast<mpfr_ptr>(nullptr));
        if (found) return found;
    }
    return std::nullopt;
}

// Largest t >= 0 with base^t <= value (value >= 1), plus exactness.
inline Bracket floor_log_nonneg(const Rational& base, const Rational& value) {
    if (value == 1) return {BigInt(0), true};
    if (auto t = exact_power_exponent(base, value))
        return {BigInt(static_cast<unsigned long>(*t)), true};
    if (auto t = floor_log_interval(base, value)) return {*t, false};
    return floor_log_bracket(base, value);
}

} // namespace detail

// Exact floor of log_base(value): the unique integer t with
// base^t <= value < base^(t+1). base > 1 and value > 0, both rational.
inline BigInt floor_log(const Rational& base, const Rational& value) {
    if (!(base > 1)) throw Error("floor_log: base must exceed 1");
    if (!(value > 0)) throw Error("floor_log: value must be positive");
    if (value >= 1) return detail::floor_log_nonneg(base, value).t;
    Rational inv = Rational(1) / value;
    detail::Bracket br = detail::floor_log_nonneg(base, inv);
    return br.exact ? BigInt(-br.t) : BigInt(-(br.t + 1));
}

} // namespace itkit

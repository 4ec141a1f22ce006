#include "berkpatch/constants.hpp"

#include "berkpatch/point.hpp"

#include <stdexcept>

namespace berk {

namespace {

void check_monic(const std::vector<Rat>& P) {
    if (P.size() < 2 || P.back() != 1) throw std::invalid_argument("modulus must be monic of degree at least 1");
}

Rat determinant(std::vector<std::vector<Rat>> M) {
    Rat d(1);
    const size_t N = M.size();
    for (size_t col = 0; col < N; ++col) {
        size_t piv = col;
        while (piv < N && M[piv][col] == 0) ++piv;
        if (piv == N) return Rat(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            d = -d;
        }
        d *= M[col][col];
        Rat inv = Rat(1) / M[col][col];
        for (size_t row = col + 1; row < N; ++row) {
            if (M[row][col] == 0) continue;
            Rat fac = M[row][col] * inv;
            for (size_t k = col; k < N; ++k) M[row][k] -= fac * M[col][k];
        }
    }
    return d;
}

// Resultant via the Sylvester matrix, both inputs with exact (nonzero-leading) degree.
Rat sylvester_resultant(const PolyQ& f, const PolyQ& g) {
    const size_t m = f.size() - 1;
    const size_t n = g.size() - 1;
    const size_t N = m + n;
    std::vector<std::vector<Rat>> M(N, std::vector<Rat>(N, Rat(0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k <= m; ++k) M[j][j + k] = f[m - k];
    for (size_t j = 0; j < m; ++j)
        for (size_t k = 0; k <= n; ++k) M[n + j][j + k] = g[n - k];
    return determinant(M);
}

} // namespace

ResultantBound resultant_bound(const PrimeContext& ctx, const std::vector<Rat>& P, const NormValue& r) {
    check_monic(P);
    const size_t d = P.size() - 1;
    if (d < 2) throw std::invalid_argument("degree 1 has no discriminant data to bound");
    if (r.is_zero()) throw std::invalid_argument("ring radius must be positive");

    PolyQ deriv(d);
    for (size_t i = 0; i < d; ++i) deriv[i] = Rat((unsigned long)(i + 1)) * P[i + 1];
    // Monic P in characteristic zero: the derivative has exact degree d - 1.

    // The resultant against P(X) - t is a polynomial in t of degree d - 1; evaluate the
    // Sylvester determinant at d + 1 integer nodes and interpolate.
    std::vector<Rat> nodes, values;
    for (size_t k = 0; k <= d; ++k) {
        Rat t((unsigned long)k);
        PolyQ shifted = P;
        shifted[0] -= t;
        nodes.push_back(t);
        values.push_back(sylvester_resultant(shifted, deriv));
    }
    PolyQ res = lagrange_interpolate(nodes, values);
    if (res.empty()) throw std::logic_error("resultant of a monic polynomial and its derivative vanished");

    NormValue norm = eval_gauss_norm(ctx, res, GaussPoint::circle(Rat(0), r));
    RationalInterval box = norm_enclosure(ctx, norm, 24);
    Rat m = box.lo / 2;
    if (!(m > 0)) throw std::logic_error("resultant norm enclosure is not positive");
    return {std::move(res), std::move(m)};
}

NormComparisonConstants norm_constants(const PrimeContext& ctx, const std::vector<Rat>& P, const NormValue& r) {
    check_monic(P);
    const size_t d = P.size() - 1;
    if (r.is_zero()) throw std::invalid_argument("ring radius must be positive");

    NormComparisonConstants out;
    if (d == 1) {
        // X - c identifies the quotient with the base ring isometrically; every
        // constant in the chain degenerates to 1.
        out.vprime = RationalInterval::point(Rat(1));
        out.cprime = RationalInterval::point(Rat(1));
        out.C = RationalInterval::point(Rat(1));
        return out;
    }

    const unsigned prec = 24;
    // beta_0 = P(0) - T has circle norm max(|P(0)|, r); the other beta_i are the
    // scalar coefficients of P below the top.
    std::vector<NormValue> beta(d);
    beta[0] = norm_max(scalar_norm(ctx, P[0]), r);
    for (size_t i = 1; i < d; ++i) beta[i] = scalar_norm(ctx, P[i]);

    RationalInterval sum = RationalInterval::point(Rat(0));
    for (const auto& b : beta) sum = sum + norm_enclosure(ctx, b, prec);
    if (!(sum.lo > 0)) throw std::logic_error("coefficient norm sum enclosure is not positive");

    // The defining condition sum |beta_i| v' <= 1/2 is linear in v', so the extreme
    // admissible v' is the reciprocal of twice the sum.
    out.vprime = interval_recip(sum * Rat(2));
    out.cprime = interval_max(RationalInterval::point(Rat(2)), interval_pow(out.vprime, -(long)d) * Rat(2));

    NormValue vsecond = NormValue::zero_value();
    for (size_t i = 1; i < d; ++i) {
        if (beta[i].is_zero()) continue;
        vsecond = norm_max(vsecond, beta[i].pow_rat(Rat(1) / Rat((unsigned long)(d - i))));
    }
    Rat vsecond_hi(0);
    if (!vsecond.is_zero()) vsecond_hi = norm_enclosure(ctx, vsecond, prec).hi;
    out.s = std::max(out.vprime.hi, vsecond_hi);

    out.m = resultant_bound(ctx, P, r).m;

    // max over 1 <= i <= d-1 of s^-i sits at whichever end the sign of log s picks.
    Rat maxfac = out.s >= 1 ? Rat(1) / out.s : rat_pow(out.s, -(long)(d - 1));
    Rat factor = maxfac * Rat((unsigned long)(d * d)) * rat_pow(2 * out.s, (long)(d * d - d)) / out.m;
    out.C = interval_max(RationalInterval::point(Rat(1)), out.cprime * factor);
    return out;
}

} // namespace berk

#include "berkpatch/magnitude.hpp"

#include <cmath>
#include <stdexcept>

namespace berk {

namespace {

void add_factor(std::map<Int, LogExponent>& f, const Int& base, const LogExponent& e) {
    auto it = f.find(base);
    if (it == f.end()) {
        if (!e.is_zero()) f.emplace(base, e);
        return;
    }
    it->second = it->second + e;
    if (it->second.is_zero()) f.erase(it);
}

void factor_into(std::map<Int, LogExponent>& f, Int n, const Rat& expo) {
    if (n <= 0) throw std::domain_error("magnitude bases must be positive");
    if (n == 1) return;
    long k = remove_factors(n, Int(2), &n);
    if (k) add_factor(f, Int(2), {expo * k, Rat(0)});
    for (Int d = 3; d * d <= n && d < 1000000; d += 2) {
        long m = remove_factors(n, d, &n);
        if (m) add_factor(f, d, {expo * m, Rat(0)});
    }
    if (n > 1) {
        if (!mpz_probab_prime_p(n.backend().data(), 32))
            throw std::domain_error("magnitude base has a factor too large to split");
        add_factor(f, n, {expo, Rat(0)});
    }
}

} // namespace

Magnitude Magnitude::from_rational(const Rat& q) {
    if (q <= 0) throw std::domain_error("magnitude of a nonpositive rational");
    Magnitude m;
    factor_into(m.factors, rat_num(q), Rat(1));
    factor_into(m.factors, rat_den(q), Rat(-1));
    return m;
}

Magnitude Magnitude::from_norm(const PrimeContext& ctx, const NormValue& v) {
    if (v.is_zero()) throw std::domain_error("magnitude of a zero norm");
    Magnitude m;
    add_factor(m.factors, ctx.p, -v.e);
    return m;
}

Magnitude Magnitude::operator*(const Magnitude& o) const {
    Magnitude r = *this;
    for (const auto& [b, e] : o.factors) add_factor(r.factors, b, e);
    return r;
}

Magnitude Magnitude::inverse() const {
    Magnitude r;
    for (const auto& [b, e] : factors) r.factors.emplace(b, -e);
    return r;
}

Magnitude Magnitude::pow(const Rat& e) const {
    Magnitude r;
    if (e == 0) return r;
    for (const auto& [b, ex] : factors) r.factors.emplace(b, ex * e);
    return r;
}

int magnitude_compare(const Magnitude& x, const Magnitude& y) {
    Magnitude d = x / y;
    if (d.factors.empty()) return 0;
    bool all_rational = true;
    for (const auto& [b, e] : d.factors)
        if (!e.is_rational()) { all_rational = false; break; }
    if (all_rational) {
        // prod b^a_i vs 1 with rational a_i: clear denominators and compare integers.
        Int den(1);
        for (const auto& [b, e] : d.factors) den = lcm(den, rat_den(e.a));
        Int above(1), below(1);
        for (const auto& [b, e] : d.factors) {
            Int a = rat_num(e.a) * (den / rat_den(e.a));
            if (a > 0)
                above *= int_pow(b, (unsigned long)a);
            else
                below *= int_pow(b, (unsigned long)(-a));
        }
        if (above == below) return 0;
        return above > below ? 1 : -1;
    }
    std::vector<std::pair<Rat, LogExponent>> terms;
    for (const auto& [b, e] : d.factors) terms.emplace_back(Rat(b), e);
    int s = linear_log_form_sign(terms);
    if (s == 0) throw std::logic_error("distinct magnitudes failed to separate");
    return s;
}

int compare_norm_magnitude(const PrimeContext& ctx, const NormValue& v, const Magnitude& m) {
    if (v.is_zero()) return -1; // magnitudes are strictly positive
    return magnitude_compare(Magnitude::from_norm(ctx, v), m);
}

double magnitude_approx(const Magnitude& m) {
    double lg = 0;
    const double s2 = std::sqrt(2.0);
    for (const auto& [b, e] : m.factors) {
        double coeff = (double)e.a + s2 * (double)e.b;
        lg += coeff * std::log((double)Rat(b));
    }
    return std::exp(lg);
}

RationalInterval magnitude_enclosure(const Magnitude& m, unsigned k) {
    RationalInterval r = RationalInterval::point(Rat(1));
    for (const auto& [b, e] : m.factors) r = r * enclose_pow(Rat(b), e, k + 8);
    return r;
}

} // namespace berk

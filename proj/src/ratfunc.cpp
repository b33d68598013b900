#include "fqmzv/ratfunc.hpp"

namespace fqmzv {

void RatFunc::assign(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    if (num.is_zero()) {
        num_ = std::move(num);
        den_ = Poly::one(num_.field());
        return;
    }
    Poly g = Poly::gcd(num, den);
    if (!g.is_one()) {
        num = Poly::divmod(num, g).first;
        den = Poly::divmod(den, g).first;
    }
    uint16_t lead = den.leading();
    if (lead != 1) {
        uint16_t li = den.field()->inv(lead);
        num = num.scaled(li);
        den = den.scaled(li);
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    // cross-reduce first; keeps intermediate degrees down
    Poly g1 = Poly::gcd(a.num_, b.den_);
    Poly g2 = Poly::gcd(b.num_, a.den_);
    Poly n1 = g1.is_one() ? a.num_ : Poly::divmod(a.num_, g1).first;
    Poly d2 = g1.is_one() ? b.den_ : Poly::divmod(b.den_, g1).first;
    Poly n2 = g2.is_one() ? b.num_ : Poly::divmod(b.num_, g2).first;
    Poly d1 = g2.is_one() ? a.den_ : Poly::divmod(a.den_, g2).first;
    return RatFunc(n1 * n2, d1 * d2);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in k");
    return a * b.inverse();
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in k");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(uint64_t n) const {
    // numerator/denominator are already coprime; no gcd needed per square
    Poly n_ = num_.pow(n), d_ = den_.pow(n);
    RatFunc r;
    r.num_ = std::move(n_);
    r.den_ = std::move(d_);
    if (!r.den_.is_monic() && !r.den_.is_zero()) {
        uint16_t li = r.den_.field()->inv(r.den_.leading());
        r.num_ = r.num_.scaled(li);
        r.den_ = r.den_.scaled(li);
    }
    if (r.num_.is_zero()) r.den_ = Poly::one(num_.field());
    return r;
}

std::optional<VValuation> v_valuation(const RatFunc& x, const Poly& v) {
    if (x.is_zero()) return std::nullopt;
    long long n = 0;
    Poly num = x.num(), den = x.den();
    for (;;) {
        auto [q, r] = Poly::divmod(num, v);
        if (!r.is_zero()) break;
        num = std::move(q);
        ++n;
    }
    for (;;) {
        auto [q, r] = Poly::divmod(den, v);
        if (!r.is_zero()) break;
        den = std::move(q);
        --n;
    }
    return VValuation{n, RatFunc(std::move(num), std::move(den))};
}

std::optional<long long> v_val(const RatFunc& x, const Poly& v) {
    auto w = v_valuation(x, v);
    if (!w) return std::nullopt;
    return w->n;
}

}  // namespace fqmzv

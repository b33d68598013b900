#include "fqmzv/completions.hpp"

#include <algorithm>

namespace fqmzv {

bool compare_magnitude(long long val, unsigned place_degree, const MagnitudeBound& bound, bool strict) {
    // |x| = q^{-val*dv}; compare -val*dv against num/den by cross-multiplication.
    long long lhs = -val * static_cast<long long>(place_degree) * bound.den;
    return strict ? (lhs < bound.num) : (lhs <= bound.num);
}

// ---------------------------------------------------------------- InfSeries

InfSeries InfSeries::zero_to_precision(FieldPtr F, long long N) {
    InfSeries s;
    s.F_ = std::move(F);
    s.zero_ = true;
    s.N_ = N;
    return s;
}

InfSeries InfSeries::from_coeffs(FieldPtr F, long long v0, std::vector<uint16_t> c, long long N) {
    InfSeries s;
    s.F_ = std::move(F);
    s.zero_ = false;
    s.v0_ = v0;
    s.c_ = std::move(c);
    s.N_ = N;
    if (s.v0_ + static_cast<long long>(s.c_.size()) - 1 > N)
        s.c_.resize(static_cast<size_t>(N - s.v0_ + 1 > 0 ? N - s.v0_ + 1 : 0));
    s.normalize();
    return s;
}

void InfSeries::normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        zero_ = true;
        c_.clear();
        v0_ = 0;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long long>(lead));
        v0_ += static_cast<long long>(lead);
    }
    zero_ = false;
}

long long InfSeries::valuation() const {
    if (zero_) throw std::domain_error("valuation of a zero-to-precision series");
    return v0_;
}

uint16_t InfSeries::coeff(long long n) const {
    if (n > N_) throw std::out_of_range("coefficient beyond declared precision");
    if (zero_ || n < v0_ || n >= v0_ + static_cast<long long>(c_.size())) return 0;
    return c_[static_cast<size_t>(n - v0_)];
}

InfSeries operator+(const InfSeries& a, const InfSeries& b) {
    long long N = std::min(a.N_, b.N_);
    if (a.zero_ && b.zero_) return InfSeries::zero_to_precision(a.F_ ? a.F_ : b.F_, N);
    const FieldPtr& F = a.F_ ? a.F_ : b.F_;
    long long v0 = std::min(a.zero_ ? b.v0_ : a.v0_, b.zero_ ? a.v0_ : b.v0_);
    if (v0 > N) return InfSeries::zero_to_precision(F, N);
    std::vector<uint16_t> c(static_cast<size_t>(N - v0 + 1), 0);
    for (long long n = v0; n <= N; ++n)
        c[static_cast<size_t>(n - v0)] = F->add(a.coeff(n), b.coeff(n));
    return InfSeries::from_coeffs(F, v0, std::move(c), N);
}

InfSeries InfSeries::operator-() const {
    if (zero_) return *this;
    InfSeries r = *this;
    for (auto& x : r.c_) x = F_->neg(x);
    return r;
}

InfSeries operator-(const InfSeries& a, const InfSeries& b) { return a + (-b); }

InfSeries operator*(const InfSeries& a, const InfSeries& b) {
    const FieldPtr& F = a.F_ ? a.F_ : b.F_;
    if (a.zero_ || b.zero_) {
        // 0*x is zero wherever the product's claim reaches; the claim uses the
        // known valuation (or precision bound) of each factor.
        long long va = a.zero_ ? a.N_ + 1 : a.v0_;
        long long vb = b.zero_ ? b.N_ + 1 : b.v0_;
        long long N = std::min(a.N_ + vb, b.N_ + va);
        return InfSeries::zero_to_precision(F, N);
    }
    long long N = std::min(a.N_ + b.v0_, b.N_ + a.v0_);
    long long v0 = a.v0_ + b.v0_;
    if (v0 > N) return InfSeries::zero_to_precision(F, N);
    std::vector<uint16_t> c(static_cast<size_t>(N - v0 + 1), 0);
    const uint32_t q = F->q();
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        long long na = a.v0_ + static_cast<long long>(i);
        long long maxj = std::min<long long>(static_cast<long long>(b.c_.size()) - 1, N - na - b.v0_);
        if (q == 2) {
            for (long long j = 0; j <= maxj; ++j)
                c[static_cast<size_t>(na + b.v0_ + j - v0)] ^= b.c_[static_cast<size_t>(j)];
        } else {
            for (long long j = 0; j <= maxj; ++j) {
                if (b.c_[static_cast<size_t>(j)] == 0) continue;
                size_t k = static_cast<size_t>(na + b.v0_ + j - v0);
                c[k] = F->add(c[k], F->mul(a.c_[i], b.c_[static_cast<size_t>(j)]));
            }
        }
    }
    return InfSeries::from_coeffs(F, v0, std::move(c), N);
}

InfSeries InfSeries::inverse() const {
    if (zero_) throw std::domain_error("inverting a zero-to-precision series");
    // y = c0 theta^{-v0} (1 + t), relative length L = N - v0; 1/y known to the
    // same relative length: precision N - 2*v0.
    long long L = N_ - v0_;
    std::vector<uint16_t> r(static_cast<size_t>(L + 1), 0);
    uint16_t c0i = F_->inv(c_[0]);
    r[0] = c0i;
    for (long long n = 1; n <= L; ++n) {
        // coefficient of theta^{-n} in (tail * r), times -1/c0
        uint16_t acc = 0;
        long long kmax = std::min<long long>(n, static_cast<long long>(c_.size()) - 1);
        for (long long k = 1; k <= kmax; ++k)
            acc = F_->add(acc, F_->mul(c_[static_cast<size_t>(k)], r[static_cast<size_t>(n - k)]));
        r[static_cast<size_t>(n)] = F_->neg(F_->mul(acc, c0i));
    }
    return from_coeffs(F_, -v0_, std::move(r), N_ - 2 * v0_);
}

InfSeries operator/(const InfSeries& a, const InfSeries& b) {
    if (b.zero_) throw std::domain_error("division by a zero-to-precision series");
    return a * b.inverse();
}

InfSeries InfSeries::scaled(uint16_t c) const {
    if (zero_) return *this;
    if (c == 0) return zero_to_precision(F_, N_);
    InfSeries r = *this;
    for (auto& x : r.c_) x = F_->mul(x, c);
    return r;
}

InfSeries InfSeries::truncated(long long N) const {
    if (N >= N_) return *this;
    if (zero_) return zero_to_precision(F_, N);
    InfSeries r = *this;
    r.N_ = N;
    if (v0_ + static_cast<long long>(c_.size()) - 1 > N)
        r.c_.resize(static_cast<size_t>(std::max<long long>(0, N - v0_ + 1)));
    r.normalize();
    if (r.c_.empty()) return zero_to_precision(F_, N);
    return r;
}

bool InfSeries::is_zero_through(long long N) const {
    if (N_ < N) throw std::domain_error("precision too coarse to decide zero-through");
    if (zero_) return true;
    return v0_ > N;
}

InfSeries embed_inf(const RatFunc& x, long long N) { return embed_inf(x.num(), x.den(), N); }

InfSeries embed_inf(const Poly& num, const Poly& den, long long N) {
    const FieldPtr& F = den.field();
    if (den.is_zero()) throw std::domain_error("embedding with zero denominator");
    if (num.is_zero()) return InfSeries::zero_to_precision(F, N);
    // write num = theta^{dn} * (a0 + a1/theta + ...), den likewise, and divide
    // the coefficient streams.
    long long dn = num.degree_nonzero(), dd = den.degree_nonzero();
    long long v0 = dd - dn;
    long long L = N - v0;  // relative length needed
    if (L < 0) return InfSeries::zero_to_precision(F, N);
    const auto& nc = num.coeffs();
    const auto& dc = den.coeffs();
    auto stream = [](const std::vector<uint16_t>& c, long long k) -> uint16_t {
        // coefficient of theta^{deg-k}
        long long idx = static_cast<long long>(c.size()) - 1 - k;
        return idx >= 0 ? c[static_cast<size_t>(idx)] : 0;
    };
    std::vector<uint16_t> r(static_cast<size_t>(L + 1), 0);
    uint16_t d0i = F->inv(dc.back());
    for (long long n = 0; n <= L; ++n) {
        uint16_t acc = stream(nc, n);
        for (long long k = 1; k <= n; ++k) {
            uint16_t dk = stream(dc, k);
            if (dk) acc = F->sub(acc, F->mul(dk, r[static_cast<size_t>(n - k)]));
        }
        r[static_cast<size_t>(n)] = F->mul(acc, d0i);
    }
    return InfSeries::from_coeffs(F, v0, std::move(r), N);
}

SeriesMatch match_through(const InfSeries& a, const InfSeries& b, long long N) {
    InfSeries d = a - b;
    if (d.precision() < N) throw std::domain_error("operands too coarse for requested comparison");
    if (d.is_zero_through(N)) return {true, 0};
    return {false, d.valuation()};
}

// ---------------------------------------------------------------- Place

Place::Place(FieldPtr F, Poly v) : F_(std::move(F)), v_(std::move(v)) {
    if (!v_.is_monic()) throw std::invalid_argument("place polynomial must be monic");
    if (!irreducible_check(v_)) throw std::invalid_argument("place polynomial must be irreducible");
    dv_ = static_cast<unsigned>(v_.degree_nonzero());
    pows_.push_back(Poly::one(F_));
    pows_.push_back(v_);
}

const Poly& Place::v_pow(unsigned n) const {
    while (pows_.size() <= n) pows_.push_back(pows_.back() * v_);
    return pows_[n];
}

// ---------------------------------------------------------------- VAdicSeries

VAdicSeries VAdicSeries::zero_to_precision(PlacePtr P, long long M) {
    VAdicSeries s;
    s.P_ = std::move(P);
    s.zero_ = true;
    s.M_ = M;
    s.u_ = Poly::zero(s.P_->field());
    return s;
}

void VAdicSeries::normalize() {
    // reduce u mod v^{M+1-v0}, then strip v-powers into v0
    if (M_ - v0_ < 0) {
        zero_ = true;
        u_ = Poly::zero(P_->field());
        return;
    }
    u_ = Poly::divmod(u_, P_->v_pow(static_cast<unsigned>(M_ - v0_ + 1))).second;
    if (u_.is_zero()) {
        zero_ = true;
        return;
    }
    for (;;) {
        auto [q, r] = Poly::divmod(u_, P_->v());
        if (!r.is_zero()) break;
        u_ = std::move(q);
        ++v0_;
        if (v0_ > M_) {
            zero_ = true;
            u_ = Poly::zero(P_->field());
            return;
        }
    }
    zero_ = false;
}

long long VAdicSeries::valuation() const {
    if (zero_) throw std::domain_error("valuation of a zero-to-precision series");
    return v0_;
}

Poly VAdicSeries::digit(long long n) const {
    if (n > M_) throw std::out_of_range("digit beyond declared precision");
    if (zero_ || n < v0_) return Poly::zero(P_->field());
    Poly shifted = Poly::divmod(u_, P_->v_pow(static_cast<unsigned>(n - v0_))).first;
    return Poly::divmod(shifted, P_->v()).second;
}

VAdicSeries operator+(const VAdicSeries& a, const VAdicSeries& b) {
    const PlacePtr& P = a.P_ ? a.P_ : b.P_;
    long long M = std::min(a.M_, b.M_);
    if (a.zero_ && b.zero_) return VAdicSeries::zero_to_precision(P, M);
    VAdicSeries r;
    r.P_ = P;
    r.M_ = M;
    if (a.zero_ || b.zero_) {
        const VAdicSeries& x = a.zero_ ? b : a;
        r.zero_ = false;
        r.v0_ = x.v0_;
        r.u_ = x.u_;
        r.normalize();
        return r;
    }
    long long v0 = std::min(a.v0_, b.v0_);
    r.zero_ = false;
    r.v0_ = v0;
    r.u_ = a.u_ * P->v_pow(static_cast<unsigned>(a.v0_ - v0)) + b.u_ * P->v_pow(static_cast<unsigned>(b.v0_ - v0));
    r.normalize();
    return r;
}

VAdicSeries VAdicSeries::operator-() const {
    VAdicSeries r = *this;
    r.u_ = -r.u_;
    return r;
}

VAdicSeries operator-(const VAdicSeries& a, const VAdicSeries& b) { return a + (-b); }

VAdicSeries operator*(const VAdicSeries& a, const VAdicSeries& b) {
    const PlacePtr& P = a.P_ ? a.P_ : b.P_;
    long long va = a.zero_ ? a.M_ + 1 : a.v0_;
    long long vb = b.zero_ ? b.M_ + 1 : b.v0_;
    long long M = std::min(a.M_ + vb, b.M_ + va);
    if (a.zero_ || b.zero_) return VAdicSeries::zero_to_precision(P, M);
    VAdicSeries r;
    r.P_ = P;
    r.M_ = M;
    r.zero_ = false;
    r.v0_ = a.v0_ + b.v0_;
    r.u_ = a.u_ * b.u_;
    r.normalize();
    return r;
}

VAdicSeries VAdicSeries::inverse() const {
    if (zero_) throw std::domain_error("inverting a zero-to-precision v-adic series");
    // invert the unit mod v^{M+1-v0} by extended Euclid against v^K
    long long K = M_ - v0_ + 1;
    const Poly& vK = P_->v_pow(static_cast<unsigned>(K));
    // extended gcd(u, v^K): gcd is 1 since u is a unit
    Poly r0 = vK, r1 = u_;
    Poly t0 = Poly::zero(P_->field()), t1 = Poly::one(P_->field());
    while (!r1.is_zero()) {
        auto [q, r2] = Poly::divmod(r0, r1);
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 = gcd (a nonzero constant), t0 satisfies t0*u = r0 mod v^K
    uint16_t scale = P_->field()->inv(r0.coeffs()[0]);
    VAdicSeries out;
    out.P_ = P_;
    out.zero_ = false;
    out.v0_ = -v0_;
    out.M_ = M_ - 2 * v0_;
    out.u_ = t0.scaled(scale);
    out.normalize();
    return out;
}

VAdicSeries operator/(const VAdicSeries& a, const VAdicSeries& b) {
    if (b.zero_) throw std::domain_error("division by a zero-to-precision v-adic series");
    return a * b.inverse();
}

VAdicSeries VAdicSeries::scaled(uint16_t c) const {
    if (zero_) return *this;
    if (c == 0) return zero_to_precision(P_, M_);
    VAdicSeries r = *this;
    r.u_ = r.u_.scaled(c);
    return r;
}

VAdicSeries VAdicSeries::truncated(long long M) const {
    if (M >= M_) return *this;
    VAdicSeries r = *this;
    r.M_ = M;
    if (!r.zero_) r.normalize();
    return r;
}

VAdicSeries VAdicSeries::q_power() const {
    // (x + O(v^{M+1}))^q = x^q + O(v^{M+1 + (q-1) v0}): ultrametric binomial.
    if (zero_) {
        VAdicSeries r = *this;
        long long v_lb = M_ + 1;  // valuation lower bound
        r.M_ = static_cast<long long>(P_->field()->q()) * v_lb - 1;
        return r;
    }
    VAdicSeries r;
    r.P_ = P_;
    r.zero_ = false;
    r.v0_ = v0_ * P_->field()->q();
    r.M_ = M_ + (static_cast<long long>(P_->field()->q()) - 1) * v0_;
    r.u_ = u_.frobenius(1);
    r.normalize();
    return r;
}

VAdicSeries VAdicSeries::q_power(unsigned n) const {
    VAdicSeries r = *this;
    for (unsigned i = 0; i < n; ++i) r = r.q_power();
    return r;
}

bool VAdicSeries::is_zero_through(long long M) const {
    if (M_ < M) throw std::domain_error("precision too coarse to decide zero-through");
    if (zero_) return true;
    return v0_ > M;
}

VAdicSeries embed_v(const RatFunc& x, const PlacePtr& P, long long M) {
    return embed_v(x.num(), x.den(), P, M);
}

VAdicSeries embed_v(const Poly& num_in, const Poly& den_in, const PlacePtr& P, long long M) {
    if (den_in.is_zero()) throw std::domain_error("embedding with zero denominator");
    if (num_in.is_zero()) return VAdicSeries::zero_to_precision(P, M);
    long long v0 = 0;
    Poly num = num_in, den = den_in;
    for (;;) {
        auto [q, r] = Poly::divmod(num, P->v());
        if (!r.is_zero()) break;
        num = std::move(q);
        ++v0;
    }
    for (;;) {
        auto [q, r] = Poly::divmod(den, P->v());
        if (!r.is_zero()) break;
        den = std::move(q);
        --v0;
    }
    if (v0 > M) return VAdicSeries::zero_to_precision(P, M);
    long long K = M - v0 + 1;
    const Poly& vK = P->v_pow(static_cast<unsigned>(K));
    // num/den with both prime to v; invert den mod v^K
    Poly r0 = vK, r1 = den;
    Poly t0 = Poly::zero(P->field()), t1 = Poly::one(P->field());
    while (!r1.is_zero()) {
        auto [q, r2] = Poly::divmod(r0, r1);
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    Poly den_inv = t0.scaled(P->field()->inv(r0.coeffs()[0]));
    Poly u = Poly::divmod(num * den_inv, vK).second;
    VAdicSeries t = VAdicSeries::zero_to_precision(P, M);
    if (u.is_zero()) return t;  // cannot happen for valid input
    t.zero_ = false;
    t.v0_ = v0;
    t.u_ = std::move(u);
    t.M_ = M;
    t.normalize();
    return t;
}

SeriesMatch match_through(const VAdicSeries& a, const VAdicSeries& b, long long M) {
    VAdicSeries d = a - b;
    if (d.precision() < M) throw std::domain_error("operands too coarse for requested comparison");
    if (d.is_zero_through(M)) return {true, 0};
    return {false, d.valuation()};
}

}  // namespace fqmzv

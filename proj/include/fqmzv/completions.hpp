#ifndef FQMZV_COMPLETIONS_HPP
#define FQMZV_COMPLETIONS_HPP

#include "fqmzv/ratfunc.hpp"

namespace fqmzv {

/// A magnitude q^{a/b} kept as the exact rational a/b.  All domain
/// comparisons reduce to integer cross-multiplication; no floats anywhere.
struct MagnitudeBound {
    long long num = 0;
    long long den = 1;  // > 0
};

/// Decides |x| < q^{a/b} (strict) or <= (non-strict) from the valuation of x.
/// For the infinite place |x| = q^{-val}; at a finite place of degree dv the
/// base is q_v = q^{dv}, so |x| = q^{-val*dv}.
bool compare_magnitude(long long val, unsigned place_degree, const MagnitudeBound& bound, bool strict);

/// Truncated element of k_inf = F_q((1/theta)): sum_{n>=v0} c_n theta^{-n}
/// with coefficients known through exponent N ("correct modulo
/// theta^{-(N+1)}").  Zero below precision is a tagged state, never a value
/// with a fabricated valuation.
class InfSeries {
public:
    InfSeries() = default;

    static InfSeries zero_to_precision(FieldPtr F, long long N);
    /// From explicit coefficients c[0..] of theta^{-v0}, theta^{-(v0+1)}, ...
    static InfSeries from_coeffs(FieldPtr F, long long v0, std::vector<uint16_t> c, long long N);

    const FieldPtr& field() const { return F_; }
    bool is_zero_state() const { return zero_; }
    long long precision() const { return N_; }
    /// Valuation; only meaningful when not zero-state.
    long long valuation() const;
    /// Coefficient of theta^{-n}; n must be <= precision.
    uint16_t coeff(long long n) const;

    friend InfSeries operator+(const InfSeries& a, const InfSeries& b);
    friend InfSeries operator-(const InfSeries& a, const InfSeries& b);
    friend InfSeries operator*(const InfSeries& a, const InfSeries& b);
    friend InfSeries operator/(const InfSeries& a, const InfSeries& b);
    InfSeries operator-() const;
    InfSeries& operator+=(const InfSeries& b) { *this = *this + b; return *this; }
    InfSeries& operator-=(const InfSeries& b) { *this = *this - b; return *this; }

    InfSeries inverse() const;
    /// Scalar multiple by an F_q element.
    InfSeries scaled(uint16_t c) const;
    /// Restrict the precision claim to N (no-op if already coarser).
    InfSeries truncated(long long N) const;

    /// Proves x = 0 through theta^{-N}; requires precision >= N.
    bool is_zero_through(long long N) const;

private:
    void normalize();
    FieldPtr F_;
    bool zero_ = true;
    long long v0_ = 0;  // exponent of the first stored coefficient
    long long N_ = 0;   // last trusted exponent
    std::vector<uint16_t> c_;  // c_[i] = coefficient of theta^{-(v0_+i)}
};

/// Exact embedding of x in k into k_inf, correct through theta^{-N}.
InfSeries embed_inf(const RatFunc& x, long long N);
/// Same, for num/den given separately (no lowest-terms normalization).
InfSeries embed_inf(const Poly& num, const Poly& den, long long N);

/// Equality through theta^{-N}; both precisions must reach N.
/// Returns the first mismatching exponent when unequal.
struct SeriesMatch {
    bool equal;
    long long first_mismatch;  // meaningful when !equal
};
SeriesMatch match_through(const InfSeries& a, const InfSeries& b, long long N);

/// A finite place: a monic irreducible v together with cached powers.
class Place {
public:
    Place(FieldPtr F, Poly v);
    const FieldPtr& field() const { return F_; }
    const Poly& v() const { return v_; }
    unsigned degree() const { return dv_; }
    /// v^n (cached).
    const Poly& v_pow(unsigned n) const;

private:
    FieldPtr F_;
    Poly v_;
    unsigned dv_;
    mutable std::vector<Poly> pows_;
};
using PlacePtr = std::shared_ptr<const Place>;

/// Truncated element of k_v: v^{v0} * u with u in A, u not divisible by v,
/// known modulo v^{M+1}.  Digits (coefficients of v^n with deg < deg v) are
/// derived on demand.
class VAdicSeries {
public:
    VAdicSeries() = default;

    static VAdicSeries zero_to_precision(PlacePtr P, long long M);

    const PlacePtr& place() const { return P_; }
    bool is_zero_state() const { return zero_; }
    long long precision() const { return M_; }
    long long valuation() const;
    /// Unit part, reduced mod v^{M+1-v0}.
    const Poly& unit() const { return u_; }

    /// Digit a_n (deg < deg v) of v^n; n must lie in [valuation, precision].
    Poly digit(long long n) const;

    friend VAdicSeries operator+(const VAdicSeries& a, const VAdicSeries& b);
    friend VAdicSeries operator-(const VAdicSeries& a, const VAdicSeries& b);
    friend VAdicSeries operator*(const VAdicSeries& a, const VAdicSeries& b);
    friend VAdicSeries operator/(const VAdicSeries& a, const VAdicSeries& b);
    VAdicSeries operator-() const;
    VAdicSeries& operator+=(const VAdicSeries& b) { *this = *this + b; return *this; }
    VAdicSeries& operator-=(const VAdicSeries& b) { *this = *this - b; return *this; }

    VAdicSeries inverse() const;
    /// Scalar multiple by an F_q element.
    VAdicSeries scaled(uint16_t c) const;
    VAdicSeries truncated(long long M) const;
    /// x^q: the Frobenius power, with the exact precision this justifies.
    VAdicSeries q_power() const;
    /// x^{q^n}.
    VAdicSeries q_power(unsigned n) const;

    bool is_zero_through(long long M) const;

    /// Provably |x|_v < 1, i.e. valuation >= 1 (zero-state with M >= 0 counts).
    bool provably_small() const { return zero_ ? M_ >= 0 : v0_ >= 1; }

    friend VAdicSeries embed_v(const RatFunc& x, const PlacePtr& P, long long M);
    friend VAdicSeries embed_v(const Poly& num, const Poly& den, const PlacePtr& P, long long M);

private:
    void normalize();
    PlacePtr P_;
    bool zero_ = true;
    long long v0_ = 0;
    long long M_ = 0;
    Poly u_;  // reduced mod v^{M+1-v0}, not divisible by v
};

/// Exact embedding of x into k_v, correct through v^M.
VAdicSeries embed_v(const RatFunc& x, const PlacePtr& P, long long M);
/// Same, for num/den given separately (no lowest-terms normalization).
VAdicSeries embed_v(const Poly& num, const Poly& den, const PlacePtr& P, long long M);

SeriesMatch match_through(const VAdicSeries& a, const VAdicSeries& b, long long M);

}  // namespace fqmzv

#endif

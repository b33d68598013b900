#ifndef FQMZV_RATFUNC_HPP
#define FQMZV_RATFUNC_HPP

#include "fqmzv/poly.hpp"

namespace fqmzv {

/// Element of k = F_q(theta), kept in lowest terms with monic denominator,
/// so structural equality is mathematical equality.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}
    RatFunc(Poly num, Poly den) { assign(std::move(num), std::move(den)); }

    static RatFunc zero(const FieldPtr& F) { return RatFunc(Poly::zero(F)); }
    static RatFunc one(const FieldPtr& F) { return RatFunc(Poly::one(F)); }
    static RatFunc theta(const FieldPtr& F) { return RatFunc(Poly::theta(F)); }

    const FieldPtr& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integral() const { return den_.is_one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const { return RatFunc(-num_, den_); }
    RatFunc& operator+=(const RatFunc& b) { *this = *this + b; return *this; }
    RatFunc& operator-=(const RatFunc& b) { *this = *this - b; return *this; }
    RatFunc& operator*=(const RatFunc& b) { *this = *this * b; return *this; }
    RatFunc& operator/=(const RatFunc& b) { *this = *this / b; return *this; }

    RatFunc inverse() const;
    RatFunc pow(uint64_t n) const;
    RatFunc frobenius(unsigned n) const { return RatFunc(num_.frobenius(n), den_.frobenius(n)); }
    RatFunc scaled(uint16_t s) const { return RatFunc(num_.scaled(s), den_); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend bool operator<(const RatFunc& a, const RatFunc& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    /// val_inf(x) = deg den - deg num, so |x|_inf = q^{-val}; nullopt for 0.
    std::optional<long long> val_inf() const {
        if (is_zero()) return std::nullopt;
        return den_.degree_nonzero() - num_.degree_nonzero();
    }

private:
    void assign(Poly num, Poly den);
    Poly num_, den_;
};

struct VValuation {
    long long n;
    RatFunc unit;  // x = v^n * unit with v dividing neither part of unit
};

/// v-adic valuation with unit part; v monic irreducible, x != 0.
/// Returns nullopt for x = 0 (the "infinite valuation" signal).
std::optional<VValuation> v_valuation(const RatFunc& x, const Poly& v);

/// Valuation only (no unit part); nullopt for x = 0.
std::optional<long long> v_val(const RatFunc& x, const Poly& v);

}  // namespace fqmzv

#endif

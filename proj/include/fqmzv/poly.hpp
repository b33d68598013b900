#ifndef FQMZV_POLY_HPP
#define FQMZV_POLY_HPP

#include <optional>
#include <utility>

#include "fqmzv/field.hpp"

namespace fqmzv {

/// Element of A = F_q[theta].  Coefficients are field codes, index = degree,
/// normalized so the vector carries no trailing zeros (zero == empty vector).
///
/// deg(0) is a distinct sentinel (std::nullopt), never -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr F) : F_(std::move(F)) {}
    Poly(FieldPtr F, std::vector<uint16_t> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) { trim(); }

    static Poly zero(const FieldPtr& F) { return Poly(F); }
    static Poly one(const FieldPtr& F) { return Poly(F, {1}); }
    static Poly constant(const FieldPtr& F, uint16_t a) { return Poly(F, {a}); }
    static Poly theta(const FieldPtr& F) { return Poly(F, {0, 1}); }
    /// c * theta^n
    static Poly monomial(const FieldPtr& F, uint16_t c, size_t n);

    const FieldPtr& field() const { return F_; }
    const std::vector<uint16_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::optional<long long> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<long long>(c_.size()) - 1;
    }
    /// Degree of a polynomial known to be nonzero.
    long long degree_nonzero() const;
    uint16_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint16_t leading() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return a.c_ != b.c_; }
    /// Total order for use as a map key (degree, then coefficients).
    friend bool operator<(const Poly& a, const Poly& b);

    Poly scaled(uint16_t s) const;
    /// Quotient and remainder; b must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
    /// True iff b divides a exactly.
    static bool divides(const Poly& b, const Poly& a);

    Poly pow(uint64_t n) const;
    /// theta^n mod m (n may be huge), for irreducibility testing.
    static Poly theta_powmod(const FieldPtr& F, uint64_t n_base_q_exponent, const Poly& m);
    FqElem eval(const FqElem& x) const;

    /// Monic gcd.
    static Poly gcd(Poly a, Poly b);
    Poly monic() const;

    /// x -> x^{q^n}; over F_q this only spreads coefficients to q^n-fold
    /// exponents, since c^q = c for c in F_q.
    Poly frobenius(unsigned n) const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    FieldPtr F_;
    std::vector<uint16_t> c_;
};

/// True iff f (nonzero) is irreducible over F_q; Rabin's deterministic test.
bool irreducible_check(const Poly& f);

/// All q^d monic polynomials of degree exactly d, lexicographic on the
/// coefficient tuple (c_{d-1},...,c_0).
std::vector<Poly> monic_enumerate(const FieldPtr& F, unsigned d);

/// L_0 = 1, L_i = prod_{j=1..i} (theta - theta^{q^j}).
Poly L_factorial(const FieldPtr& F, unsigned i);
/// theta - theta^{q^i}  (i >= 1).
Poly L_factor(const FieldPtr& F, unsigned i);

/// C(n, k) mod p via Lucas.
uint16_t binomial_mod_p(uint64_t n, uint64_t k, uint32_t p);

}  // namespace fqmzv

#endif

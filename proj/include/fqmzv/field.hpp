#ifndef FQMZV_FIELD_HPP
#define FQMZV_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqmzv {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_q, q = p^e.
///
/// Elements are codes in [0, q).  For e = 1 the code is the residue itself;
/// for e > 1 the code packs the base-p digits of the representative
/// polynomial in the generator g, little-endian (code = sum c_i * p^i, where
/// the representative is sum c_i * g^i reduced mod the modulus).
class Field : public std::enable_shared_from_this<Field> {
public:
    // Canonical modulus: the lexicographically least monic irreducible of
    // degree e over F_p, coefficient tuple (c_{e-1},...,c_0) ascending.
    static FieldPtr make(uint32_t p, uint32_t e = 1);
    // Explicit modulus, given as F_p coefficients c_0..c_e (monic, degree e).
    static FieldPtr make(uint32_t p, uint32_t e, const std::vector<uint16_t>& modulus);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t q() const { return q_; }
    uint32_t characteristic() const { return p_; }
    /// Modulus coefficients c_0..c_e over F_p (empty when e = 1).
    const std::vector<uint16_t>& modulus() const { return modulus_; }

    uint16_t add(uint16_t a, uint16_t b) const;
    uint16_t sub(uint16_t a, uint16_t b) const;
    uint16_t neg(uint16_t a) const;
    uint16_t mul(uint16_t a, uint16_t b) const;
    uint16_t inv(uint16_t a) const;
    uint16_t pow(uint16_t a, uint64_t n) const;

    uint16_t zero() const { return 0; }
    uint16_t one() const { return 1; }
    /// The generator g (only meaningful for e > 1, where it is the class of x).
    uint16_t gen() const { return e_ > 1 ? static_cast<uint16_t>(p_) : 1; }

    /// x -> x^q is the identity on F_q; kept for intent at call sites.
    uint16_t frobenius_fix(uint16_t a) const { return a; }

    /// Embeds an integer (e.g. a binomial residue) through F_p.
    uint16_t from_int(int64_t n) const;

    std::string to_string(uint16_t a) const;  // "(g+1)" style for e > 1

    bool same(const Field& other) const { return this == &other; }

private:
    Field(uint32_t p, uint32_t e, std::vector<uint16_t> modulus);
    void build_tables();
    uint16_t mul_nocache(uint16_t a, uint16_t b) const;

    uint32_t p_, e_, q_;
    std::vector<uint16_t> modulus_;  // c_0..c_e over F_p; empty for e = 1
    bool tables_ = false;
    std::vector<uint16_t> mul_table_;  // q*q when tables_
    std::vector<uint16_t> inv_table_;  // q when tables_
};

bool is_prime_u32(uint32_t n);

/// A value of F_q tied to its field; convenience wrapper used at API
/// boundaries and in tests.  Bulk storage elsewhere keeps raw codes.
class FqElem {
public:
    FqElem() = default;
    FqElem(FieldPtr F, uint16_t code) : F_(std::move(F)), v_(code) {}

    const FieldPtr& field() const { return F_; }
    uint16_t code() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend FqElem operator+(const FqElem& a, const FqElem& b) { return {a.F_, a.F_->add(a.v_, b.v_)}; }
    friend FqElem operator-(const FqElem& a, const FqElem& b) { return {a.F_, a.F_->sub(a.v_, b.v_)}; }
    friend FqElem operator*(const FqElem& a, const FqElem& b) { return {a.F_, a.F_->mul(a.v_, b.v_)}; }
    friend FqElem operator/(const FqElem& a, const FqElem& b) { return {a.F_, a.F_->mul(a.v_, b.F_->inv(b.v_))}; }
    FqElem operator-() const { return {F_, F_->neg(v_)}; }
    friend bool operator==(const FqElem& a, const FqElem& b) { return a.v_ == b.v_; }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return a.v_ != b.v_; }

private:
    FieldPtr F_;
    uint16_t v_ = 0;
};

}  // namespace fqmzv

#endif

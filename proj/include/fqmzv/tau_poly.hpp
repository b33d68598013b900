#ifndef FQMZV_TAU_POLY_HPP
#define FQMZV_TAU_POLY_HPP

#include "fqmzv/matrix.hpp"
#include "fqmzv/ratfunc.hpp"

namespace fqmzv {

/// Finite tau-series with matrix coefficients over k: sum A_i tau^i in the
/// twisted ring Mat_d(k)[tau], with (sum a_i tau^i)(sum b_j tau^j)
/// = sum a_i b_j^{(i)} tau^{i+j}.
class TauMatPoly {
public:
    TauMatPoly() = default;
    TauMatPoly(FieldPtr F, size_t rows, size_t cols) : F_(std::move(F)), r_(rows), c_(cols) {}

    static TauMatPoly constant(FieldPtr F, Mat<RatFunc> A0);
    static TauMatPoly identity(FieldPtr F, size_t n);

    const FieldPtr& field() const { return F_; }
    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    /// tau-degree; nullopt for the zero element.
    std::optional<size_t> tau_degree() const {
        if (a_.empty()) return std::nullopt;
        return a_.size() - 1;
    }
    const Mat<RatFunc>& coeff(size_t i) const;
    Mat<RatFunc> coeff_or_zero(size_t i) const;
    void set_coeff(size_t i, Mat<RatFunc> A);

    friend TauMatPoly operator+(const TauMatPoly& a, const TauMatPoly& b);
    friend TauMatPoly operator-(const TauMatPoly& a, const TauMatPoly& b);
    friend TauMatPoly operator*(const TauMatPoly& a, const TauMatPoly& b);
    friend bool operator==(const TauMatPoly& a, const TauMatPoly& b);
    friend bool operator!=(const TauMatPoly& a, const TauMatPoly& b) { return !(a == b); }

    TauMatPoly scaled(uint16_t s) const;
    /// Product truncated to tau-degree <= bound (for composition checks).
    static TauMatPoly mul_truncated(const TauMatPoly& a, const TauMatPoly& b, size_t bound);

    /// Applies the operator to an exact point: sum A_i x^{(i)}.
    std::vector<RatFunc> apply(const std::vector<RatFunc>& x) const;

    Mat<RatFunc> zero_mat() const { return Mat<RatFunc>(r_, c_, RatFunc::zero(F_)); }

private:
    void trim();
    FieldPtr F_;
    size_t r_ = 0, c_ = 0;
    std::vector<Mat<RatFunc>> a_;
};

}  // namespace fqmzv

#endif

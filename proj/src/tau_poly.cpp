#include "fqmzv/tau_poly.hpp"

namespace fqmzv {

TauMatPoly TauMatPoly::constant(FieldPtr F, Mat<RatFunc> A0) {
    TauMatPoly t(F, A0.rows(), A0.cols());
    t.a_.push_back(std::move(A0));
    t.trim();
    return t;
}

TauMatPoly TauMatPoly::identity(FieldPtr F, size_t n) {
    return constant(F, Mat<RatFunc>::identity(n, RatFunc::zero(F), RatFunc::one(F)));
}

const Mat<RatFunc>& TauMatPoly::coeff(size_t i) const {
    if (i >= a_.size()) throw std::out_of_range("tau coefficient out of range");
    return a_[i];
}

Mat<RatFunc> TauMatPoly::coeff_or_zero(size_t i) const {
    if (i < a_.size()) return a_[i];
    return zero_mat();
}

void TauMatPoly::set_coeff(size_t i, Mat<RatFunc> A) {
    if (A.rows() != r_ || A.cols() != c_) throw std::invalid_argument("tau coefficient dimension mismatch");
    if (a_.size() <= i) a_.resize(i + 1, zero_mat());
    a_[i] = std::move(A);
    trim();
}

void TauMatPoly::trim() {
    while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
}

TauMatPoly operator+(const TauMatPoly& a, const TauMatPoly& b) {
    TauMatPoly r(a.F_, a.r_, a.c_);
    size_t n = std::max(a.a_.size(), b.a_.size());
    for (size_t i = 0; i < n; ++i) r.a_.push_back(a.coeff_or_zero(i) + b.coeff_or_zero(i));
    r.trim();
    return r;
}

TauMatPoly operator-(const TauMatPoly& a, const TauMatPoly& b) {
    TauMatPoly r(a.F_, a.r_, a.c_);
    size_t n = std::max(a.a_.size(), b.a_.size());
    for (size_t i = 0; i < n; ++i) r.a_.push_back(a.coeff_or_zero(i) - b.coeff_or_zero(i));
    r.trim();
    return r;
}

TauMatPoly operator*(const TauMatPoly& a, const TauMatPoly& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("tau product dimension mismatch");
    TauMatPoly r(a.F_, a.r_, b.c_);
    if (a.a_.empty() || b.a_.empty()) return r;
    Mat<RatFunc> zero(a.r_, b.c_, RatFunc::zero(a.F_));
    r.a_.assign(a.a_.size() + b.a_.size() - 1, zero);
    for (size_t i = 0; i < a.a_.size(); ++i) {
        if (a.a_[i].is_zero()) continue;
        for (size_t j = 0; j < b.a_.size(); ++j) {
            if (b.a_[j].is_zero()) continue;
            Mat<RatFunc> tw = b.a_[j].map([&](const RatFunc& x) { return x.frobenius(static_cast<unsigned>(i)); });
            r.a_[i + j] = r.a_[i + j] + a.a_[i] * tw;
        }
    }
    r.trim();
    return r;
}

TauMatPoly TauMatPoly::mul_truncated(const TauMatPoly& a, const TauMatPoly& b, size_t bound) {
    if (a.c_ != b.r_) throw std::invalid_argument("tau product dimension mismatch");
    TauMatPoly r(a.F_, a.r_, b.c_);
    if (a.a_.empty() || b.a_.empty()) return r;
    Mat<RatFunc> zero(a.r_, b.c_, RatFunc::zero(a.F_));
    r.a_.assign(std::min(a.a_.size() + b.a_.size() - 1, bound + 1), zero);
    for (size_t i = 0; i < a.a_.size() && i <= bound; ++i) {
        if (a.a_[i].is_zero()) continue;
        for (size_t j = 0; j < b.a_.size() && i + j <= bound; ++j) {
            if (b.a_[j].is_zero()) continue;
            Mat<RatFunc> tw = b.a_[j].map([&](const RatFunc& x) { return x.frobenius(static_cast<unsigned>(i)); });
            r.a_[i + j] = r.a_[i + j] + a.a_[i] * tw;
        }
    }
    r.trim();
    return r;
}

bool operator==(const TauMatPoly& a, const TauMatPoly& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_ || a.a_.size() != b.a_.size()) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
        if (a.a_[i] != b.a_[i]) return false;
    return true;
}

TauMatPoly TauMatPoly::scaled(uint16_t s) const {
    TauMatPoly r = *this;
    for (auto& A : r.a_) A = A.map([&](const RatFunc& x) { return x.scaled(s); });
    r.trim();
    return r;
}

std::vector<RatFunc> TauMatPoly::apply(const std::vector<RatFunc>& x) const {
    std::vector<RatFunc> y(r_, RatFunc::zero(F_));
    std::vector<RatFunc> xi = x;  // x^{(i)}
    for (size_t i = 0; i < a_.size(); ++i) {
        if (i > 0)
            for (auto& e : xi) e = e.frobenius(1);
        if (a_[i].is_zero()) continue;
        for (size_t row = 0; row < r_; ++row)
            for (size_t col = 0; col < c_; ++col) {
                const RatFunc& m = a_[i](row, col);
                if (m.is_zero() || xi[col].is_zero()) continue;
                y[row] = y[row] + m * xi[col];
            }
    }
    return y;
}

}  // namespace fqmzv

#ifndef FQMZV_MATRIX_HPP
#define FQMZV_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fqmzv {

/// Minimal dense matrix over an exact coefficient type.  The scalar type has
/// no default "zero" (it carries its field), so constructors take a zero
/// prototype.
template <class T>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(size_t r, size_t c, const T& zero) : r_(r), c_(c), a_(r * c, zero) {}

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    static Mat identity(size_t n, const T& zero, const T& one) {
        Mat m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        Mat r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + b.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat r = a;
        for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - b.a_[i];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix dimension mismatch");
        Mat r(a.r_, b.c_, a.a_.empty() ? (b.a_.empty() ? T{} : b.a_[0] - b.a_[0]) : a.a_[0] - a.a_[0]);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                const T& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < b.c_; ++j) {
                    const T& bkj = b(k, j);
                    if (bkj.is_zero()) continue;
                    r(i, j) = r(i, j) + aik * bkj;
                }
            }
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat scaled(const T& s) const {
        Mat r = *this;
        for (auto& x : r.a_) x = x * s;
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    template <class F>
    Mat map(F&& f) const {
        Mat r = *this;
        for (auto& x : r.a_) x = f(x);
        return r;
    }

    std::vector<T> apply(const std::vector<T>& x, const T& zero) const {
        if (x.size() != c_) throw std::invalid_argument("matrix/vector dimension mismatch");
        std::vector<T> y(r_, zero);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) {
                if ((*this)(i, j).is_zero() || x[j].is_zero()) continue;
                y[i] = y[i] + (*this)(i, j) * x[j];
            }
        return y;
    }

private:
    size_t r_, c_;
    std::vector<T> a_;
};

}  // namespace fqmzv

#endif

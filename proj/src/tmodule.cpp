#include "fqmzv/tmodule.hpp"

#include <sstream>

namespace fqmzv {

TModule::TModule(FieldPtr F, Index s, std::vector<RatFunc> u_prefix)
    : F_(std::move(F)), s_(std::move(s)), u_(std::move(u_prefix)) {
    const int r = s_.dep();
    if (static_cast<int>(u_.size()) == r) u_.pop_back();  // u_r never enters G
    if (static_cast<int>(u_.size()) != r - 1)
        throw std::invalid_argument("point prefix must carry dep(s)-1 (or dep(s)) entries");
    blocks_ = s_.block_profile();
    d_ = s_.total_dim();
    RatFunc zero = RatFunc::zero(F_), one = RatFunc::one(F_);
    N_ = Mat<RatFunc>(d_, d_, zero);
    E_ = Mat<RatFunc>(d_, d_, zero);
    // N: shift blocks on the diagonal
    int off = 0;
    for (int m = 0; m < r; ++m) {
        for (int j = 0; j + 1 < blocks_[m]; ++j) N_(off + j, off + j + 1) = one;
        off += blocks_[m];
    }
    // E: block (l, m), l <= m, bottom-left entry
    std::vector<int> start(r);
    off = 0;
    for (int m = 0; m < r; ++m) {
        start[m] = off;
        off += blocks_[m];
    }
    for (int l = 0; l < r; ++l)
        for (int m = l; m < r; ++m) {
            RatFunc val = one;
            for (int e = l; e < m; ++e) val = val * u_[static_cast<size_t>(e)];
            if ((m - l) % 2 == 1) val = -val;
            E_(start[l] + blocks_[l] - 1, start[m]) = val;
        }
    dt_ = Mat<RatFunc>(d_, d_, zero);
    for (int i = 0; i < d_; ++i) dt_(i, i) = RatFunc::theta(F_);
    dt_ = dt_ + N_;
    t_ = TauMatPoly(F_, d_, d_);
    t_.set_coeff(0, dt_);
    t_.set_coeff(1, E_);
}

int TModule::pos(int m, int j) const {
    int off = 0;
    for (int i = 0; i + 1 < m; ++i) off += blocks_[i];
    return off + j;
}

std::pair<int, int> TModule::block_of(int flat) const {
    int m = 1;
    int rest = flat;
    for (int b : blocks_) {
        if (rest <= b) return {m, rest};
        rest -= b;
        ++m;
    }
    throw std::out_of_range("coordinate out of range");
}

TModulePtr build_carlitz_tensor(const FieldPtr& F, int s) {
    if (s < 1) throw std::invalid_argument("tensor power must be >= 1");
    return std::make_shared<TModule>(F, Index({s}), std::vector<RatFunc>{});
}

TModulePtr build_G(const FieldPtr& F, const Index& s, const std::vector<RatFunc>& u) {
    return std::make_shared<TModule>(F, s, u);
}

std::vector<RatFunc> special_point(const FieldPtr& F, const Index& s, const std::vector<RatFunc>& u) {
    const int r = s.dep();
    if (static_cast<int>(u.size()) != r) throw std::invalid_argument("special point needs dep(s) entries");
    auto blocks = s.block_profile();
    std::vector<RatFunc> v(static_cast<size_t>(s.total_dim()), RatFunc::zero(F));
    int off = 0;
    for (int m = 0; m < r; ++m) {
        RatFunc val = RatFunc::one(F);
        for (int e = m; e < r; ++e) val = val * u[static_cast<size_t>(e)];
        if ((r - 1 - m) % 2 == 1) val = -val;
        v[static_cast<size_t>(off + blocks[m] - 1)] = val;
        off += blocks[m];
    }
    return v;
}

TauMatPoly fqt_action(const TModule& G, const Poly& a_of_t) {
    // Horner in the twisted ring: [a] = (...(a_m [t] + a_{m-1}) [t] + ...) + a_0.
    const FieldPtr& F = G.field();
    const auto& c = a_of_t.coeffs();
    TauMatPoly id = TauMatPoly::identity(F, static_cast<size_t>(G.dim()));
    if (c.empty()) return TauMatPoly(F, G.dim(), G.dim());
    TauMatPoly acc = id.scaled(c.back());
    for (size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * G.t_action();
        if (c[i]) acc = acc + id.scaled(c[i]);
    }
    return acc;
}

Mat<RatFunc> d_act(const TModule& G, const Poly& a_of_t) {
    const FieldPtr& F = G.field();
    const auto& c = a_of_t.coeffs();
    Mat<RatFunc> zero(G.dim(), G.dim(), RatFunc::zero(F));
    if (c.empty()) return zero;
    Mat<RatFunc> id = Mat<RatFunc>::identity(G.dim(), RatFunc::zero(F), RatFunc::one(F));
    Mat<RatFunc> acc = id.scaled(RatFunc(Poly::constant(F, c.back())));
    for (size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * G.dt();
        if (c[i]) acc = acc + id.scaled(RatFunc(Poly::constant(F, c[i])));
    }
    return acc;
}

std::vector<RatFunc> act(const TModule& G, const Poly& a_of_t, const std::vector<RatFunc>& x) {
    return fqt_action(G, a_of_t).apply(x);
}

std::vector<VAdicSeries> act_v(const TModule& G, const Poly& a_of_t, const std::vector<VAdicSeries>& x) {
    if (x.empty()) return {};
    const PlacePtr& P = x[0].place();
    // Horner over the point: z <- [t] z + c_j x keeps every intermediate a
    // truncated series, instead of materializing [a] whose tau^i coefficient
    // carries degree-q^i entries.
    auto mat_apply = [&](const Mat<RatFunc>& A, const std::vector<VAdicSeries>& z) {
        long long M = z[0].precision();
        for (const auto& e : z) M = std::min(M, e.precision());
        std::vector<VAdicSeries> w(z.size(), VAdicSeries::zero_to_precision(P, M));
        for (size_t row = 0; row < z.size(); ++row)
            for (size_t col = 0; col < z.size(); ++col) {
                const RatFunc& m = A(row, col);
                if (m.is_zero() || z[col].is_zero_state()) continue;
                long long need = z[col].precision() - std::min(0LL, v_val(m, P->v()).value_or(0));
                w[row] += embed_v(m.num(), m.den(), P, need) * z[col];
            }
        return w;
    };
    auto t_apply = [&](const std::vector<VAdicSeries>& z) {
        std::vector<VAdicSeries> zq = z;
        for (auto& e : zq) e = e.q_power();
        std::vector<VAdicSeries> w = mat_apply(G.dt(), z);
        std::vector<VAdicSeries> we = mat_apply(G.E(), zq);
        for (size_t i = 0; i < w.size(); ++i) w[i] += we[i];
        return w;
    };
    const auto& c = a_of_t.coeffs();
    long long M = x[0].precision();
    for (const auto& e : x) M = std::min(M, e.precision());
    std::vector<VAdicSeries> z(x.size(), VAdicSeries::zero_to_precision(P, M));
    if (c.empty()) return z;
    auto add_scaled = [&](std::vector<VAdicSeries>& acc, uint16_t s) {
        if (s == 0) return;
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += x[i].scaled(s);
    };
    add_scaled(z, c.back());
    for (size_t j = c.size() - 1; j-- > 0;) {
        z = t_apply(z);
        add_scaled(z, c[j]);
    }
    return z;
}

ShapeReport leading_shape_check(const FieldPtr& F, int s, int m) {
    TModulePtr C = build_carlitz_tensor(F, s);
    Poly tm = Poly::monomial(F, 1, static_cast<size_t>(m));
    TauMatPoly op = fqt_action(*C, tm);
    std::ostringstream os;
    size_t expected_deg = static_cast<size_t>((m + s - 1) / s);
    if (!op.tau_degree() || *op.tau_degree() != expected_deg) {
        os << "deg_tau [t^" << m << "]_" << s << " = "
           << (op.tau_degree() ? std::to_string(*op.tau_degree()) : "-inf") << ", expected " << expected_deg;
        return {false, os.str()};
    }
    int l = m % s;
    if (l == 0) l = s;
    const Mat<RatFunc>& lead = op.coeff(expected_deg);
    for (int i = 1; i <= s; ++i)
        for (int j = 1; j <= s; ++j) {
            const RatFunc& e = lead(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1));
            if (i == j + s - l) {
                if (!e.is_one()) {
                    os << "leading entry (" << i << "," << j << ") != 1 for s=" << s << ", m=" << m;
                    return {false, os.str()};
                }
            } else if (i < j + s - l) {
                if (!e.is_zero()) {
                    os << "leading entry (" << i << "," << j << ") != 0 for s=" << s << ", m=" << m;
                    return {false, os.str()};
                }
            }
        }
    os << "deg_tau = " << expected_deg << ", leading pattern ok (s=" << s << ", m=" << m << ")";
    return {true, os.str()};
}

ShapeReport congruence_check(const FieldPtr& F, int s, const Poly& v) {
    TModulePtr C = build_carlitz_tensor(F, s);
    unsigned dv = static_cast<unsigned>(v.degree_nonzero());
    // v(t)^s: same coefficients, variable t
    Poly vs = v.pow(static_cast<uint64_t>(s));
    TauMatPoly op = fqt_action(*C, vs);
    std::ostringstream os;
    if (!op.tau_degree() || *op.tau_degree() != dv) {
        os << "deg_tau [v(t)^" << s << "]_" << s << " != deg v";
        return {false, os.str()};
    }
    for (size_t i = 0; i <= dv; ++i) {
        Mat<RatFunc> A = op.coeff(i);
        for (size_t row = 0; row < A.rows(); ++row)
            for (size_t col = 0; col < A.cols(); ++col) {
                const RatFunc& e = A(row, col);
                if (!e.is_integral()) {
                    os << "non-integral entry in [v(t)^s]_s";
                    return {false, os.str()};
                }
                Poly residue = Poly::divmod(e.num(), v).second;
                bool want_one = (i == dv && row == col);
                Poly expect = want_one ? Poly::one(F) : Poly::zero(F);
                if (residue != expect) {
                    os << "tau^" << i << " coefficient (" << row + 1 << "," << col + 1 << ") != "
                       << (want_one ? "1" : "0") << " mod v";
                    return {false, os.str()};
                }
            }
    }
    os << "[v(t)^" << s << "]_" << s << " = tau^deg(v) mod v";
    return {true, os.str()};
}

namespace {

// min valuation over coordinates; nullopt when every coordinate is
// zero-to-precision (then only a lower bound M+1 is known).
std::optional<long long> vec_val(const std::vector<VAdicSeries>& x) {
    std::optional<long long> v;
    for (const auto& e : x)
        if (!e.is_zero_state()) v = v ? std::min(*v, e.valuation()) : e.valuation();
    return v;
}

long long vec_val_lower_bound(const std::vector<VAdicSeries>& x) {
    long long b = x[0].is_zero_state() ? x[0].precision() + 1 : x[0].valuation();
    for (const auto& e : x) b = std::min(b, e.is_zero_state() ? e.precision() + 1 : e.valuation());
    return b;
}

}  // namespace

ShrinkageReport shrinkage_check(const FieldPtr& F, int s, const PlacePtr& P,
                                const std::vector<VAdicSeries>& x0, long long target_val, int max_iter) {
    TModulePtr C = build_carlitz_tensor(F, s);
    Poly vs = P->v().pow(static_cast<uint64_t>(s));
    long long qv = 1;
    for (unsigned i = 0; i < P->degree(); ++i) qv *= F->q();

    std::vector<VAdicSeries> x = x0;
    long long cur = vec_val_lower_bound(x);
    if (cur < 1) return {false, false, -1, "input point is not v-adically small"};
    std::ostringstream os;
    for (int it = 1; it <= max_iter; ++it) {
        if (cur >= target_val) {
            os << "reached valuation >= " << target_val << " after " << it - 1 << " iterations";
            return {true, false, it - 1, os.str()};
        }
        std::vector<VAdicSeries> y = act_v(*C, vs, x);
        // |y| <= max(|x|^{q_v}, |x|/q_v) reads val(y) >= min(q_v*val(x), val(x)+1)
        // in val_v units (|.|_v = q_v^{-val}).
        long long bound = std::min(cur * qv, cur + 1);
        long long yval = vec_val_lower_bound(y);
        auto exact = vec_val(y);
        if (exact && *exact < bound) {
            os << "norm bound violated: val " << *exact << " < " << bound;
            return {false, false, -1, os.str()};
        }
        if (!exact && yval < bound) {
            os << "precision too coarse to certify the norm bound at iteration " << it;
            return {false, true, -1, os.str()};
        }
        x = std::move(y);
        cur = yval;
    }
    if (cur >= target_val) return {true, false, max_iter, "reached target at the last iteration"};
    os << "valuation " << cur << " after " << max_iter << " iterations, target " << target_val;
    return {false, false, -1, os.str()};
}

}  // namespace fqmzv

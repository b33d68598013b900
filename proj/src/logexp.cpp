#include "fqmzv/logexp.hpp"

#include <sstream>

namespace fqmzv {

namespace {

// c_i = theta - theta^{q^i} as an exact element of k.
RatFunc c_factor(const FieldPtr& F, int i) { return RatFunc(L_factor(F, static_cast<unsigned>(i))); }

// next flat index downward within the same block, or -1 (0-based flat).
int below(const TModule& G, int a) {
    auto [m, j] = G.block_of(a + 1);
    return j < G.blocks()[static_cast<size_t>(m - 1)] ? a + 1 : -1;
}

// previous flat index within the same block, or -1 (0-based flat).
int left(const TModule& G, int b) {
    auto [m, j] = G.block_of(b + 1);
    return j > 1 ? b - 1 : -1;
}

}  // namespace

Mat<RatFunc> solve_sylvester(const TModule& G, const RatFunc& c, const Mat<RatFunc>& B) {
    const int d = G.dim();
    Mat<RatFunc> X(d, d, RatFunc::zero(G.field()));
    // c X[a][b] = B[a][b] - X[a+][b] + X[a][b-]: rows bottom-up, columns
    // left-to-right; within each block larger flat index = larger inner index,
    // so plain descending/ascending flat order respects the dependencies.
    for (int a = d - 1; a >= 0; --a) {
        for (int b = 0; b < d; ++b) {
            RatFunc rhs = B(a, b);
            int ap = below(G, a);
            if (ap >= 0) rhs = rhs - X(ap, b);
            int bl = left(G, b);
            if (bl >= 0) rhs = rhs + X(a, bl);
            X(a, b) = rhs / c;
        }
    }
    return X;
}

Mat<RatFunc> solve_sylvester_resolvent(const TModule& G, const RatFunc& c, const Mat<RatFunc>& B) {
    const int d = G.dim();
    Mat<RatFunc> acc(d, d, RatFunc::zero(G.field()));
    Mat<RatFunc> term = B;  // ad_N^l(B)
    RatFunc cpow = c;       // c^{l+1}
    for (int l = 0; l <= 2 * d - 2; ++l) {
        Mat<RatFunc> contrib = term.map([&](const RatFunc& x) { return x / cpow; });
        acc = (l % 2 == 0) ? acc + contrib : acc - contrib;
        if (l < 2 * d - 2) {
            term = G.N() * term - term * G.N();
            if (term.is_zero()) break;
            cpow = cpow * c;
        }
    }
    return acc;
}

LogCoeffs::LogCoeffs(TModulePtr G) : G_(std::move(G)) {
    P_.push_back(Mat<RatFunc>::identity(G_->dim(), RatFunc::zero(G_->field()), RatFunc::one(G_->field())));
    std::vector<RatFunc> row0(static_cast<size_t>(G_->dim()), RatFunc::zero(G_->field()));
    row0[static_cast<size_t>(G_->wt() - 1)] = RatFunc::one(G_->field());
    rows_.push_back(std::move(row0));
}

const Mat<RatFunc>& LogCoeffs::matrix(int i) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(P_.size()) <= i) {
        int n = static_cast<int>(P_.size());
        Mat<RatFunc> Etw = G_->E().map([&](const RatFunc& x) { return x.frobenius(static_cast<unsigned>(n - 1)); });
        Mat<RatFunc> B = P_.back() * Etw;
        P_.push_back(solve_sylvester(*G_, c_factor(G_->field(), n), B));
    }
    return P_[static_cast<size_t>(i)];
}

const std::vector<RatFunc>& LogCoeffs::wt_row(int i) {
    std::lock_guard<std::mutex> lock(mu_);
    const int d = G_->dim();
    while (static_cast<int>(rows_.size()) <= i) {
        int n = static_cast<int>(rows_.size());
        const std::vector<RatFunc>& prev = rows_.back();
        // B_row = prev * E^{(n-1)}; E has entries only at ((l,d_l), (m,1))
        std::vector<RatFunc> Brow(static_cast<size_t>(d), RatFunc::zero(G_->field()));
        const int r = G_->index().dep();
        for (int m = 1; m <= r; ++m) {
            RatFunc acc = RatFunc::zero(G_->field());
            for (int l = 1; l <= m; ++l) {
                const RatFunc& e = G_->E()(static_cast<size_t>(G_->pos(l, G_->blocks()[static_cast<size_t>(l - 1)]) - 1),
                                           static_cast<size_t>(G_->pos(m, 1) - 1));
                if (e.is_zero()) continue;
                const RatFunc& p = prev[static_cast<size_t>(G_->pos(l, G_->blocks()[static_cast<size_t>(l - 1)]) - 1)];
                if (p.is_zero()) continue;
                acc = acc + p * e.frobenius(static_cast<unsigned>(n - 1));
            }
            Brow[static_cast<size_t>(G_->pos(m, 1) - 1)] = acc;
        }
        // the wt row is the bottom of block 1, so the row recursion closes:
        // row[b] = (Brow[b] + row[b-]) / c
        RatFunc c = c_factor(G_->field(), n);
        std::vector<RatFunc> row(static_cast<size_t>(d), RatFunc::zero(G_->field()));
        for (int b = 0; b < d; ++b) {
            RatFunc rhs = Brow[static_cast<size_t>(b)];
            int bl = left(*G_, b);
            if (bl >= 0) rhs = rhs + row[static_cast<size_t>(bl)];
            row[static_cast<size_t>(b)] = rhs / c;
        }
        rows_.push_back(std::move(row));
    }
    return rows_[static_cast<size_t>(i)];
}

ExpCoeffs::ExpCoeffs(TModulePtr G) : G_(std::move(G)) {
    Q_.push_back(Mat<RatFunc>::identity(G_->dim(), RatFunc::zero(G_->field()), RatFunc::one(G_->field())));
}

const Mat<RatFunc>& ExpCoeffs::matrix(int i) {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(Q_.size()) <= i) {
        int n = static_cast<int>(Q_.size());
        // Q_n (theta^{q^n} I + N) = (theta I + N) Q_n + E Q_{n-1}^{(1)}
        // rearranges to c Q_n + N Q_n - Q_n N = -(E Q_{n-1}^{(1)}).
        Mat<RatFunc> Qtw = Q_.back().map([](const RatFunc& x) { return x.frobenius(1); });
        Mat<RatFunc> B = G_->E() * Qtw;
        Mat<RatFunc> negB = B.map([](const RatFunc& x) { return -x; });
        Q_.push_back(solve_sylvester(*G_, c_factor(G_->field(), n), negB));
    }
    return Q_[static_cast<size_t>(i)];
}

std::vector<RatFunc> wt_row_oracle(const TModule& G, int i) {
    const FieldPtr& F = G.field();
    const Index& s = G.index();
    const int r = s.dep();
    const auto& dblk = G.blocks();
    std::vector<RatFunc> row(static_cast<size_t>(G.dim()), RatFunc::zero(F));
    RatFunc Li(L_factorial(F, static_cast<unsigned>(i)));
    RatFunc cfac = i == 0 ? RatFunc::zero(F) : RatFunc(L_factor(F, static_cast<unsigned>(i)));
    // block 1: y_{1,j} = (theta - theta^{q^i})^{d_1 - j} / L_i^{d_1}
    for (int j = 1; j <= dblk[0]; ++j) {
        RatFunc numer = (j == dblk[0]) ? RatFunc::one(F) : cfac.pow(static_cast<uint64_t>(dblk[0] - j));
        if (i == 0 && j < dblk[0]) numer = RatFunc::zero(F);  // 0^{positive}
        row[static_cast<size_t>(G.pos(1, j) - 1)] = numer / Li.pow(static_cast<uint64_t>(dblk[0]));
    }
    // blocks m >= 2: (-1)^{m-1} (theta-theta^{q^i})^{d_m-j} *
    //   sum_{0 <= i_1 <= ... <= i_{m-1} < i} prod u_e^{q^{i_e}} / L_{i_e}^{s_e} / L_i^{d_m}
    const auto& u = G.u_prefix();
    for (int m = 2; m <= r; ++m) {
        // enumerate weakly increasing tuples of length m-1 with entries < i
        RatFunc tuple_sum = RatFunc::zero(F);
        std::vector<int> tup(static_cast<size_t>(m - 1), 0);
        if (i > 0) {
            for (;;) {
                RatFunc term = RatFunc::one(F);
                for (int e = 0; e < m - 1; ++e) {
                    RatFunc ue = u[static_cast<size_t>(e)];
                    term = term * ue.frobenius(static_cast<unsigned>(tup[static_cast<size_t>(e)])) /
                           RatFunc(L_factorial(F, static_cast<unsigned>(tup[static_cast<size_t>(e)])))
                               .pow(static_cast<uint64_t>(s[e]));
                }
                tuple_sum = tuple_sum + term;
                // next weakly increasing tuple bounded by i-1: bump the
                // rightmost position below the cap, entries to its right
                // restart at the bumped value
                int k = m - 2;
                while (k >= 0 && tup[static_cast<size_t>(k)] == i - 1) --k;
                if (k < 0) break;
                ++tup[static_cast<size_t>(k)];
                for (int t = k + 1; t <= m - 2; ++t) tup[static_cast<size_t>(t)] = tup[static_cast<size_t>(k)];
            }
        }
        for (int j = 1; j <= dblk[static_cast<size_t>(m - 1)]; ++j) {
            int dm = dblk[static_cast<size_t>(m - 1)];
            RatFunc numer = (j == dm) ? RatFunc::one(F) : cfac.pow(static_cast<uint64_t>(dm - j));
            if (i == 0 && j < dm) numer = RatFunc::zero(F);
            RatFunc val = numer * tuple_sum / Li.pow(static_cast<uint64_t>(dm));
            if ((m - 1) % 2 == 1) val = -val;
            row[static_cast<size_t>(G.pos(m, j) - 1)] = val;
        }
    }
    return row;
}

TauMatPoly log_operator(LogCoeffs& L, int order) {
    TauMatPoly op(L.module()->field(), L.module()->dim(), L.module()->dim());
    for (int i = 0; i <= order; ++i) op.set_coeff(static_cast<size_t>(i), L.matrix(i));
    return op;
}

TauMatPoly exp_operator(ExpCoeffs& E, int order) {
    TauMatPoly op(E.module()->field(), E.module()->dim(), E.module()->dim());
    for (int i = 0; i <= order; ++i) op.set_coeff(static_cast<size_t>(i), E.matrix(i));
    return op;
}

// ------------------------------------------------------------------ eval

namespace {

// scaled weight W_{(m,j)} = (q-1) j + d_m of a flat coordinate (0-based).
long long coord_weight(const TModule& G, int b) {
    auto [m, j] = G.block_of(b + 1);
    return static_cast<long long>(G.field()->q() - 1) * j + G.blocks()[static_cast<size_t>(m - 1)];
}

void check_inf_module_condition(const TModule& G) {
    const long long qm1 = G.field()->q() - 1;
    for (size_t e = 0; e < G.u_prefix().size(); ++e) {
        const RatFunc& u = G.u_prefix()[e];
        if (u.is_zero()) continue;
        long long lhs = qm1 * *u.val_inf() + static_cast<long long>(G.index()[static_cast<int>(e)]) * G.field()->q();
        if (lhs < 0) {
            std::ostringstream os;
            os << "module datum u_" << e + 1 << " violates |u|_inf <= q^{s q/(q-1)}: "
               << "(q-1)*val=" << qm1 * *u.val_inf() << " < " << -static_cast<long long>(G.index()[static_cast<int>(e)]) * G.field()->q();
            throw DomainViolation(os.str());
        }
    }
}

// min over nonzero coordinates of (q-1) val(x_b) + W_b; throws unless all > 0.
long long inf_point_gap(const TModule& G, const std::vector<RatFunc>& x) {
    const long long qm1 = G.field()->q() - 1;
    long long gap = -1;
    bool any = false;
    for (int b = 0; b < G.dim(); ++b) {
        if (x[static_cast<size_t>(b)].is_zero()) continue;
        long long g = qm1 * *x[static_cast<size_t>(b)].val_inf() + coord_weight(G, b);
        if (g <= 0) {
            auto [m, j] = G.block_of(b + 1);
            std::ostringstream os;
            os << "coordinate (" << m << "," << j << ") violates |x| < q^{-(d_m-j)+d_m q/(q-1)}: "
               << "(q-1)*val + W = " << g << " <= 0";
            throw DomainViolation(os.str());
        }
        gap = any ? std::min(gap, g) : g;
        any = true;
    }
    return any ? gap : -1;  // -1: the point is zero
}

}  // namespace

InfLogResult eval_log_inf(LogCoeffs& L, const std::vector<RatFunc>& x, long long N) {
    const TModule& G = *L.module();
    if (static_cast<int>(x.size()) != G.dim()) throw std::invalid_argument("point dimension mismatch");
    check_inf_module_condition(G);
    InfLogResult out;
    out.terms_used = 0;
    out.coords.assign(x.size(), InfSeries::zero_to_precision(G.field(), N));
    long long gap = inf_point_gap(G, x);
    if (gap < 0) return out;  // exact zero point
    long long Wmax = 0;
    for (int b = 0; b < G.dim(); ++b) Wmax = std::max(Wmax, coord_weight(G, b));
    const long long qm1 = G.field()->q() - 1;
    std::vector<RatFunc> xi = x;
    for (int i = 0;; ++i) {
        if (i > 0)
            for (auto& e : xi) e = e.frobenius(1);
        // every coordinate of P_i x^{(i)} has (q-1) val >= q^i gap - Wmax
        long long qi_gap = gap;
        bool overflow = false;
        for (int t = 0; t < i; ++t) {
            if (qi_gap > (1LL << 60) / static_cast<long long>(G.field()->q())) {
                overflow = true;
                break;
            }
            qi_gap *= G.field()->q();
        }
        if (overflow || qi_gap - Wmax > N * qm1) break;
        const Mat<RatFunc>& Pi = L.matrix(i);
        for (int a = 0; a < G.dim(); ++a) {
            RatFunc acc = RatFunc::zero(G.field());
            for (int b = 0; b < G.dim(); ++b) {
                const RatFunc& p = Pi(static_cast<size_t>(a), static_cast<size_t>(b));
                if (p.is_zero() || xi[static_cast<size_t>(b)].is_zero()) continue;
                acc = acc + p * xi[static_cast<size_t>(b)];
            }
            if (!acc.is_zero()) out.coords[static_cast<size_t>(a)] += embed_inf(acc, N);
        }
        out.terms_used = i + 1;
    }
    return out;
}

InfSeries eval_log_inf_wt(LogCoeffs& L, const std::vector<RatFunc>& x, long long N) {
    const TModule& G = *L.module();
    if (static_cast<int>(x.size()) != G.dim()) throw std::invalid_argument("point dimension mismatch");
    check_inf_module_condition(G);
    InfSeries sum = InfSeries::zero_to_precision(G.field(), N);
    long long gap = inf_point_gap(G, x);
    if (gap < 0) return sum;
    const long long qm1 = G.field()->q() - 1;
    const long long Wwt = coord_weight(G, G.wt() - 1);
    std::vector<RatFunc> xi = x;
    for (int i = 0;; ++i) {
        if (i > 0)
            for (auto& e : xi) e = e.frobenius(1);
        long long qi_gap = gap;
        bool overflow = false;
        for (int t = 0; t < i; ++t) {
            if (qi_gap > (1LL << 60) / static_cast<long long>(G.field()->q())) {
                overflow = true;
                break;
            }
            qi_gap *= G.field()->q();
        }
        if (overflow || qi_gap - Wwt > N * qm1) break;
        const std::vector<RatFunc>& row = L.wt_row(i);
        RatFunc acc = RatFunc::zero(G.field());
        for (int b = 0; b < G.dim(); ++b) {
            const RatFunc& p = row[static_cast<size_t>(b)];
            if (p.is_zero() || xi[static_cast<size_t>(b)].is_zero()) continue;
            acc = acc + p * xi[static_cast<size_t>(b)];
        }
        if (!acc.is_zero()) sum += embed_inf(acc, N);
    }
    return sum;
}

namespace {

void check_v_module_condition(const TModule& G, const PlacePtr& P) {
    for (size_t e = 0; e < G.u_prefix().size(); ++e) {
        const RatFunc& u = G.u_prefix()[e];
        if (u.is_zero()) continue;
        if (*v_val(u, P->v()) < 0) {
            std::ostringstream os;
            os << "module datum u_" << e + 1 << " is not v-integral";
            throw DomainViolation(os.str());
        }
    }
}

long long v_point_val(const TModule& G, const std::vector<RatFunc>& x, const PlacePtr& P) {
    long long x0 = -1;
    bool any = false;
    for (int b = 0; b < G.dim(); ++b) {
        if (x[static_cast<size_t>(b)].is_zero()) continue;
        long long v = *v_val(x[static_cast<size_t>(b)], P->v());
        if (v < 1) {
            auto [m, j] = G.block_of(b + 1);
            std::ostringstream os;
            os << "coordinate (" << m << "," << j << ") violates |x|_v < 1 (val = " << v << ")";
            throw DomainViolation(os.str());
        }
        x0 = any ? std::min(x0, v) : v;
        any = true;
    }
    return any ? x0 : -1;
}

// Decides term inclusion for the v-adic tail: returns 0 = include,
// 1 = skip (provably beyond precision), 2 = stop (all later terms beyond).
int v_term_disposition(long long q, long long x0, long long K, unsigned dv, long long M, int i) {
    long long qi = 1;
    for (int t = 0; t < i; ++t) {
        if (qi > (1LL << 60) / q) return 2;  // enormous valuation, and growing
        qi *= q;
    }
    long long bound = qi * x0 - K * (i / static_cast<int>(dv));
    if (bound <= M) return 0;
    // beyond precision; stop only once the bound is provably monotone upward
    if (qi * (q - 1) * x0 > K) return 2;
    return 1;
}

}  // namespace

namespace {

// the list of term indices the tail rule admits, in order
std::vector<int> v_included_terms(const TModule& G, const PlacePtr& P, long long x0, long long M) {
    const long long K = 2 * static_cast<long long>(G.max_block()) - 1;
    std::vector<int> included;
    for (int i = 0;; ++i) {
        int disp = v_term_disposition(G.field()->q(), x0, K, P->degree(), M, i);
        if (disp == 2) return included;
        if (disp == 0) included.push_back(i);
    }
}

// The point is embedded once at a padded precision and Frobenius powers are
// taken inside the completion, keeping all polynomial sizes bounded by the
// precision; the exact path would drag degree-q^i numerators through every
// dot product.
struct VPointTower {
    std::vector<VAdicSeries> y;
    int level = 0;

    VPointTower(const std::vector<RatFunc>& x, const PlacePtr& P, long long prec) {
        y.reserve(x.size());
        for (const auto& e : x) y.push_back(embed_v(e, P, prec));
    }
    void raise_to(int i) {
        for (; level < i; ++level)
            for (auto& e : y) e = e.q_power();
    }
};

}  // namespace

VLogResult eval_log_v(LogCoeffs& L, const std::vector<RatFunc>& x, const PlacePtr& P, long long M) {
    const TModule& G = *L.module();
    if (static_cast<int>(x.size()) != G.dim()) throw std::invalid_argument("point dimension mismatch");
    check_v_module_condition(G, P);
    VLogResult out;
    out.terms_used = 0;
    out.coords.assign(x.size(), VAdicSeries::zero_to_precision(P, M));
    long long x0 = v_point_val(G, x, P);
    if (x0 < 0) return out;
    std::vector<int> included = v_included_terms(G, P, x0, M);
    if (included.empty()) return out;
    const long long K = 2 * static_cast<long long>(G.max_block()) - 1;
    VPointTower tower(x, P, M + K * (included.back() / static_cast<int>(P->degree())) + 1);
    for (int i : included) {
        tower.raise_to(i);
        const Mat<RatFunc>& Pi = L.matrix(i);
        for (int a = 0; a < G.dim(); ++a) {
            VAdicSeries acc = VAdicSeries::zero_to_precision(P, M);
            for (int b = 0; b < G.dim(); ++b) {
                const RatFunc& p = Pi(static_cast<size_t>(a), static_cast<size_t>(b));
                if (p.is_zero() || tower.y[static_cast<size_t>(b)].is_zero_state()) continue;
                acc += (embed_v(p.num(), p.den(), P, M) * tower.y[static_cast<size_t>(b)]).truncated(M);
            }
            out.coords[static_cast<size_t>(a)] += acc;
        }
        out.terms_used = i + 1;
    }
    return out;
}

VAdicSeries eval_log_v_wt(LogCoeffs& L, const std::vector<RatFunc>& x, const PlacePtr& P, long long M) {
    const TModule& G = *L.module();
    if (static_cast<int>(x.size()) != G.dim()) throw std::invalid_argument("point dimension mismatch");
    check_v_module_condition(G, P);
    VAdicSeries sum = VAdicSeries::zero_to_precision(P, M);
    long long x0 = v_point_val(G, x, P);
    if (x0 < 0) return sum;
    std::vector<int> included = v_included_terms(G, P, x0, M);
    if (included.empty()) return sum;
    const long long K = 2 * static_cast<long long>(G.max_block()) - 1;
    VPointTower tower(x, P, M + K * (included.back() / static_cast<int>(P->degree())) + 1);
    for (int i : included) {
        tower.raise_to(i);
        const std::vector<RatFunc>& row = L.wt_row(i);
        for (int b = 0; b < G.dim(); ++b) {
            const RatFunc& p = row[static_cast<size_t>(b)];
            if (p.is_zero() || tower.y[static_cast<size_t>(b)].is_zero_state()) continue;
            sum += (embed_v(p.num(), p.den(), P, M) * tower.y[static_cast<size_t>(b)]).truncated(M);
        }
    }
    return sum;
}

namespace {

// valuation floor of an embedded point; throws on |x|_v >= 1, returns -1 when
// every coordinate is a zero state, raises on insufficient precision.
long long v_point_val_series(const std::vector<VAdicSeries>& x) {
    long long x0 = -1;
    bool any = false;
    for (size_t b = 0; b < x.size(); ++b) {
        const VAdicSeries& e = x[b];
        if (e.is_zero_state()) continue;
        if (e.valuation() < 1) throw DomainViolation("coordinate violates |x|_v < 1 (val = " +
                                                     std::to_string(e.valuation()) + ")");
        x0 = any ? std::min(x0, e.valuation()) : e.valuation();
        any = true;
    }
    return any ? x0 : -1;
}

}  // namespace

VLogResult eval_log_v(LogCoeffs& L, const std::vector<VAdicSeries>& x, const PlacePtr& P, long long M) {
    const TModule& G = *L.module();
    if (static_cast<int>(x.size()) != G.dim()) throw std::invalid_argument("point dimension mismatch");
    check_v_module_condition(G, P);
    VLogResult out;
    out.terms_used = 0;
    out.coords.assign(x.size(), VAdicSeries::zero_to_precision(P, M));
    long long x0 = v_point_val_series(x);
    if (x0 < 0) return out;
    std::vector<int> included = v_included_terms(G, P, x0, M);
    if (included.empty()) return out;
    const long long K = 2 * static_cast<long long>(G.max_block()) - 1;
    long long need = M + K * (included.back() / static_cast<int>(P->degree())) + 1;
    for (const auto& e : x)
        if (e.precision() < need)
            throw std::invalid_argument("point precision " + std::to_string(e.precision()) +
                                        " is below the " + std::to_string(need) + " the tail rule needs");
    std::vector<VAdicSeries> y = x;
    int level = 0;
    for (int i : included) {
        for (; level < i; ++level)
            for (auto& e : y) e = e.q_power();
        const Mat<RatFunc>& Pi = L.matrix(i);
        for (int a = 0; a < G.dim(); ++a) {
            VAdicSeries acc = VAdicSeries::zero_to_precision(P, M);
            for (int b = 0; b < G.dim(); ++b) {
                const RatFunc& p = Pi(static_cast<size_t>(a), static_cast<size_t>(b));
                if (p.is_zero() || y[static_cast<size_t>(b)].is_zero_state()) continue;
                acc += (embed_v(p.num(), p.den(), P, M) * y[static_cast<size_t>(b)]).truncated(M);
            }
            out.coords[static_cast<size_t>(a)] += acc;
        }
        out.terms_used = i + 1;
    }
    return out;
}

VAdicSeries eval_log_v_wt(LogCoeffs& L, const std::vector<VAdicSeries>& x, const PlacePtr& P, long long M) {
    const TModule& G = *L.module();
    if (static_cast<int>(x.size()) != G.dim()) throw std::invalid_argument("point dimension mismatch");
    check_v_module_condition(G, P);
    VAdicSeries sum = VAdicSeries::zero_to_precision(P, M);
    long long x0 = v_point_val_series(x);
    if (x0 < 0) return sum;
    std::vector<int> included = v_included_terms(G, P, x0, M);
    if (included.empty()) return sum;
    const long long K = 2 * static_cast<long long>(G.max_block()) - 1;
    long long need = M + K * (included.back() / static_cast<int>(P->degree())) + 1;
    for (const auto& e : x)
        if (e.precision() < need)
            throw std::invalid_argument("point precision " + std::to_string(e.precision()) +
                                        " is below the " + std::to_string(need) + " the tail rule needs");
    std::vector<VAdicSeries> y = x;
    int level = 0;
    for (int i : included) {
        for (; level < i; ++level)
            for (auto& e : y) e = e.q_power();
        const std::vector<RatFunc>& row = L.wt_row(i);
        for (int b = 0; b < G.dim(); ++b) {
            const RatFunc& p = row[static_cast<size_t>(b)];
            if (p.is_zero() || y[static_cast<size_t>(b)].is_zero_state()) continue;
            sum += (embed_v(p.num(), p.den(), P, M) * y[static_cast<size_t>(b)]).truncated(M);
        }
    }
    return sum;
}

}  // namespace fqmzv

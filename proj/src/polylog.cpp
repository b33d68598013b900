#include "fqmzv/polylog.hpp"

#include <sstream>

namespace fqmzv {

const Poly& EvalContext::L_power(unsigned i, unsigned s) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(i, s);
    auto it = lpow_.find(key);
    if (it != lpow_.end()) return it->second;
    Poly L = L_factorial(F_, i);
    return lpow_.emplace(key, L.pow(s)).first->second;
}

LogCoeffsPtr EvalContext::log_coeffs(const Index& s, const std::vector<RatFunc>& u) {
    std::vector<RatFunc> prefix = u;
    if (static_cast<int>(prefix.size()) == s.dep()) prefix.pop_back();
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(s, prefix);
    auto it = modules_.find(key);
    if (it != modules_.end()) return it->second;
    auto L = std::make_shared<LogCoeffs>(build_G(F_, s, prefix));
    return modules_.emplace(key, std::move(L)).first->second;
}

// ------------------------------------------------------------- domains

bool in_X(const FieldPtr& F, const PlacePtr& P, int s, const RatFunc& u) {
    if (u.is_zero()) return true;
    long long qm1 = F->q() - 1;
    bool inf_ok = qm1 * *u.val_inf() + static_cast<long long>(s) * F->q() >= 0;
    bool v_ok = *v_val(u, P->v()) >= 0;
    return inf_ok && v_ok;
}

bool in_X0(const FieldPtr& F, const PlacePtr& P, int s, const RatFunc& u) {
    if (u.is_zero()) return true;
    long long qm1 = F->q() - 1;
    bool inf_ok = qm1 * *u.val_inf() + static_cast<long long>(s) * F->q() > 0;
    bool v_ok = *v_val(u, P->v()) >= 1;
    return inf_ok && v_ok;
}

DomainVerdict domain_check(const EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u) {
    if (static_cast<int>(u.size()) != s.dep()) throw std::invalid_argument("point length must equal dep(s)");
    const FieldPtr& F = ctx.field();
    const PlacePtr& P = ctx.place();
    const long long qm1 = F->q() - 1;
    DomainVerdict verdict;
    std::ostringstream os;
    verdict.in_D_inf = true;
    verdict.in_D_conv_v = true;
    verdict.in_D_def_v = true;
    for (int i = 0; i < s.dep(); ++i) {
        const RatFunc& ui = u[static_cast<size_t>(i)];
        bool strict_slot = (i == 0);
        if (!ui.is_zero()) {
            long long inf_lhs = qm1 * *ui.val_inf() + static_cast<long long>(s[i]) * F->q();
            bool inf_ok = strict_slot ? inf_lhs > 0 : inf_lhs >= 0;
            long long vv = *v_val(ui, P->v());
            bool conv_ok = strict_slot ? vv >= 1 : vv >= 0;
            bool def_ok = vv >= 0;
            verdict.in_D_inf = verdict.in_D_inf && inf_ok;
            verdict.in_D_conv_v = verdict.in_D_conv_v && conv_ok;
            verdict.in_D_def_v = verdict.in_D_def_v && def_ok;
            os << "u_" << i + 1 << ": (q-1)val_inf+s*q=" << inf_lhs << (strict_slot ? ">0" : ">=0") << "? "
               << (inf_ok ? "yes" : "no") << ", val_v=" << vv << "; ";
        } else {
            os << "u_" << i + 1 << ": 0; ";
        }
        verdict.in_X.push_back(in_X(F, P, s[i], ui));
        verdict.in_X0.push_back(in_X0(F, P, s[i], ui));
    }
    verdict.detail = os.str();
    return verdict;
}

// ------------------------------------------------------------- truncated

namespace {

// enumerate weakly decreasing tuples n >= i_1 >= ... >= i_r >= 0
template <class Fn>
void for_each_weakly_decreasing(int r, int n, std::vector<int>& tup, const Fn& f, int depth = 0) {
    if (depth == r) {
        f(tup);
        return;
    }
    int hi = depth == 0 ? n : tup[static_cast<size_t>(depth - 1)];
    for (int i = 0; i <= hi; ++i) {
        tup[static_cast<size_t>(depth)] = i;
        for_each_weakly_decreasing(r, n, tup, f, depth + 1);
    }
}

struct TermParts {
    Poly num, den;
    long long val_inf;  // exact valuation of the term
    long long val_v;
};

TermParts term_parts(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, const std::vector<int>& tup) {
    const FieldPtr& F = ctx.field();
    const PlacePtr& P = ctx.place();
    TermParts t{Poly::one(F), Poly::one(F), 0, 0};
    for (int j = 0; j < s.dep(); ++j) {
        unsigned ij = static_cast<unsigned>(tup[static_cast<size_t>(j)]);
        const RatFunc& uj = u[static_cast<size_t>(j)];
        t.num *= uj.num().frobenius(ij);
        Poly dj = uj.den().frobenius(ij);
        const Poly& Ls = ctx.L_power(ij, static_cast<unsigned>(s[j]));
        t.den *= dj * Ls;
        // valuations: q^{i_j} val(u_j) + s_j deg L_{i_j} at infinity,
        // q^{i_j} val_v(u_j) - s_j floor(i_j / deg v) at v
        long long qij = 1;
        for (unsigned k = 0; k < ij; ++k) qij *= F->q();
        long long degL = (qij * F->q() - F->q()) / (F->q() - 1);  // deg L_{i_j}
        t.val_inf += qij * *uj.val_inf() + static_cast<long long>(s[j]) * degL;
        t.val_v += qij * *v_val(uj, P->v()) - static_cast<long long>(s[j]) * (ij / P->degree());
    }
    return t;
}

}  // namespace

RatFunc li_star_trunc(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, int n) {
    if (static_cast<int>(u.size()) != s.dep()) throw std::invalid_argument("point length must equal dep(s)");
    if (n < 0) throw std::invalid_argument("truncation order must be >= 0");
    const FieldPtr& F = ctx.field();
    for (const auto& ui : u)
        if (ui.is_zero()) return RatFunc::zero(F);
    RatFunc acc = RatFunc::zero(F);
    std::vector<int> tup(static_cast<size_t>(s.dep()), 0);
    for_each_weakly_decreasing(s.dep(), n, tup, [&](const std::vector<int>& t) {
        RatFunc term = RatFunc::one(F);
        for (int j = 0; j < s.dep(); ++j) {
            unsigned ij = static_cast<unsigned>(t[static_cast<size_t>(j)]);
            term = term * u[static_cast<size_t>(j)].frobenius(ij) /
                   RatFunc(ctx.L_power(ij, static_cast<unsigned>(s[j])));
        }
        acc += term;
    });
    return acc;
}

// ------------------------------------------------------------- infty-adic

namespace {

void require_D_inf(const FieldPtr& F, const Index& s, const std::vector<RatFunc>& u) {
    const long long qm1 = F->q() - 1;
    for (int i = 0; i < s.dep(); ++i) {
        const RatFunc& ui = u[static_cast<size_t>(i)];
        if (ui.is_zero()) continue;
        long long lhs = qm1 * *ui.val_inf() + static_cast<long long>(s[i]) * F->q();
        bool ok = (i == 0) ? lhs > 0 : lhs >= 0;
        if (!ok) {
            std::ostringstream os;
            os << "u_" << i + 1 << " outside D_{s,inf}: (q-1)val + s q = " << lhs
               << (i == 0 ? " (strict > 0 required)" : " (>= 0 required)");
            throw DomainViolation(os.str());
        }
    }
}

// largest index I with tail bound g_1(I+1) + sum_{j>=2} val(u_j) <= N, i.e.
// the first omitted index is I+1; everything with i_1 > I is provably below
// theta^{-N}.
int inf_cutoff(const FieldPtr& F, const Index& s, const std::vector<RatFunc>& u, long long N) {
    const long long qm1 = F->q() - 1;
    long long delta1 = qm1 * *u[0].val_inf() + static_cast<long long>(s[0]) * F->q();  // > 0
    long long rest = 0;
    for (int j = 1; j < s.dep(); ++j) rest += *u[static_cast<size_t>(j)].val_inf();
    // need q^{i} delta1 - s_1 q + (q-1) rest > N (q-1) for all omitted i
    long long target = N * qm1 + static_cast<long long>(s[0]) * F->q() - qm1 * rest;
    int i = 0;
    long long qi = 1;
    while (qi * delta1 <= target) {
        ++i;
        if (qi > (1LL << 60) / F->q()) break;
        qi *= F->q();
    }
    return i - 1;  // include i_1 <= I with I = first-violating minus one
}

template <class TupleFilter>
InfSeries li_sum_inf(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long N,
                     const TupleFilter& admit) {
    const FieldPtr& F = ctx.field();
    for (const auto& ui : u)
        if (ui.is_zero()) return InfSeries::zero_to_precision(F, N);
    require_D_inf(F, s, u);
    int I = inf_cutoff(F, s, u, N);
    InfSeries acc = InfSeries::zero_to_precision(F, N);
    std::vector<int> tup(static_cast<size_t>(s.dep()), 0);
    for_each_weakly_decreasing(s.dep(), I, tup, [&](const std::vector<int>& t) {
        if (!admit(t)) return;
        TermParts parts = term_parts(ctx, s, u, t);
        if (parts.val_inf > N) return;  // provably below precision
        acc += embed_inf(parts.num, parts.den, N);
    });
    return acc;
}

}  // namespace

InfSeries li_star_inf(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long N) {
    if (static_cast<int>(u.size()) != s.dep()) throw std::invalid_argument("point length must equal dep(s)");
    return li_sum_inf(ctx, s, u, N, [](const std::vector<int>&) { return true; });
}

InfSeries li_inf(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long N) {
    if (static_cast<int>(u.size()) != s.dep()) throw std::invalid_argument("point length must equal dep(s)");
    return li_sum_inf(ctx, s, u, N, [](const std::vector<int>& t) {
        for (size_t j = 1; j < t.size(); ++j)
            if (t[j - 1] <= t[j]) return false;  // strict decrease for the plain CMPL
        return true;
    });
}

// ------------------------------------------------------------- v-adic

namespace {

void require_D_conv_v(const PlacePtr& P, const Index& s, const std::vector<RatFunc>& u) {
    for (int i = 0; i < s.dep(); ++i) {
        const RatFunc& ui = u[static_cast<size_t>(i)];
        if (ui.is_zero()) continue;
        long long vv = *v_val(ui, P->v());
        bool ok = (i == 0) ? vv >= 1 : vv >= 0;
        if (!ok) {
            std::ostringstream os;
            os << "u_" << i + 1 << " outside the v-adic convergence domain (val_v = " << vv
               << (i == 0 ? ", strict |u|_v < 1 required)" : ", |u|_v <= 1 required)");
            throw DomainViolation(os.str());
        }
    }
}

// 0 = include, 1 = skip, 2 = stop: same policy as the log tail, with the
// linear loss wt(s) * floor(i/deg v) against the q^i gain.
int v_tuple_disposition(long long q, long long x1, long long wt, unsigned dv, long long M, int i1) {
    long long qi = 1;
    for (int t = 0; t < i1; ++t) {
        if (qi > (1LL << 60) / q) return 2;
        qi *= q;
    }
    long long bound = qi * x1 - wt * (i1 / static_cast<int>(dv));
    if (bound <= M) return 0;
    if (qi * (q - 1) * x1 > wt) return 2;
    return 1;
}

}  // namespace

VAdicSeries li_star_v_conv(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long M) {
    if (static_cast<int>(u.size()) != s.dep()) throw std::invalid_argument("point length must equal dep(s)");
    const PlacePtr& P = ctx.place();
    for (const auto& ui : u)
        if (ui.is_zero()) return VAdicSeries::zero_to_precision(P, M);
    require_D_conv_v(P, s, u);
    long long x1 = *v_val(u[0], P->v());
    VAdicSeries acc = VAdicSeries::zero_to_precision(P, M);
    std::vector<int> tup(static_cast<size_t>(s.dep()), 0);
    for (int i1 = 0;; ++i1) {
        int disp = v_tuple_disposition(ctx.field()->q(), x1, s.wt(), P->degree(), M, i1);
        if (disp == 2) break;
        if (disp == 1) continue;
        // all tuples with this leading index
        if (s.dep() == 1) {
            tup[0] = i1;
            TermParts parts = term_parts(ctx, s, u, tup);
            if (parts.val_v <= M) acc += embed_v(parts.num, parts.den, P, M);
        } else {
            std::vector<int> rest(static_cast<size_t>(s.dep() - 1), 0);
            for_each_weakly_decreasing(s.dep() - 1, i1, rest, [&](const std::vector<int>& t) {
                tup[0] = i1;
                for (size_t j = 0; j < t.size(); ++j) tup[j + 1] = t[static_cast<size_t>(j)];
                TermParts parts = term_parts(ctx, s, u, tup);
                if (parts.val_v <= M) acc += embed_v(parts.num, parts.den, P, M);
            });
        }
    }
    return acc;
}

VAdicSeries li_star_v_extended(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long M,
                               int extra_d1_factors) {
    if (static_cast<int>(u.size()) != s.dep()) throw std::invalid_argument("point length must equal dep(s)");
    const FieldPtr& F = ctx.field();
    const PlacePtr& P = ctx.place();
    for (int i = 0; i < s.dep(); ++i) {
        const RatFunc& ui = u[static_cast<size_t>(i)];
        if (ui.is_zero()) return VAdicSeries::zero_to_precision(P, M);
        if (*v_val(ui, P->v()) < 0) {
            std::ostringstream os;
            os << "u_" << i + 1 << " outside the closed polydisc |u|_v <= 1";
            throw DomainViolation(os.str());
        }
    }
    // the evaluation order is the paper's Li*_{(s_r,...,s_1)}(u_r,...,u_1):
    // build G from the reversed data
    Index srev = s.reversed();
    std::vector<RatFunc> urev(u.rbegin(), u.rend());
    const int r = s.dep();
    LogCoeffsPtr L = ctx.log_coeffs(srev, urev);
    std::vector<RatFunc> vpt = special_point(F, srev, urev);
    // a(t) = prod_i (v(t)^{d_i} - 1), times extra (v(t)^{d_1}-1) factors
    Poly a = Poly::one(F);
    for (int di : srev.block_profile()) a *= P->v().pow(static_cast<uint64_t>(di)) - Poly::one(F);
    for (int k = 0; k < extra_d1_factors; ++k)
        a *= P->v().pow(static_cast<uint64_t>(srev.block_profile()[0])) - Poly::one(F);
    RatFunc a_theta(a);  // t -> theta keeps the coefficients
    long long val_a = *v_val(a_theta, P->v());
    long long Mp = M + std::max<long long>(0, val_a);
    // apply [a] v-adically and keep enough precision for the log tail rule
    // at the conservative valuation floor 1
    const long long K = 2 * static_cast<long long>(L->module()->max_block()) - 1;
    long long imax = 0;
    for (long long qi = 1;; ++imax) {
        if (qi * (F->q() - 1) > K && qi - K * (imax / P->degree()) > Mp) break;
        qi *= F->q();
    }
    long long M0 = Mp + K * (imax / P->degree()) + 1;
    std::vector<VAdicSeries> vemb;
    vemb.reserve(vpt.size());
    for (const auto& e : vpt) vemb.push_back(embed_v(e, P, M0));
    std::vector<VAdicSeries> y = act_v(*L->module(), a, vemb);
    for (const auto& yb : y)
        if (!yb.provably_small())
            throw std::logic_error("[a] v_{s,u} is not v-adically small; this contradicts the division bound");
    VAdicSeries w = eval_log_v_wt(*L, y, P, Mp);
    VAdicSeries result = w / embed_v(a_theta, P, Mp + 2 * std::max<long long>(1, val_a) + 2);
    if ((r - 1) % 2 == 1) result = -result;
    return result;
}

// ------------------------------------------------------------- key identity

namespace {

template <bool kInf>
auto chen_rhs(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, const std::vector<RatFunc>& x,
              long long prec) {
    const FieldPtr& F = ctx.field();
    const PlacePtr& P = ctx.place();
    const int r = s.dep();
    auto blocks = s.block_profile();
    // theta-monomial multipliers cost up to d_1 - 1 infinity-adic digits
    long long inner = kInf ? prec + blocks[0] : prec;
    InfSeries acc_inf = InfSeries::zero_to_precision(F, prec);
    VAdicSeries acc_v = VAdicSeries::zero_to_precision(P, prec);
    auto G = build_G(F, s, u);
    auto add_term = [&](const Poly& mono, bool negate, const Index& idx, const std::vector<RatFunc>& args) {
        // the monomial is exact, so embed it deep enough that the product's
        // precision claim still reaches prec even when the CMSPL value has
        // negative valuation
        if constexpr (kInf) {
            InfSeries li = li_star_inf(ctx, idx, args, inner);
            long long v_li = li.is_zero_state() ? li.precision() + 1 : li.valuation();
            long long mono_prec = std::max(inner, prec - std::min(v_li, 0LL) + 1);
            InfSeries term = embed_inf(RatFunc(mono), mono_prec) * li;
            if (negate) term = -term;
            acc_inf += term.truncated(prec);
        } else {
            VAdicSeries li = li_star_v_conv(ctx, idx, args, inner);
            long long v_li = li.is_zero_state() ? li.precision() + 1 : li.valuation();
            long long mono_prec = std::max(inner, prec - std::min(v_li, 0LL) + 1);
            VAdicSeries term = embed_v(RatFunc(mono), P, mono_prec) * li;
            if (negate) term = -term;
            acc_v += term.truncated(prec);
        }
    };
    for (int m = 1; m <= r; ++m) {
        int dm = blocks[static_cast<size_t>(m - 1)];
        for (int j = 1; j <= dm; ++j) {
            const RatFunc& xmj = x[static_cast<size_t>(G->pos(m, j) - 1)];
            if (xmj.is_zero()) continue;
            for (int l = 0; l + j <= dm; ++l) {
                uint16_t bc = binomial_mod_p(static_cast<uint64_t>(dm - j), static_cast<uint64_t>(l), F->p());
                if (bc == 0) continue;
                bool neg = (l % 2 == 1) != (m >= 2 && (m - 1) % 2 == 1);  // (-1)^l * (-1)^{m-1}
                Poly mono = Poly::monomial(F, bc, static_cast<size_t>(dm - j - l));
                RatFunc arg1 = RatFunc(Poly::monomial(F, 1, static_cast<size_t>(l))) * xmj;
                if (m == 1) {
                    add_term(mono, neg, Index({dm}), {arg1});
                } else {
                    // Li*_{(d_m, s_{m-1},...,s_1)}(theta^l x_{m,j}, u_{m-1},...,u_1)
                    std::vector<int> idxA{dm};
                    std::vector<RatFunc> argsA{arg1};
                    for (int e = m - 1; e >= 1; --e) {
                        idxA.push_back(s[e - 1]);
                        argsA.push_back(u[static_cast<size_t>(e - 1)]);
                    }
                    add_term(mono, neg, Index(idxA), argsA);
                    // minus Li*_{(d_{m-1}, s_{m-2},...,s_1)}(theta^l x u_{m-1}, u_{m-2},...,u_1)
                    std::vector<int> idxB{blocks[static_cast<size_t>(m - 2)]};
                    std::vector<RatFunc> argsB{arg1 * u[static_cast<size_t>(m - 2)]};
                    for (int e = m - 2; e >= 1; --e) {
                        idxB.push_back(s[e - 1]);
                        argsB.push_back(u[static_cast<size_t>(e - 1)]);
                    }
                    add_term(mono, !neg, Index(idxB), argsB);
                }
            }
        }
    }
    if constexpr (kInf) return acc_inf;
    else return acc_v;
}

}  // namespace

ChenVerdictInf chen_weight_coordinate_inf(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u,
                                          const std::vector<RatFunc>& x, long long N) {
    LogCoeffsPtr L = ctx.log_coeffs(s, u);
    InfSeries lhs = eval_log_inf_wt(*L, x, N);
    InfSeries rhs = chen_rhs<true>(ctx, s, u, x, N);
    auto m = match_through(lhs, rhs, N);
    return {m.equal, std::move(lhs), std::move(rhs), m.equal ? 0 : m.first_mismatch};
}

ChenVerdictV chen_weight_coordinate_v(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u,
                                      const std::vector<RatFunc>& x, long long M) {
    // the theorem's v-adic hypotheses: ||x||_v < 1 (checked by the log
    // evaluator) and ||u||_v <= 1 (checked here)
    for (size_t e = 0; e + 1 < static_cast<size_t>(s.dep()); ++e)
        if (!u[e].is_zero() && *v_val(u[e], ctx.place()->v()) < 0)
            throw DomainViolation("u is not v-integral");
    LogCoeffsPtr L = ctx.log_coeffs(s, u);
    VAdicSeries lhs = eval_log_v_wt(*L, x, ctx.place(), M);
    VAdicSeries rhs = chen_rhs<false>(ctx, s, u, x, M);
    auto m = match_through(lhs, rhs, M);
    return {m.equal, std::move(lhs), std::move(rhs), m.equal ? 0 : m.first_mismatch};
}

}  // namespace fqmzv

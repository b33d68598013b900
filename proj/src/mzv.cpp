#include "fqmzv/mzv.hpp"

#include <sstream>

namespace fqmzv {

InfSeries power_sum_series(EvalContext& ctx, int d, int s, long long N) {
    const FieldPtr& F = ctx.field();
    InfSeries acc = InfSeries::zero_to_precision(F, N);
    // a^{-s} has valuation s*d; nothing to add when even that exceeds N
    if (static_cast<long long>(s) * d > N) return acc;
    for (const Poly& a : monic_enumerate(F, static_cast<unsigned>(d)))
        acc += embed_inf(Poly::one(F), a.pow(static_cast<uint64_t>(s)), N);
    return acc;
}

RatFunc power_sum_exact(EvalContext& ctx, int d, int s) {
    const FieldPtr& F = ctx.field();
    RatFunc acc = RatFunc::zero(F);
    for (const Poly& a : monic_enumerate(F, static_cast<unsigned>(d)))
        acc += RatFunc(Poly::one(F), a.pow(static_cast<uint64_t>(s)));
    return acc;
}

namespace {

// valuation lower bound of one power-sum factor S_d(s)
long long power_sum_val_bound(uint32_t q, int d, int s) {
    return static_cast<long long>(s) * d + static_cast<long long>(q - 1) * d * (d + 1) / 2;
}

}  // namespace

int zeta_degree_cutoff(const FieldPtr& F, const Index& s, long long N) {
    const int r = s.dep();
    long long fixed = 0;
    for (int i = 2; i <= r; ++i) fixed += power_sum_val_bound(F->q(), r - i, s[i - 1]);
    for (int D = -1;; ++D) {
        long long omitted = power_sum_val_bound(F->q(), D + 1, s[0]) + fixed;
        if (omitted > N) return D;
        if (D > 1000) throw std::logic_error("runaway zeta cutoff");
    }
}

InfSeries zeta_inf(EvalContext& ctx, const Index& s, long long N) {
    const FieldPtr& F = ctx.field();
    const int r = s.dep();
    const int D = zeta_degree_cutoff(F, s, N);
    // G_j(e): sum over tuples e > d_j > ... > d_r >= 0 of the product of
    // power sums; G_1(D+1) is the truncation.
    std::vector<std::vector<InfSeries>> memo(static_cast<size_t>(r + 1));
    // precompute S_d(s_j) series
    std::vector<std::vector<InfSeries>> S(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j) {
        S[static_cast<size_t>(j)].reserve(static_cast<size_t>(D + 1));
        for (int d = 0; d <= D; ++d) S[static_cast<size_t>(j)].push_back(power_sum_series(ctx, d, s[j], N));
    }
    // G_r(e) by prefix sums; then upward
    std::vector<InfSeries> G(static_cast<size_t>(D + 2), InfSeries::zero_to_precision(F, N));
    for (int e = 1; e <= D + 1; ++e) G[static_cast<size_t>(e)] = G[static_cast<size_t>(e - 1)] + S[static_cast<size_t>(r - 1)][static_cast<size_t>(e - 1)];
    for (int j = r - 1; j >= 1; --j) {
        std::vector<InfSeries> Gnext(static_cast<size_t>(D + 2), InfSeries::zero_to_precision(F, N));
        for (int e = 1; e <= D + 1; ++e) {
            Gnext[static_cast<size_t>(e)] = Gnext[static_cast<size_t>(e - 1)];
            InfSeries term = S[static_cast<size_t>(j - 1)][static_cast<size_t>(e - 1)] * G[static_cast<size_t>(e - 1)];
            Gnext[static_cast<size_t>(e)] += term.truncated(N);
        }
        G = std::move(Gnext);
    }
    return G[static_cast<size_t>(D + 1)];
}

RatFunc zeta_truncated_exact(EvalContext& ctx, const Index& s, int D) {
    const FieldPtr& F = ctx.field();
    const int r = s.dep();
    std::vector<std::vector<RatFunc>> S(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j)
        for (int d = 0; d <= D; ++d) S[static_cast<size_t>(j)].push_back(power_sum_exact(ctx, d, s[j]));
    std::vector<RatFunc> G(static_cast<size_t>(D + 2), RatFunc::zero(F));
    for (int e = 1; e <= D + 1; ++e) G[static_cast<size_t>(e)] = G[static_cast<size_t>(e - 1)] + S[static_cast<size_t>(r - 1)][static_cast<size_t>(e - 1)];
    for (int j = r - 1; j >= 1; --j) {
        std::vector<RatFunc> Gn(static_cast<size_t>(D + 2), RatFunc::zero(F));
        for (int e = 1; e <= D + 1; ++e)
            Gn[static_cast<size_t>(e)] = Gn[static_cast<size_t>(e - 1)] + S[static_cast<size_t>(j - 1)][static_cast<size_t>(e - 1)] * G[static_cast<size_t>(e - 1)];
        G = std::move(Gn);
    }
    return G[static_cast<size_t>(D + 1)];
}

namespace {

void brute_rec(EvalContext& ctx, const Index& s, int depth, int maxdeg, RatFunc partial, RatFunc& acc) {
    const FieldPtr& F = ctx.field();
    if (depth == s.dep()) {
        acc += partial;
        return;
    }
    int lo = s.dep() - 1 - depth;  // remaining strictly decreasing degrees need room
    for (int d = lo; d <= maxdeg; ++d) {
        for (const Poly& a : monic_enumerate(F, static_cast<unsigned>(d))) {
            RatFunc next = partial * RatFunc(Poly::one(F), a.pow(static_cast<uint64_t>(s[depth])));
            brute_rec(ctx, s, depth + 1, d - 1, next, acc);
        }
    }
}

}  // namespace

RatFunc zeta_brute_exact(EvalContext& ctx, const Index& s, int D) {
    RatFunc acc = RatFunc::zero(ctx.field());
    brute_rec(ctx, s, 0, D, RatFunc::one(ctx.field()), acc);
    return acc;
}

// ------------------------------------------------------------ certificates

Certificate builtin_certificate(const FieldPtr& F, int s) {
    if (s < 1 || static_cast<uint32_t>(s) > F->q())
        throw std::invalid_argument("built-in certificates exist exactly for depth one, s <= q");
    Certificate c;
    c.target = Index({s});
    c.terms.push_back(CertTerm{RatFunc::one(F), Index({s}), {Poly::one(F)}});
    c.provenance = "built-in: zeta_A(s) = Li*_s(1) for s <= q";
    return c;
}

bool has_builtin_certificate(const FieldPtr& F, const Index& s) {
    return s.dep() == 1 && static_cast<uint32_t>(s[0]) <= F->q();
}

CertVerdict verify_certificate(EvalContext& ctx, const Certificate& c, long long N) {
    const FieldPtr& F = ctx.field();
    std::ostringstream os;
    // structural invariants
    for (const CertTerm& t : c.terms) {
        if (t.index.wt() != c.target.wt()) {
            os << "term with wt " << t.index.wt() << " != wt(target) " << c.target.wt();
            return {false, false, 0, 0, os.str()};
        }
        if (t.index.dep() > c.target.dep()) {
            os << "term with dep " << t.index.dep() << " > dep(target) " << c.target.dep();
            return {false, false, 0, 0, os.str()};
        }
        if (static_cast<int>(t.u.size()) != t.index.dep()) {
            os << "term point length mismatch";
            return {false, false, 0, 0, os.str()};
        }
        const long long qm1 = F->q() - 1;
        for (int i = 0; i < t.index.dep(); ++i) {
            const Poly& ui = t.u[static_cast<size_t>(i)];
            if (ui.is_zero()) continue;
            long long lhs = qm1 * -ui.degree_nonzero() + static_cast<long long>(t.index[i]) * F->q();
            bool ok = (i == 0) ? lhs > 0 : lhs >= 0;
            if (!ok) {
                os << "integral point u_" << i + 1 << " outside D_{s,inf}";
                return {false, false, 0, 0, os.str()};
            }
        }
    }
    // numeric identity through theta^{-N}
    InfSeries lhs = zeta_inf(ctx, c.target, N);
    InfSeries rhs = InfSeries::zero_to_precision(F, N);
    for (const CertTerm& t : c.terms) {
        std::vector<RatFunc> u;
        u.reserve(t.u.size());
        for (const Poly& p : t.u) u.emplace_back(p);
        long long inner = N + 1 - std::min(0LL, t.b.is_zero() ? 0 : *t.b.val_inf());
        InfSeries li = li_star_inf(ctx, t.index, u, inner);
        long long v_li = li.is_zero_state() ? li.precision() + 1 : li.valuation();
        InfSeries bs = embed_inf(t.b, std::max(inner, N + 1 - std::min(0LL, v_li)));
        InfSeries term = bs * li;
        if (t.index.dep() % 2 == 0) term = -term;  // (-1)^{dep-1}
        rhs += term.truncated(N);
    }
    auto m = match_through(lhs, rhs, N);
    if (m.equal) {
        os << "zeta and the CMSPL combination agree through theta^-" << N;
        return {true, true, N, 0, os.str()};
    }
    os << "sides differ first at theta^-" << m.first_mismatch;
    return {false, true, N, m.first_mismatch, os.str()};
}

VAdicSeries zeta_v(EvalContext& ctx, const Index& s, long long M, const Certificate& c, long long N_verify) {
    if (c.target != s) throw std::invalid_argument("certificate targets a different index");
    CertVerdict cv = verify_certificate(ctx, c, N_verify);
    if (!cv.pass) throw std::invalid_argument("refusing an unverified certificate: " + cv.detail);
    const PlacePtr& P = ctx.place();
    VAdicSeries acc = VAdicSeries::zero_to_precision(P, M);
    for (const CertTerm& t : c.terms) {
        if (t.b.is_zero()) continue;
        std::vector<RatFunc> u;
        u.reserve(t.u.size());
        for (const Poly& p : t.u) u.emplace_back(p);
        long long vb = *v_val(t.b, P->v());
        long long inner = M + 1 - std::min(0LL, vb);
        VAdicSeries li = li_star_v_extended(ctx, t.index, u, inner);
        long long v_li = li.is_zero_state() ? li.precision() + 1 : li.valuation();
        VAdicSeries bs = embed_v(t.b, P, std::max(inner, M + 1 - std::min(0LL, v_li)));
        VAdicSeries term = bs * li;
        if (t.index.dep() % 2 == 0) term = -term;
        acc += term.truncated(M);
    }
    return acc;
}

VAdicSeries zeta_v_depth1(EvalContext& ctx, int s, long long M, long long N_verify) {
    return zeta_v(ctx, Index({s}), M, builtin_certificate(ctx.field(), s), N_verify);
}

// ------------------------------------------------------------ relations

QShuffleRelation chen_product(const FieldPtr& F, int r, int s) {
    if (r < 1 || s < 1) throw std::invalid_argument("chen_product needs positive weights");
    const uint32_t p = F->p();
    std::map<Index, uint16_t> rhs;
    auto bump = [&](Index idx, uint16_t coeff) {
        if (coeff == 0) return;
        auto it = rhs.find(idx);
        if (it == rhs.end()) rhs.emplace(std::move(idx), coeff);
        else it->second = static_cast<uint16_t>((it->second + coeff) % p);
    };
    bump(Index({r, s}), 1);
    bump(Index({s, r}), 1);
    bump(Index({r + s}), 1);
    for (int i = 1; i + 1 <= r + s; ++i) {
        int j = r + s - i;
        if (j < 1 || static_cast<uint32_t>(j) % (F->q() - 1) != 0) continue;
        // [ (-1)^{s-1} C(j-1, s-1) + (-1)^{r-1} C(j-1, r-1) ] mod p
        int32_t c1 = binomial_mod_p(static_cast<uint64_t>(j - 1), static_cast<uint64_t>(s - 1), p);
        if ((s - 1) % 2 == 1) c1 = -c1;
        int32_t c2 = binomial_mod_p(static_cast<uint64_t>(j - 1), static_cast<uint64_t>(r - 1), p);
        if ((r - 1) % 2 == 1) c2 = -c2;
        int32_t tot = ((c1 + c2) % static_cast<int32_t>(p) + static_cast<int32_t>(p)) % static_cast<int32_t>(p);
        bump(Index({i, j}), static_cast<uint16_t>(tot));
    }
    QShuffleRelation rel;
    rel.r = r;
    rel.s = s;
    for (auto& [idx, coeff] : rhs)
        if (coeff != 0) rel.rhs.emplace_back(idx, coeff);
    return rel;
}

RelationReport verify_relation_inf(EvalContext& ctx, const QShuffleRelation& rel, long long N) {
    const FieldPtr& F = ctx.field();
    InfSeries lhs = zeta_inf(ctx, Index({rel.r}), N) * zeta_inf(ctx, Index({rel.s}), N);
    InfSeries rhs = InfSeries::zero_to_precision(F, N);
    for (const auto& [idx, coeff] : rel.rhs) {
        InfSeries z = zeta_inf(ctx, idx, N);
        InfSeries term = z;  // the F_p coefficient acts by repeated addition
        for (uint16_t k = 1; k < coeff; ++k) term = term + z;
        rhs += term;
    }
    long long thru = std::min({N, lhs.precision(), rhs.precision()});
    auto m = match_through(lhs, rhs, thru);
    std::ostringstream os;
    if (m.equal) {
        os << "zeta(" << rel.r << ") zeta(" << rel.s << ") = q-shuffle right side through theta^-" << thru;
        return {RelationVerdict::PASS, thru, os.str()};
    }
    os << "sides differ first at theta^-" << m.first_mismatch;
    return {RelationVerdict::FAIL, thru, os.str()};
}

RelationReport verify_relation_v(EvalContext& ctx, const QShuffleRelation& rel, long long M,
                                 const std::map<Index, Certificate>& certs, long long N_verify) {
    const PlacePtr& P = ctx.place();
    auto lookup = [&](const Index& idx) -> const Certificate* {
        auto it = certs.find(idx);
        return it == certs.end() ? nullptr : &it->second;
    };
    std::vector<Index> needed{Index({rel.r}), Index({rel.s})};
    for (const auto& [idx, coeff] : rel.rhs) needed.push_back(idx);
    for (const Index& idx : needed) {
        if (!lookup(idx)) {
            std::ostringstream os;
            os << "cannot check: no certificate for zeta_A(";
            for (int i = 0; i < idx.dep(); ++i) os << (i ? "," : "") << idx[i];
            os << ")_v";
            return {RelationVerdict::CANNOT_CHECK, 0, os.str()};
        }
    }
    VAdicSeries lhs = zeta_v(ctx, Index({rel.r}), M, *lookup(Index({rel.r})), N_verify) *
                      zeta_v(ctx, Index({rel.s}), M, *lookup(Index({rel.s})), N_verify);
    VAdicSeries rhs = VAdicSeries::zero_to_precision(P, M);
    for (const auto& [idx, coeff] : rel.rhs) {
        VAdicSeries z = zeta_v(ctx, idx, M, *lookup(idx), N_verify);
        VAdicSeries term = z;
        for (uint16_t k = 1; k < coeff; ++k) term = term + z;
        rhs += term;
    }
    long long thru = std::min({M, lhs.precision(), rhs.precision()});
    auto m = match_through(lhs, rhs, thru);
    std::ostringstream os;
    if (m.equal) {
        os << "v-adic q-shuffle relation holds through v^" << thru;
        return {RelationVerdict::PASS, thru, os.str()};
    }
    os << "sides differ first at v^" << m.first_mismatch;
    return {RelationVerdict::FAIL, thru, os.str()};
}

}  // namespace fqmzv

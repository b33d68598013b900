#ifndef FQMZV_MZV_HPP
#define FQMZV_MZV_HPP

#include "fqmzv/stuffle.hpp"

namespace fqmzv {

/// Power sum S_d(s) = sum over monic a of degree d of a^{-s}, embedded.
/// Every coefficient sum over F_q of a monomial vanishes unless each of the
/// d free coefficients appears with positive exponent divisible by q-1, so
/// val_inf S_d(s) >= s d + (q-1) d(d+1)/2; this is the tail bound that keeps
/// the enumeration cutoff quadratic instead of linear.
InfSeries power_sum_series(EvalContext& ctx, int d, int s, long long N);
/// Exact variant (small d only; used by the oracle tests).
RatFunc power_sum_exact(EvalContext& ctx, int d, int s);

/// Smallest cutoff D such that every omitted degree tuple is provably below
/// theta^{-N}.
int zeta_degree_cutoff(const FieldPtr& F, const Index& s, long long N);

/// infty-adic MZV through theta^{-N}: dynamic programming over strictly
/// decreasing degree tuples of per-degree power sums.
InfSeries zeta_inf(EvalContext& ctx, const Index& s, long long N);
/// Exact DP truncation (degrees d_1 <= D) and its brute-force oracle.
RatFunc zeta_truncated_exact(EvalContext& ctx, const Index& s, int D);
RatFunc zeta_brute_exact(EvalContext& ctx, const Index& s, int D);

/// A decomposition certificate: zeta_A(s) = sum_l b_l (-1)^{dep(s_l)-1}
/// Li*_{s_l}(u_l) with integral points u_l.
struct CertTerm {
    RatFunc b;
    Index index;
    std::vector<Poly> u;  // entries in A
};
struct Certificate {
    Index target;
    std::vector<CertTerm> terms;
    std::string provenance;
};

/// Built-in depth-one certificates: zeta_A(s) = Li*_s(1) for s <= q.
Certificate builtin_certificate(const FieldPtr& F, int s);
bool has_builtin_certificate(const FieldPtr& F, const Index& s);

struct CertVerdict {
    bool pass;
    bool structural_ok;
    long long checked_through;  // theta exponent
    long long first_mismatch;   // when !pass and structural_ok
    std::string detail;
};
/// Checks the certificate invariants and the identity through theta^{-N}.
CertVerdict verify_certificate(EvalContext& ctx, const Certificate& c, long long N);

/// v-adic MZV through v^M via the certificate (which must verify
/// infty-adically at N_verify first: unverified certificates are refused).
VAdicSeries zeta_v(EvalContext& ctx, const Index& s, long long M, const Certificate& c, long long N_verify);
/// Convenience: built-in depth-one route.
VAdicSeries zeta_v_depth1(EvalContext& ctx, int s, long long M, long long N_verify);

/// One q-shuffle relation zeta(r) zeta(s) = sum f_j zeta(s_j) with f_j in F_p.
struct QShuffleRelation {
    int r, s;
    std::vector<std::pair<Index, uint16_t>> rhs;  // (index, coefficient mod p)
};
/// H.-J. Chen's explicit product formula; the correction sum runs over
/// i + j = r + s with i, j >= 1 and (q-1) | j.
QShuffleRelation chen_product(const FieldPtr& F, int r, int s);

enum class RelationVerdict { PASS, FAIL, CANNOT_CHECK };
struct RelationReport {
    RelationVerdict verdict;
    long long checked_through;
    std::string detail;
};
RelationReport verify_relation_inf(EvalContext& ctx, const QShuffleRelation& rel, long long N);
/// The v-adic side needs a verified certificate for every index involved;
/// a missing one yields CANNOT_CHECK, never a silent skip.
RelationReport verify_relation_v(EvalContext& ctx, const QShuffleRelation& rel, long long M,
                                 const std::map<Index, Certificate>& certs, long long N_verify);

}  // namespace fqmzv

#endif

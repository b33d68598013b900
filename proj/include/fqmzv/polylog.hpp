#ifndef FQMZV_POLYLOG_HPP
#define FQMZV_POLYLOG_HPP

#include <map>

#include "fqmzv/logexp.hpp"

namespace fqmzv {

/// Shared caches for one (field, place) pair: L_i powers, embedded L-inverse
/// series, and the log-coefficient towers of the t-modules in play.  Lookups
/// are locked; published values are immutable.
class EvalContext {
public:
    EvalContext(FieldPtr F, PlacePtr P) : F_(std::move(F)), P_(std::move(P)) {}

    const FieldPtr& field() const { return F_; }
    const PlacePtr& place() const { return P_; }

    /// L_i^s as a polynomial (cached).
    const Poly& L_power(unsigned i, unsigned s);
    /// Log-coefficient tower for G_{s,u}, keyed by (s, u_1..u_{r-1}).
    LogCoeffsPtr log_coeffs(const Index& s, const std::vector<RatFunc>& u);

private:
    FieldPtr F_;
    PlacePtr P_;
    std::map<std::pair<unsigned, unsigned>, Poly> lpow_;
    std::map<std::pair<Index, std::vector<RatFunc>>, LogCoeffsPtr> modules_;
    std::mutex mu_;
};

/// Membership verdicts for the evaluation domains, each from an exact
/// valuation comparison.
struct DomainVerdict {
    bool in_D_inf;      // |u_1| strict, |u_i| non-strict against q^{s_i q/(q-1)}
    bool in_D_conv_v;   // |u_1|_v < 1, |u_i|_v <= 1
    bool in_D_def_v;    // all |u_i|_v <= 1
    std::vector<bool> in_X;   // per letter: non-strict inf bound and v-integral
    std::vector<bool> in_X0;  // per letter: both strict
    std::string detail;
};

DomainVerdict domain_check(const EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u);

/// Letter-level X / X^0 membership (s, u).
bool in_X(const FieldPtr& F, const PlacePtr& P, int s, const RatFunc& u);
bool in_X0(const FieldPtr& F, const PlacePtr& P, int s, const RatFunc& u);

/// Truncated CMSPL: sum over n >= i_1 >= ... >= i_r >= 0, exact in k.
RatFunc li_star_trunc(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, int n);

/// infty-adic CMSPL (weak inequalities) through theta^{-N}; requires u in
/// D_{s,infty}.
InfSeries li_star_inf(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long N);
/// infty-adic CMPL (strict inequalities i_1 > ... > i_r).
InfSeries li_inf(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long N);

/// v-adic CMSPL on the open convergence domain (|u_1|_v < 1).
VAdicSeries li_star_v_conv(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long M);

/// v-adic CMSPL extended to the closed polydisc |u_i|_v <= 1 via the
/// t-module logarithm: builds G from the reversed data, acts by
/// a(t) = prod (v(t)^{d_i} - 1), and reads the wt coordinate of the v-adic
/// logarithm; `extra_d1_factors` multiplies a(t) by (v(t)^{d_1}-1)^k for the
/// a(t)-independence check.
VAdicSeries li_star_v_extended(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u, long long M,
                               int extra_d1_factors = 0);

/// Both sides of the key identity for the wt coordinate of log_{G_{s,u}} at
/// x, evaluated independently: the log series on the left, the CMSPL
/// combination with mod-p binomial coefficients on the right.
struct ChenVerdictInf {
    bool pass;
    InfSeries lhs, rhs;
    long long first_mismatch;
};
ChenVerdictInf chen_weight_coordinate_inf(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u,
                                          const std::vector<RatFunc>& x, long long N);
struct ChenVerdictV {
    bool pass;
    VAdicSeries lhs, rhs;
    long long first_mismatch;
};
ChenVerdictV chen_weight_coordinate_v(EvalContext& ctx, const Index& s, const std::vector<RatFunc>& u,
                                      const std::vector<RatFunc>& x, long long M);

}  // namespace fqmzv

#endif

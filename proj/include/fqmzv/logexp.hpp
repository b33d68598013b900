#ifndef FQMZV_LOGEXP_HPP
#define FQMZV_LOGEXP_HPP

#include <deque>

#include "fqmzv/tmodule.hpp"

namespace fqmzv {

/// Raised when an evaluation point or module datum falls outside the
/// convergence domain; carries the failing exact comparison.
class DomainViolation : public std::domain_error {
public:
    explicit DomainViolation(const std::string& what) : std::domain_error(what) {}
};

/// Solves c X + N X - X N = B exactly over k (c != 0, N the module's
/// nilpotent block shift).  Unique solution; used by both log and exp
/// coefficient recursions.
Mat<RatFunc> solve_sylvester(const TModule& G, const RatFunc& c, const Mat<RatFunc>& B);
/// Same solution via the nilpotent resolvent sum_{l} (-1)^l c^{-(l+1)} ad_N^l(B).
Mat<RatFunc> solve_sylvester_resolvent(const TModule& G, const RatFunc& c, const Mat<RatFunc>& B);

/// Coefficients P_i of log_G = sum P_i tau^i, materialized lazily and
/// published immutably (safe for concurrent readers; extension is locked).
/// The wt(s)-row closes under the recursion by itself and has a separate,
/// much cheaper materialization used by the evaluation fast path.
class LogCoeffs {
public:
    explicit LogCoeffs(TModulePtr G);
    const TModulePtr& module() const { return G_; }
    const Mat<RatFunc>& matrix(int i);
    const std::vector<RatFunc>& wt_row(int i);

private:
    TModulePtr G_;
    std::deque<Mat<RatFunc>> P_;
    std::deque<std::vector<RatFunc>> rows_;
    std::mutex mu_;
};
using LogCoeffsPtr = std::shared_ptr<LogCoeffs>;

/// Coefficients Q_i of exp_G = sum Q_i tau^i.
class ExpCoeffs {
public:
    explicit ExpCoeffs(TModulePtr G);
    const TModulePtr& module() const { return G_; }
    const Mat<RatFunc>& matrix(int i);

private:
    TModulePtr G_;
    std::deque<Mat<RatFunc>> Q_;
    std::mutex mu_;
};

/// Closed form for the wt(s)-row of P_i (the two displayed formulas); must
/// equal row wt(s) of the recursion exactly.
std::vector<RatFunc> wt_row_oracle(const TModule& G, int i);

/// exp_G and log_G as truncated tau-operators, for composition checks.
TauMatPoly log_operator(LogCoeffs& L, int order);
TauMatPoly exp_operator(ExpCoeffs& E, int order);

// ------------------------------------------------------------------ eval

/// Infinite-place convergence data for log evaluation at x in G(k):
/// weights W_{(m,j)} = (q-1) j + d_m scale the domain condition
/// (q-1) val(x_{m,j}) + W > 0 (strict); the module condition is
/// (q-1) val(u_e) + s_e q >= 0.  Every omitted tail term is provably
/// below the target precision.
struct InfLogResult {
    std::vector<InfSeries> coords;
    int terms_used;
};
InfLogResult eval_log_inf(LogCoeffs& L, const std::vector<RatFunc>& x, long long N);
InfSeries eval_log_inf_wt(LogCoeffs& L, const std::vector<RatFunc>& x, long long N);

/// v-adic log evaluation at x with |x|_v < 1 (validated exactly); u must be
/// v-integral.  Tail rule: val_v(P_i x^{(i)}) >= q^i val_v(x) - (2 d_1 - 1)
/// floor(i / deg v).
struct VLogResult {
    std::vector<VAdicSeries> coords;
    int terms_used;
};
VLogResult eval_log_v(LogCoeffs& L, const std::vector<RatFunc>& x, const PlacePtr& P, long long M);
VAdicSeries eval_log_v_wt(LogCoeffs& L, const std::vector<RatFunc>& x, const PlacePtr& P, long long M);
/// Variants on already-embedded points (the tail rule needs input precision
/// at least M + (2 d_1 - 1) * (i_max / deg v) + 1; raises otherwise).
VLogResult eval_log_v(LogCoeffs& L, const std::vector<VAdicSeries>& x, const PlacePtr& P, long long M);
VAdicSeries eval_log_v_wt(LogCoeffs& L, const std::vector<VAdicSeries>& x, const PlacePtr& P, long long M);

}  // namespace fqmzv

#endif

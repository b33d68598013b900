#ifndef FQMZV_TMODULE_HPP
#define FQMZV_TMODULE_HPP

#include <memory>
#include <mutex>

#include "fqmzv/completions.hpp"
#include "fqmzv/index.hpp"
#include "fqmzv/tau_poly.hpp"

namespace fqmzv {

/// The t-module G_{s,u}: dimension d = d_1 + ... + d_r with block profile
/// d_i = s_i + ... + s_r, action [t] = theta I_d + N + E tau.  Depends only
/// on u_1,...,u_{r-1}.
///
/// Coordinates are flat; position (m, j), 1-based within block m, sits at
/// flat index d_1 + ... + d_{m-1} + j (1-based).  The wt(s)-th coordinate is
/// the bottom of the first block.
class TModule {
public:
    TModule(FieldPtr F, Index s, std::vector<RatFunc> u_prefix);

    const FieldPtr& field() const { return F_; }
    const Index& index() const { return s_; }
    const std::vector<RatFunc>& u_prefix() const { return u_; }
    int dim() const { return d_; }
    const std::vector<int>& blocks() const { return blocks_; }
    int wt() const { return blocks_[0]; }

    const Mat<RatFunc>& N() const { return N_; }
    const Mat<RatFunc>& E() const { return E_; }
    /// [t] as a tau-polynomial (theta I + N) + E tau.
    const TauMatPoly& t_action() const { return t_; }
    /// d[t] = theta I + N.
    const Mat<RatFunc>& dt() const { return dt_; }

    /// Flat 1-based position of (block m, inner j), both 1-based.
    int pos(int m, int j) const;
    /// Inverse of pos: (m, j), both 1-based.
    std::pair<int, int> block_of(int flat) const;

    /// Largest block size (= d_1); division-depth constant for bounds.
    int max_block() const { return blocks_[0]; }

private:
    FieldPtr F_;
    Index s_;
    std::vector<RatFunc> u_;  // u_1..u_{r-1}
    int d_;
    std::vector<int> blocks_;
    Mat<RatFunc> N_, E_, dt_;
    TauMatPoly t_;
};
using TModulePtr = std::shared_ptr<TModule>;

/// C^{x s}: the s-th tensor power of the Carlitz module.
TModulePtr build_carlitz_tensor(const FieldPtr& F, int s);
/// G_{s,u}; u may carry dep(s) entries (the last is ignored) or dep(s)-1.
TModulePtr build_G(const FieldPtr& F, const Index& s, const std::vector<RatFunc>& u);

/// The special point v_{s,u}: entry at (m, d_m) is (-1)^{r-m} u_m ... u_r.
/// Needs the full u (length dep(s)).
std::vector<RatFunc> special_point(const FieldPtr& F, const Index& s, const std::vector<RatFunc>& u);

/// [a] for a in F_q[t] (coefficients are field codes, a[i] = coeff of t^i).
TauMatPoly fqt_action(const TModule& G, const Poly& a_of_t);
/// d[a] = a(theta I + N).
Mat<RatFunc> d_act(const TModule& G, const Poly& a_of_t);
/// [a](x) on exact points.
std::vector<RatFunc> act(const TModule& G, const Poly& a_of_t, const std::vector<RatFunc>& x);
/// [a](x) on v-adic points (entries tracked with honest precision).
std::vector<VAdicSeries> act_v(const TModule& G, const Poly& a_of_t, const std::vector<VAdicSeries>& x);

struct ShapeReport {
    bool pass;
    std::string detail;
};

/// Checks deg_tau [t^m]_s = ceil(m/s) and the Papanikolas leading-matrix
/// pattern: with l = m mod s in (0, s], entry (i,j) is 1 if i = j + s - l
/// and 0 if i < j + s - l.
ShapeReport leading_shape_check(const FieldPtr& F, int s, int m);

/// Checks [v(t)^s]_s = tau^{deg v} + (terms with all matrix entries
/// divisible by v) modulo v, i.e. coefficient of tau^{deg v} is I mod v and
/// every other coefficient is 0 mod v.
ShapeReport congruence_check(const FieldPtr& F, int s, const Poly& v);

struct ShrinkageReport {
    bool pass;
    bool precision_exhausted;
    int iterations_to_target;  // -1 when not reached
    std::string detail;
};

/// Iterates [v(t)^s] on a v-adic point with |x|_v < 1, asserting the norm
/// bound |[v(t)^s]x| <= max(|x|^{q_v}, |x|/q_v) at every step and that the
/// valuation reaches `target_val` within `max_iter` steps.
ShrinkageReport shrinkage_check(const FieldPtr& F, int s, const PlacePtr& P,
                                const std::vector<VAdicSeries>& x, long long target_val, int max_iter);

}  // namespace fqmzv

#endif

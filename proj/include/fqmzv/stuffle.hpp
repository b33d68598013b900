#ifndef FQMZV_STUFFLE_HPP
#define FQMZV_STUFFLE_HPP

#include "fqmzv/polylog.hpp"

namespace fqmzv {

/// A letter z_{s,u} with its X / X^0 verdicts relative to the algebra's place.
struct Letter {
    int s;
    RatFunc u;
    bool x_member;
    bool x0_member;

    friend bool operator==(const Letter& a, const Letter& b) { return a.s == b.s && a.u == b.u; }
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.u < b.u;
    }
};

using Word = std::vector<Letter>;  // empty = the unit word 1

/// k-linear combination of words, canonical: zero coefficients pruned,
/// deterministic word order (map).
using StuffleElement = std::map<Word, RatFunc>;

/// The word algebra H^1 (letters in X) with its stuffle product and the
/// evaluation maps; the place is fixed at construction and letters carry
/// their X/X^0 verdicts relative to it.  The star memo table is per-instance.
class StuffleAlgebra {
public:
    explicit StuffleAlgebra(EvalContext& ctx) : ctx_(ctx) {}

    EvalContext& context() { return ctx_; }
    const EvalContext& context() const { return ctx_; }

    /// Makes a letter, checking (s,u) in X.
    Letter letter(int s, const RatFunc& u) const;
    Word word(const std::vector<std::pair<int, RatFunc>>& letters) const;
    StuffleElement monomial(const Word& w, const RatFunc& coeff) const;

    /// H^0 membership: empty or the first letter lies in X^0.
    static bool in_H0_word(const Word& w);
    static bool in_H0(const StuffleElement& e);

    /// The stuffle product, bilinear over k, memoized on word pairs.
    StuffleElement star(const StuffleElement& a, const StuffleElement& b);
    StuffleElement star_words(const Word& a, const Word& b);

    /// Truncated evaluation Li*_{<=n}: exact in k; defined on all of H^1.
    RatFunc eval_trunc(const StuffleElement& e, int n);
    /// Convergent evaluations; every word must lie in H^0.
    InfSeries eval_inf(const StuffleElement& e, long long N);
    VAdicSeries eval_v(const StuffleElement& e, long long M);

    struct MultiplicativityVerdict {
        bool pass;
        std::string detail;  // both sides rendered on failure
    };
    /// Li*(w * w') = Li*(w) Li*(w'): exact RatFunc identity in trunc mode,
    /// precision comparison otherwise.
    MultiplicativityVerdict check_trunc(const Word& w, const Word& wp, int n);
    MultiplicativityVerdict check_inf(const Word& w, const Word& wp, long long N);
    MultiplicativityVerdict check_v(const Word& w, const Word& wp, long long M);

private:
    EvalContext& ctx_;
    std::map<std::pair<Word, Word>, StuffleElement> memo_;
    std::mutex mu_;
};

/// Canonical pruning: drops zero coefficients in place.
void prune(StuffleElement& e);
StuffleElement add(const StuffleElement& a, const StuffleElement& b);
StuffleElement scale(const StuffleElement& a, const RatFunc& c);

}  // namespace fqmzv

#endif

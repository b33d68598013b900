#include "fqmzv/stuffle.hpp"

#include <sstream>

namespace fqmzv {

void prune(StuffleElement& e) {
    for (auto it = e.begin(); it != e.end();) {
        if (it->second.is_zero()) it = e.erase(it);
        else ++it;
    }
}

StuffleElement add(const StuffleElement& a, const StuffleElement& b) {
    StuffleElement r = a;
    for (const auto& [w, c] : b) {
        auto it = r.find(w);
        if (it == r.end()) r.emplace(w, c);
        else it->second += c;
    }
    prune(r);
    return r;
}

StuffleElement scale(const StuffleElement& a, const RatFunc& c) {
    if (c.is_zero()) return {};
    StuffleElement r = a;
    for (auto& [w, coeff] : r) coeff *= c;
    return r;
}

Letter StuffleAlgebra::letter(int s, const RatFunc& u) const {
    if (s < 1) throw std::invalid_argument("letter weight must be positive");
    bool x = in_X(ctx_.field(), ctx_.place(), s, u);
    if (!x) {
        std::ostringstream os;
        os << "(s,u) with s=" << s << " lies outside X (|u|_inf <= q^{sq/(q-1)} and |u|_v <= 1 required)";
        throw DomainViolation(os.str());
    }
    return Letter{s, u, true, in_X0(ctx_.field(), ctx_.place(), s, u)};
}

Word StuffleAlgebra::word(const std::vector<std::pair<int, RatFunc>>& letters) const {
    Word w;
    w.reserve(letters.size());
    for (const auto& [s, u] : letters) w.push_back(letter(s, u));
    return w;
}

StuffleElement StuffleAlgebra::monomial(const Word& w, const RatFunc& coeff) const {
    StuffleElement e;
    if (!coeff.is_zero()) e.emplace(w, coeff);
    return e;
}

bool StuffleAlgebra::in_H0_word(const Word& w) { return w.empty() || w.front().x0_member; }

bool StuffleAlgebra::in_H0(const StuffleElement& e) {
    for (const auto& [w, c] : e)
        if (!in_H0_word(w)) return false;
    return true;
}

StuffleElement StuffleAlgebra::star_words(const Word& a, const Word& b) {
    if (a.empty()) return {{b, RatFunc::one(ctx_.field())}};
    if (b.empty()) return {{a, RatFunc::one(ctx_.field())}};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(std::make_pair(a, b));
        if (it != memo_.end()) return it->second;
    }
    // z_{s,u} w * z_{s',u'} w' = z_{s,u}(w * z_{s',u'}w') + z_{s',u'}(z_{s,u}w * w')
    //                            - z_{s+s',uu'}(w * w')
    Word ta(a.begin() + 1, a.end());
    Word tb(b.begin() + 1, b.end());
    const FieldPtr& F = ctx_.field();
    auto prepend = [](const Letter& z, const StuffleElement& e) {
        StuffleElement r;
        for (const auto& [w, c] : e) {
            Word nw;
            nw.reserve(w.size() + 1);
            nw.push_back(z);
            nw.insert(nw.end(), w.begin(), w.end());
            r.emplace(std::move(nw), c);
        }
        return r;
    };
    StuffleElement r = add(prepend(a.front(), star_words(ta, b)), prepend(b.front(), star_words(a, tb)));
    Letter merged = letter(a.front().s + b.front().s, a.front().u * b.front().u);
    r = add(r, scale(prepend(merged, star_words(ta, tb)), -RatFunc::one(F)));
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.emplace(std::make_pair(a, b), std::move(r)).first->second;
}

StuffleElement StuffleAlgebra::star(const StuffleElement& a, const StuffleElement& b) {
    StuffleElement r;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) r = add(r, scale(star_words(wa, wb), ca * cb));
    return r;
}

namespace {

Index word_index(const Word& w) {
    std::vector<int> s;
    s.reserve(w.size());
    for (const Letter& z : w) s.push_back(z.s);
    return Index(std::move(s));
}

std::vector<RatFunc> word_args(const Word& w) {
    std::vector<RatFunc> u;
    u.reserve(w.size());
    for (const Letter& z : w) u.push_back(z.u);
    return u;
}

}  // namespace

RatFunc StuffleAlgebra::eval_trunc(const StuffleElement& e, int n) {
    RatFunc acc = RatFunc::zero(ctx_.field());
    for (const auto& [w, c] : e) {
        if (w.empty()) acc += c;  // Li*(1) = 1
        else acc += c * li_star_trunc(ctx_, word_index(w), word_args(w), n);
    }
    return acc;
}

InfSeries StuffleAlgebra::eval_inf(const StuffleElement& e, long long N) {
    if (!in_H0(e)) throw DomainViolation("element outside H^0: a word starts with a letter not in X^0");
    InfSeries acc = InfSeries::zero_to_precision(ctx_.field(), N);
    for (const auto& [w, c] : e) {
        if (c.is_zero()) continue;
        long long vc = *c.val_inf();
        long long inner = N - std::min(vc, 0LL) + 1;
        InfSeries val = w.empty() ? embed_inf(RatFunc::one(ctx_.field()), inner)
                                  : li_star_inf(ctx_, word_index(w), word_args(w), inner);
        long long v_li = val.is_zero_state() ? val.precision() + 1 : val.valuation();
        InfSeries cs = embed_inf(c, std::max(inner, N - std::min(v_li, 0LL) + 1));
        acc += (cs * val).truncated(N);
    }
    return acc;
}

VAdicSeries StuffleAlgebra::eval_v(const StuffleElement& e, long long M) {
    if (!in_H0(e)) throw DomainViolation("element outside H^0: a word starts with a letter not in X^0");
    const PlacePtr& P = ctx_.place();
    VAdicSeries acc = VAdicSeries::zero_to_precision(P, M);
    for (const auto& [w, c] : e) {
        if (c.is_zero()) continue;
        long long vc = *v_val(c, P->v());
        long long inner = M - std::min(vc, 0LL) + 1;
        VAdicSeries val = w.empty() ? embed_v(RatFunc::one(ctx_.field()), P, inner)
                                    : li_star_v_conv(ctx_, word_index(w), word_args(w), inner);
        long long v_li = val.is_zero_state() ? val.precision() + 1 : val.valuation();
        VAdicSeries cs = embed_v(c, P, std::max(inner, M - std::min(v_li, 0LL) + 1));
        acc += (cs * val).truncated(M);
    }
    return acc;
}

StuffleAlgebra::MultiplicativityVerdict StuffleAlgebra::check_trunc(const Word& w, const Word& wp, int n) {
    RatFunc lhs = eval_trunc(star_words(w, wp), n);
    RatFunc rhs = eval_trunc({{w, RatFunc::one(ctx_.field())}}, n) * eval_trunc({{wp, RatFunc::one(ctx_.field())}}, n);
    if (lhs == rhs) return {true, "exact equality in k"};
    return {false, "truncated multiplicativity failed (exact comparison)"};
}

StuffleAlgebra::MultiplicativityVerdict StuffleAlgebra::check_inf(const Word& w, const Word& wp, long long N) {
    InfSeries lhs = eval_inf(star_words(w, wp), N);
    InfSeries a = eval_inf({{w, RatFunc::one(ctx_.field())}}, N);
    InfSeries b = eval_inf({{wp, RatFunc::one(ctx_.field())}}, N);
    InfSeries rhs = a * b;
    long long thru = std::min(N, rhs.precision());
    auto m = match_through(lhs, rhs, thru);
    if (m.equal) return {true, "agreement through theta^-" + std::to_string(thru)};
    return {false, "mismatch at theta^-" + std::to_string(m.first_mismatch)};
}

StuffleAlgebra::MultiplicativityVerdict StuffleAlgebra::check_v(const Word& w, const Word& wp, long long M) {
    VAdicSeries lhs = eval_v(star_words(w, wp), M);
    VAdicSeries a = eval_v({{w, RatFunc::one(ctx_.field())}}, M);
    VAdicSeries b = eval_v({{wp, RatFunc::one(ctx_.field())}}, M);
    VAdicSeries rhs = a * b;
    long long thru = std::min(M, rhs.precision());
    auto m = match_through(lhs, rhs, thru);
    if (m.equal) return {true, "agreement through v^" + std::to_string(thru)};
    return {false, "mismatch at v^" + std::to_string(m.first_mismatch)};
}

}  // namespace fqmzv

#include "fqmzv/poly.hpp"

#include <algorithm>

namespace fqmzv {

namespace {

// ---- bit-packed fast path for F_2 -------------------------------------
//
// Coefficient vectors are repacked into 64-bit words; multiplication,
// division and gcd on polynomials of degree in the thousands dominate the
// acceptance grids at q = 2, and the packed versions are ~60x faster than
// the generic byte loops.

using Bits = std::vector<uint64_t>;

Bits pack2(const std::vector<uint16_t>& c) {
    Bits w((c.size() + 63) / 64, 0);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) w[i >> 6] |= uint64_t(1) << (i & 63);
    return w;
}

std::vector<uint16_t> unpack2(const Bits& w, size_t nbits) {
    std::vector<uint16_t> c(nbits, 0);
    for (size_t i = 0; i < nbits; ++i)
        c[i] = static_cast<uint16_t>((w[i >> 6] >> (i & 63)) & 1);
    return c;
}

long long bits_degree(const Bits& w) {
    for (size_t i = w.size(); i-- > 0;)
        if (w[i]) return static_cast<long long>(i) * 64 + (63 - __builtin_clzll(w[i]));
    return -1;
}

void bits_xor_shifted(Bits& a, const Bits& b, long long shift, long long bdeg) {
    // a ^= b << shift
    size_t word = static_cast<size_t>(shift >> 6);
    unsigned bit = static_cast<unsigned>(shift & 63);
    size_t need = static_cast<size_t>((shift + bdeg) >> 6) + 1;
    if (a.size() < need) a.resize(need, 0);
    size_t nb = static_cast<size_t>(bdeg >> 6) + 1;
    if (bit == 0) {
        for (size_t i = 0; i < nb; ++i) a[word + i] ^= b[i];
    } else {
        uint64_t carry = 0;
        for (size_t i = 0; i < nb; ++i) {
            a[word + i] ^= (b[i] << bit) | carry;
            carry = b[i] >> (64 - bit);
        }
        if (carry) a[word + nb] ^= carry;
    }
}

std::vector<uint16_t> mul_f2(const std::vector<uint16_t>& ac, const std::vector<uint16_t>& bc) {
    Bits a = pack2(ac), b = pack2(bc);
    long long bdeg = bits_degree(b);
    Bits r((ac.size() + bc.size() + 62) / 64 + 1, 0);
    for (size_t i = 0; i < ac.size(); ++i)
        if (ac[i]) bits_xor_shifted(r, b, static_cast<long long>(i), bdeg);
    return unpack2(r, ac.size() + bc.size() - 1);
}

// returns (quotient, remainder) coefficient vectors
std::pair<std::vector<uint16_t>, std::vector<uint16_t>> divmod_f2(const std::vector<uint16_t>& ac,
                                                                  const std::vector<uint16_t>& bc) {
    Bits r = pack2(ac), b = pack2(bc);
    long long bdeg = bits_degree(b);
    long long adeg = bits_degree(r);
    std::vector<uint16_t> qv(adeg >= bdeg ? static_cast<size_t>(adeg - bdeg + 1) : 0, 0);
    while (adeg >= bdeg) {
        long long shift = adeg - bdeg;
        qv[static_cast<size_t>(shift)] = 1;
        bits_xor_shifted(r, b, shift, bdeg);
        adeg = bits_degree(r);
    }
    std::vector<uint16_t> rem = adeg < 0 ? std::vector<uint16_t>{} : unpack2(r, static_cast<size_t>(adeg) + 1);
    return {std::move(qv), std::move(rem)};
}

std::vector<uint16_t> gcd_f2(const std::vector<uint16_t>& ac, const std::vector<uint16_t>& bc) {
    Bits a = pack2(ac), b = pack2(bc);
    long long da = bits_degree(a), db = bits_degree(b);
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
    }
    while (db >= 0) {
        while (da >= db) {
            bits_xor_shifted(a, b, da - db, db);
            da = bits_degree(a);
        }
        std::swap(a, b);
        std::swap(da, db);
    }
    if (da < 0) return {};
    return unpack2(a, static_cast<size_t>(da) + 1);
}

}  // namespace

Poly Poly::monomial(const FieldPtr& F, uint16_t c, size_t n) {
    if (c == 0) return Poly(F);
    std::vector<uint16_t> v(n + 1, 0);
    v[n] = c;
    return Poly(F, std::move(v));
}

long long Poly::degree_nonzero() const {
    if (c_.empty()) throw std::domain_error("degree of the zero polynomial");
    return static_cast<long long>(c_.size()) - 1;
}

uint16_t Poly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero");
    return c_.back();
}

Poly operator+(const Poly& a, const Poly& b) {
    const Field& F = *a.F_;
    std::vector<uint16_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
    return Poly(a.F_, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
    const Field& F = *a.F_;
    std::vector<uint16_t> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a.coeff(i), b.coeff(i));
    return Poly(a.F_, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<uint16_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = F_->neg(c_[i]);
    return Poly(F_, std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly(a.F_ ? a.F_ : b.F_);
    const Field& F = *a.F_;
    if (F.q() == 2) return Poly(a.F_, mul_f2(a.c_, b.c_));
    std::vector<uint16_t> r(a.c_.size() + b.c_.size() - 1, 0);
    if (F.e() == 1) {
        const uint32_t p = F.p();
        // accumulate in 64 bits, reduce per cell
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            uint64_t ai = a.c_[i];
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = static_cast<uint16_t>((r[i + j] + ai * b.c_[j]) % p);
        }
    } else {
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (b.c_[j]) r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
        }
    }
    return Poly(a.F_, std::move(r));
}

bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

Poly Poly::scaled(uint16_t s) const {
    if (s == 0) return Poly(F_);
    std::vector<uint16_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], s);
    return Poly(F_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero() || a.c_.size() < b.c_.size()) return {Poly(a.F_), a};
    const Field& F = *a.F_;
    if (F.q() == 2) {
        auto [qv, rv] = divmod_f2(a.c_, b.c_);
        return {Poly(a.F_, std::move(qv)), Poly(a.F_, std::move(rv))};
    }
    std::vector<uint16_t> rem = a.c_;
    const size_t db = b.c_.size() - 1;
    std::vector<uint16_t> quot(a.c_.size() - db, 0);
    uint16_t lead_inv = F.inv(b.c_.back());
    for (size_t i = rem.size(); i-- > db;) {
        uint16_t c = F.mul(rem[i], lead_inv);
        if (c == 0) continue;
        quot[i - db] = c;
        size_t off = i - db;
        for (size_t j = 0; j <= db; ++j)
            rem[off + j] = F.sub(rem[off + j], F.mul(c, b.c_[j]));
    }
    rem.resize(db);
    return {Poly(a.F_, std::move(quot)), Poly(a.F_, std::move(rem))};
}

bool Poly::divides(const Poly& b, const Poly& a) {
    if (a.is_zero()) return true;
    return divmod(a, b).second.is_zero();
}

Poly Poly::pow(uint64_t n) const {
    Poly r = one(F_), base = *this;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

FqElem Poly::eval(const FqElem& x) const {
    FqElem r(F_, 0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + FqElem(F_, c_[i]);
    return r;
}

Poly Poly::gcd(Poly a, Poly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    const Field& F = *a.F_;
    if (F.q() == 2) return Poly(a.F_, gcd_f2(a.c_, b.c_));
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly Poly::monic() const {
    if (is_zero() || c_.back() == 1) return *this;
    return scaled(F_->inv(c_.back()));
}

Poly Poly::frobenius(unsigned n) const {
    if (n == 0 || is_zero()) return *this;
    uint64_t qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= F_->q();
    std::vector<uint16_t> r((c_.size() - 1) * qn + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i * qn] = c_[i];
    return Poly(F_, std::move(r));
}

Poly Poly::theta_powmod(const FieldPtr& F, uint64_t n, const Poly& m) {
    Poly r = one(F), base = divmod(theta(F), m).second;
    while (n) {
        if (n & 1) r = divmod(r * base, m).second;
        base = divmod(base * base, m).second;
        n >>= 1;
    }
    return r;
}

bool irreducible_check(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("irreducibility of the zero polynomial");
    const FieldPtr& F = f.field();
    long long d = f.degree_nonzero();
    if (d == 0) return false;
    if (d == 1) return true;
    // Rabin: theta^{q^d} = theta mod f, and gcd(theta^{q^{d/l}} - theta, f) = 1
    // for every prime l | d.  The chain theta^{q^i} mod f is built by
    // iterating x -> x^q mod f via repeated squaring.
    Poly t = Poly::divmod(Poly::theta(F), f).second;
    std::vector<Poly> chain;  // chain[i] = theta^{q^i} mod f
    chain.push_back(t);
    Poly cur = t;
    for (long long i = 1; i <= d; ++i) {
        Poly next = Poly::one(F);
        uint64_t n = F->q();
        Poly base = cur;
        while (n) {
            if (n & 1) next = Poly::divmod(next * base, f).second;
            base = Poly::divmod(base * base, f).second;
            n >>= 1;
        }
        cur = next;
        chain.push_back(cur);
    }
    if (chain[static_cast<size_t>(d)] != t) return false;
    for (long long ell = 2; ell <= d; ++ell) {
        if (d % ell != 0 || !is_prime_u32(static_cast<uint32_t>(ell))) continue;
        Poly diff = chain[static_cast<size_t>(d / ell)] - t;
        if (!Poly::gcd(f, diff).is_one()) return false;
    }
    return true;
}

std::vector<Poly> monic_enumerate(const FieldPtr& F, unsigned d) {
    uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= F->q();
    std::vector<Poly> out;
    out.reserve(count);
    for (uint64_t a = 0; a < count; ++a) {
        std::vector<uint16_t> c(d + 1, 0);
        uint64_t t = a;
        for (unsigned i = 0; i < d; ++i) {
            c[i] = static_cast<uint16_t>(t % F->q());
            t /= F->q();
        }
        c[d] = 1;
        out.emplace_back(F, std::move(c));
    }
    return out;
}

Poly L_factor(const FieldPtr& F, unsigned i) {
    // theta - theta^{q^i}
    uint64_t qi = 1;
    for (unsigned j = 0; j < i; ++j) qi *= F->q();
    std::vector<uint16_t> c(static_cast<size_t>(qi) + 1, 0);
    c[1] = 1;
    c[static_cast<size_t>(qi)] = F->neg(1);
    return Poly(F, std::move(c));
}

Poly L_factorial(const FieldPtr& F, unsigned i) {
    Poly r = Poly::one(F);
    for (unsigned j = 1; j <= i; ++j) r *= L_factor(F, j);
    return r;
}

uint16_t binomial_mod_p(uint64_t n, uint64_t k, uint32_t p) {
    if (k > n) return 0;
    auto powmod = [p](uint64_t b, uint64_t e) {
        uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    uint64_t r = 1;
    while (n || k) {
        uint64_t nd = n % p, kd = k % p;
        n /= p;
        k /= p;
        if (kd > nd) return 0;
        for (uint64_t i = 0; i < kd; ++i)
            r = r * ((nd - i) % p) % p * powmod(i + 1, p - 2) % p;
    }
    return static_cast<uint16_t>(r);
}

}  // namespace fqmzv

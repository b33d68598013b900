#include "fqmzv/field.hpp"

namespace fqmzv {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// F_p[x] helpers on digit vectors, used only to set up extension fields.
using Fpx = std::vector<uint16_t>;

void fpx_trim(Fpx& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Fpx fpx_mulmod(const Fpx& a, const Fpx& b, const Fpx& mod, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Fpx r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<uint16_t>((r[i + j] + uint32_t(a[i]) * b[j]) % p);
    // reduce mod the monic modulus
    size_t e = mod.size() - 1;
    for (size_t i = r.size(); i-- > e;) {
        uint32_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < e; ++j)
            r[i - e + j] = static_cast<uint16_t>((r[i - e + j] + c * (p - mod[j])) % p);
    }
    r.resize(e);
    fpx_trim(r);
    return r;
}

Fpx fpx_powmod(Fpx base, uint64_t n, const Fpx& mod, uint32_t p) {
    Fpx r{1};
    while (n) {
        if (n & 1) r = fpx_mulmod(r, base, mod, p);
        base = fpx_mulmod(base, base, mod, p);
        n >>= 1;
    }
    return r;
}

Fpx fpx_sub(Fpx a, const Fpx& b, uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i)
        a[i] = static_cast<uint16_t>((a[i] + p - b[i]) % p);
    fpx_trim(a);
    return a;
}

Fpx fpx_gcd(Fpx a, Fpx b, uint32_t p) {
    auto inv_mod_p = [p](uint32_t x) {
        uint32_t r = 1, bse = x % p, n = p - 2;
        while (n) {
            if (n & 1) r = r * bse % p;
            bse = bse * bse % p;
            n >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b
        Fpx r = a;
        uint32_t lead_inv = inv_mod_p(b.back());
        while (r.size() >= b.size()) {
            uint32_t c = uint32_t(r.back()) * lead_inv % p;
            size_t shift = r.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                r[shift + j] = static_cast<uint16_t>((r[shift + j] + c * (p - b[j])) % p);
            fpx_trim(r);
            if (r.empty()) break;
        }
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin test over F_p for the modulus of an extension field.
bool fpx_irreducible(const Fpx& f, uint32_t p) {
    size_t d = f.size() - 1;
    if (d == 0) return false;
    Fpx x{0, 1};
    // x^(p^d) == x mod f
    Fpx t = x;
    for (size_t i = 0; i < d; ++i) t = fpx_powmod(t, p, f, p);
    if (fpx_sub(t, x, p) != Fpx{}) return false;
    for (size_t ell = 2; ell <= d; ++ell) {
        if (d % ell != 0 || !is_prime_u32(static_cast<uint32_t>(ell))) continue;
        Fpx u = x;
        for (size_t i = 0; i < d / ell; ++i) u = fpx_powmod(u, p, f, p);
        Fpx g = fpx_gcd(f, fpx_sub(u, x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

Field::Field(uint32_t p, uint32_t e, std::vector<uint16_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    q_ = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        if (q_ > 65536 / p_) throw std::invalid_argument("field too large (q must fit 16 bits)");
        q_ *= p_;
    }
    if (q_ <= 1024) build_tables();
}

FieldPtr Field::make(uint32_t p, uint32_t e) {
    if (!is_prime_u32(p)) throw std::invalid_argument("p is not prime");
    if (e == 0) throw std::invalid_argument("e must be positive");
    if (e == 1) return FieldPtr(new Field(p, 1, {}));
    // lexicographically least monic irreducible: tuple (c_{e-1},...,c_0)
    // ascending, i.e. plain counting with c_0 as the least significant digit.
    uint64_t pe = 1;
    for (uint32_t i = 0; i < e; ++i) pe *= p;
    for (uint64_t a = 0; a < pe; ++a) {
        Fpx f(e + 1, 0);
        uint64_t t = a;
        for (uint32_t i = 0; i < e; ++i) {
            f[i] = static_cast<uint16_t>(t % p);
            t /= p;
        }
        f[e] = 1;
        if (fpx_irreducible(f, p)) return FieldPtr(new Field(p, e, f));
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

FieldPtr Field::make(uint32_t p, uint32_t e, const std::vector<uint16_t>& modulus) {
    if (!is_prime_u32(p)) throw std::invalid_argument("p is not prime");
    if (e <= 1) throw std::invalid_argument("explicit modulus requires e > 1");
    if (modulus.size() != e + 1 || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree e");
    for (uint16_t c : modulus)
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    if (!fpx_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible over F_p");
    return FieldPtr(new Field(p, e, modulus));
}

uint16_t Field::add(uint16_t a, uint16_t b) const {
    if (e_ == 1) {
        uint32_t s = uint32_t(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<uint16_t>(s);
    }
    // digitwise mod p
    uint32_t r = 0, mul = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a = static_cast<uint16_t>(a / p_);
        b = static_cast<uint16_t>(b / p_);
        uint32_t s = da + db;
        if (s >= p_) s -= p_;
        r += s * mul;
        mul *= p_;
    }
    return static_cast<uint16_t>(r);
}

uint16_t Field::neg(uint16_t a) const {
    if (e_ == 1) return a == 0 ? 0 : static_cast<uint16_t>(p_ - a);
    uint32_t r = 0, mul = 1;
    for (uint32_t i = 0; i < e_; ++i) {
        uint32_t d = a % p_;
        a = static_cast<uint16_t>(a / p_);
        r += (d == 0 ? 0 : p_ - d) * mul;
        mul *= p_;
    }
    return static_cast<uint16_t>(r);
}

uint16_t Field::sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }

uint16_t Field::mul_nocache(uint16_t a, uint16_t b) const {
    if (e_ == 1) return static_cast<uint16_t>(uint32_t(a) * b % p_);
    Fpx fa, fb;
    uint16_t ta = a, tb = b;
    for (uint32_t i = 0; i < e_; ++i) {
        fa.push_back(ta % p_);
        ta = static_cast<uint16_t>(ta / p_);
        fb.push_back(tb % p_);
        tb = static_cast<uint16_t>(tb / p_);
    }
    fpx_trim(fa);
    fpx_trim(fb);
    Fpx r = fpx_mulmod(fa, fb, modulus_, p_);
    uint32_t code = 0, mul = 1;
    for (size_t i = 0; i < e_; ++i) {
        code += (i < r.size() ? r[i] : 0) * mul;
        mul *= p_;
    }
    return static_cast<uint16_t>(code);
}

void Field::build_tables() {
    tables_ = true;
    mul_table_.assign(size_t(q_) * q_, 0);
    inv_table_.assign(q_, 0);
    for (uint32_t a = 0; a < q_; ++a)
        for (uint32_t b = a; b < q_; ++b) {
            uint16_t m = mul_nocache(static_cast<uint16_t>(a), static_cast<uint16_t>(b));
            mul_table_[size_t(a) * q_ + b] = m;
            mul_table_[size_t(b) * q_ + a] = m;
            if (m == 1) {
                inv_table_[a] = static_cast<uint16_t>(b);
                inv_table_[b] = static_cast<uint16_t>(a);
            }
        }
}

uint16_t Field::mul(uint16_t a, uint16_t b) const {
    if (tables_) return mul_table_[size_t(a) * q_ + b];
    return mul_nocache(a, b);
}

uint16_t Field::inv(uint16_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    if (tables_) return inv_table_[a];
    return pow(a, q_ - 2);
}

uint16_t Field::pow(uint16_t a, uint64_t n) const {
    uint16_t r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

uint16_t Field::from_int(int64_t n) const {
    int64_t m = n % int64_t(p_);
    if (m < 0) m += p_;
    return static_cast<uint16_t>(m);
}

std::string Field::to_string(uint16_t a) const {
    if (e_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::vector<uint32_t> digits(e_);
    uint16_t t = a;
    for (uint32_t i = 0; i < e_; ++i) {
        digits[i] = t % p_;
        t = static_cast<uint16_t>(t / p_);
    }
    std::string out;
    for (uint32_t i = e_; i-- > 0;) {
        if (digits[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) out += std::to_string(digits[i]);
        else {
            if (digits[i] != 1) out += std::to_string(digits[i]) + "*";
            out += "g";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace fqmzv

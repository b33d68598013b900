#include "fqmzv/textio.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fqmzv {

namespace {

// recursive-descent parser for rational expressions over k
struct ExprParser {
    const FieldPtr& F;
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, i); }

    RatFunc parse() {
        RatFunc r = expr();
        skip();
        if (i != s.size()) fail("trailing input");
        return r;
    }

    RatFunc expr() {  // + -
        RatFunc r = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }

    RatFunc term() {  // * /
        RatFunc r = factor();
        for (;;) {
            if (eat('*')) r *= factor();
            else if (eat('/')) {
                RatFunc d = factor();
                if (d.is_zero()) fail("division by zero");
                r /= d;
            } else {
                // implicit multiplication like 2T or (g+1)T is not in the
                // grammar; require explicit operators
                return r;
            }
        }
    }

    RatFunc factor() {  // atom [^ exponent]
        RatFunc base = atom();
        skip();
        if (eat('^')) {
            uint64_t e = integer();
            return base.pow(e);
        }
        return base;
    }

    uint64_t integer() {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected an integer");
        uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + static_cast<uint64_t>(s[i] - '0');
            ++i;
        }
        return v;
    }

    RatFunc atom() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '(') {
            ++i;
            RatFunc r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == 'T') {
            ++i;
            return RatFunc::theta(F);
        }
        if (c == 'g') {
            if (F->e() == 1) fail("generator g needs an extension field (e > 1)");
            ++i;
            return RatFunc(Poly::constant(F, F->gen()));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            uint64_t v = integer();
            return RatFunc(Poly::constant(F, F->from_int(static_cast<int64_t>(v % F->p()))));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

std::vector<std::string> split_bracket_list(const std::string& text, size_t& pos) {
    // parses "[a, b, c]" starting at pos (after skipping spaces); returns
    // the raw item strings and advances pos past the closing bracket
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size() || text[pos] != '[') throw ParseError("expected '['", pos);
    ++pos;
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '[' || c == '(') ++depth;
        if (c == ']' && depth == 0) {
            if (!cur.empty()) items.push_back(cur);
            ++pos;
            return items;
        }
        if (c == ']' || c == ')') --depth;
        if (c == ',' && depth == 0) {
            items.push_back(cur);
            cur.clear();
            continue;
        }
        cur += c;
    }
    throw ParseError("unterminated '['", pos);
}

}  // namespace

RatFunc parse_ratfunc(const FieldPtr& F, const std::string& text) {
    ExprParser p{F, text};
    return p.parse();
}

Poly parse_poly(const FieldPtr& F, const std::string& text) {
    RatFunc r = parse_ratfunc(F, text);
    if (!r.is_integral()) throw ParseError("expected a polynomial, got a proper fraction", 0);
    return r.num();
}

Index parse_index(const std::string& text) {
    size_t pos = 0;
    auto items = split_bracket_list(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseError("trailing input after index", pos);
    std::vector<int> s;
    for (const std::string& item : items) {
        size_t used = 0;
        int v = std::stoi(item, &used);
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw ParseError("malformed index entry '" + item + "'", pos);
        s.push_back(v);
    }
    return Index(std::move(s));
}

std::vector<RatFunc> parse_vector(const FieldPtr& F, const std::string& text) {
    size_t pos = 0;
    auto items = split_bracket_list(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseError("trailing input after vector", pos);
    std::vector<RatFunc> v;
    v.reserve(items.size());
    for (const std::string& item : items) v.push_back(parse_ratfunc(F, item));
    return v;
}

Word parse_word(const StuffleAlgebra& alg, const std::string& text) {
    size_t pos = 0;
    const FieldPtr& F = alg.context().field();
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    Word w;
    if (pos < text.size() && text[pos] == '1' && w.empty()) {
        // the unit word
        ++pos;
        skip();
        if (pos != text.size()) throw ParseError("trailing input after the unit word", pos);
        return w;
    }
    while (pos < text.size()) {
        skip();
        if (pos >= text.size()) break;
        if (text[pos] != 'z') throw ParseError("expected a letter 'z[s,u]'", pos);
        ++pos;
        auto items = split_bracket_list(text, pos);
        if (items.size() != 2) throw ParseError("letter needs exactly [s, u]", pos);
        int s = std::stoi(items[0]);
        RatFunc u = parse_ratfunc(F, items[1]);
        w.push_back(alg.letter(s, u));
        skip();
    }
    if (w.empty()) throw ParseError("empty word literal", pos);
    return w;
}

StuffleElement parse_element(StuffleAlgebra& alg, const std::string& text) {
    // split on top-level + and - (keeping signs), then parse [coeff *] word
    const FieldPtr& F = alg.context().field();
    std::vector<std::pair<bool, std::string>> terms;  // (negated, body)
    std::string cur;
    bool neg = false;
    int depth = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-') && !cur.empty()) {
            terms.emplace_back(neg, cur);
            cur.clear();
            neg = (c == '-');
            continue;
        }
        if (depth == 0 && c == '-' && cur.empty()) {
            neg = !neg;
            continue;
        }
        cur += c;
    }
    if (!cur.empty()) terms.emplace_back(neg, cur);
    StuffleElement e;
    for (auto& [negated, body] : terms) {
        // find the first 'z' at depth 0: before it is the coefficient
        size_t zpos = std::string::npos;
        int d = 0;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '[' || body[i] == '(') ++d;
            if (body[i] == ']' || body[i] == ')') --d;
            if (d == 0 && body[i] == 'z') {
                zpos = i;
                break;
            }
        }
        RatFunc coeff = RatFunc::one(F);
        Word w;
        if (zpos == std::string::npos) {
            coeff = parse_ratfunc(F, body);  // a constant term (empty word)
        } else {
            std::string chead = body.substr(0, zpos);
            // strip a trailing '*'
            while (!chead.empty() && (std::isspace(static_cast<unsigned char>(chead.back())) || chead.back() == '*'))
                chead.pop_back();
            if (!chead.empty()) coeff = parse_ratfunc(F, chead);
            w = parse_word(alg, body.substr(zpos));
        }
        if (negated) coeff = -coeff;
        e = add(e, alg.monomial(w, coeff));
    }
    return e;
}

// ------------------------------------------------------------- rendering

namespace {

std::string coeff_str(const FieldPtr& F, uint16_t c, bool* needs_parens) {
    std::string s = F->to_string(c);
    *needs_parens = F->e() > 1 && s.find('+') != std::string::npos;
    return s;
}

}  // namespace

std::string poly_to_string(const Poly& a) {
    if (a.is_zero()) return "0";
    const FieldPtr& F = a.field();
    std::string out;
    for (size_t i = a.coeffs().size(); i-- > 0;) {
        uint16_t c = a.coeffs()[i];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        bool parens = false;
        std::string cs = coeff_str(F, c, &parens);
        if (i == 0) {
            out += parens ? "(" + cs + ")" : cs;
        } else {
            if (c != 1) out += (parens ? "(" + cs + ")" : cs) + "*";
            out += "T";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::string ratfunc_to_string(const RatFunc& x) {
    if (x.is_zero()) return "0";
    if (x.is_integral()) return poly_to_string(x.num());
    std::string n = poly_to_string(x.num());
    std::string d = poly_to_string(x.den());
    return "(" + n + ")/(" + d + ")";
}

std::string index_to_string(const Index& s) {
    std::string out = "[";
    for (int i = 0; i < s.dep(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

std::string inf_series_to_string(const InfSeries& s) {
    std::ostringstream os;
    if (!s.is_zero_state()) {
        const FieldPtr& F = s.field();
        bool first = true;
        for (long long n = s.valuation(); n <= s.precision(); ++n) {
            uint16_t c = s.coeff(n);
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            bool parens = false;
            std::string cs = coeff_str(F, c, &parens);
            if (n == 0) {
                os << (parens ? "(" + cs + ")" : cs);
                continue;
            }
            if (c != 1) os << (parens ? "(" + cs + ")" : cs) << "*";
            os << "T^" << -n;  // the series runs in powers of 1/T
        }
        if (first) os << "0";  // value is zero on the stored range (cannot happen after normalize)
        os << " + ";
    }
    os << "O(T^-" << s.precision() + 1 << ")";
    return os.str();
}

std::string vadic_series_to_string(const VAdicSeries& s) {
    std::ostringstream os;
    if (!s.is_zero_state()) {
        bool first = true;
        for (long long n = s.valuation(); n <= s.precision(); ++n) {
            Poly a = s.digit(n);
            if (a.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            bool simple = a.coeffs().size() == 1 && a.coeffs()[0] == 1;
            std::string as = poly_to_string(a);
            bool parens = as.find('+') != std::string::npos || as.find('*') != std::string::npos;
            if (n == 0) {
                os << (parens ? "(" + as + ")" : as);
                continue;
            }
            if (!simple) os << (parens ? "(" + as + ")" : as) << "*";
            os << "v^" << n;
        }
        if (first) os << "0";
        os << " + ";
    }
    os << "O(v^" << s.precision() + 1 << ")";
    return os.str();
}

std::string word_to_string(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (const Letter& z : w) out += "z[" + std::to_string(z.s) + "," + ratfunc_to_string(z.u) + "]";
    return out;
}

std::string element_to_string(const StuffleElement& e) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : e) {
        if (!out.empty()) out += " + ";
        if (!c.is_one()) out += ratfunc_to_string(c) + (w.empty() ? "" : "*");
        else if (w.empty()) out += "1";
        out += w.empty() ? "" : word_to_string(w);
    }
    return out;
}

// ------------------------------------------------------------- certificates

Certificate certificate_from_json(const FieldPtr& F, const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (j.contains("q")) {
        uint32_t p = j["q"].at("p").get<uint32_t>();
        uint32_t e = j["q"].value("e", 1u);
        if (p != F->p() || e != F->e())
            throw std::invalid_argument("certificate field F_{" + std::to_string(p) + "^" + std::to_string(e) +
                                        "} does not match the configured field");
    }
    Certificate c;
    std::vector<int> idx = j.at("index").get<std::vector<int>>();
    c.target = Index(idx);
    for (const auto& t : j.at("terms")) {
        CertTerm term;
        term.b = parse_ratfunc(F, t.at("b").get<std::string>());
        term.index = Index(t.at("index").get<std::vector<int>>());
        for (const auto& us : t.at("u")) term.u.push_back(parse_poly(F, us.get<std::string>()));
        c.terms.push_back(std::move(term));
    }
    c.provenance = j.value("provenance", "");
    return c;
}

std::string certificate_to_json(const FieldPtr& F, const Certificate& c) {
    nlohmann::json j;
    j["q"] = {{"p", F->p()}, {"e", F->e()}};
    j["index"] = c.target.parts();
    j["terms"] = nlohmann::json::array();
    for (const CertTerm& t : c.terms) {
        nlohmann::json tj;
        tj["b"] = ratfunc_to_string(t.b);
        tj["index"] = t.index.parts();
        tj["u"] = nlohmann::json::array();
        for (const Poly& u : t.u) tj["u"].push_back(poly_to_string(u));
        j["terms"].push_back(tj);
    }
    j["provenance"] = c.provenance;
    return j.dump(2);
}

Certificate load_certificate_file(const FieldPtr& F, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return certificate_from_json(F, ss.str());
}

}  // namespace fqmzv

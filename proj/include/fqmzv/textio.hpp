#ifndef FQMZV_TEXTIO_HPP
#define FQMZV_TEXTIO_HPP

#include "fqmzv/mzv.hpp"

namespace fqmzv {

/// Raised on malformed input text; carries the offending position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    size_t position;
};

/// Rational expression in the polynomial grammar: variable `T`, prime-field
/// coefficients as decimal digits, `g` the extension generator, operators
/// + - * / ^ and parentheses, whitespace-insensitive.
RatFunc parse_ratfunc(const FieldPtr& F, const std::string& text);
/// Same grammar restricted to polynomials (rejects a surviving denominator).
Poly parse_poly(const FieldPtr& F, const std::string& text);
/// Index literal `[2,1]`.
Index parse_index(const std::string& text);
/// Vector literal `[T, 1/(T+1), 0]`.
std::vector<RatFunc> parse_vector(const FieldPtr& F, const std::string& text);
/// Word literal `z[1,T]z[2,T+1]`; `1` denotes the empty word.
Word parse_word(const StuffleAlgebra& alg, const std::string& text);
/// Element literal `c1*word1 + c2*word2` with RatFunc coefficients.
StuffleElement parse_element(StuffleAlgebra& alg, const std::string& text);

std::string poly_to_string(const Poly& a);
std::string ratfunc_to_string(const RatFunc& x);
std::string index_to_string(const Index& s);
std::string inf_series_to_string(const InfSeries& s);
std::string vadic_series_to_string(const VAdicSeries& s);
std::string word_to_string(const Word& w);
std::string element_to_string(const StuffleElement& e);

/// Certificate JSON:
/// {"q": {"p":2,"e":1,"modulus":"g^2+g+1"?}, "index":[2,1],
///  "terms":[{"b":"1/(T+1)","index":[2,1],"u":["T","1"]},...],
///  "provenance":"..."}
Certificate certificate_from_json(const FieldPtr& F, const std::string& json_text);
std::string certificate_to_json(const FieldPtr& F, const Certificate& c);
/// Loads a certificate file and checks its field matches F.
Certificate load_certificate_file(const FieldPtr& F, const std::string& path);

}  // namespace fqmzv

#endif

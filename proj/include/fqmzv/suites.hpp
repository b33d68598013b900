#ifndef FQMZV_SUITES_HPP
#define FQMZV_SUITES_HPP

#include "fqmzv/textio.hpp"

namespace fqmzv {

struct CheckRecord {
    std::string id;
    std::string verdict;  // PASS | FAIL | CANNOT_CHECK | ERROR
    std::string precision_claimed;
    long long elapsed_ms = 0;
    std::string detail;
};

struct SuiteConfig {
    uint32_t p = 2;
    uint32_t e = 1;
    std::string modulus;  // optional, e > 1
    std::string v_text = "T";
    long long N_inf = 40;
    long long M_v = 30;
    int jobs = 1;
    std::vector<std::string> cert_paths;
};

FieldPtr make_field(const SuiteConfig& cfg);
PlacePtr make_place(const FieldPtr& F, const SuiteConfig& cfg);

/// The acceptance criteria, one record per criterion (plus sub-records where
/// a criterion spans several places or fields).  Criteria fix their own
/// field/place parameters; the config supplies jobs and certificate paths.
std::vector<CheckRecord> run_acceptance(const SuiteConfig& cfg);

/// Exact-identity battery on the configured field/place.
std::vector<CheckRecord> run_invariants(const SuiteConfig& cfg);

/// The worked product example: zeta(1)_v^2 = zeta(2)_v at the configured
/// field (nontrivial for q = 2^l > 2; the q = 2 case degenerates to 0 = 0).
std::vector<CheckRecord> run_paper_example(const SuiteConfig& cfg);

std::string render_text(const std::vector<CheckRecord>& records);
std::string render_json(const std::vector<CheckRecord>& records);
bool all_pass(const std::vector<CheckRecord>& records);

}  // namespace fqmzv

#endif

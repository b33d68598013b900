#include "fqmzv/suites.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace fqmzv {

FieldPtr make_field(const SuiteConfig& cfg) {
    if (cfg.e > 1 && !cfg.modulus.empty()) {
        // modulus written in g over F_p
        auto Fp = Field::make(cfg.p);
        Poly m = parse_poly(Fp, [&] {
            std::string s = cfg.modulus;
            for (auto& c : s)
                if (c == 'g') c = 'T';
            return s;
        }());
        std::vector<uint16_t> coeffs = m.coeffs();
        return Field::make(cfg.p, cfg.e, coeffs);
    }
    return Field::make(cfg.p, cfg.e);
}

PlacePtr make_place(const FieldPtr& F, const SuiteConfig& cfg) {
    return std::make_shared<Place>(F, parse_poly(F, cfg.v_text));
}

namespace {

using Clock = std::chrono::steady_clock;

struct Recorder {
    std::vector<CheckRecord> records;
    std::mutex mu;

    void run(const std::string& id, const std::string& precision, const std::function<std::pair<bool, std::string>()>& body) {
        auto t0 = Clock::now();
        CheckRecord rec;
        rec.id = id;
        rec.precision_claimed = precision;
        try {
            auto [pass, detail] = body();
            rec.verdict = pass ? "PASS" : "FAIL";
            rec.detail = detail;
        } catch (const std::exception& ex) {
            rec.verdict = "ERROR";
            rec.detail = ex.what();
        }
        rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
        std::lock_guard<std::mutex> lock(mu);
        records.push_back(std::move(rec));
    }
};

void run_parallel(int jobs, std::vector<std::function<void()>> tasks) {
    if (jobs <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                tasks[i]();
            }
        });
    for (auto& th : pool) th.join();
}

// the s/u grid shared by the P_i-row, key-identity and log/series criteria:
// all indices with wt <= 5, dep <= 3, u entries from {1, theta, theta+1}
std::vector<Index> grid_indices(int wt_max, int dep_max) {
    std::vector<Index> out;
    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& cur, int wt_left) {
        if (!cur.empty()) out.push_back(Index(cur));
        if (static_cast<int>(cur.size()) == dep_max) return;
        for (int s = 1; s <= wt_left; ++s) {
            cur.push_back(s);
            rec(cur, wt_left - s);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    rec(cur, wt_max);
    return out;
}

std::vector<std::vector<RatFunc>> u_tuples(const FieldPtr& F, int len) {
    std::vector<RatFunc> pool{RatFunc::one(F), RatFunc::theta(F), RatFunc(Poly(F, {1, 1}))};
    std::vector<std::vector<RatFunc>> out;
    std::function<void(std::vector<RatFunc>&)> rec = [&](std::vector<RatFunc>& cur) {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (const RatFunc& u : pool) {
            cur.push_back(u);
            rec(cur);
            cur.pop_back();
        }
    };
    std::vector<RatFunc> cur;
    rec(cur);
    return out;
}

std::string ms_detail(size_t checks) { return std::to_string(checks) + " checks"; }

// ---------------------------------------------------------------- criteria

void criterion1(Recorder& rec) {
    rec.run("A01.q4.zeta1_sq_eq_zeta2.v_theta", "v^25", [] {
        SuiteConfig cfg;
        cfg.p = 2;
        cfg.e = 2;
        auto F = make_field(cfg);
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        EvalContext ctx(F, P);
        long long M = 25;
        VAdicSeries z1 = zeta_v_depth1(ctx, 1, M, 40);
        VAdicSeries z2 = zeta_v_depth1(ctx, 2, M, 40);
        if (z1.is_zero_through(M)) return std::make_pair(false, std::string("zeta(1)_theta vanished through v^25"));
        VAdicSeries sq = z1 * z1;
        long long thru = std::min<long long>(M, sq.precision());
        if (thru < M) return std::make_pair(false, std::string("precision shortfall"));
        auto m = match_through(sq, z2, M);
        std::ostringstream os;
        os << "zeta(1)_theta = " << vadic_series_to_string(z1.truncated(8)) << " ...; square matches zeta(2)_theta through v^" << M;
        if (!m.equal) os << "; FIRST MISMATCH at v^" << m.first_mismatch;
        return std::make_pair(m.equal, os.str());
    });
}

void criterion2(Recorder& rec) {
    rec.run("A02.q2.trivial_zeros.v_theta", "v^30", [] {
        auto F = Field::make(2);
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        EvalContext ctx(F, P);
        long long M = 30;
        VAdicSeries z1 = zeta_v_depth1(ctx, 1, M, 40);
        VAdicSeries z2 = zeta_v_depth1(ctx, 2, M, 40);
        bool ok = z1.is_zero_through(M) && z2.is_zero_through(M);
        std::string detail = "zeta(1)_theta and zeta(2)_theta vanish through v^30; the relation holds as 0 = 0";
        if (!ok) detail = "a claimed trivial zero is nonzero";
        return std::make_pair(ok, detail);
    });
}

void criterion3(Recorder& rec) {
    rec.run("A03.q3.goss_trivial_zero", "v^15", [] {
        auto F = Field::make(3);
        std::ostringstream os;
        bool ok = true;
        for (const Poly& v : {Poly::theta(F), Poly(F, {1, 0, 1})}) {
            auto P = std::make_shared<Place>(F, v);
            EvalContext ctx(F, P);
            VAdicSeries z = zeta_v_depth1(ctx, 2, 15, 40);
            bool zero = z.is_zero_through(15);
            ok = ok && zero;
            os << "zeta(2) at v = " << poly_to_string(v) << (zero ? " = 0" : " != 0") << " through v^15; ";
        }
        return std::make_pair(ok, os.str());
    });
}

void criterion4(Recorder& rec) {
    rec.run("A04.stuffle_trunc_multiplicativity", "exact (zero tolerance)", [] {
        size_t checks = 0;
        for (uint32_t q : {2u, 3u}) {
            auto F = Field::make(q);
            auto P = std::make_shared<Place>(F, Poly::theta(F));
            EvalContext ctx(F, P);
            StuffleAlgebra alg(ctx);
            RatFunc th = RatFunc::theta(F), one = RatFunc::one(F), th1 = RatFunc(Poly(F, {1, 1}));
            std::vector<RatFunc> us{one, th, th1};
            std::mt19937_64 rng(777 + q);
            std::uniform_int_distribution<int> dlen(1, 3), ds(1, 3), du(0, 2);
            auto rand_h0_word = [&] {
                Word w;
                w.push_back(alg.letter(ds(rng), th));  // X^0 head at v = theta
                int len = dlen(rng);
                for (int i = 1; i < len; ++i) w.push_back(alg.letter(ds(rng), us[static_cast<size_t>(du(rng))]));
                return w;
            };
            for (int it = 0; it < 100; ++it) {
                Word w = rand_h0_word(), wp = rand_h0_word();
                for (int n = 0; n <= 4; ++n) {
                    auto verdict = alg.check_trunc(w, wp, n);
                    ++checks;
                    if (!verdict.pass)
                        return std::make_pair(false, "exact multiplicativity failed for " + word_to_string(w) +
                                                         " * " + word_to_string(wp) + " at n=" + std::to_string(n));
                }
            }
        }
        return std::make_pair(true, ms_detail(checks) + ", 200 word pairs over q in {2,3}, exact RatFunc equality");
    });
}

void criterion5(Recorder& rec, int jobs) {
    rec.run("A05.log_row_oracle", "exact (zero tolerance)", [jobs] {
        auto F = Field::make(2);
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        EvalContext ctx(F, P);
        std::atomic<size_t> checks{0};
        std::atomic<bool> ok{true};
        std::string first_fail;
        std::mutex fail_mu;
        std::vector<std::function<void()>> tasks;
        for (const Index& s : grid_indices(5, 3)) {
            for (const auto& u : u_tuples(F, s.dep() - 1)) {
                tasks.push_back([&, s, u] {
                    if (!ok.load()) return;
                    std::vector<RatFunc> uu = u;
                    uu.push_back(RatFunc::one(F));  // u_r unused by G
                    LogCoeffsPtr L = ctx.log_coeffs(s, uu);
                    for (int i = 0; i <= 6; ++i) {
                        auto oracle = wt_row_oracle(*L->module(), i);
                        if (oracle != L->wt_row(i)) {
                            std::lock_guard<std::mutex> lk(fail_mu);
                            ok = false;
                            first_fail = "row mismatch at s=" + index_to_string(s) + ", i=" + std::to_string(i);
                            return;
                        }
                        ++checks;
                    }
                });
            }
        }
        run_parallel(jobs, std::move(tasks));
        if (!ok) return std::make_pair(false, first_fail);
        return std::make_pair(true, ms_detail(checks) + " (rows i <= 6, wt <= 5, dep <= 3, u in {1,theta,theta+1})");
    });
}

void criterion6(Recorder& rec, int jobs) {
    rec.run("A06.key_identity", "theta^-30 and v^20", [jobs] {
        auto F = Field::make(2);
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        EvalContext ctx(F, P);
        std::atomic<size_t> checks{0};
        std::atomic<bool> ok{true};
        std::string first_fail;
        std::mutex fail_mu;
        std::vector<std::function<void()>> tasks;
        for (const Index& s : grid_indices(5, 3)) {
            for (const auto& uprefix : u_tuples(F, s.dep() - 1)) {
                tasks.push_back([&, s, uprefix] {
                    if (!ok.load()) return;
                    std::vector<RatFunc> u = uprefix;
                    u.push_back(RatFunc::one(F));
                    auto G = build_G(F, s, u);
                    uint64_t seed = 10007;
                    for (int k : s.parts()) seed = seed * 31 + static_cast<uint64_t>(k);
                    for (const auto& up : uprefix) seed = seed * 31 + (up.num().coeffs().empty() ? 7 : up.num().coeffs().back());
                    std::mt19937_64 rng(seed);
                    std::uniform_int_distribution<int> bit(0, 1), small(0, 3);
                    // infinity-adic point inside the coordinate bounds:
                    // coordinate (m,j) admits polynomials of degree <= j + d_m - 1 at q=2
                    std::vector<RatFunc> x;
                    for (int b = 1; b <= G->dim(); ++b) {
                        auto [m, j] = G->block_of(b);
                        int maxdeg = std::min(j + G->blocks()[static_cast<size_t>(m - 1)] - 1, 4);
                        if (small(rng) == 0) {
                            x.push_back(RatFunc::zero(F));
                            continue;
                        }
                        std::vector<uint16_t> c(static_cast<size_t>(maxdeg) + 1, 0);
                        for (auto& cc : c) cc = static_cast<uint16_t>(bit(rng));
                        x.push_back(RatFunc(Poly(F, std::move(c))));
                    }
                    auto vinf = chen_weight_coordinate_inf(ctx, s, u, x, 30);
                    if (!vinf.pass) {
                        std::lock_guard<std::mutex> lk(fail_mu);
                        ok = false;
                        first_fail = "infinity-adic key identity failed at s=" + index_to_string(s);
                        return;
                    }
                    ++checks;
                    // v-adic point with |x|_v < 1: v times small polynomials
                    std::vector<RatFunc> xv;
                    for (int b = 1; b <= G->dim(); ++b) {
                        std::vector<uint16_t> c(3, 0);
                        for (auto& cc : c) cc = static_cast<uint16_t>(bit(rng));
                        xv.push_back(RatFunc(Poly::theta(F) * Poly(F, std::move(c))));
                    }
                    auto vv = chen_weight_coordinate_v(ctx, s, u, xv, 20);
                    if (!vv.pass) {
                        std::lock_guard<std::mutex> lk(fail_mu);
                        ok = false;
                        first_fail = "v-adic key identity failed at s=" + index_to_string(s);
                        return;
                    }
                    ++checks;
                });
            }
        }
        run_parallel(jobs, std::move(tasks));
        if (!ok) return std::make_pair(false, first_fail);
        return std::make_pair(true, ms_detail(checks) + " (both completions, sampled points inside the stated bounds)");
    });
}

void criterion7(Recorder& rec, int jobs) {
    rec.run("A07.log_series_consistency", "claimed precision (theta^-20 / v^15)", [jobs] {
        auto F = Field::make(2);
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        EvalContext ctx(F, P);
        std::atomic<size_t> checks{0};
        std::atomic<bool> ok{true};
        std::string first_fail;
        std::mutex fail_mu;
        std::vector<std::function<void()>> tasks;
        for (const Index& s : grid_indices(5, 3)) {
            for (const auto& u : u_tuples(F, s.dep())) {
                tasks.push_back([&, s, u] {
                    if (!ok.load()) return;
                    const int r = s.dep();
                    LogCoeffsPtr L = ctx.log_coeffs(s, u);
                    auto vpt = special_point(F, s, u);
                    long long N = 20;
                    InfSeries wt_coord = eval_log_inf_wt(*L, vpt, N);
                    InfSeries li = li_star_inf(ctx, s.reversed(), std::vector<RatFunc>(u.rbegin(), u.rend()), N);
                    if ((r - 1) % 2 == 1) li = -li;
                    if (!match_through(wt_coord, li, N).equal) {
                        std::lock_guard<std::mutex> lk(fail_mu);
                        ok = false;
                        first_fail = "infinity-adic log/series mismatch at s=" + index_to_string(s);
                        return;
                    }
                    ++checks;
                    // v-adic side whenever the reversed point lies in the open domain
                    if (*v_val(u.back(), P->v()) >= 1) {
                        long long M = 15;
                        VAdicSeries wt_v = eval_log_v_wt(*L, vpt, P, M);
                        VAdicSeries liv = li_star_v_conv(ctx, s.reversed(), std::vector<RatFunc>(u.rbegin(), u.rend()), M);
                        if ((r - 1) % 2 == 1) liv = -liv;
                        if (!match_through(wt_v, liv, M).equal) {
                            std::lock_guard<std::mutex> lk(fail_mu);
                            ok = false;
                            first_fail = "v-adic log/series mismatch at s=" + index_to_string(s);
                            return;
                        }
                        ++checks;
                    }
                });
            }
        }
        run_parallel(jobs, std::move(tasks));
        if (!ok) return std::make_pair(false, first_fail);
        return std::make_pair(true, ms_detail(checks) + " ((-1)^{r-1} Li*_{rev s}(rev u) vs the wt coordinate at v_{s,u})");
    });
}

void criterion8(Recorder& rec) {
    rec.run("A08.at_independence", "v^20", [] {
        auto F = Field::make(2);
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        EvalContext ctx(F, P);
        size_t checks = 0;
        for (const Index& s : grid_indices(5, 3)) {
            if (checks >= 20) break;
            for (const auto& u : u_tuples(F, s.dep())) {
                if (checks >= 20) break;
                VAdicSeries a0 = li_star_v_extended(ctx, s, u, 20, 0);
                VAdicSeries a1 = li_star_v_extended(ctx, s, u, 20, 1);
                if (!match_through(a0, a1, 20).equal)
                    return std::make_pair(false, "a(t)-dependence detected at s=" + index_to_string(s));
                ++checks;
            }
        }
        return std::make_pair(true, ms_detail(checks) + " (a(t) vs a(t)(v(t)^{d_1}-1), v^20)");
    });
}

void criterion9(Recorder& rec) {
    rec.run("A09.papanikolas_shape_and_congruence", "exact", [] {
        auto F = Field::make(2);
        size_t checks = 0;
        for (int s = 1; s <= 4; ++s)
            for (int m = 1; m <= 8; ++m) {
                auto rep = leading_shape_check(F, s, m);
                if (!rep.pass) return std::make_pair(false, rep.detail);
                ++checks;
            }
        for (int s = 1; s <= 3; ++s)
            for (const Poly& v : {Poly::theta(F), Poly(F, {1, 1}), Poly(F, {1, 1, 1})}) {
                auto rep = congruence_check(F, s, v);
                if (!rep.pass) return std::make_pair(false, rep.detail);
                ++checks;
            }
        return std::make_pair(true, ms_detail(checks) + " (leading shapes s<=4, m<=8; congruences s<=3, three places)");
    });
}

void criterion10(Recorder& rec) {
    rec.run("A10.shrinkage", "valuation >= 10", [] {
        auto F = Field::make(2);
        std::mt19937_64 rng(4242);
        std::uniform_int_distribution<int> bit(0, 1), val(1, 3), spick(1, 3);
        size_t checks = 0;
        for (int it = 0; it < 50; ++it) {
            int s = spick(rng);
            auto P = std::make_shared<Place>(F, it % 5 == 0 ? Poly(F, {1, 1}) : Poly::theta(F));
            std::vector<VAdicSeries> x;
            for (int b = 0; b < s; ++b) {
                std::vector<uint16_t> c(3, 0);
                for (auto& cc : c) cc = static_cast<uint16_t>(bit(rng));
                Poly poly = P->v().pow(static_cast<uint64_t>(val(rng))) * Poly(F, std::move(c));
                x.push_back(embed_v(RatFunc(poly), P, 40));
            }
            int max_iter = 10 * s * static_cast<int>(P->degree());
            auto rep = shrinkage_check(F, s, P, x, 10, max_iter);
            if (!rep.pass) return std::make_pair(false, rep.detail);
            ++checks;
        }
        return std::make_pair(true, ms_detail(checks) + " (50 sampled points, norm bound at every step)");
    });
}

void criterion11(Recorder& rec, int jobs) {
    rec.run("A11.mzv_oracles_and_relations", "exact per-degree; relations through theta^-40", [jobs] {
        // part 1: DP vs brute force, exact
        for (uint32_t q : {2u, 3u}) {
            auto F = Field::make(q);
            auto P = std::make_shared<Place>(F, Poly::theta(F));
            EvalContext ctx(F, P);
            std::vector<Index> grid;
            for (int s1 = 1; s1 <= 4; ++s1) grid.push_back(Index({s1}));
            for (int s1 = 1; s1 <= 3; ++s1)
                for (int s2 = 1; s1 + s2 <= 4; ++s2) grid.push_back(Index({s1, s2}));
            for (const Index& s : grid)
                for (int D = 0; D <= 3; ++D)
                    if (zeta_truncated_exact(ctx, s, D) != zeta_brute_exact(ctx, s, D))
                        return std::make_pair(false, "DP != brute force at q=" + std::to_string(q) + ", s=" + index_to_string(s));
        }
        // part 2: every Chen relation with r+s <= 5 at q in {2,3,4}, N=40
        std::atomic<bool> ok{true};
        std::string first_fail;
        std::mutex fail_mu;
        std::atomic<size_t> relchecks{0};
        std::vector<std::function<void()>> tasks;
        for (uint32_t q : {2u, 3u, 4u}) {
            for (int r = 1; r <= 4; ++r)
                for (int s = 1; r + s <= 5; ++s) {
                    tasks.push_back([&, q, r, s] {
                        if (!ok.load()) return;
                        auto F = q == 4 ? Field::make(2, 2) : Field::make(q);
                        auto P = std::make_shared<Place>(F, Poly::theta(F));
                        EvalContext ctx(F, P);
                        QShuffleRelation rel = chen_product(F, r, s);
                        auto rep = verify_relation_inf(ctx, rel, 40);
                        if (rep.verdict != RelationVerdict::PASS) {
                            std::lock_guard<std::mutex> lk(fail_mu);
                            ok = false;
                            first_fail = "relation failed: q=" + std::to_string(q) + " zeta(" + std::to_string(r) +
                                         ")zeta(" + std::to_string(s) + "): " + rep.detail;
                            return;
                        }
                        ++relchecks;
                    });
                }
        }
        run_parallel(jobs, std::move(tasks));
        if (!ok) return std::make_pair(false, first_fail);
        return std::make_pair(true, std::to_string(relchecks.load()) + " relations + exact DP oracle grid");
    });
}

}  // namespace

std::vector<CheckRecord> run_acceptance(const SuiteConfig& cfg) {
    Recorder rec;
    std::vector<std::function<void()>> criteria{
        [&] { criterion1(rec); },  [&] { criterion2(rec); },           [&] { criterion3(rec); },
        [&] { criterion4(rec); },  [&] { criterion5(rec, cfg.jobs); }, [&] { criterion6(rec, cfg.jobs); },
        [&] { criterion7(rec, cfg.jobs); }, [&] { criterion8(rec); },  [&] { criterion9(rec); },
        [&] { criterion10(rec); }, [&] { criterion11(rec, cfg.jobs); }};
    // criteria share nothing; the heavy ones parallelize internally instead
    for (auto& c : criteria) c();
    std::sort(rec.records.begin(), rec.records.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    return std::move(rec.records);
}

std::vector<CheckRecord> run_paper_example(const SuiteConfig& cfg) {
    Recorder rec;
    rec.run("paper_example.zeta1_sq_eq_zeta2", "v^" + std::to_string(cfg.M_v), [&] {
        auto F = make_field(cfg);
        auto P = make_place(F, cfg);
        EvalContext ctx(F, P);
        long long M = cfg.M_v;
        VAdicSeries z1 = zeta_v_depth1(ctx, 1, M, cfg.N_inf);
        VAdicSeries z2 = zeta_v_depth1(ctx, 2, M, cfg.N_inf);
        VAdicSeries sq = z1 * z1;
        auto m = match_through(sq, z2, std::min<long long>(M, sq.precision()));
        std::ostringstream os;
        os << "zeta(1)_v = " << vadic_series_to_string(z1) << "\n";
        os << "zeta(2)_v = " << vadic_series_to_string(z2) << "\n";
        os << "zeta(1)_v^2 " << (m.equal ? "=" : "!=") << " zeta(2)_v through v^" << std::min<long long>(M, sq.precision());
        if (F->q() == 2) os << " (q = 2: both sides are Goss trivial zeros, the relation is 0 = 0)";
        return std::make_pair(m.equal, os.str());
    });
    rec.run("paper_example.li_star_chain", "v^" + std::to_string(std::min<long long>(cfg.M_v, 20)), [&] {
        // Li*_1(1)_v = (1/(v(theta)-1)) Li*_1(v)_v with a(t) = v(t) - 1
        auto F = make_field(cfg);
        auto P = make_place(F, cfg);
        EvalContext ctx(F, P);
        long long M = std::min<long long>(cfg.M_v, 20);
        VAdicSeries ext = li_star_v_extended(ctx, Index({1}), {RatFunc::one(F)}, M);
        VAdicSeries conv = li_star_v_conv(ctx, Index({1}), {RatFunc(P->v())}, M);
        VAdicSeries expected = conv / embed_v(RatFunc(P->v() - Poly::one(F)), P, M + 2);
        auto m = match_through(ext, expected, M);
        return std::make_pair(m.equal, std::string("Li*_1(1)_v = (1/(v(theta)-1)) Li*_1(v(theta))_v: ") +
                                           (m.equal ? "agrees" : "mismatch"));
    });
    std::sort(rec.records.begin(), rec.records.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    return std::move(rec.records);
}

std::vector<CheckRecord> run_invariants(const SuiteConfig& cfg) {
    Recorder rec;
    auto F = make_field(cfg);
    auto P = make_place(F, cfg);

    rec.run("inv.field_axioms", "exact", [&] {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<uint32_t> dist(0, F->q() - 1);
        for (int it = 0; it < 1000; ++it) {
            uint16_t a = static_cast<uint16_t>(dist(rng)), b = static_cast<uint16_t>(dist(rng)),
                     c = static_cast<uint16_t>(dist(rng));
            if (F->add(a, F->add(b, c)) != F->add(F->add(a, b), c)) return std::make_pair(false, std::string("+assoc"));
            if (F->mul(a, F->mul(b, c)) != F->mul(F->mul(a, b), c)) return std::make_pair(false, std::string("*assoc"));
            if (F->mul(a, F->add(b, c)) != F->add(F->mul(a, b), F->mul(a, c)))
                return std::make_pair(false, std::string("distributivity"));
            if (a != 0 && F->mul(a, F->inv(a)) != 1) return std::make_pair(false, std::string("inverse"));
        }
        return std::make_pair(true, std::string("1000 random triples"));
    });

    rec.run("inv.degree_and_valuations", "exact", [&] {
        std::mt19937_64 rng(2);
        std::uniform_int_distribution<int> dd(0, 10);
        std::uniform_int_distribution<uint32_t> dc(0, F->q() - 1);
        auto rp = [&] {
            std::vector<uint16_t> c(static_cast<size_t>(dd(rng)) + 1);
            for (auto& x : c) x = static_cast<uint16_t>(dc(rng));
            return Poly(F, std::move(c));
        };
        for (int it = 0; it < 300; ++it) {
            Poly a = rp(), b = rp();
            if (a.is_zero() || b.is_zero()) continue;
            if (*(a * b).degree() != *a.degree() + *b.degree()) return std::make_pair(false, std::string("deg"));
            if (*v_val(RatFunc(a * b), P->v()) != *v_val(RatFunc(a), P->v()) + *v_val(RatFunc(b), P->v()))
                return std::make_pair(false, std::string("v_val additivity"));
            if (*RatFunc(a * b).val_inf() != *RatFunc(a).val_inf() + *RatFunc(b).val_inf())
                return std::make_pair(false, std::string("val_inf additivity"));
            if ((a + b).frobenius(1) != a.frobenius(1) + b.frobenius(1)) return std::make_pair(false, std::string("frob +"));
            if ((a * b).frobenius(1) != a.frobenius(1) * b.frobenius(1)) return std::make_pair(false, std::string("frob *"));
        }
        return std::make_pair(true, std::string("300 random pairs"));
    });

    rec.run("inv.embed_roundtrip", "theta^-25 / v^20", [&] {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> dd(0, 6);
        std::uniform_int_distribution<uint32_t> dc(0, F->q() - 1);
        auto rr = [&] {
            auto mk = [&] {
                std::vector<uint16_t> c(static_cast<size_t>(dd(rng)) + 1);
                for (auto& x : c) x = static_cast<uint16_t>(dc(rng));
                return Poly(F, std::move(c));
            };
            Poly n = mk(), d = mk();
            while (d.is_zero()) d = mk();
            return RatFunc(n, d);
        };
        for (int it = 0; it < 500; ++it) {
            RatFunc a = rr(), b = rr();
            InfSeries pa = embed_inf(a, 25) * embed_inf(b, 25);
            if (!match_through(pa, embed_inf(a * b, pa.precision()), pa.precision()).equal)
                return std::make_pair(false, std::string("inf product roundtrip"));
            VAdicSeries va = embed_v(a, P, 20) * embed_v(b, P, 20);
            if (!match_through(va, embed_v(a * b, P, va.precision()), va.precision()).equal)
                return std::make_pair(false, std::string("v product roundtrip"));
        }
        return std::make_pair(true, std::string("500 random pairs, both completions"));
    });

    rec.run("inv.tau_ring_homomorphism", "exact", [&] {
        EvalContext ctx(F, P);
        std::mt19937_64 rng(4);
        std::uniform_int_distribution<int> dd(0, 4);
        std::uniform_int_distribution<uint32_t> dc(0, F->q() - 1);
        auto G = build_G(F, Index({2, 1}), {RatFunc::theta(F), RatFunc::one(F)});
        for (int it = 0; it < 50; ++it) {
            std::vector<uint16_t> ca(static_cast<size_t>(dd(rng)) + 1), cb(static_cast<size_t>(dd(rng)) + 1);
            for (auto& x : ca) x = static_cast<uint16_t>(dc(rng));
            for (auto& x : cb) x = static_cast<uint16_t>(dc(rng));
            Poly a(F, ca), b(F, cb);
            if (fqt_action(*G, a) * fqt_action(*G, b) != fqt_action(*G, a * b))
                return std::make_pair(false, std::string("[a][b] != [ab]"));
        }
        return std::make_pair(true, std::string("50 random pairs on G_{(2,1),(theta,1)}"));
    });

    rec.run("inv.logexp_functional_equations", "exact + composition mod tau^4", [&] {
        for (const Index& s : {Index({2, 1}), Index({1, 1, 1})}) {
            std::vector<RatFunc> u(static_cast<size_t>(s.dep()), RatFunc::one(F));
            u[0] = RatFunc::theta(F);
            auto G = build_G(F, s, u);
            LogCoeffs L(G);
            ExpCoeffs E(G);
            Mat<RatFunc> I = Mat<RatFunc>::identity(G->dim(), RatFunc::zero(F), RatFunc::one(F));
            for (int i = 1; i <= 3; ++i) {
                RatFunc thqi(Poly::monomial(F, 1, 1).frobenius(static_cast<unsigned>(i)));
                Mat<RatFunc> Etw = G->E().map([&](const RatFunc& x) { return x.frobenius(static_cast<unsigned>(i - 1)); });
                if (L.matrix(i) * (I.scaled(thqi) + G->N()) + L.matrix(i - 1) * Etw !=
                    (I.scaled(RatFunc::theta(F)) + G->N()) * L.matrix(i))
                    return std::make_pair(false, std::string("log functional equation"));
                Mat<RatFunc> Qtw = E.matrix(i - 1).map([](const RatFunc& x) { return x.frobenius(1); });
                if (E.matrix(i) * (I.scaled(thqi) + G->N()) !=
                    (I.scaled(RatFunc::theta(F)) + G->N()) * E.matrix(i) + G->E() * Qtw)
                    return std::make_pair(false, std::string("exp functional equation"));
            }
            if (TauMatPoly::mul_truncated(exp_operator(E, 3), log_operator(L, 3), 3) !=
                TauMatPoly::identity(F, static_cast<size_t>(G->dim())))
                return std::make_pair(false, std::string("exp o log != id mod tau^4"));
        }
        return std::make_pair(true, std::string("two modules, orders <= 3"));
    });

    rec.run("inv.tractable_wt_row", "exact", [&] {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<int> dd(0, 4);
        std::uniform_int_distribution<uint32_t> dc(0, F->q() - 1);
        auto G = build_G(F, Index({1, 2}), {RatFunc::theta(F), RatFunc::one(F)});
        for (int it = 0; it < 100; ++it) {
            std::vector<uint16_t> ca(static_cast<size_t>(dd(rng)) + 1);
            for (auto& x : ca) x = static_cast<uint16_t>(dc(rng));
            Poly a(F, ca);
            if (a.is_zero()) continue;
            Mat<RatFunc> da = d_act(*G, a);
            RatFunc atheta(a);
            for (int j = 1; j <= G->dim(); ++j) {
                const RatFunc& e = da(static_cast<size_t>(G->wt() - 1), static_cast<size_t>(j - 1));
                if (j == G->wt() ? e != atheta : !e.is_zero())
                    return std::make_pair(false, std::string("wt row of d[a] is not a(theta) e_wt"));
            }
        }
        return std::make_pair(true, std::string("100 random a"));
    });

    rec.run("inv.stuffle_algebra", "exact", [&] {
        EvalContext ctx(F, P);
        StuffleAlgebra alg(ctx);
        RatFunc th = RatFunc::theta(F), one = RatFunc::one(F), th1 = RatFunc(Poly(F, {1, 1}));
        std::vector<RatFunc> us{one, th, th1};
        std::mt19937_64 rng(6);
        std::uniform_int_distribution<int> dlen(0, 3), ds(1, 3), du(0, 2);
        auto rw = [&] {
            Word w;
            int len = dlen(rng);
            for (int i = 0; i < len; ++i) w.push_back(alg.letter(ds(rng), us[static_cast<size_t>(du(rng))]));
            return w;
        };
        for (int it = 0; it < 100; ++it) {
            Word a = rw(), b = rw(), c = rw();
            if (alg.star_words(a, b) != alg.star_words(b, a)) return std::make_pair(false, std::string("commutativity"));
            if (alg.star(alg.star_words(a, b), alg.monomial(c, one)) !=
                alg.star(alg.monomial(a, one), alg.star_words(b, c)))
                return std::make_pair(false, std::string("associativity"));
        }
        // H^0 closure on words with X^0 heads
        for (int it = 0; it < 30; ++it) {
            Word a = rw(), b = rw();
            Word ha, hb;
            ha.push_back(alg.letter(1, th));
            hb.push_back(alg.letter(2, th));
            ha.insert(ha.end(), a.begin(), a.end());
            hb.insert(hb.end(), b.begin(), b.end());
            if (!StuffleAlgebra::in_H0(alg.star_words(ha, hb))) return std::make_pair(false, std::string("H0 closure"));
        }
        return std::make_pair(true, std::string("100 triples + H0 closure"));
    });

    rec.run("inv.zeta_depth1_is_li_star_at_1", "theta^-" + std::to_string(cfg.N_inf), [&] {
        EvalContext ctx(F, P);
        for (int s = 1; s <= static_cast<int>(F->q()); ++s) {
            InfSeries z = zeta_inf(ctx, Index({s}), cfg.N_inf);
            InfSeries li = li_star_inf(ctx, Index({s}), {RatFunc::one(F)}, cfg.N_inf);
            if (!match_through(z, li, cfg.N_inf).equal)
                return std::make_pair(false, "zeta(" + std::to_string(s) + ") != Li*_s(1)");
        }
        return std::make_pair(true, std::string("s <= q"));
    });

    std::sort(rec.records.begin(), rec.records.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    return std::move(rec.records);
}

std::string render_text(const std::vector<CheckRecord>& records) {
    std::ostringstream os;
    for (const CheckRecord& r : records) {
        os << (r.verdict == "PASS" ? "[PASS] " : r.verdict == "FAIL" ? "[FAIL] " : "[" + r.verdict + "] ") << r.id
           << "  (precision " << r.precision_claimed << ", " << r.elapsed_ms << " ms)\n";
        if (!r.detail.empty()) os << "       " << r.detail << "\n";
    }
    size_t pass = 0;
    for (const CheckRecord& r : records)
        if (r.verdict == "PASS") ++pass;
    os << pass << "/" << records.size() << " checks passed\n";
    return os.str();
}

std::string render_json(const std::vector<CheckRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckRecord& r : records)
        arr.push_back({{"id", r.id},
                       {"verdict", r.verdict},
                       {"precision_claimed", r.precision_claimed},
                       {"elapsed_ms", r.elapsed_ms},
                       {"detail", r.detail}});
    return arr.dump(2);
}

bool all_pass(const std::vector<CheckRecord>& records) {
    for (const CheckRecord& r : records)
        if (r.verdict != "PASS") return false;
    return true;
}

}  // namespace fqmzv

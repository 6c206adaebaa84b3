// Acceptance run: one PASS/FAIL line per criterion.
//
//   ccp_acceptance [--only 1,4,...] [--known-fail 11,...]
//
// Criteria listed with --known-fail are still evaluated and printed; they do
// not affect the exit status.

#include "oracles.hpp"

#include <ccp/ccp_core.hpp>
#include <ccp/combinatorics.hpp>
#include <ccp/irm_simulator.hpp>
#include <ccp/property_suite.hpp>
#include <ccp/ws_lru.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ccp;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (detail.size() < 8) {
                detail.push_back(what);
            }
        }
    }
    void note(const std::string& what) { detail.push_back(what); }
};

std::string fmt(double v, int prec = 6) {
    std::ostringstream s;
    s.precision(prec);
    s << v;
    return s.str();
}

Popularity exact_power_law(std::size_t N, long a) {
    return Popularity::power_law(N, Scalar(a));
}

// A fixed family of rational popularities for each N.
std::vector<Popularity> rational_family(std::size_t N, int random_count, std::uint64_t seed) {
    std::vector<Popularity> out{Popularity::uniform(N), exact_power_law(N, 1), exact_power_law(N, 2)};
    std::mt19937_64 gen(seed + N);
    for (int i = 0; i < random_count; ++i) {
        out.push_back(oracle::random_rational(gen, N, 12));
    }
    return out;
}

std::string describe(const Popularity& pop) {
    std::string s = "(";
    for (std::size_t i = 0; i < pop.size(); ++i) {
        s += (i ? "," : "") + pop.prob(i).to_string();
    }
    return s + ")";
}

Outcome criterion_1() {
    Outcome o;
    std::size_t compared = 0;
    std::size_t literal_checked = 0;
    for (std::size_t N = 2; N <= 6; ++N) {
        for (const Popularity& pop : rational_family(N, 4, 1)) {
            const unsigned k_max = static_cast<unsigned>(N + 6);
            const oracle::Pmfs chain = oracle::seen_set_chain(pop.exact(), k_max);

            // The chain aggregates streams by seen set; confirm it against
            // the literal enumeration wherever N^k stays below 10^6.
            unsigned k_lit = 0;
            for (double c = N; c <= 1e6 && k_lit < k_max; c *= static_cast<double>(N)) {
                ++k_lit;
            }
            const oracle::Pmfs lit = oracle::literal_streams(pop.exact(), k_lit, 1'000'000);
            for (unsigned k = 1; k <= k_lit; ++k) {
                for (std::size_t d = 0; d <= N; ++d) {
                    o.require(lit.w[k][d] == chain.w[k][d], "chain/literal W mismatch " + describe(pop));
                    ++literal_checked;
                }
                for (std::size_t n = 1; n <= N; ++n) {
                    o.require(lit.t[n][k] == chain.t[n][k], "chain/literal T mismatch " + describe(pop));
                    ++literal_checked;
                }
            }

            for (std::size_t n = 1; n <= N; ++n) {
                const unsigned top = static_cast<unsigned>(n + 6);
                const DistributionTable t = t_distribution(pop, n, top);
                for (unsigned k = 1; k <= top; ++k) {
                    o.require(t.pdf_at(k).exact() == chain.t[n][k],
                              "Pr[T_" + std::to_string(n) + "=" + std::to_string(k) + "] " + describe(pop));
                    ++compared;
                }
            }
            for (unsigned k = 1; k <= k_max; ++k) {
                const DistributionTable w = w_distribution(pop, k);
                for (std::size_t d = 0; d <= N; ++d) {
                    o.require(w.pdf_at(d).exact() == chain.w[k][d],
                              "Pr[W_" + std::to_string(k) + "=" + std::to_string(d) + "] " + describe(pop));
                    ++compared;
                }
            }
        }
    }
    o.note(std::to_string(compared) + " pmf entries equal, " + std::to_string(literal_checked) +
           " oracle entries cross-checked against literal streams");
    return o;
}

Rational el_complete_cdf(unsigned N, unsigned k) {
    Rational v(factorial(N) * stirling2(k, N));
    Integer pw = 1;
    for (unsigned e = 0; e < k; ++e) {
        pw *= static_cast<long>(N);
    }
    v /= Rational(pw);
    return v;
}

Outcome criterion_2() {
    Outcome o;
    for (std::size_t N = 2; N <= 12; ++N) {
        for (std::size_t n = 1; n <= N; ++n) {
            o.require(t_expectation(Popularity::uniform(N), n) == t_expectation_el(N, n),
                      "E[T_n] N=" + std::to_string(N) + " n=" + std::to_string(n));
        }
    }
    for (unsigned N = 2; N <= 10; ++N) {
        const DistributionTable t = t_distribution(Popularity::uniform(N), N, 40);
        for (unsigned k = 1; k <= 40; ++k) {
            o.require(t.cdf_at(k).exact() == el_complete_cdf(N, k),
                      "Pr[T_N<=k] N=" + std::to_string(N) + " k=" + std::to_string(k));
        }
    }
    o.note("expectations N<=12 and complete CDFs N<=10, k<=40 equal exactly");
    return o;
}

Outcome criterion_3() {
    Outcome o;
    std::mt19937_64 gen(303);
    std::uniform_int_distribution<std::size_t> size(2, 7);
    for (int i = 0; i < 50; ++i) {
        const Popularity pop = oracle::random_rational(gen, size(gen), 30);
        const unsigned N = static_cast<unsigned>(pop.size());
        for (int off = 0; off <= 3; ++off) {
            o.require(r_closed_form(pop, off) == r_value(pop, N + static_cast<unsigned>(off)).value,
                      "closed form offset " + std::to_string(off) + " " + describe(pop));
        }
        for (unsigned k = 1; k <= N + 5; ++k) {
            o.require(r_recurrence_step(pop, k) == r_value(pop, k).value,
                      "recurrence k=" + std::to_string(k) + " " + describe(pop));
        }
    }
    o.note("50 popularities: offsets 0-3 and recurrence steps equal R_N^k exactly");
    return o;
}

// sum_J (-1)^{|J|} (a + P_J)^N by direct enumeration of subsets.
Rational shifted_alternating_sum(const Popularity& pop, const Rational& a) {
    const auto p = pop.exact();
    const std::size_t N = p.size();
    Rational sum = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << N); ++mask) {
        Rational mass = a;
        for (std::size_t i = 0; i < N; ++i) {
            if (mask & (std::size_t{1} << i)) {
                mass += p[i];
            }
        }
        const Rational term = pow_int(mass, N);
        if (std::popcount(mask) % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

Outcome criterion_4() {
    Outcome o;
    std::size_t marginal = 0;
    for (std::size_t N = 2; N <= 7; ++N) {
        for (const Popularity& pop : rational_family(N, 2, 4)) {
            for (std::size_t n = 1; n < N; ++n) {
                for (unsigned k = 1; k <= N + 3; ++k) {
                    const CheckReport r = marginal_identities(pop, k, n);
                    o.require(r.passed, "marginal identities n=" + std::to_string(n) + " k=" +
                                            std::to_string(k) + " " + describe(pop));
                    ++marginal;
                }
            }
            for (std::size_t n = 1; n <= N; ++n) {
                o.require(ferrante_expectation(pop, n) == t_expectation(pop, n),
                          "ferrante n=" + std::to_string(n) + " " + describe(pop));
            }
            if (N <= 6) {
                const Scalar rnn = r_value(pop, static_cast<unsigned>(N)).value;
                for (const Rational& a : {Rational(1, 2), Rational(1), Rational(2)}) {
                    o.require(Scalar(shifted_alternating_sum(pop, a)) == rnn,
                              "shift a=" + a.get_str() + " " + describe(pop));
                }
            }
            // Full-history recurrence over R_N^N..R_N^{N+6}.
            const long NN = static_cast<long>(N);
            for (long k = NN + 1; k <= NN + 6; ++k) {
                Scalar s = 0;
                for (long u = NN; u < k; ++u) {
                    const Scalar term = Scalar(binomial(k, u)) * r_value(pop, static_cast<unsigned>(u)).value;
                    s += ((NN + u) % 2 == 0) ? term : -term;
                }
                const Rational half(1, 2);
                const Scalar want = ((k - NN) % 2 == 1) ? r_value(pop, static_cast<unsigned>(k)).value : Scalar(0);
                o.require(s * Scalar(half) == want, "full-history k=" + std::to_string(k) + " " + describe(pop));
            }
        }
    }
    // Uniform recurrences: new item with probability (N-n)/N, repeat otherwise.
    for (std::size_t N = 2; N <= 10; ++N) {
        const Popularity u = Popularity::uniform(N);
        const long NN = static_cast<long>(N);
        std::vector<DistributionTable> t;
        for (std::size_t n = 1; n <= N; ++n) {
            t.push_back(t_distribution(u, n, 31));
        }
        for (std::size_t n = 1; n < N; ++n) {
            const Rational fresh(NN - static_cast<long>(n), NN);
            const Rational stay(static_cast<long>(n), NN);
            for (unsigned k = 1; k <= 30; ++k) {
                const Scalar lhs = t[n].pdf_at(k + 1);
                const Scalar rhs = Scalar(Rational(fresh)) * t[n - 1].pdf_at(k) + Scalar(Rational(stay)) * t[n].pdf_at(k);
                o.require(lhs == rhs, "T recurrence N=" + std::to_string(N) + " n=" + std::to_string(n) +
                                          " k=" + std::to_string(k));
            }
        }
        for (unsigned k = 1; k < 30; ++k) {
            const DistributionTable wk = w_distribution(u, k);
            const DistributionTable wk1 = w_distribution(u, k + 1);
            for (std::size_t n = 0; n < N; ++n) {
                Rational fresh(NN - static_cast<long>(n), NN);
                fresh.canonicalize();
                Rational stay(static_cast<long>(n) + 1, NN);
                stay.canonicalize();
                const Scalar rhs = Scalar(fresh) * wk.pdf_at(n) + Scalar(stay) * wk.pdf_at(n + 1);
                o.require(wk1.pdf_at(n + 1) == rhs, "W recurrence N=" + std::to_string(N) +
                                                        " k=" + std::to_string(k) + " n=" + std::to_string(n));
            }
        }
    }
    o.note(std::to_string(marginal) +
           " marginal-identity reports, ferrante, shift, full-history, T and W recurrences exact");
    return o;
}

Outcome criterion_5() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const double e = 1000.0 * harmonic(1000).to_double();
    const double v = el_cdf_continuous(1000, e);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(v >= 0.568 && v <= 0.573, "value " + fmt(v) + " outside [0.568, 0.573]");
    o.require(secs < 5.0, "took " + fmt(secs) + " s");
    o.note("Pr[T_1000 <= 1000 H_1000] = " + fmt(v, 8));
    return o;
}

Outcome criterion_6() {
    Outcome o;
    std::string values;
    for (const auto& row : cdf_at_expectation(15, {0, 1, 2, 3, 4})) {
        o.require(row.cdf >= 0.55 && row.cdf <= 0.65, "a=" + fmt(row.a) + " cdf " + fmt(row.cdf));
        values += " a=" + fmt(row.a) + ":" + fmt(row.cdf, 5);
    }
    o.note("N=15" + values);
    return o;
}

Outcome criterion_7() {
    Outcome o;
    const double published[] = {4.36348, 3.44042, 2.47332, 1.49181, 0.509713};
    const Appendix14Result res = appendix14_search(6, 0.01);
    if (res.rows.size() != 5) {
        o.require(false, "expected rows for j = 2..6");
        return o;
    }
    std::string values;
    for (std::size_t i = 0; i < 5; ++i) {
        const auto& row = res.rows[i];
        o.require(std::abs(row.max_value - published[i]) <= 1e-2,
                  "j=" + std::to_string(row.j) + " max " + fmt(row.max_value));
        o.require(row.max_value <= row.bound, "j=" + std::to_string(row.j) + " above bound");
        values += " j=" + std::to_string(row.j) + ":" + fmt(row.max_value);
    }
    o.note(std::to_string(res.points) + " grid points;" + values);
    return o;
}

Outcome criterion_8() {
    Outcome o;
    for (std::size_t N = 2; N <= 20; ++N) {
        for (std::size_t j = 1; j < N; ++j) {
            const Scalar p = mr_delta_product(Popularity::uniform(N), j);
            o.require(p.is_exact() && p == Scalar(1),
                      "uniform N=" + std::to_string(N) + " j=" + std::to_string(j) + " gives " + p.to_string());
        }
    }
    std::string values;
    const Popularity zipf = exact_power_law(12, 1);
    for (std::size_t j = 8; j <= 11; ++j) {
        const double p = mr_delta_product(zipf, j).to_double();
        o.require(p >= 0.9 && p <= 1.1, "zipf j=" + std::to_string(j) + " product " + fmt(p));
        values += " j=" + std::to_string(j) + ":" + fmt(p, 5);
    }
    o.note("uniform products exactly 1 for N<=20; zipf N=12" + values);
    return o;
}

Outcome criterion_9() {
    Outcome o;
    std::size_t runs = 0;
    double worst = 0.0;
    double worst_fagin = 0.0;
    auto check = [&](const std::string& label, const SimReport& r, double ref, double floor_tol = 0.0) {
        const double tol = std::max(4.0 * r.ci95_halfwidth, floor_tol);
        const double dev = std::abs(r.estimate - ref);
        if (floor_tol > 0.0) {
            worst_fagin = std::max(worst_fagin, dev);
        } else if (r.ci95_halfwidth > 0) {
            worst = std::max(worst, dev / r.ci95_halfwidth);
        }
        o.require(dev <= tol, label + " estimate " + fmt(r.estimate) + " reference " + fmt(ref) +
                                  " ci95 " + fmt(r.ci95_halfwidth));
        ++runs;
    };
    SimConfig cfg;
    cfg.replications = 20000;
    std::uint64_t seed = 900;
    for (std::size_t N : {3U, 6U, 10U, 12U}) {
        for (std::size_t n : {(N + 1) / 2, N}) {
            cfg.seed = ++seed;
            check("uniform T N=" + std::to_string(N) + " n=" + std::to_string(n),
                  sim_waiting_time(Popularity::uniform(N), n, cfg), t_expectation_el(N, n).to_double());
            const Popularity zipf = exact_power_law(N, 1);
            cfg.seed = ++seed;
            check("zipf T N=" + std::to_string(N) + " n=" + std::to_string(n), sim_waiting_time(zipf, n, cfg),
                  t_expectation(zipf, n).to_double());
        }
    }

    SimConfig lru;
    lru.replications = 16;
    lru.stream_length = 200000;
    for (std::size_t N : {6U, 10U, 12U}) {
        for (std::size_t j : {std::size_t{1}, N / 2, N - 1}) {
            lru.seed = ++seed;
            check("uniform LRU N=" + std::to_string(N) + " j=" + std::to_string(j),
                  sim_lru_miss_rate(Popularity::uniform(N), j, lru), 1.0 - double(j) / double(N));
        }
    }
    // Fagin is an approximation of the exact LRU miss rate; its own error
    // sets a 0.02 absolute floor on the tolerance.
    const Popularity zipf12 = exact_power_law(12, 1).to_float();
    for (std::size_t j : {4U, 8U, 11U}) {
        lru.seed = ++seed;
        check("zipf LRU N=12 j=" + std::to_string(j), sim_lru_miss_rate(zipf12, j, lru),
              fagin_miss_rate(WsCurve{zipf12, WsBase::exact_base}, double(j)), 0.02);
    }

    SimConfig a;
    a.seed = 5;
    a.replications = 3000;
    a.threads = 1;
    SimConfig b = a;
    b.threads = 3;
    const SimReport x = sim_waiting_time(zipf12, 12, a);
    const SimReport y = sim_waiting_time(zipf12, 12, b);
    o.require(x.estimate == y.estimate && x.sample_variance == y.sample_variance,
              "waiting-time report depends on thread count");
    SimConfig la = lru;
    la.replications = 4;
    la.threads = 1;
    SimConfig lb = la;
    lb.threads = 4;
    o.require(sim_lru_miss_rate(zipf12, 6, la).estimate == sim_lru_miss_rate(zipf12, 6, lb).estimate,
              "LRU report depends on thread count");
    o.note(std::to_string(runs) + " simulations; exact references within " + fmt(worst, 3) +
           " ci95 half-widths, Fagin within " + fmt(worst_fagin, 3) + " absolute; reruns bit-identical");
    return o;
}

Outcome criterion_10() {
    Outcome o;
    std::mt19937_64 gen(1010);
    std::uniform_int_distribution<std::size_t> size(3, 7);
    std::size_t witnesses = 0;
    std::size_t indeterminate = 0;
    for (int i = 0; i < 1000; ++i) {
        const Popularity pop = oracle::random_non_uniform(gen, size(gen), 50);
        const std::size_t N = pop.size();
        const unsigned k_max = static_cast<unsigned>(N + 3);
        std::vector<CheckReport> reports{check_power_sum_bounds(pop, k_max),
                                         check_second_moment_bound(pop, k_max), check_product_lemmas(pop),
                                         check_el_extremality(pop, N, k_max)};
        for (std::size_t j = 1; j < N; ++j) {
            reports.push_back(check_subset_reciprocal_bound(pop, j));
        }
        for (const auto& r : reports) {
            o.require(r.passed, r.name + " failed for " + describe(pop));
            indeterminate += r.count(Verdict::indeterminate);
            witnesses += r.witnesses.size();
        }
    }
    o.require(indeterminate == 0, std::to_string(indeterminate) + " indeterminate witnesses");

    std::size_t boundary = 0;
    for (std::size_t N = 3; N <= 10; ++N) {
        const Popularity u = Popularity::uniform(N);
        const unsigned k_max = static_cast<unsigned>(N + 3);
        std::vector<CheckReport> reports{check_power_sum_bounds(u, k_max), check_second_moment_bound(u, k_max),
                                         check_product_lemmas(u), check_el_extremality(u, N, k_max)};
        for (std::size_t j = 1; j < N; ++j) {
            reports.push_back(check_subset_reciprocal_bound(u, j));
        }
        for (const auto& r : reports) {
            for (const auto& w : r.witnesses) {
                o.require(w.relation == Relation::equal && w.verdict == Verdict::pass && w.margin == Scalar(0),
                          "uniform N=" + std::to_string(N) + " " + r.name + ": " + w.input);
                ++boundary;
            }
        }
    }
    o.note(std::to_string(witnesses) + " strict witnesses on 1000 points, 0 indeterminate; " +
           std::to_string(boundary) + " uniform boundary equalities");
    return o;
}

Outcome criterion_11() {
    Outcome o;
    std::string cells;
    for (double a : {0.5, 1.0}) {
        const PowerLawModel m = PowerLawModel::make(100, a);
        const WsCurve curve{Popularity::power_law(100, Scalar(a)).to_float(), WsBase::exp_base};
        for (double D : {10.0, 50.0, 90.0}) {
            const double closed = ws_powerlaw_closed(m, D);
            const double direct = working_set(curve, D);
            const double rel = std::abs(closed - direct) / direct;
            o.require(rel <= 0.02, "a=" + fmt(a) + " D=" + fmt(D) + " closed " + fmt(closed) + " direct " +
                                       fmt(direct) + " rel " + fmt(rel, 3));
            cells += " a=" + fmt(a) + ",D=" + fmt(D) + ":" + fmt(100 * rel, 3) + "%";
            const double back = ws_powerlaw_closed(m, ws_powerlaw_inverse(m, D));
            o.require(std::abs(back - D) <= 1e-8, "inverse round trip a=" + fmt(a) + " D=" + fmt(D));
        }
    }
    o.note("relative gaps" + cells);
    return o;
}

std::set<int> parse_list(const char* text) {
    std::set<int> out;
    std::stringstream s(text);
    for (std::string item; std::getline(s, item, ',');) {
        out.insert(std::stoi(item));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    std::set<int> known_fail;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if ((arg == "--only" || arg == "--known-fail") && i + 1 < argc) {
            (arg == "--only" ? only : known_fail) = parse_list(argv[++i]);
        } else {
            std::cerr << "usage: ccp_acceptance [--only LIST] [--known-fail LIST]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact oracle equivalence", criterion_1},
        {"uniform closed forms", criterion_2},
        {"R-value ladder", criterion_3},
        {"identity suite", criterion_4},
        {"Erdos-Renyi limit", criterion_5},
        {"CDF at expectation", criterion_6},
        {"simplex grid table N=6", criterion_7},
        {"MR times delta-E", criterion_8},
        {"simulator agreement", criterion_9},
        {"inequality suite", criterion_10},
        {"power-law closed form", criterion_11},
    };

    int gating_failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && !only.count(id)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool known = known_fail.count(id) > 0;
        std::cout << "criterion " << id << " " << (out.pass ? "PASS" : "FAIL") << ": " << criteria[i].first
                  << " (" << fmt(secs, 3) << " s)";
        if (known) {
            std::cout << (out.pass ? " [listed as known failure but passed]" : " [known failure, not gating]");
        }
        std::cout << "\n";
        for (const auto& d : out.detail) {
            std::cout << "    " << d << "\n";
        }
        std::cout.flush();
        if (!out.pass && !known) {
            ++gating_failures;
        }
    }
    std::cout << (gating_failures == 0 ? "acceptance: all gating criteria pass\n"
                                       : "acceptance: " + std::to_string(gating_failures) +
                                             " gating criteria failed\n");
    return gating_failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

#include "ccp/cli.hpp"
#include "ccp/commands.hpp"
#include "ccp/popularity_source.hpp"

#include <ccp/ccp_core.hpp>
#include <ccp/combinatorics.hpp>
#include <ccp/errors.hpp>
#include <ccp/irm_simulator.hpp>
#include <ccp/property_suite.hpp>
#include <ccp/ws_lru.hpp>

#include <cmath>
#include <memory>
#include <optional>

namespace ccp::cli {

namespace {

WsBase parse_base(const std::string& s) {
    return s == "exp" ? WsBase::exp_base : WsBase::exact_base;
}

FaginVariant parse_variant(const std::string& s) {
    return s == "derivative" ? FaginVariant::derivative : FaginVariant::weighted;
}

Command make_dist(CLI::App& root) {
    struct Opts {
        PopularitySource source;
        std::string var;
        std::size_t n = 0;
        unsigned k_max = 0;
        unsigned k = 0;
        std::string format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* app = root.add_subcommand("dist", "Distribution table of T_n or W_k");
    o->source.attach(*app);
    app->add_option("--var", o->var, "T (waiting time) or W (working set)")
        ->required()
        ->check(CLI::IsMember({"T", "W"}));
    app->add_option("--n", o->n, "Collection size for T");
    app->add_option("--kmax", o->k_max, "Largest trial count for T (default n + 20)");
    app->add_option("--k", o->k, "Trial count for W");
    app->add_option("--format", o->format, "csv or json");
    return {app, [o](Streams s) {
                const Popularity pop = o->source.build();
                const Format format = parse_format(o->format);
                DistributionTable t;
                std::string index;
                if (o->var == "T") {
                    if (o->n == 0) {
                        throw ValidationError("dist --var T needs --n");
                    }
                    t = t_distribution(pop, o->n, o->k_max ? o->k_max : static_cast<unsigned>(o->n + 20));
                    index = "k";
                } else {
                    if (o->k == 0) {
                        throw ValidationError("dist --var W needs --k");
                    }
                    t = w_distribution(pop, o->k);
                    index = "n";
                }
                Table table({index, "pdf", "cdf", "ccdf"});
                for (std::size_t r = 0; r < t.size(); ++r) {
                    table.add({Cell::integer(static_cast<std::int64_t>(t.index_at(r))),
                               Cell::scalar(t.pdf[r]), Cell::scalar(t.cdf[r]),
                               Cell::scalar(t.ccdf[r])});
                }
                if (t.clamped_entries > 0) {
                    diagnostic(s.err, "warning", "clamped tiny negative float pdf entries to zero",
                               {{"count", t.clamped_entries}});
                }
                table.write(s.out, format);
                return kExitOk;
            }};
}

Command make_expect(CLI::App& root) {
    struct Opts {
        PopularitySource source;
        std::vector<std::size_t> n;
        std::string method = "flajolet";
        std::string format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* app = root.add_subcommand("expect", "E[T_n] and its forward difference");
    o->source.attach(*app);
    app->add_option("--n", o->n, "Collection sizes (default 1..N)")->delimiter(',');
    app->add_option("--method", o->method, "flajolet, von-schelling or ferrante")
        ->check(CLI::IsMember({"flajolet", "von-schelling", "ferrante"}));
    app->add_option("--format", o->format, "csv or json");
    return {app, [o](Streams s) {
                const Popularity pop = o->source.build();
                const Format format = parse_format(o->format);
                std::vector<std::size_t> ns = o->n;
                if (ns.empty()) {
                    for (std::size_t n = 1; n <= pop.size(); ++n) {
                        ns.push_back(n);
                    }
                }
                auto expectation = [&](std::size_t n) {
                    if (o->method == "von-schelling") {
                        return t_expectation_von_schelling(pop, n);
                    }
                    if (o->method == "ferrante") {
                        return ferrante_expectation(pop, n);
                    }
                    return t_expectation(pop, n);
                };
                Table table({"n", "expectation", "delta_expectation"});
                for (std::size_t n : ns) {
                    const Scalar e = expectation(n);
                    const Cell delta = n < pop.size() ? Cell::scalar(expectation(n + 1) - e)
                                                      : Cell::empty();
                    table.add({Cell::integer(static_cast<std::int64_t>(n)), Cell::scalar(e), delta});
                }
                table.write(s.out, format);
                return kExitOk;
            }};
}

Command make_ws(CLI::App& root) {
    struct Opts {
        PopularitySource source;
        std::string base = "exact";
        std::vector<double> t;
        std::vector<double> j;
        std::string format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* app = root.add_subcommand("ws", "Working-set function and its inverse");
    o->source.attach(*app);
    app->add_option("--base", o->base, "exact: (1-p)^t, exp: exp(-p t)")
        ->check(CLI::IsMember({"exact", "exp"}));
    app->add_option("--t", o->t, "Times at which to evaluate WS (default 0..2 N H_N)")
        ->delimiter(',');
    app->add_option("--j", o->j, "Levels at which to evaluate WS^-1 instead")->delimiter(',');
    app->add_option("--format", o->format, "csv or json");
    return {app, [o](Streams s) {
                const Popularity pop = o->source.build();
                const Format format = parse_format(o->format);
                const WsCurve curve{pop, parse_base(o->base)};
                if (!o->j.empty()) {
                    Table table({"j", "ws_inverse"});
                    for (double j : o->j) {
                        table.add({Cell::num(j), Cell::num(working_set_inverse(curve, j))});
                    }
                    table.write(s.out, format);
                    return kExitOk;
                }
                std::vector<double> ts = o->t;
                if (ts.empty()) {
                    const double N = static_cast<double>(pop.size());
                    const double top = 2.0 * N * harmonic(static_cast<unsigned>(pop.size())).to_double();
                    for (int i = 0; i <= 20; ++i) {
                        ts.push_back(top * i / 20.0);
                    }
                }
                Table table({"t", "ws"});
                for (double t : ts) {
                    table.add({Cell::num(t), Cell::num(working_set(curve, t))});
                }
                table.write(s.out, format);
                return kExitOk;
            }};
}

Command make_lru(CLI::App& root) {
    struct Opts {
        PopularitySource source;
        std::vector<std::size_t> j;
        std::string variant = "weighted";
        std::string format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* app = root.add_subcommand("lru", "Fagin/Che miss rate and MR x delta-E products");
    o->source.attach(*app);
    app->add_option("--j", o->j, "Cache sizes (default 1..N-1)")->delimiter(',');
    app->add_option("--variant", o->variant, "weighted: sum p_i (1-p_i)^t*, derivative: WS'(t*)")
        ->check(CLI::IsMember({"weighted", "derivative"}));
    app->add_option("--format", o->format, "csv or json");
    return {app, [o](Streams s) {
                const Popularity pop = o->source.build();
                const Format format = parse_format(o->format);
                const FaginVariant variant = parse_variant(o->variant);
                std::vector<std::size_t> js = o->j;
                if (js.empty()) {
                    for (std::size_t j = 1; j < pop.size(); ++j) {
                        js.push_back(j);
                    }
                }
                const WsCurve curve{pop, WsBase::exact_base};
                Table table({"j", "miss_rate", "delta_expectation", "product", "delta_kind"});
                for (std::size_t j : js) {
                    try {
                        const Scalar product = mr_delta_product(pop, j, variant);
                        const Scalar delta = delta_expectation(pop, j);
                        const Scalar mr = product.is_exact()
                                              ? product / delta
                                              : Scalar(fagin_miss_rate(curve, static_cast<double>(j), variant));
                        table.add({Cell::integer(static_cast<std::int64_t>(j)), Cell::scalar(mr),
                                   Cell::scalar(delta), Cell::scalar(product), Cell::str("exact")});
                    } catch (const CapacityError& e) {
                        if (j + 2 > pop.size()) {
                            throw;
                        }
                        diagnostic(s.err, "warning",
                                   "exact delta-E out of capacity; using the WS^-1 difference",
                                   {{"j", j}, {"reason", e.what()}});
                        const double mr = fagin_miss_rate(curve, static_cast<double>(j), variant);
                        const double delta = delta_expectation_ws_approx(curve, j);
                        table.add({Cell::integer(static_cast<std::int64_t>(j)), Cell::num(mr),
                                   Cell::num(delta), Cell::num(mr * delta),
                                   Cell::str("approx_ws_inverse")});
                    }
                }
                table.write(s.out, format);
                return kExitOk;
            }};
}

Command make_sim(CLI::App& root) {
    struct Opts {
        PopularitySource source;
        std::string what;
        std::size_t n = 0;
        std::uint64_t k = 0;
        std::size_t j = 0;
        SimConfig cfg;
        bool pmf = false;
        std::string format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* app = root.add_subcommand("sim", "Monte Carlo estimates under IRM");
    o->source.attach(*app);
    app->add_option("--what", o->what, "T (waiting time), W (working set) or LRU (miss rate)")
        ->required()
        ->check(CLI::IsMember({"T", "W", "LRU"}));
    app->add_option("--n", o->n, "Collection size for T");
    app->add_option("--k", o->k, "Trial count for W");
    app->add_option("--j", o->j, "Cache size for LRU");
    app->add_option("--reps", o->cfg.replications, "Replications");
    app->add_option("--seed", o->cfg.seed, "RNG seed");
    app->add_option("--stream", o->cfg.stream_length, "LRU references per replication");
    app->add_option("--warmup", o->cfg.warmup, "LRU warmup references (default 10 N H_N)");
    app->add_option("--threads", o->cfg.threads, "Worker threads (results do not depend on it)");
    app->add_flag("--pmf", o->pmf, "Print the empirical pmf instead of the summary (T, W)");
    app->add_option("--format", o->format, "csv or json");
    return {app, [o](Streams s) {
                const Popularity pop = o->source.build();
                const Format format = parse_format(o->format);
                SimConfig cfg = o->cfg;
                cfg.collect_pmf = o->pmf;
                SimReport report;
                std::size_t param = 0;
                std::optional<Scalar> reference;
                if (o->what == "T") {
                    if (o->n == 0) {
                        throw ValidationError("sim --what T needs --n");
                    }
                    param = o->n;
                    report = sim_waiting_time(pop, o->n, cfg);
                    try {
                        reference = t_expectation(pop, o->n);
                    } catch (const CapacityError&) {
                    }
                } else if (o->what == "W") {
                    if (o->k == 0) {
                        throw ValidationError("sim --what W needs --k");
                    }
                    param = static_cast<std::size_t>(o->k);
                    report = sim_working_set(pop, o->k, cfg);
                    reference = w_expectation(pop, static_cast<unsigned>(o->k));
                } else {
                    if (o->j == 0) {
                        throw ValidationError("sim --what LRU needs --j");
                    }
                    param = o->j;
                    report = sim_lru_miss_rate(pop, o->j, cfg);
                    reference = Scalar(fagin_miss_rate(WsCurve{pop, WsBase::exact_base},
                                                       static_cast<double>(o->j)));
                }
                if (o->pmf) {
                    Table table({"value", "count", "frequency"});
                    for (const auto& [v, c] : report.pmf) {
                        table.add({Cell::integer(static_cast<std::int64_t>(v)),
                                   Cell::integer(static_cast<std::int64_t>(c)),
                                   Cell::num(static_cast<double>(c) /
                                             static_cast<double>(report.replications))});
                    }
                    table.write(s.out, format);
                    return kExitOk;
                }
                Table table({"quantity", "parameter", "estimate", "sample_variance", "replications",
                             "ci95_halfwidth", "reference"});
                table.add({Cell::str(o->what), Cell::integer(static_cast<std::int64_t>(param)),
                           Cell::num(report.estimate), Cell::num(report.sample_variance),
                           Cell::integer(static_cast<std::int64_t>(report.replications)),
                           Cell::num(report.ci95_halfwidth),
                           reference ? Cell::num(reference->to_double()) : Cell::empty()});
                table.write(s.out, format);
                return kExitOk;
            }};
}

Command make_verify(CLI::App& root) {
    struct Opts {
        PopularitySource source;
        std::size_t n_max = 0;
        unsigned k_max = 0;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* app = root.add_subcommand("verify", "Run the inequality and extremality checks");
    o->source.attach(*app);
    app->add_option("--nmax", o->n_max, "Largest collection size checked (default N)");
    app->add_option("--kmax", o->k_max, "Largest trial count checked (default N + 4)");
    return {app, [o](Streams s) {
                const Popularity pop = o->source.build();
                const auto reports = run_suite(pop, SuiteOptions{o->n_max, o->k_max});
                s.out << to_json(reports) << '\n';
                bool ok = true;
                for (const auto& r : reports) {
                    if (!r.passed) {
                        ok = false;
                        diagnostic(s.err, "error", "check failed", {{"check", r.name}});
                    }
                }
                return ok ? kExitOk : kExitCheckFailed;
            }};
}

Command make_repro(CLI::App& root) {
    struct Opts {
        std::string recipe;
        RecipeOptions options;
        std::string format = "csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* app = root.add_subcommand("repro", "Data behind a named figure or table");
    app->add_option("recipe", o->recipe, "Recipe name")
        ->required()
        ->check(CLI::IsMember(recipe_names()));
    app->add_option("--step", o->options.step, "Grid step (appendix14-N6)");
    app->add_option("--kmax", o->options.k_max, "Largest trial count (fig-pdf-N12)");
    app->add_option("--nmax", o->options.n_max, "Largest N (erdos-renyi)");
    app->add_option("--format", o->format, "csv or json");
    return {app, [o](Streams s) {
                run_recipe(o->recipe, o->options, parse_format(o->format), s);
                return kExitOk;
            }};
}

} // namespace

std::vector<Command> register_commands(CLI::App& root) {
    return {make_dist(root), make_expect(root), make_ws(root),   make_lru(root),
            make_sim(root),  make_verify(root), make_repro(root)};
}

} // namespace ccp::cli

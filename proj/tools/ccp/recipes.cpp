#include "ccp/commands.hpp"

#include <ccp/ccp_core.hpp>
#include <ccp/combinatorics.hpp>
#include <ccp/errors.hpp>
#include <ccp/property_suite.hpp>
#include <ccp/ws_lru.hpp>

#include <cmath>

namespace ccp::cli {

namespace {

// Complete-collection pdf for N = 12 under uniform, Zipf and a = 0.5.
// Float mode: exact rationals at k ~ 200 grow to megabytes per entry.
void fig_pdf_n12(const RecipeOptions& o, Format format, Streams s) {
    constexpr std::size_t N = 12;
    struct Source {
        const char* name;
        Popularity pop;
    };
    const Source sources[] = {
        {"uniform", Popularity::uniform(N)},
        {"zipf", Popularity::power_law(N, Scalar(1)).to_float()},
        {"powerlaw-0.5", Popularity::power_law(N, Scalar(0.5))},
    };
    Table table({"popularity", "k", "pdf", "log10_pdf"});
    for (const auto& src : sources) {
        const DistributionTable t = t_distribution(src.pop, N, o.k_max);
        for (unsigned k = N; k <= o.k_max; ++k) {
            const double pdf = t.pdf_at(k).to_double();
            table.add({Cell::str(src.name), Cell::integer(k), Cell::num(pdf),
                       pdf > 0 ? Cell::num(std::log10(pdf)) : Cell::empty()});
        }
    }
    table.write(s.out, format);
}

// Pr[T_N <= N H_N] for the uniform case against N exp(-H_N).
void erdos_renyi(const RecipeOptions& o, Format format, Streams s) {
    Table table({"N", "cdf_at_expectation", "n_exp_minus_h"});
    double h = 0.0;
    for (unsigned N = 1; N <= o.n_max; ++N) {
        h += 1.0 / N;
        const double e = static_cast<double>(N) * h;
        table.add({Cell::integer(N), Cell::num(el_cdf_continuous(N, e)),
                   Cell::num(static_cast<double>(N) * std::exp(-h))});
    }
    table.write(s.out, format);
}

// CDF curves of T_15 for power laws a = 0..4, with the value at E[T_15].
void cdf_at_expectation_n15(const RecipeOptions&, Format format, Streams s) {
    constexpr std::size_t N = 15;
    Table table({"a", "k", "cdf", "at_expectation"});
    for (const auto& row : cdf_at_expectation(N, {0, 1, 2, 3, 4})) {
        const Popularity pop = Popularity::power_law(N, Scalar(row.a)).to_float();
        const double top = 3.0 * row.expectation;
        for (int i = 0; i <= 60; ++i) {
            const double k = static_cast<double>(N) + (top - N) * i / 60.0;
            table.add({Cell::num(row.a), Cell::num(k), Cell::num(t_cdf_complete_real(pop, k)),
                       Cell::str("no")});
        }
        table.add({Cell::num(row.a), Cell::num(row.expectation), Cell::num(row.cdf),
                   Cell::str("yes")});
    }
    table.write(s.out, format);
}

void appendix14_n6(const RecipeOptions& o, Format format, Streams s) {
    const Appendix14Result result = appendix14_search(6, o.step);
    Table table({"j", "max", "bound", "min", "published_max", "published_min", "argmax", "argmin"});
    auto point = [](const std::vector<double>& p) {
        std::string text;
        for (std::size_t i = 0; i < p.size(); ++i) {
            text += (i ? " " : "") + format_double(p[i]);
        }
        return text;
    };
    for (const auto& row : result.rows) {
        table.add({Cell::integer(static_cast<std::int64_t>(row.j)), Cell::num(row.max_value),
                   Cell::num(row.bound), Cell::num(row.min_value),
                   row.reference_max ? Cell::num(*row.reference_max) : Cell::empty(),
                   row.reference_min ? Cell::num(*row.reference_min) : Cell::empty(),
                   Cell::str(point(row.argmax)), Cell::str(point(row.argmin))});
    }
    table.write(s.out, format);
}

// E[T_j] against the continuum and discrete WS^-1(j) for N = 20.
void powerlaw_fit_n20(const RecipeOptions&, Format format, Streams s) {
    constexpr std::size_t N = 20;
    Table table({"a", "j", "expectation", "ws_inverse_closed", "ws_inverse_discrete"});
    for (double a : {0.1, 1.0}) {
        const Popularity pop = Popularity::power_law(N, Scalar(a)).to_float();
        const PowerLawModel model = PowerLawModel::make(N, a);
        const WsCurve curve{pop, WsBase::exp_base};
        for (std::size_t j = 1; j < N; ++j) {
            const double jd = static_cast<double>(j);
            table.add({Cell::num(a), Cell::integer(static_cast<std::int64_t>(j)),
                       Cell::num(t_expectation(pop, j).to_double()),
                       Cell::num(ws_powerlaw_inverse(model, jd)),
                       Cell::num(working_set_inverse(curve, jd))});
        }
    }
    table.write(s.out, format);
}

} // namespace

const std::vector<std::string>& recipe_names() {
    static const std::vector<std::string> names{"fig-pdf-N12", "erdos-renyi",
                                                "cdf-at-expectation-N15", "appendix14-N6",
                                                "powerlaw-fit-N20"};
    return names;
}

void run_recipe(const std::string& name, const RecipeOptions& options, Format format,
                Streams streams) {
    if (name == "fig-pdf-N12") {
        fig_pdf_n12(options, format, streams);
    } else if (name == "erdos-renyi") {
        erdos_renyi(options, format, streams);
    } else if (name == "cdf-at-expectation-N15") {
        cdf_at_expectation_n15(options, format, streams);
    } else if (name == "appendix14-N6") {
        appendix14_n6(options, format, streams);
    } else if (name == "powerlaw-fit-N20") {
        powerlaw_fit_n20(options, format, streams);
    } else {
        throw ValidationError("unknown recipe '" + name + "'");
    }
}

} // namespace ccp::cli

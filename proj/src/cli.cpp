// Copyright (c) 2026 The ipef Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ipef/cli.hpp"

#include "ipef/gaussproc.hpp"
#include "ipef/localtime.hpp"
#include "ipef/montecarlo.hpp"
#include "ipef/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

namespace ipef {

namespace {

StatKind parse_stat_kind(const std::string& s) {
    if (s == "ks" || s == "S") return StatKind::ks;
    if (s == "cvm" || s == "T") return StatKind::cvm;
    if (s == "omega") return StatKind::omega;
    throw std::invalid_argument("unknown statistic: " + s);
}

void emit(const RunConfig& config, const std::string& suffix,
          const std::string& content) {
    if (config.output.empty()) {
        std::cout << content;
    } else {
        write_text_file(suffix.empty() ? config.output : config.output + suffix,
                        content);
    }
}

ParametricFamily family_by_name(const std::string& name) {
    if (name == "exponential" || name == "exp") return exponential_family();
    if (name == "uniform" || name == "uniform-scale") return uniform_scale_family();
    if (name == "normal") return normal_family();
    throw std::invalid_argument("unknown family: " + name);
}

int cmd_gof(const RunConfig& config) {
    Sample sample = read_sample(config.inputs[0], config.csv_column);
    DistSpec f0 = parse_dist(config.dist);
    StatSpec spec{parse_stat_kind(config.stat), config.p, config.r};
    TestReport report =
        gof_report(sample, f0, spec, config.alpha, method_from_name(config.method),
                   config.reps, config.seed, config.threads, config.m_grid);
    emit(config, "", test_report_to_json(report));
    return 0;
}

int cmd_gof_estimated(const RunConfig& config) {
    Sample sample = read_sample(config.inputs[0], config.csv_column);
    ParametricFamily family = family_by_name(config.family);
    TestReport report = estimated_gof(sample, family, config.p, config.reps,
                                      config.alpha, RngStream::seeded(config.seed));
    emit(config, "", test_report_to_json(report));
    return 0;
}

int cmd_two_sample(const RunConfig& config) {
    Sample x = read_sample(config.inputs[0], config.csv_column);
    Sample y = read_sample(config.inputs[1], config.csv_column);
    auto stats = two_sample_statistics(x, y, config.p, config.q);

    // Both statistics are rank based under the common-distribution null, so
    // uniform null draws calibrate any continuous F.
    RngStream base = RngStream::seeded(config.seed);
    long M = config.reps;
    std::vector<double> null_S(M), null_T(M);
    parallel_for(M, config.threads, [&](long i) {
        RngStream sub = base.fork(i);
        std::vector<double> xv(x.size()), yv(y.size());
        for (auto& v : xv) v = sub.uniform01();
        for (auto& v : yv) v = sub.uniform01();
        auto st = two_sample_statistics(Sample(xv), Sample(yv), config.p, config.q);
        null_S[i] = st.S;
        null_T[i] = st.T;
    });
    auto report_for = [&](const std::string& name, double stat,
                          std::vector<double>& ref) {
        std::sort(ref.begin(), ref.end());
        auto idx = static_cast<std::size_t>(std::ceil(M * (1.0 - config.alpha)));
        idx = std::min(std::max<std::size_t>(idx, 1), ref.size());
        double cv = ref[idx - 1];
        long ge = static_cast<long>(ref.end() -
                                    std::lower_bound(ref.begin(), ref.end(), stat));
        TestReport r;
        r.statistic_name = name;
        r.statistic = stat;
        r.p = config.p;
        r.alpha = config.alpha;
        r.critical_value = cv;
        r.p_value = static_cast<double>(1 + ge) / static_cast<double>(M + 1);
        r.reject = stat > cv;
        r.method = Method::null_mc;
        r.seed = config.seed;
        r.n_replications = M;
        r.dist_label = "two-sample(q=" + std::to_string(config.q) + ")";
        return r;
    };
    std::ostringstream out;
    out << "{\n\"S\": " << test_report_to_json(report_for("S", stats.S, null_S))
        << ",\n\"T\": " << test_report_to_json(report_for("T", stats.T, null_T))
        << "}\n";
    emit(config, "", out.str());
    return 0;
}

int cmd_k_sample(const RunConfig& config) {
    std::vector<Sample> samples;
    for (const auto& path : config.inputs) {
        samples.push_back(read_sample(path, config.csv_column));
    }
    DistSpec f0 = parse_dist(config.dist);
    auto result = ksample_statistics(samples, f0, config.p);

    RngStream base = RngStream::seeded(config.seed);
    long M = config.reps;
    std::vector<double> null_S(M), null_T(M);
    DistSpec uni = uniform_dist();
    parallel_for(M, config.threads, [&](long i) {
        RngStream sub = base.fork(i);
        std::vector<Sample> draws;
        draws.reserve(samples.size());
        for (const auto& s : samples) {
            std::vector<double> v(s.size());
            for (auto& x : v) x = sub.uniform01();
            draws.emplace_back(std::move(v));
        }
        auto st = ksample_statistics(draws, uni, config.p);
        null_S[i] = st.S;
        null_T[i] = st.T;
    });
    auto make = [&](const std::string& name, double stat, std::vector<double>& ref) {
        std::sort(ref.begin(), ref.end());
        auto idx = static_cast<std::size_t>(std::ceil(M * (1.0 - config.alpha)));
        idx = std::min(std::max<std::size_t>(idx, 1), ref.size());
        double cv = ref[idx - 1];
        long ge = static_cast<long>(ref.end() -
                                    std::lower_bound(ref.begin(), ref.end(), stat));
        TestReport r;
        r.statistic_name = name;
        r.statistic = stat;
        r.p = config.p;
        r.alpha = config.alpha;
        r.critical_value = cv;
        r.p_value = static_cast<double>(1 + ge) / static_cast<double>(M + 1);
        r.reject = stat > cv;
        r.method = Method::null_mc;
        r.seed = config.seed;
        r.n_replications = M;
        r.dist_label = "k-sample(K=" + std::to_string(samples.size()) + ")";
        return r;
    };
    std::ostringstream out;
    out << "{\n\"S\": " << test_report_to_json(make("S", result.S, null_S))
        << ",\n\"T\": " << test_report_to_json(make("T", result.T, null_T)) << "}\n";
    emit(config, "", out.str());
    return 0;
}

int cmd_changepoint(const RunConfig& config) {
    Sample sample = read_sample(config.inputs[0], config.csv_column);
    auto result = changepoint_scan(sample, config.p, config.weighted);

    RngStream base = RngStream::seeded(config.seed);
    long M = config.reps;
    std::vector<double> null_draws(M);
    parallel_for(M, config.threads, [&](long i) {
        RngStream sub = base.fork(i);
        std::vector<double> v(sample.size());
        for (auto& x : v) x = sub.uniform01();
        null_draws[i] = changepoint_scan(Sample(v), config.p, config.weighted).statistic;
    });
    std::sort(null_draws.begin(), null_draws.end());
    auto idx = static_cast<std::size_t>(std::ceil(M * (1.0 - config.alpha)));
    idx = std::min(std::max<std::size_t>(idx, 1), null_draws.size());
    double cv = null_draws[idx - 1];
    long ge = static_cast<long>(null_draws.end() - std::lower_bound(null_draws.begin(),
                                                                    null_draws.end(),
                                                                    result.statistic));
    std::ostringstream json;
    json << "{\n\"scan\": " << changepoint_to_json(result) << ",\n\"critical_value\": "
         << cv << ",\n\"p_value\": "
         << static_cast<double>(1 + ge) / static_cast<double>(M + 1)
         << ",\n\"reject\": " << (result.statistic > cv ? "true" : "false") << "\n}\n";
    emit(config, config.output.empty() ? "" : ".json", json.str());
    emit(config, config.output.empty() ? "" : ".csv", changepoint_to_csv(result));
    return 0;
}

int cmd_power(const RunConfig& config) {
    PowerStudyConfig study;
    study.n = config.n;
    study.p_list = config.p_list.empty() ? std::vector<int>{0, 1, 2, 3} : config.p_list;
    for (const auto& a : config.alternatives) {
        study.alternatives.push_back(parse_alternative(a));
    }
    study.alpha = config.alpha;
    study.M_null = config.reps;
    study.M_power = config.reps;
    study.seed = config.seed;
    study.threads = config.threads;
    study.stat = parse_stat_kind(config.stat);
    PowerTable table = power_study(study);
    emit(config, config.output.empty() ? "" : ".csv", power_table_to_csv(table));
    emit(config, config.output.empty() ? "" : ".json", power_table_to_json(table));
    return 0;
}

int cmd_rate(const RunConfig& config) {
    auto points = rate_study(config.p, config.n_list, config.reps, config.m_grid,
                             config.seed, config.threads);
    emit(config, "", rate_points_to_csv(points));
    return 0;
}

int cmd_lil(const RunConfig& config) {
    auto diag = lil_diagnostic(config.p, config.n_list, config.paths, config.seed,
                               config.threads);
    emit(config, "", lil_to_csv(diag));
    return 0;
}

int cmd_localtime(const RunConfig& config) {
    // Per-path self-intersection growth along n_list plus a local-time
    // profile of the first path at the final horizon.
    std::vector<long> ns(config.n_list.begin(), config.n_list.end());
    RngStream master = RngStream::seeded(config.seed);
    std::ostringstream growth;
    growth.precision(10);
    growth << "path,n,L\n";
    for (int path_idx = 0; path_idx < config.paths; ++path_idx) {
        RngStream sub = master.fork(static_cast<std::uint64_t>(path_idx));
        WalkPath path = walk(config.p, ns.back(), sub);
        for (long n : ns) {
            WalkPath head;
            head.p = path.p;
            head.steps.assign(path.steps.begin(), path.steps.begin() + n);
            growth << path_idx << ',' << n << ',' << self_intersection(head, 1.0)
                   << "\n";
        }
    }
    double slope = growth_exponent(config.p, ns, config.paths, config.seed,
                                   config.threads);

    RngStream profile_rng = master.fork(0);
    WalkPath path = walk(config.p, ns.back(), profile_rng);
    double lo = *std::min_element(path.steps.begin(), path.steps.end()) - 0.5;
    double hi = *std::max_element(path.steps.begin(), path.steps.end()) + 0.5;
    std::ostringstream profile;
    profile.precision(10);
    profile << "x,lambda\n";
    int grid = 201;
    for (int g = 0; g < grid; ++g) {
        double x = lo + (hi - lo) * g / (grid - 1);
        profile << x << ',' << local_time(path, x, path.n()) << "\n";
    }
    std::ostringstream summary;
    summary.precision(10);
    summary << "{\n  \"p\": " << config.p << ",\n  \"paths\": " << config.paths
            << ",\n  \"growth_exponent\": " << slope << "\n}\n";
    emit(config, config.output.empty() ? "" : "_growth.csv", growth.str());
    emit(config, config.output.empty() ? "" : "_lambda.csv", profile.str());
    emit(config, config.output.empty() ? "" : ".json", summary.str());
    return 0;
}

int cmd_limits(const RunConfig& config) {
    std::vector<QuantileRow> rows;
    auto p_list = config.p_list.empty() ? std::vector<int>{0, 1, 2, 3} : config.p_list;
    RngStream base = RngStream::seeded(config.seed);
    for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
        for (const std::string& fn : {std::string("ks"), std::string("cvm")}) {
            StatSpec spec{parse_stat_kind(fn), p_list[pi], config.r};
            auto draws = parallel_map(config.reps, config.threads, [&](long i) {
                RngStream sub = base.fork(pi, fn == "ks" ? 0 : 1, i);
                return sample_limit_statistic(spec, config.m_grid, sub);
            });
            QuantileRow row;
            row.functional = fn;
            row.p = p_list[pi];
            row.m = config.m_grid;
            row.n_draws = config.reps;
            row.seed = config.seed;
            row.q90 = empirical_quantile(draws, 0.90);
            row.q95 = empirical_quantile(draws, 0.95);
            row.q99 = empirical_quantile(draws, 0.99);
            rows.push_back(row);
        }
    }
    std::ostringstream csv;
    csv << "functional,p,m,n_draws,seed,q90,q95,q99\n";
    csv.precision(10);
    for (const auto& r : rows) {
        csv << r.functional << ',' << r.p << ',' << r.m << ',' << r.n_draws << ','
            << r.seed << ',' << r.q90 << ',' << r.q95 << ',' << r.q99 << "\n";
    }
    emit(config, "", csv.str());
    return 0;
}

} // namespace

std::vector<std::string> validate(const RunConfig& config) {
    std::vector<std::string> violations;
    auto need = [&](bool ok, const std::string& msg) {
        if (!ok) violations.push_back(msg);
    };
    static const std::set<std::string> commands{
        "gof", "gof-estimated", "two-sample", "k-sample", "changepoint",
        "power", "rate", "lil", "localtime", "limits"};
    if (!commands.count(config.command)) {
        violations.push_back("command: unknown command '" + config.command + "'");
        return violations;
    }
    need(config.alpha > 0.0 && config.alpha < 1.0, "alpha must lie in (0,1)");
    need(config.p >= 0, "p must be >= 0");
    need(config.reps >= 1, "reps must be >= 1");
    need(config.threads >= 0, "threads must be >= 0");
    need(config.m_grid >= 2, "m must be >= 2");
    if (config.command == "gof" || config.command == "two-sample" ||
        config.command == "k-sample" || config.command == "changepoint" ||
        config.command == "gof-estimated") {
        need(config.reps * config.alpha >= 5.0, "reps*alpha must be >= 5");
    }
    if (config.command == "gof" && config.stat == "omega") {
        need(config.r >= 1.0, "r must be >= 1 for the omega statistic");
    }
    if (config.command == "gof" || config.command == "gof-estimated" ||
        config.command == "changepoint") {
        need(config.inputs.size() == 1, "exactly one input file required");
    }
    if (config.command == "two-sample") {
        need(config.inputs.size() == 2, "two input files required");
        need(config.q >= 1, "q must be >= 1");
    }
    if (config.command == "k-sample") {
        need(config.inputs.size() >= 2, "K >= 2 input files required");
    }
    if (config.command == "gof-estimated") {
        need(config.reps >= 99, "bootstrap replications must be >= 99");
        need(config.p >= 0, "p must be >= 0");
    }
    if (config.command == "power") {
        need(!config.alternatives.empty(), "at least one alternative required");
        need(config.n >= 1, "n must be >= 1");
        for (const auto& a : config.alternatives) {
            try {
                parse_alternative(a);
            } catch (const std::exception& e) {
                violations.push_back(std::string("alternatives: ") + e.what());
            }
        }
    }
    if (config.command == "rate" || config.command == "lil") {
        need(config.n_list.size() >= 2, "n-list needs at least two sizes");
        for (std::size_t i = 1; i < config.n_list.size(); ++i) {
            need(config.n_list[i] > config.n_list[i - 1], "n-list must be ascending");
        }
    }
    if (config.command == "lil") {
        need(config.n_list.empty() || config.n_list.front() >= 16,
             "lil n-list must start at >= 16");
        need(config.paths >= 1, "paths must be >= 1");
    }
    if (config.command == "localtime") {
        need(config.p >= 1, "localtime requires p >= 1");
        need(config.n_list.size() >= 2, "n-list needs at least two sizes");
        need(config.paths >= 1, "paths must be >= 1");
    }
    return violations;
}

int dispatch(const RunConfig& config) {
    auto violations = validate(config);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "invalid config: " << v << "\n";
        return 2;
    }
    try {
        if (config.command == "gof") return cmd_gof(config);
        if (config.command == "gof-estimated") return cmd_gof_estimated(config);
        if (config.command == "two-sample") return cmd_two_sample(config);
        if (config.command == "k-sample") return cmd_k_sample(config);
        if (config.command == "changepoint") return cmd_changepoint(config);
        if (config.command == "power") return cmd_power(config);
        if (config.command == "rate") return cmd_rate(config);
        if (config.command == "lil") return cmd_lil(config);
        if (config.command == "localtime") return cmd_localtime(config);
        if (config.command == "limits") return cmd_limits(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"integrated empirical process statistics"};
    app.require_subcommand(1);

    RunConfig config;
    if (const char* env_seed = std::getenv("IPEF_SEED")) {
        config.seed = std::strtoull(env_seed, nullptr, 10);
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", config.seed, "rng seed (env IPEF_SEED as fallback)");
        cmd->add_option("--threads", config.threads,
                        "worker threads (0 = hardware concurrency)");
        cmd->add_option("--output,-o", config.output, "output path or prefix");
    };

    auto* gof = app.add_subcommand("gof", "one-sample goodness of fit");
    gof->add_option("--input", config.inputs, "sample file")->required();
    gof->add_option("--column", config.csv_column, "CSV column name");
    gof->add_option("--p", config.p, "integration order");
    gof->add_option("--stat", config.stat, "ks | cvm | omega");
    gof->add_option("--r", config.r, "omega exponent (r >= 1)");
    gof->add_option("--dist", config.dist,
                    "null distribution (uniform, exponential:rate, "
                    "normal:mu,sigma, table:path)");
    gof->add_option("--alpha", config.alpha, "level");
    gof->add_option("--method", config.method, "null-mc | limiting-law");
    gof->add_option("--reps", config.reps, "reference-law replications");
    gof->add_option("--m", config.m_grid, "limiting-law grid size");
    add_common(gof);

    auto* est = app.add_subcommand("gof-estimated", "composite null, bootstrap");
    est->add_option("--input", config.inputs, "sample file")->required();
    est->add_option("--column", config.csv_column, "CSV column name");
    est->add_option("--p", config.p, "integration order");
    est->add_option("--family", config.family, "exponential | uniform | normal");
    est->add_option("--alpha", config.alpha, "level");
    est->add_option("--reps", config.reps, "bootstrap replications (>= 99)");
    add_common(est);

    auto* two = app.add_subcommand("two-sample", "two-sample test");
    two->add_option("--input", config.inputs, "two sample files")->required();
    two->add_option("--column", config.csv_column, "CSV column name");
    two->add_option("--p", config.p, "integration order");
    two->add_option("--q", config.q, "power applied to the integrated e.d.f.s");
    two->add_option("--alpha", config.alpha, "level");
    two->add_option("--reps", config.reps, "null replications");
    add_common(two);

    auto* ks = app.add_subcommand("k-sample", "K-sample test");
    ks->add_option("--input", config.inputs, "K sample files")->required();
    ks->add_option("--column", config.csv_column, "CSV column name");
    ks->add_option("--p", config.p, "integration order");
    ks->add_option("--dist", config.dist, "reference d.f. for the T integrator");
    ks->add_option("--alpha", config.alpha, "level");
    ks->add_option("--reps", config.reps, "null replications");
    add_common(ks);

    auto* cp = app.add_subcommand("changepoint", "change-point scan");
    cp->add_option("--input", config.inputs, "sample file (time order)")->required();
    cp->add_option("--column", config.csv_column, "CSV column name");
    cp->add_option("--p", config.p, "integration order");
    cp->add_flag("--weighted", config.weighted, "divide by the loglog weight");
    cp->add_option("--alpha", config.alpha, "level");
    cp->add_option("--reps", config.reps, "null replications");
    add_common(cp);

    auto* power = app.add_subcommand("power", "power study table");
    power->add_option("--n", config.n, "sample size")->required();
    power->add_option("--alpha", config.alpha, "level");
    power->add_option("--alts", config.alternatives, "alternatives, e.g. A2,B1.5")
        ->required()
        ->delimiter(',');
    power->add_option("--p", config.p_list, "orders, e.g. 0,1,2,3")->delimiter(',');
    power->add_option("--stat", config.stat, "ks | cvm");
    power->add_option("--reps", config.reps, "replications for null and power");
    add_common(power);

    auto* rate = app.add_subcommand("rate", "convergence-rate study");
    rate->add_option("--p", config.p, "integration order");
    rate->add_option("--n-list", config.n_list, "sample sizes")->delimiter(',')
        ->required();
    rate->add_option("--reps", config.reps, "draws per law");
    rate->add_option("--m", config.m_grid, "limit-law grid size");
    add_common(rate);

    auto* lil = app.add_subcommand("lil", "iterated-logarithm diagnostic");
    lil->add_option("--p", config.p, "integration order");
    lil->add_option("--n-list", config.n_list, "sample sizes (min >= 16)")
        ->delimiter(',')->required();
    lil->add_option("--paths", config.paths, "independent nested paths");
    add_common(lil);

    auto* lt = app.add_subcommand("localtime", "walk self-intersection study");
    lt->add_option("--p", config.p, "walk order (p >= 1)");
    lt->add_option("--n-list", config.n_list, "horizons")->delimiter(',')->required();
    lt->add_option("--paths", config.paths, "independent paths");
    add_common(lt);

    auto* lim = app.add_subcommand("limits", "limiting-law quantile table");
    lim->add_option("--p", config.p_list, "orders")->delimiter(',');
    lim->add_option("--m", config.m_grid, "grid size");
    lim->add_option("--reps", config.reps, "draws");
    add_common(lim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    config.command = app.get_subcommands().front()->get_name();
    return dispatch(config);
}

} // namespace ipef

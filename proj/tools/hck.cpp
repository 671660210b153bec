// Command-line front end: gen, detect, count, minweight, reduce, wc2ac, db, bench.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "hck/avgcase.hpp"
#include "hck/cycle.hpp"
#include "hck/dbcount.hpp"
#include "hck/io.hpp"
#include "hck/oracle.hpp"
#include "hck/reductions.hpp"
#include "hck/weighted.hpp"

using namespace hck;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitInvariant = 4;

struct Global {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    std::size_t jobs = 1;
};

class Table {
public:
    explicit Table(std::vector<std::string> cols) : cols_(std::move(cols)) {}
    void add(std::vector<nlohmann::json> row) { rows_.push_back(std::move(row)); }

    std::string render(const std::string& format) const {
        std::ostringstream os;
        if (format == "csv") {
            for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << cols_[i];
            os << "\n";
            for (const auto& r : rows_) {
                for (std::size_t i = 0; i < r.size(); ++i)
                    os << (i ? "," : "") << (r[i].is_string() ? r[i].get<std::string>() : r[i].dump());
                os << "\n";
            }
        } else {
            for (const auto& r : rows_) {
                nlohmann::json obj = nlohmann::json::object();
                for (std::size_t i = 0; i < r.size(); ++i) obj[cols_[i]] = r[i];
                os << obj.dump() << "\n";
            }
        }
        return os.str();
    }

private:
    std::vector<std::string> cols_;
    std::vector<std::vector<nlohmann::json>> rows_;
};

void emit(const Global& g, const std::string& text) {
    if (g.out.empty())
        std::cout << text;
    else
        write_file(g.out, text);
}

// Runs body(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i; (i = next++) < count;) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// A missing or unreadable input path is a usage error.
std::string read_input(const std::string& path) {
    try {
        return read_file(path);
    } catch (const ParseError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw CLI::ValidationError("input", e.what());
    }
}

Hypergraph load_graph(const std::string& path) { return parse_hypergraph(read_input(path)); }

PatternGraph parse_pattern_spec(const std::string& spec) {
    if (spec == "triangle") return triangle_pattern();
    if (spec == "fig4") return fig4_pattern();
    if (spec.rfind("hcycle:", 0) == 0) {
        std::size_t u = 0, k = 0;
        char c = 0;
        std::istringstream is(spec.substr(7));
        if (!(is >> u >> c >> k) || c != ':') throw CLI::ValidationError("--pattern", "expected hcycle:<u>:<k>");
        return hypercycle_pattern(u, k);
    }
    if (spec.rfind("file:", 0) == 0) return parse_pattern(read_input(spec.substr(5)));
    throw CLI::ValidationError("--pattern", "expected triangle, fig4, hcycle:u:k or file:<path>");
}

// brute | corrupt:<rate>
double parse_oracle_rate(const std::string& spec) {
    if (spec == "brute") return 0.0;
    if (spec.rfind("corrupt:", 0) == 0) {
        const double r = std::stod(spec.substr(8));
        if (!(r >= 0.0 && r < 1.0)) throw CLI::ValidationError("--oracle", "rate must be in [0, 1)");
        return r;
    }
    throw CLI::ValidationError("--oracle", "expected brute or corrupt:<rate>");
}

int selftest_report(const std::string& name, bool ok, const std::string& detail) {
    std::cout << "selftest " << name << ": " << (ok ? "PASS" : "FAIL") << " (" << detail << ")\n";
    return ok ? 0 : kExitInvariant;
}

// Small oracle-equivalence suites, one per module.

int selftest_gen() {
    bool ok = true;
    for (std::uint64_t s = 0; s < 20; ++s) {
        RandomSpec spec;
        spec.seed = s;
        const auto g = gen_circle_layered(3, 5, 3, spec);
        ok = ok && validate_circle_layered(g.g, g.layout, 3);
        ok = ok && parse_hypergraph(serialize(g.g)) == g.g;
        ok = ok && gen_circle_layered(3, 5, 3, spec).g == g.g;
    }
    return selftest_report("gen", ok, "20 layered instances valid, round-trip and reproducible");
}

int selftest_cycles() {
    bool ok = true;
    std::size_t n_checks = 0;
    const std::pair<std::size_t, std::size_t> cases[] = {{2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 7}};
    for (auto [u, k] : cases)
        for (std::uint64_t s = 0; s < 5; ++s) {
            RandomSpec spec;
            spec.mu = 0.6;
            spec.seed = s;
            const auto g = gen_circle_layered(2, k, u, spec);
            const auto truth = brute_count_hypercycles(g.g, u, k, &g.layout).count;
            for (auto a : {CycleAlgo::brute, CycleAlgo::triangle, CycleAlgo::clr}) {
                if (a == CycleAlgo::triangle && !triangle_applies(u, k)) continue;
                if (a == CycleAlgo::clr && !clr_applies(u, k)) continue;
                ++n_checks;
                ok = ok && count_layered(g.g, g.layout, u, a) == truth;
            }
        }
    return selftest_report("cycles", ok, std::to_string(n_checks) + " algorithm/oracle comparisons");
}

int selftest_minweight() {
    bool ok = true;
    for (std::uint64_t s = 0; s < 10; ++s) {
        RandomSpec spec;
        spec.seed = s;
        auto g = gen_circle_layered(3, 5, 2, spec);
        g.g = with_random_weights(g.g, -10, 10, s);
        ok = ok && min_layered_dp(g.g, g.layout, 2) == brute_min_hypercycle(g.g, 2, 5, &g.layout);
    }
    return selftest_report("minweight", ok, "10 weighted layered instances");
}

int selftest_reduce() {
    bool ok = true;
    for (std::uint64_t s = 0; s < 10; ++s) {
        std::vector<Mask> slots;
        for (Mask m = 0; m < 16; ++m)
            if (popcount(m) == 2) slots.push_back(m);
        RandomSpec spec;
        spec.mu = 0.7;
        spec.seed = s;
        const auto g = gen_kpartite_er(2, 4, slots, spec);
        const auto c = hyperclique_to_hypercycle(g.g, g.layout, 2);
        ok = ok && brute_count_hyperclique(g.g, 2, 4, &g.layout) ==
                       brute_count_hypercycles(c.g, gamma(2, 4), 4, &c.layout).count;
        RandomSpec ls;
        ls.seed = s;
        const auto l = gen_circle_layered(2, 5, 2, ls);
        ok = ok && brute_count_hypercycles(lift_uniformity(l.g, l.layout, 2, 3), 3, 5, &l.layout).count ==
                       brute_count_hypercycles(l.g, 2, 5, &l.layout).count;
    }
    return selftest_report("reduce", ok, "10 clique2cycle and 10 lift instances");
}

int selftest_wc2ac() {
    bool ok = true;
    const auto h = triangle_pattern();
    for (std::uint64_t s = 0; s < 5; ++s) {
        RandomSpec spec;
        spec.seed = s;
        const auto g = gen_kpartite_er(3, 3, h.slots(), spec);
        const auto r = wc2ac_pipeline(g, h, make_brute_er_oracle(), 2, 0.05, s);
        ok = ok && r.count && *r.count == brute_count_pattern(h, g.g, PatternMode::k_partite, &g.layout);
    }
    return selftest_report("wc2ac", ok, "5 triangle pipelines exact");
}

int selftest_db() {
    bool ok = true;
    const auto q = parse_query("Q Q(a,b,c) <- R(a,b); S(b,c); T(c)");
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto db = gen_random_db({{"R", 2}, {"S", 2}, {"T", 1}}, 4, {0.5, 0.5, 0.5}, s);
        const auto truth = brute_scq(db, q);
        ok = ok && eval_scq_polynomial(db, q) == truth;
        const auto r = scq_via_uscq(db, q, make_brute_uscq_oracle(), 0.05, s);
        ok = ok && r.value && *r.value == truth;
    }
    return selftest_report("db", ok, "10 databases: polynomial and corrector exact");
}

void add_globals(CLI::App& app, Global& g) {
    app.add_option("--seed", g.seed, "Random seed (falls back to HCK_SEED)");
    app.add_option("--out", g.out, "Output path (default stdout)");
    app.add_option("--format", g.format, "Row format")->check(CLI::IsMember({"csv", "json-lines"}));
    app.add_option("--jobs", g.jobs, "Worker threads for independent trials")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hypercycle and subhypergraph counting toolkit"};
    app.require_subcommand(1);
    Global glob;
    if (const char* env = std::getenv("HCK_SEED")) {
        try {
            glob.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "HCK_SEED is not an unsigned integer\n";
            return kExitUsage;
        }
    }
    add_globals(app, glob);
    bool selftest = false;
    auto add_sub = [&](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        add_globals(*s, glob);
        s->add_flag("--selftest", selftest, "Run this module's oracle-equivalence checks");
        return s;
    };

    // gen
    auto* gen = add_sub("gen", "Generate a random hypergraph");
    std::string gen_kind = "er", layout_out, plant_mode;
    std::size_t gen_n = 8, gen_k = 5, gen_u = 3;
    std::uint64_t gen_b = 2;
    double gen_mu = 0;
    std::vector<std::string> weight_range;
    gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"er", "kpartite", "layered"}));
    gen->add_option("--n", gen_n, "Vertices (er) or vertices per partition");
    gen->add_option("--k", gen_k, "Partitions");
    gen->add_option("--u", gen_u, "Edge size");
    gen->add_option("--b", gen_b, "Edge probability 1/b");
    gen->add_option("--mu", gen_mu, "Edge probability (overrides --b)");
    gen->add_option("--layout-out", layout_out, "Write the partition file here");
    gen->add_flag("--plant", "Plant a hypercycle (layered only)");
    gen->add_option("--weights", weight_range, "lo hi")->expected(2);

    // detect / count / minweight
    std::string input, layout_path, algo_name = "auto";
    std::size_t u = 3, k = 5;
    double delta = 0.05;
    auto* detect = add_sub("detect", "Detect a tight k-hypercycle by color coding");
    auto* count = add_sub("count", "Count tight k-hypercycles of a circle-layered graph");
    auto* minw = add_sub("minweight", "Minimum-weight tight k-hypercycle");
    for (auto* s : {detect, count, minw}) {
        s->add_option("--input", input, "Hypergraph file");
        s->add_option("--u", u);
        s->add_option("--k", k);
        s->add_option("--algo", algo_name);
    }
    for (auto* s : {detect, minw}) s->add_option("--delta", delta, "Failure probability")->check(CLI::Range(1e-12, 0.999));
    count->add_option("--layout", layout_path, "Partition file (omit for free cycles)");

    // reduce
    auto* reduce = add_sub("reduce", "Apply a reduction");
    std::string reduce_kind = "clique2cycle", pattern_spec = "triangle";
    std::size_t u_target = 0;
    reduce->add_option("--kind", reduce_kind)->check(CLI::IsMember({"clique2cycle", "lift", "hk2h"}));
    reduce->add_option("--input", input);
    reduce->add_option("--layout", layout_path);
    reduce->add_option("--u", u);
    reduce->add_option("--u-target", u_target);
    reduce->add_option("--pattern", pattern_spec);
    reduce->add_option("--layout-out", layout_out);

    // wc2ac
    auto* wc = add_sub("wc2ac", "Worst-case #HK through an average-case ER oracle");
    std::size_t wc_n = 3, wc_b = 2, trials = 10;
    std::string oracle_spec = "brute";
    wc->add_option("--pattern", pattern_spec);
    wc->add_option("--n", wc_n, "Vertices per partition");
    wc->add_option("--b", wc_b, "Edge probability 1/b");
    wc->add_option("--oracle", oracle_spec);
    wc->add_option("--trials", trials);
    wc->add_option("--delta", delta);

    // db
    auto* db = add_sub("db", "Conjunctive count queries");
    std::string db_path, query_text;
    db->add_option("--db", db_path, "Database file");
    db->add_option("--query", query_text, "Query text or @file");
    auto* mode = db->add_option_group("mode");
    bool m_count = false, m_poly = false, m_avg = false;
    mode->add_flag("--count", m_count);
    mode->add_flag("--polynomial", m_poly);
    mode->add_flag("--avgcase", m_avg);
    mode->require_option(0, 1);
    db->add_option("--oracle", oracle_spec);
    db->add_option("--delta", delta);

    // bench
    auto* bench = add_sub("bench", "Sweep (u, k, n) and report wall time and operation counts");
    std::vector<std::string> bench_algos{"brute", "triangle", "clr"};
    std::vector<std::size_t> bench_u{2, 3}, bench_k{5, 6}, bench_n{2, 3};
    double bench_mu = 0.5;
    bench->add_option("--algos", bench_algos);
    bench->add_option("--us", bench_u);
    bench->add_option("--ks", bench_k);
    bench->add_option("--ns", bench_n);
    bench->add_option("--mu", bench_mu);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            if (selftest) return selftest_gen();
            RandomSpec spec;
            spec.b = gen_b;
            if (gen_mu > 0) spec.mu = gen_mu;
            spec.seed = glob.seed;
            spec.validate();
            PartiteGraph out;
            if (gen_kind == "er") {
                const std::vector<std::size_t> sizes{gen_u};
                out.g = gen_er(gen_n, sizes, spec);
            } else if (gen_kind == "kpartite") {
                std::vector<Mask> slots;
                for (Mask m = 0; m < (1u << gen_k); ++m)
                    if (popcount(m) == gen_u) slots.push_back(m);
                out = gen_kpartite_er(gen_n, gen_k, slots, spec);
            } else {
                out = gen_circle_layered(gen_n, gen_k, gen_u, spec);
                if (gen->count("--plant")) out.g = plant_hypercycle(out.g, out.layout, gen_u, derive_seed(glob.seed, 1));
            }
            if (!weight_range.empty())
                out.g = with_random_weights(out.g, std::stoll(weight_range[0]), std::stoll(weight_range[1]),
                                            derive_seed(glob.seed, 2));
            emit(glob, serialize(out.g));
            if (!layout_out.empty()) {
                if (out.layout.part_of.empty()) out.layout = block_layout(gen_n, 1);
                write_file(layout_out, serialize(out.layout));
            }
            return 0;
        }
        if (detect->parsed()) {
            if (selftest) return selftest_cycles();
            if (input.empty()) throw CLI::RequiredError("--input");
            const auto g = load_graph(input);
            const auto algo = parse_cycle_algo(algo_name);
            const auto r = detect_hypercycle(g, u, k, delta, glob.seed, algo);
            Table t({"found", "trials_run", "trials_planned", "algo"});
            t.add({r.found ? 1 : 0, r.trials_run, r.trials_planned, to_string(r.algo)});
            emit(glob, t.render(glob.format));
            return r.found ? 0 : 1;
        }
        if (count->parsed()) {
            if (selftest) return selftest_cycles();
            if (input.empty()) throw CLI::RequiredError("--input");
            const auto g = load_graph(input);
            Table t({"count", "algo"});
            if (layout_path.empty()) {
                t.add({brute_count_hypercycles(g, u, k).count, "brute-free"});
            } else {
                const auto l = parse_partition(read_input(layout_path), g.n());
                if (l.k != k) throw InvariantError("--k must equal the number of partitions");
                auto algo = parse_cycle_algo(algo_name);
                if (algo == CycleAlgo::automatic) algo = choose_algo(u, k);
                t.add({count_layered(g, l, u, algo), to_string(algo)});
            }
            emit(glob, t.render(glob.format));
            return 0;
        }
        if (minw->parsed()) {
            if (selftest) return selftest_minweight();
            if (input.empty()) throw CLI::RequiredError("--input");
            const auto g = load_graph(input);
            MinAlgo algo = MinAlgo::automatic;
            if (algo_name == "naive") algo = MinAlgo::naive;
            else if (algo_name == "color") algo = MinAlgo::color_coded;
            else if (algo_name != "auto") throw CLI::ValidationError("--algo", "expected auto, naive or color");
            const auto r = min_hypercycle(g, u, k, delta, glob.seed, algo);
            Table t({"weight", "trials", "color_coded"});
            t.add({r.weight == kInfWeight ? nlohmann::json("inf") : nlohmann::json(r.weight), r.trials,
                   r.color_coded ? 1 : 0});
            emit(glob, t.render(glob.format));
            return 0;
        }
        if (reduce->parsed()) {
            if (selftest) return selftest_reduce();
            if (input.empty() || layout_path.empty()) throw CLI::RequiredError("--input and --layout");
            const auto g = load_graph(input);
            const auto l = parse_partition(read_input(layout_path), g.n());
            if (reduce_kind == "clique2cycle") {
                const auto r = hyperclique_to_hypercycle(g, l, u);
                emit(glob, serialize(r.g));
                if (!layout_out.empty()) write_file(layout_out, serialize(r.layout));
            } else if (reduce_kind == "lift") {
                emit(glob, serialize(lift_uniformity(g, l, u, u_target)));
            } else {
                const auto h = parse_pattern_spec(pattern_spec);
                const auto r = hk_to_h(h, PartiteGraph{g, l}, [](const PatternGraph& hT, const PartiteGraph& gT) {
                    return brute_count_pattern(hT, gT.g, PatternMode::h_partite, &gT.layout);
                });
                Table t({"count", "calls", "selections"});
                t.add({r.count, r.calls, r.selections});
                emit(glob, t.render(glob.format));
            }
            return 0;
        }
        if (wc->parsed()) {
            if (selftest) return selftest_wc2ac();
            const auto h = parse_pattern_spec(pattern_spec);
            const double rate = parse_oracle_rate(oracle_spec);
            std::vector<std::vector<nlohmann::json>> rows(trials);
            parallel_for(trials, glob.jobs, [&](std::size_t i) {
                RandomSpec spec;
                spec.b = wc_b;
                spec.seed = derive_seed(glob.seed, 3 * i);
                const auto g = gen_kpartite_er(wc_n, h.k(), h.slots(), spec);
                const auto truth = brute_count_pattern(h, g.g, PatternMode::k_partite, &g.layout);
                ErOracle er = make_brute_er_oracle();
                if (rate > 0) er = make_corrupt_er_oracle(er, rate, derive_seed(glob.seed, 3 * i + 1));
                const auto r = wc2ac_pipeline(g, h, er, wc_b, delta, derive_seed(glob.seed, 3 * i + 2));
                const bool agreed = r.count && *r.count == truth;
                rows[i] = {i, r.count ? nlohmann::json(*r.count) : nlohmann::json("fail"), truth, agreed ? 1 : 0};
            });
            Table t({"trial", "answer", "truth", "agreed"});
            for (auto& r : rows) t.add(std::move(r));
            emit(glob, t.render(glob.format));
            return 0;
        }
        if (db->parsed()) {
            if (selftest) return selftest_db();
            if (db_path.empty() || query_text.empty()) throw CLI::RequiredError("--db and --query");
            const auto d = parse_database(read_input(db_path));
            const auto q = parse_query(query_text[0] == '@' ? read_input(query_text.substr(1)) : query_text);
            Table t({"mode", "value"});
            if (m_poly) {
                const auto desc = make_scq(d, q);
                const auto v = eval_scq_polynomial(desc, scq_indicator(desc, d));
                t = Table({"mode", "value", "p"});
                t.add({"polynomial", v, desc.modulus.p});
            } else if (m_avg) {
                const double rate = parse_oracle_rate(oracle_spec);
                UscqOracle o = make_brute_uscq_oracle();
                if (rate > 0) o = make_corrupt_uscq_oracle(o, rate, derive_seed(glob.seed, 1));
                const auto r = scq_via_uscq(d, q, o, delta, glob.seed);
                t = Table({"mode", "value", "repetitions", "failure"});
                t.add({"avgcase", r.value ? nlohmann::json(*r.value) : nlohmann::json("fail"), r.repetitions,
                       r.failure});
                emit(glob, t.render(glob.format));
                return r.value ? 0 : kExitInvariant;
            } else {
                t.add({"count", brute_scq(d, q)});
            }
            emit(glob, t.render(glob.format));
            return 0;
        }
        if (bench->parsed()) {
            if (selftest) return selftest_cycles();
            struct Cell {
                std::string algo;
                std::size_t n, u, k;
            };
            std::vector<Cell> cells;
            for (const auto& a : bench_algos)
                for (auto uu : bench_u)
                    for (auto kk : bench_k)
                        for (auto nn : bench_n) {
                            const auto algo = parse_cycle_algo(a);
                            if (kk < uu || (algo == CycleAlgo::triangle && !triangle_applies(uu, kk)) ||
                                (algo == CycleAlgo::clr && !clr_applies(uu, kk)))
                                continue;
                            cells.push_back({a, nn, uu, kk});
                        }
            std::vector<std::vector<nlohmann::json>> rows(cells.size());
            parallel_for(cells.size(), glob.jobs, [&](std::size_t i) {
                const auto& c = cells[i];
                RandomSpec spec;
                spec.mu = bench_mu;
                // Same graph for every algorithm in a (n, u, k) cell.
                spec.seed = derive_seed(glob.seed, (c.n * 64 + c.u) * 64 + c.k);
                const auto g = gen_circle_layered(c.n, c.k, c.u, spec);
                OpCounters ops;
                LayeredOptions opt;
                opt.counters = &ops;
                const auto algo = parse_cycle_algo(c.algo);
                const auto t0 = std::chrono::steady_clock::now();
                const auto cnt = count_layered(g.g, g.layout, c.u, algo, opt);
                const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                std::uint64_t op = 0;
                if (algo == CycleAlgo::triangle) op = ops.tripartite_builds;
                else if (algo == CycleAlgo::clr) op = ops.matmuls;
                else {
                    op = 1;
                    for (std::size_t j = 0; j < c.k; ++j) op *= c.n;
                }
                rows[i] = {c.algo, c.n, c.u, c.k, ms, op, cnt};
            });
            Table t({"algo", "n", "u", "k", "wall_time", "op_count", "cycles"});
            for (auto& r : rows) t.add(std::move(r));
            emit(glob, t.render(glob.format));
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return kExitParse;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const OverflowError& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitUsage;
}

// Batch front-end for the BAP toolkit: instance generation, single solves,
// experiment grids with CSV output, and solution verification.
//
// Exit codes: 0 ok, 1 usage error, 2 data error, 3 verification mismatch.

#include <bap/bap.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bap;

namespace {

constexpr const char* kCsvVersion = "# bap-results v1";
constexpr const char* kCsvHeader =
    "instance,algorithm,seed,value,time_ms,iterations,restarts,best_iter,converged";

struct ResultRow {
    std::string instance;
    std::string algorithm;
    std::uint64_t seed = 0;
    long long value = 0;
    std::int64_t time_ms = 0;
    long long iterations = 0;
    long long restarts = 1;
    long long best_iter = 0;
    bool converged = true;

    std::string key() const {
        return instance + "\x1f" + algorithm + "\x1f" + std::to_string(seed);
    }
    std::string csv() const {
        std::ostringstream out;
        out << instance << ',' << algorithm << ',' << seed << ',' << value << ',' << time_ms
            << ',' << iterations << ',' << restarts << ',' << best_iter << ','
            << (converged ? 1 : 0);
        return out.str();
    }
};

struct AlgoSpec {
    enum class Kind { ConstructOnly, Local, Vns, HStart, Brute };
    Kind kind = Kind::Local;
    SearchVariant variant{};
    VnsVariant vns = VnsVariant::AA2ExOptFirstStep;
    bool force_rxyg_multistart = false;  // the msaa shorthand
};

const std::map<std::string, AlgoSpec>& algo_registry() {
    using K = AlgoSpec::Kind;
    static const std::map<std::string, AlgoSpec> reg = {
        {"none", {K::ConstructOnly, {}, {}, false}},
        {"brute", {K::Brute, {}, {}, false}},
        {"2ex", {K::Local, {Family::TwoExchange, Rule::Best}, {}, false}},
        {"2exfirst", {K::Local, {Family::TwoExchange, Rule::First}, {}, false}},
        {"3ex", {K::Local, {Family::ThreeExchange, Rule::Best}, {}, false}},
        {"3exfirst", {K::Local, {Family::ThreeExchange, Rule::First}, {}, false}},
        {"aa", {K::Local, {Family::Alternating, Rule::Best}, {}, false}},
        {"dual2ex", {K::Local, {Family::DualTwoExchange, Rule::Best}, {}, false}},
        {"dual2exfirst", {K::Local, {Family::DualTwoExchange, Rule::First}, {}, false}},
        {"2exopt", {K::Local, {Family::TwoExchangeOpt, Rule::Best}, {}, false}},
        {"2exoptfirst", {K::Local, {Family::TwoExchangeOpt, Rule::First}, {}, false}},
        {"2exoptheuristic",
         {K::Local, {Family::TwoExchangeOpt, Rule::Best, LapMode::Greedy}, {}, false}},
        {"2exoptheuristicfirst",
         {K::Local, {Family::TwoExchangeOpt, Rule::First, LapMode::Greedy}, {}, false}},
        // First-improvement is the default for the optimized 3-exchange; a
        // full best-improvement sweep of that neighborhood is rarely worth it.
        {"3exopt", {K::Local, {Family::ThreeExchangeOpt, Rule::First}, {}, false}},
        {"3exoptbest", {K::Local, {Family::ThreeExchangeOpt, Rule::Best}, {}, false}},
        {"shift", {K::Local, {Family::Shift, Rule::Best}, {}, false}},
        {"shiftfirst", {K::Local, {Family::Shift, Rule::First}, {}, false}},
        {"shiftshuffle", {K::Local, {Family::ShiftShuffle, Rule::Best}, {}, false}},
        {"shiftshufflefirst", {K::Local, {Family::ShiftShuffle, Rule::First}, {}, false}},
        {"dualshift", {K::Local, {Family::DualShift, Rule::Best}, {}, false}},
        {"shiftopt", {K::Local, {Family::ShiftOpt, Rule::Best}, {}, false}},
        {"shiftoptfirst", {K::Local, {Family::ShiftOpt, Rule::First}, {}, false}},
        {"2ex+aa", {K::Vns, {}, VnsVariant::TwoExPlusAA, false}},
        {"2exaastep", {K::Vns, {}, VnsVariant::TwoExAAStep, false}},
        {"aa+2exoptfirst", {K::Vns, {}, VnsVariant::AAPlus2ExOptFirst, false}},
        {"aa2exoptstep", {K::Vns, {}, VnsVariant::AA2ExOptStep, false}},
        {"aa2exoptfirststep", {K::Vns, {}, VnsVariant::AA2ExOptFirstStep, false}},
        {"h-aa2exoptfirststep", {K::HStart, {}, {}, false}},
        {"msaa", {K::Local, {Family::Alternating, Rule::Best}, {}, true}},
    };
    return reg;
}

std::optional<ConstructorSpec::Kind> constructor_by_name(const std::string& name) {
    static const std::map<std::string, ConstructorSpec::Kind> reg = {
        {"random", ConstructorSpec::Kind::Random},
        {"randomxygreedy", ConstructorSpec::Kind::RandomXYGreedy},
        {"greedy", ConstructorSpec::Kind::Greedy},
        {"greedyrandomized", ConstructorSpec::Kind::GreedyRandomized},
        {"rounding", ConstructorSpec::Kind::Rounding},
        {"identity", ConstructorSpec::Kind::Identity},
    };
    const auto it = reg.find(name);
    if (it == reg.end()) return std::nullopt;
    return it->second;
}

struct RunConfig {
    std::string algo = "aa";
    std::string construct = "random";
    std::uint64_t seed = 0;
    int h = 2;
    std::optional<std::int64_t> time_ms;
    std::optional<long long> restarts;
    int threads = 1;
    bool stable_time = false;  // report time_ms as 0 for byte-reproducible output
};

/// One (constructor, algorithm, seed) run on one instance.
ResultRow run_algorithm(const BapInstance& inst, const RunConfig& cfg,
                        const std::string& label, Solution* solution_out) {
    const auto it = algo_registry().find(cfg.algo);
    if (it == algo_registry().end())
        throw std::invalid_argument("unknown algorithm: " + cfg.algo);
    const AlgoSpec& spec = it->second;

    const auto ctor_kind = constructor_by_name(cfg.construct);
    if (!ctor_kind) throw std::invalid_argument("unknown constructor: " + cfg.construct);
    ConstructorSpec ctor{*ctor_kind, cfg.h};
    if (spec.force_rxyg_multistart) ctor.kind = ConstructorSpec::Kind::RandomXYGreedy;

    const auto t0 = std::chrono::steady_clock::now();
    ResultRow row;
    row.instance = inst.name();
    row.algorithm = label;
    row.seed = cfg.seed;

    std::optional<std::chrono::milliseconds> budget_ms;
    if (cfg.time_ms) budget_ms = std::chrono::milliseconds(*cfg.time_ms);

    SearchReport rep;
    const bool want_multistart = spec.force_rxyg_multistart || cfg.restarts.has_value();
    if (spec.kind == AlgoSpec::Kind::Brute) {
        rep = brute_force_solve(inst);
    } else if (spec.kind == AlgoSpec::Kind::ConstructOnly) {
        Solution s = construct(inst, ctor, cfg.seed);
        rep.value = evaluate(inst, s);
        rep.solution = std::move(s);
    } else if (spec.kind == AlgoSpec::Kind::HStart) {
        rep = h_start_vns(inst, cfg.h, budget_ms, cfg.seed);
    } else if (want_multistart) {
        Budget budget;
        budget.time_ms = cfg.time_ms;
        budget.restarts = cfg.restarts;
        SearchFn search = spec.kind == AlgoSpec::Kind::Vns ? vns_fn(spec.vns)
                                                           : search_fn(spec.variant);
        MetaReport meta = multistart(inst, ctor, search, budget, cfg.seed, cfg.threads);
        rep = std::move(meta.best);
        row.restarts = meta.restarts;
        row.best_iter = meta.best_iter;
    } else {
        Solution start = construct(inst, ctor, cfg.seed);
        rep = spec.kind == AlgoSpec::Kind::Vns
                  ? vns(inst, std::move(start), spec.vns, budget_ms)
                  : local_search(inst, std::move(start), spec.variant, budget_ms);
    }

    row.value = rep.value;
    row.iterations = rep.iterations;
    row.converged = rep.converged;
    row.time_ms = cfg.stable_time
                      ? 0
                      : std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    if (solution_out) *solution_out = std::move(rep.solution);
    return row;
}

std::string sanitize_filename(std::string name) {
    for (char& c : name)
        if (c == ' ' || c == '/') c = '_';
    return name;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const std::string& type, int m, int n, int count, std::uint64_t seed, int origin,
            const std::string& out_dir, const std::string& fixture_name, int fixture_h) {
    fs::create_directories(out_dir);
    std::vector<BapInstance> batch;
    if (type == "fixture") {
        batch.push_back(fixture(fixture_name, m, n, fixture_h));
    } else {
        GenSpec spec;
        spec.m = m;
        spec.n = n;
        spec.seed = seed;
        spec.count = count;
        spec.origin = origin;
        if (type == "uniform")
            spec.kind = GenKind::Uniform;
        else if (type == "normal")
            spec.kind = GenKind::Normal;
        else if (type == "euclidean")
            spec.kind = GenKind::Euclidean;
        else if (type == "rank1")
            spec.kind = GenKind::Rank1;
        else
            throw CLI::ValidationError("--type", "unknown instance type: " + type);
        spec.validate();
        for (int i = 0; i < count; ++i) batch.push_back(generate(spec, i));
    }
    for (const BapInstance& inst : batch) {
        const fs::path path = fs::path(out_dir) / (sanitize_filename(inst.name()) + ".bap");
        write_instance(inst, path);
        std::cout << path.string() << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int cmd_solve(const std::string& instance_path, RunConfig cfg,
              const std::string& solution_path) {
    const BapInstance inst = read_instance(fs::path(instance_path));
    Solution solution;
    const ResultRow row = run_algorithm(inst, cfg, cfg.algo, &solution);

    fs::path sol_path = solution_path.empty()
                            ? fs::path(sanitize_filename(inst.name()) + "_" + cfg.algo + "_" +
                                       std::to_string(cfg.seed) + ".sol")
                            : fs::path(solution_path);
    write_solution(solution, sol_path);

    std::cout << kCsvVersion << "\n" << kCsvHeader << "\n" << row.csv() << "\n";
    std::cerr << "solution written to " << sol_path.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct AlgoEntry {
    std::string label;
    RunConfig cfg;
};

/// Parse completed data rows of a partially written results file, keyed for
/// resume. Stops at the aggregate marker.
std::map<std::string, ResultRow> load_existing_rows(const fs::path& path) {
    std::map<std::string, ResultRow> rows;
    std::ifstream in(path);
    if (!in) return rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# aggregate", 0) == 0) break;
        if (line.empty() || line[0] == '#' || line.rfind("instance,", 0) == 0) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 9) continue;
        ResultRow row;
        row.instance = f[0];
        row.algorithm = f[1];
        row.seed = std::stoull(f[2]);
        row.value = std::stoll(f[3]);
        row.time_ms = std::stoll(f[4]);
        row.iterations = std::stoll(f[5]);
        row.restarts = std::stoll(f[6]);
        row.best_iter = std::stoll(f[7]);
        row.converged = f[8] == "1";
        rows[row.key()] = row;
    }
    return rows;
}

std::pair<std::string, std::string> split_type_size(const std::string& name, int m, int n) {
    std::stringstream ss(name);
    std::string type, size;
    if (ss >> type >> size && size.find('x') != std::string::npos) return {type, size};
    return {name.empty() ? "unnamed" : name, std::to_string(m) + "x" + std::to_string(n)};
}

void write_results(const fs::path& path, std::vector<ResultRow> rows,
                   const std::map<std::string, std::pair<int, int>>& sizes) {
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.instance != b.instance) return a.instance < b.instance;
        if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
        return a.seed < b.seed;
    });
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write results: " + path.string());
    out << kCsvVersion << "\n" << kCsvHeader << "\n";
    for (const ResultRow& row : rows) out << row.csv() << "\n";

    // Per-(type, size, algorithm) means, mirroring per-class result tables.
    struct Agg {
        long long runs = 0;
        double value_sum = 0, time_sum = 0;
    };
    std::map<std::string, Agg> agg;
    for (const ResultRow& row : rows) {
        const auto size_it = sizes.find(row.instance);
        const auto [type, size] = split_type_size(
            row.instance, size_it == sizes.end() ? 0 : size_it->second.first,
            size_it == sizes.end() ? 0 : size_it->second.second);
        Agg& a = agg[type + "," + size + "," + row.algorithm];
        ++a.runs;
        a.value_sum += static_cast<double>(row.value);
        a.time_sum += static_cast<double>(row.time_ms);
    }
    out << "# aggregate v1\n";
    out << "# type,size,algorithm,runs,mean_value,mean_time_ms\n";
    for (const auto& [key, a] : agg) {
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << key << ',' << a.runs << ',' << a.value_sum / a.runs << ','
             << a.time_sum / a.runs;
        out << line.str() << "\n";
    }
}

int cmd_experiment(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config: " + config_path);
    json cfg = json::parse(in, nullptr, true, true);  // allow comments

    const fs::path output = cfg.at("output").get<std::string>();
    const bool stable_time = cfg.value("stable_time", false);
    const std::string solutions_dir = cfg.value("solutions_dir", std::string());
    if (!solutions_dir.empty()) fs::create_directories(solutions_dir);

    std::vector<BapInstance> instances;
    for (const auto& p : cfg.value("instances", std::vector<std::string>{}))
        instances.push_back(read_instance(fs::path(p)));
    for (const auto& g : cfg.value("generate", json::array())) {
        GenSpec spec;
        const std::string type = g.at("type").get<std::string>();
        if (type == "uniform")
            spec.kind = GenKind::Uniform;
        else if (type == "normal")
            spec.kind = GenKind::Normal;
        else if (type == "euclidean")
            spec.kind = GenKind::Euclidean;
        else if (type == "rank1")
            spec.kind = GenKind::Rank1;
        else
            throw std::runtime_error("config: unknown generator type " + type);
        spec.m = g.at("m").get<int>();
        spec.n = g.at("n").get<int>();
        spec.seed = g.value("seed", 0ULL);
        spec.count = g.value("count", 1);
        spec.origin = g.value("origin", 0);
        spec.validate();
        const std::string dir = g.value("dir", std::string());
        for (int i = 0; i < spec.count; ++i) {
            BapInstance inst = generate(spec, i);
            if (!dir.empty()) {
                fs::create_directories(dir);
                write_instance(inst, fs::path(dir) / (sanitize_filename(inst.name()) + ".bap"));
            }
            instances.push_back(std::move(inst));
        }
    }
    if (instances.empty()) throw std::runtime_error("config: no instances");

    std::vector<std::uint64_t> seeds = cfg.value("seeds", std::vector<std::uint64_t>{0});
    std::vector<AlgoEntry> algos;
    for (const auto& a : cfg.at("algorithms")) {
        AlgoEntry entry;
        entry.cfg.algo = a.at("algo").get<std::string>();
        entry.cfg.construct = a.value("construct", "random");
        entry.cfg.h = a.value("h", 2);
        if (a.contains("time_ms")) entry.cfg.time_ms = a["time_ms"].get<std::int64_t>();
        if (a.contains("restarts")) entry.cfg.restarts = a["restarts"].get<long long>();
        entry.cfg.threads = a.value("threads", 1);
        entry.cfg.stable_time = stable_time;
        entry.label = a.value("name", entry.cfg.algo + "+" + entry.cfg.construct);
        if (algo_registry().find(entry.cfg.algo) == algo_registry().end())
            throw std::runtime_error("config: unknown algorithm " + entry.cfg.algo);
        if (!constructor_by_name(entry.cfg.construct))
            throw std::runtime_error("config: unknown constructor " + entry.cfg.construct);
        algos.push_back(std::move(entry));
    }

    std::map<std::string, std::pair<int, int>> sizes;
    for (const BapInstance& inst : instances) sizes[inst.name()] = {inst.m(), inst.n()};

    struct Task {
        const BapInstance* inst;
        const AlgoEntry* algo;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const BapInstance& inst : instances)
        for (const AlgoEntry& algo : algos)
            for (std::uint64_t seed : seeds) tasks.push_back({&inst, &algo, seed});

    const std::map<std::string, ResultRow> existing = load_existing_rows(output);
    std::vector<ResultRow> rows;
    std::vector<Task> pending;
    for (const Task& t : tasks) {
        ResultRow probe;
        probe.instance = t.inst->name();
        probe.algorithm = t.algo->label;
        probe.seed = t.seed;
        const auto it = existing.find(probe.key());
        if (it != existing.end())
            rows.push_back(it->second);
        else
            pending.push_back(t);
    }

    int workers = 1;
    if (const char* env = std::getenv("BAP_MAX_WORKERS")) workers = std::max(1, std::atoi(env));
    workers = std::min<int>(workers, std::max<std::size_t>(pending.size(), 1));

    std::mutex mtx;
    std::size_t next = 0;
    // Completed rows are journaled immediately so an interrupted grid resumes
    // where it stopped.
    std::ofstream journal(output, std::ios::app);
    const auto work = [&] {
        for (;;) {
            Task task;
            {
                std::lock_guard<std::mutex> lock(mtx);
                if (next >= pending.size()) return;
                task = pending[next++];
            }
            RunConfig rc = task.algo->cfg;
            rc.seed = task.seed;
            Solution solution;
            ResultRow row = run_algorithm(*task.inst, rc, task.algo->label,
                                          solutions_dir.empty() ? nullptr : &solution);
            if (!solutions_dir.empty())
                write_solution(solution,
                               fs::path(solutions_dir) /
                                   (sanitize_filename(row.instance + "_" + row.algorithm +
                                                      "_" + std::to_string(row.seed)) +
                                    ".sol"));
            std::lock_guard<std::mutex> lock(mtx);
            rows.push_back(row);
            journal << row.csv() << "\n";
            journal.flush();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    journal.close();

    write_results(output, rows, sizes);
    std::cout << "wrote " << rows.size() << " rows to " << output.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify / avg
// ---------------------------------------------------------------------------

int cmd_verify(const std::string& instance_path, const std::string& solution_path,
               std::optional<long long> claimed) {
    const BapInstance inst = read_instance(fs::path(instance_path));
    const Solution s = read_solution(fs::path(solution_path), inst.m(), inst.n());
    const long long value = evaluate(inst, s);
    const Rational avg = average_value(inst);

    std::cout << "instance: " << inst.name() << "\n";
    std::cout << "value: " << value << "\n";
    std::cout << "average: " << avg.str() << " (~" << avg.approx() << ")\n";
    std::cout << "value <= average: " << (Rational(value) <= avg ? "yes" : "no") << "\n";
    if (inst.nonnegative_pure()) {
        const Rational bound =
            avg * Rational(2LL * inst.m() * inst.n(), inst.m() + inst.n());
        std::cout << "value <= 2mn/(m+n)*average: "
                  << (Rational(value) <= bound ? "yes" : "no") << "\n";
    } else {
        std::cout << "value <= 2mn/(m+n)*average: n/a (needs non-negative Q, zero C/D)\n";
    }
    if (claimed && *claimed != value) {
        std::cout << "MISMATCH: claimed " << *claimed << ", recomputed " << value << "\n";
        return 3;
    }
    std::cout << "ok\n";
    return 0;
}

int cmd_avg(const std::string& instance_path) {
    const BapInstance inst = read_instance(fs::path(instance_path));
    const Rational avg = average_value(inst);
    std::cout << avg.str() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilinear assignment problem solver toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate benchmark instances");
    std::string gen_type = "uniform", gen_out = ".", fixture_name = "exchange_trap";
    int gen_m = 4, gen_n = 4, gen_count = 1, gen_origin = 0, fixture_h = 1;
    std::uint64_t gen_seed = 0;
    gen->add_option("--type", gen_type, "uniform|normal|euclidean|rank1|fixture");
    gen->add_option("--m", gen_m);
    gen->add_option("--n", gen_n);
    gen->add_option("--count", gen_count);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--origin", gen_origin, "index of the first generated instance");
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--name", fixture_name, "fixture name (with --type fixture)");
    gen->add_option("--fixture-h", fixture_h, "h parameter of the hp_trap fixture");

    // solve
    auto* solve = app.add_subcommand("solve", "run one algorithm on one instance");
    std::string solve_instance, solve_solution;
    RunConfig solve_cfg;
    std::int64_t solve_time_ms = -1;
    long long solve_restarts = -1;
    solve->add_option("--instance", solve_instance)->required();
    solve->add_option("--algo", solve_cfg.algo, "algorithm name (see README)");
    solve->add_option("--construct", solve_cfg.construct, "starting-solution constructor");
    solve->add_option("--seed", solve_cfg.seed);
    solve->add_option("--hsize", solve_cfg.h, "candidate-list size / number of starts");
    solve->add_option("--time-ms", solve_time_ms, "wall-clock budget");
    solve->add_option("--restarts", solve_restarts, "multi-start restart limit");
    solve->add_option("--threads", solve_cfg.threads, "multi-start worker threads");
    solve->add_flag("--stable-time", solve_cfg.stable_time, "report time_ms as 0");
    solve->add_option("--solution-out", solve_solution, "solution file path");

    // experiment
    auto* exp = app.add_subcommand("experiment", "run a config-driven grid, emit CSV");
    std::string exp_config;
    exp->add_option("--config", exp_config, "JSON experiment config")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "recompute a solution's value");
    std::string verify_instance, verify_solution;
    long long verify_value = 0;
    bool has_value = false;
    verify->add_option("--instance", verify_instance)->required();
    verify->add_option("--solution", verify_solution)->required();
    auto* vopt = verify->add_option("--value", verify_value, "claimed objective value");
    verify->callback([&] { has_value = vopt->count() > 0; });

    // avg
    auto* avg = app.add_subcommand("avg", "print the exact average objective value");
    std::string avg_instance;
    avg->add_option("--instance", avg_instance)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_type, gen_m, gen_n, gen_count, gen_seed, gen_origin, gen_out,
                           fixture_name, fixture_h);
        if (solve->parsed()) {
            if (solve_time_ms >= 0) solve_cfg.time_ms = solve_time_ms;
            if (solve_restarts >= 1) solve_cfg.restarts = solve_restarts;
            return cmd_solve(solve_instance, solve_cfg, solve_solution);
        }
        if (exp->parsed()) return cmd_experiment(exp_config);
        if (verify->parsed())
            return cmd_verify(verify_instance, verify_solution,
                              has_value ? std::optional<long long>(verify_value)
                                        : std::nullopt);
        if (avg->parsed()) return cmd_avg(avg_instance);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

#include <gbethe/checks.hpp>
#include <gbethe/config.hpp>
#include <gbethe/coproduct.hpp>
#include <gbethe/sampling.hpp>
#include <gbethe/solver.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace gbethe;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Json read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path);
    Json j;
    in >> j;
    return j;
}

void write_text(const std::string& out_path, const std::string& text)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file " + out_path);
    out << text;
}

std::string profile_name(const GradingProfile<Rational>& gp)
{
    return "gl(" + std::to_string(gp.m) + "|" + std::to_string(gp.n) + ")";
}

Flavor flavor_from(const Json& cfg)
{
    std::string name = cfg.value("flavor", "standard");
    if (name == "standard")
        return Flavor::standard;
    if (name == "mirror" || name == "hat")
        return Flavor::mirror;
    throw ContractError("flavor must be standard or mirror");
}

Json rationals_to_json(const std::vector<Rational>& vs)
{
    Json arr = Json::array();
    for (const Rational& v : vs)
        arr.push_back(scalar_to_string(v));
    return arr;
}

// ---------------------------------------------------------------- build

int run_build(const std::string& config_path, const std::string& out_path)
{
    Json cfg = read_config(config_path);
    SpinChainModel<Rational> model = model_from_json(cfg.at("model"));
    ParamTable<Rational> table = table_from_json(cfg.at("table"));
    Flavor flavor = flavor_from(cfg);

    auto t0 = Clock::now();
    std::vector<Word<Rational>> words = pre_bethe_words(model.grading, table, flavor);
    GradedState<Rational> state(model.length);
    for (const Word<Rational>& w : words)
        state += word_apply(model, w);
    double wall = ms_since(t0);

    Json doc;
    doc["model"] = model_to_json(model);
    doc["table"] = table_to_json(table);
    doc["state"] = state_to_json(state);
    write_text(out_path, doc.dump(2) + "\n");

    Json manifest;
    manifest["profile"] = profile_name(model.grading);
    manifest["r"] = table_cardinalities(table);
    manifest["partition_tables"] = words.size();
    manifest["terms"] = state.terms.size();
    manifest["wall_ms"] = wall;
    std::cerr << manifest.dump() << "\n";
    return 0;
}

// ---------------------------------------------------------------- solve

int run_solve(const std::string& config_path, const std::string& out_path)
{
    Json cfg = read_config(config_path);
    SpinChainModel<Rational> model_q = model_from_json(cfg.at("model"));
    std::vector<int> r = cfg.at("r").get<std::vector<int>>();

    SolverOptions opts;
    opts.digits = cfg.value("digits", 100u);
    opts.seeds = cfg.value("seeds", opts.seeds);
    opts.seed_base = cfg.value("seed_base", opts.seed_base);
    opts.max_iterations = cfg.value("max_iterations", opts.max_iterations);
    opts.box = cfg.value("box", opts.box);

    auto t0 = Clock::now();
    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(opts.digits);
    SpinChainModel<MpFloat> model = model_from_rational<MpFloat>(model_q);
    std::vector<BetheSolution> sols = solve_bethe(model, r, opts);

    Json doc;
    doc["model"] = model_to_json(model_q);
    doc["r"] = r;
    doc["digits"] = opts.digits;
    Json arr = Json::array();
    for (const BetheSolution& sol : sols) {
        Json s;
        Json roots = Json::array();
        for (const auto& level : sol.roots) {
            Json row = Json::array();
            for (const MpFloat& x : level)
                row.push_back(scalar_to_string(x));
            roots.push_back(row);
        }
        s["roots"] = roots;
        s["residual"] = scalar_to_string(sol.residual);
        s["seed"] = sol.seed;
        s["iterations"] = sol.iterations;
        arr.push_back(s);
    }
    doc["solutions"] = arr;
    MpFloat::default_precision(old_digits);
    write_text(out_path, doc.dump(2) + "\n");

    Json manifest;
    manifest["profile"] = profile_name(model_q.grading);
    manifest["r"] = r;
    manifest["solutions"] = sols.size();
    manifest["wall_ms"] = ms_since(t0);
    std::cerr << manifest.dump() << "\n";
    return sols.empty() ? 1 : 0;
}

// ---------------------------------------------------------------- check

// Runs one(idx) for idx in [0, total) over the worker pool; records keep
// their index order, so reports are deterministic for any worker count.
template <class Fn>
std::vector<Json> run_instances(int total, int workers, Fn&& one)
{
    std::vector<Json> records(total);
    if (workers <= 1) {
        for (int k = 0; k < total; ++k)
            records[k] = one(k);
        return records;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers && w < total; ++w)
        pool.emplace_back([&]() {
            for (int k = next.fetch_add(1); k < total; k = next.fetch_add(1))
                records[k] = one(k);
        });
    for (std::thread& th : pool)
        th.join();
    return records;
}

Json instance_record(const std::string& check, Json instance, bool equal, double wall)
{
    Json rec;
    rec["check"] = check;
    rec["instance"] = std::move(instance);
    rec["equal"] = equal;
    rec["runtime_ms"] = wall;
    rec["pass"] = equal;
    return rec;
}

unsigned long seed_of(const Json& job)
{
    return job.value("seed", 1ul);
}

RationalSampler model_sampler(const SpinChainModel<Rational>& model, unsigned long seed)
{
    RationalSampler sampler(seed, model.grading.c);
    for (const Rational& z : model.inhomogeneities)
        sampler.note(z);
    return sampler;
}

ParamTable<Rational> draw_table(RationalSampler& sampler, const std::vector<int>& r)
{
    ParamTable<Rational> t;
    for (int count : r)
        t.push_back(sampler.draw_set(count));
    return t;
}

std::vector<Json> check_rtt(const Json& job, int workers)
{
    std::vector<Json> models;
    if (job.contains("models"))
        for (const Json& mj : job.at("models"))
            models.push_back(mj);
    else
        models = {
            Json{{"m", 1}, {"n", 1}, {"c", "1"}, {"L", 2},
                 {"inhomogeneities", {"0", "1/2"}}, {"twist", {"2", "7"}}},
            Json{{"m", 2}, {"n", 1}, {"c", "1"}, {"L", 2},
                 {"inhomogeneities", {"0", "1/3"}}, {"twist", {"2", "3", "5"}}},
        };
    int trials = job.value("trials", 10);
    unsigned long seed = seed_of(job);

    int total = static_cast<int>(models.size()) * trials;
    return run_instances(total, workers, [&](int k) {
        auto t0 = Clock::now();
        int mi = k / trials;
        SpinChainModel<Rational> model = model_from_json(models[mi]);
        RationalSampler sampler = model_sampler(model, seed + static_cast<unsigned long>(k));
        Rational u = sampler.draw(), v = sampler.draw();
        bool ok = rtt_exchange_holds(model, u, v);
        Json inst;
        inst["model"] = models[mi];
        inst["trial"] = k % trials;
        inst["seed"] = seed + static_cast<unsigned long>(k);
        inst["u"] = scalar_to_string(u);
        inst["v"] = scalar_to_string(v);
        return instance_record("rtt", std::move(inst), ok, ms_since(t0));
    });
}

std::vector<Json> check_izergin(const Json& job, int workers)
{
    int instances = job.value("instances", 100);
    int max_size = job.value("max_size", 4);
    Rational c = parse_rational(job.value("c", "1"));
    unsigned long seed = seed_of(job);
    GradingProfile<Rational> gp;
    gp.m = 1;
    gp.n = 1;
    gp.c = c;

    return run_instances(instances, workers, [&](int k) {
        auto t0 = Clock::now();
        int size = k % max_size + 1;
        int parity = (k / max_size) % 2;
        RationalSampler sampler(seed + static_cast<unsigned long>(k), c);
        ParameterSet<Rational> xs = sampler.draw_set(size);
        ParameterSet<Rational> ys = sampler.draw_set(size);
        bool ok = izergin(gp, parity, ys, xs) == izergin_sym_oracle(gp, parity, ys, xs);
        Json inst;
        inst["size"] = size;
        inst["parity"] = parity;
        inst["c"] = scalar_to_string(c);
        inst["seed"] = seed + static_cast<unsigned long>(k);
        inst["xs"] = rationals_to_json(xs);
        inst["ys"] = rationals_to_json(ys);
        return instance_record("izergin", std::move(inst), ok, ms_since(t0));
    });
}

std::vector<Json> check_equivalence(const Json& job, int workers)
{
    Json mj = job.at("model");
    std::vector<int> r = job.at("r").get<std::vector<int>>();
    int draws = job.value("draws", 10);
    unsigned long seed = seed_of(job);

    return run_instances(draws, workers, [&](int k) {
        auto t0 = Clock::now();
        SpinChainModel<Rational> model = model_from_json(mj);
        RationalSampler sampler = model_sampler(model, seed + static_cast<unsigned long>(k));
        ParamTable<Rational> t = draw_table(sampler, r);
        bool ok = build_bethe_vector(model, t, Flavor::standard)
            == build_bethe_vector(model, t, Flavor::mirror);
        Json inst;
        inst["model"] = mj;
        inst["seed"] = seed + static_cast<unsigned long>(k);
        inst["table"] = table_to_json(t);
        return instance_record("equivalence", std::move(inst), ok, ms_since(t0));
    });
}

std::vector<Json> check_action(const Json& job, int workers)
{
    Json mj = job.at("model");
    std::vector<int> r = job.at("r").get<std::vector<int>>();
    int draws = job.value("draws", 20);
    unsigned long seed = seed_of(job);

    return run_instances(draws, workers, [&](int k) {
        auto t0 = Clock::now();
        SpinChainModel<Rational> model = model_from_json(mj);
        RationalSampler sampler = model_sampler(model, seed + static_cast<unsigned long>(k));
        ParamTable<Rational> t = draw_table(sampler, r);
        Rational z = sampler.draw();
        bool ok = true;
        int dim = model.dim();
        for (int i = 1; i <= dim && ok; ++i)
            for (int j = i; j <= dim && ok; ++j)
                ok = action_formula(model, i, j, z, t) == direct_action(model, i, j, z, t);
        Json inst;
        inst["model"] = mj;
        inst["seed"] = seed + static_cast<unsigned long>(k);
        inst["table"] = table_to_json(t);
        inst["z"] = scalar_to_string(z);
        inst["entries"] = dim * (dim + 1) / 2;
        return instance_record("action", std::move(inst), ok, ms_since(t0));
    });
}

std::vector<Json> check_dual(const Json& job, int workers)
{
    Json mj = job.at("model");
    int a = job.value("a", 1);
    int b = job.value("b", 1);
    int draws = job.value("draws", 5);
    unsigned long seed = seed_of(job);

    return run_instances(draws, workers, [&](int k) {
        auto t0 = Clock::now();
        SpinChainModel<Rational> model = model_from_json(mj);
        RationalSampler sampler = model_sampler(model, seed + static_cast<unsigned long>(k));
        ParameterSet<Rational> us = sampler.draw_set(a);
        ParameterSet<Rational> vs = sampler.draw_set(b);
        ParamTable<Rational> t{us, vs};
        bool ok = build_dual_bethe_vector(model, t, Flavor::standard)
                == fast_path_gl21(model, us, vs, Gl21Form::dual_standard)
            && build_dual_bethe_vector(model, t, Flavor::mirror)
                == fast_path_gl21(model, us, vs, Gl21Form::dual_mirror);
        Json inst;
        inst["model"] = mj;
        inst["seed"] = seed + static_cast<unsigned long>(k);
        inst["u"] = rationals_to_json(us);
        inst["v"] = rationals_to_json(vs);
        return instance_record("dual", std::move(inst), ok, ms_since(t0));
    });
}

std::vector<Json> check_coproduct(const Json& job, int workers)
{
    Json mj = job.at("model");
    int split = job.at("split").get<int>();
    std::vector<int> r = job.at("r").get<std::vector<int>>();
    Flavor flavor = flavor_from(job);
    int draws = job.value("draws", 5);
    unsigned long seed = seed_of(job);

    return run_instances(draws, workers, [&](int k) {
        auto t0 = Clock::now();
        SpinChainModel<Rational> model = model_from_json(mj);
        if (split < 0 || split > model.length)
            throw ContractError("coproduct check: split outside 0..L");
        RationalSampler sampler = model_sampler(model, seed + static_cast<unsigned long>(k));
        ParamTable<Rational> t = draw_table(sampler, r);

        std::vector<Rational> z1(model.inhomogeneities.begin(), model.inhomogeneities.begin() + split);
        std::vector<Rational> z2(model.inhomogeneities.begin() + split, model.inhomogeneities.end());
        SpinChainModel<Rational> first(model.grading, split, z1, {});
        SpinChainModel<Rational> second(model.grading, model.length - split, z2, model.twist);

        bool ok = build_bethe_vector(model, t, flavor) == coproduct_split(first, second, t, flavor);
        Json inst;
        inst["model"] = mj;
        inst["split"] = split;
        inst["seed"] = seed + static_cast<unsigned long>(k);
        inst["table"] = table_to_json(t);
        return instance_record("coproduct", std::move(inst), ok, ms_since(t0));
    });
}

std::vector<Json> check_morphism(const Json& job, int workers)
{
    Json mj = job.at("model");
    std::vector<int> r = job.at("r").get<std::vector<int>>();
    int draws = job.value("draws", 5);
    unsigned long seed = seed_of(job);

    return run_instances(draws, workers, [&](int k) {
        auto t0 = Clock::now();
        SpinChainModel<Rational> target = model_from_json(mj);
        GradingProfile<Rational> src = target.grading;
        std::swap(src.m, src.n);

        RationalSampler sampler = model_sampler(target, seed + static_cast<unsigned long>(k));
        ParamTable<Rational> t = draw_table(sampler, r);

        GradedState<Rational> mapped(target.length);
        for (const Word<Rational>& w : pre_bethe_words(src, t, Flavor::standard))
            mapped += word_apply(target, morphism_map_word(src, w));

        ParamTable<Rational> reversed(t.rbegin(), t.rend());
        GradedState<Rational> expect = build_bethe_vector(target, reversed, Flavor::mirror);
        int odd_total = 0;
        for (std::size_t l = 0; l < t.size(); ++l)
            if (static_cast<int>(l + 1) != src.m)
                odd_total += static_cast<int>(t[l].size());
        if (odd_total & 1)
            expect.scale(Rational(-1));

        bool ok = mapped == expect;
        Json inst;
        inst["model"] = mj;
        inst["seed"] = seed + static_cast<unsigned long>(k);
        inst["table"] = table_to_json(t);
        return instance_record("morphism", std::move(inst), ok, ms_since(t0));
    });
}

std::vector<Json> check_onshell(const Json& job, int)
{
    SpinChainModel<Rational> model_q = model_from_json(job.at("model"));
    std::vector<int> r = job.at("r").get<std::vector<int>>();
    int samples = job.value("z_samples", 5);
    MpFloat transfer_tol(job.value("transfer_tol", "1e-30"));
    MpFloat bethe_tol(job.value("bethe_tol", "1e-40"));
    unsigned long seed = seed_of(job);

    SolverOptions opts;
    opts.digits = job.value("digits", 100u);
    opts.seeds = job.value("seeds", opts.seeds);
    opts.seed_base = job.value("seed_base", opts.seed_base);

    unsigned old_digits = MpFloat::default_precision();
    MpFloat::default_precision(opts.digits);
    SpinChainModel<MpFloat> model = model_from_rational<MpFloat>(model_q);
    std::vector<BetheSolution> sols = solve_bethe(model, r, opts);

    std::vector<Json> records;
    if (sols.empty()) {
        Json inst;
        inst["model"] = job.at("model");
        inst["r"] = r;
        inst["seed"] = seed;
        Json rec = instance_record("onshell", std::move(inst), false, 0.0);
        rec.erase("equal");
        rec["residual"] = "no solution found";
        records.push_back(std::move(rec));
        MpFloat::default_precision(old_digits);
        return records;
    }

    for (std::size_t si = 0; si < sols.size(); ++si) {
        auto t0 = Clock::now();
        RationalSampler sampler = model_sampler(model_q, seed + static_cast<unsigned long>(si));
        std::vector<MpFloat> zs;
        for (int k = 0; k < samples; ++k)
            zs.push_back(to_mpfloat(sampler.draw()));
        OnshellReport<MpFloat> rep = gbethe::check_onshell(model, sols[si].roots, zs);
        bool ok = rep.max_transfer_residual <= transfer_tol && rep.max_bethe_residual <= bethe_tol;

        Json inst;
        inst["model"] = job.at("model");
        inst["r"] = r;
        inst["solver_seed"] = sols[si].seed;
        inst["seed"] = seed + static_cast<unsigned long>(si);
        Json roots = Json::array();
        for (const auto& level : sols[si].roots) {
            Json row = Json::array();
            for (const MpFloat& x : level)
                row.push_back(scalar_to_string(x));
            roots.push_back(row);
        }
        inst["roots"] = roots;
        Json rec;
        rec["check"] = "onshell";
        rec["instance"] = inst;
        rec["residual"] = scalar_to_string(rep.max_transfer_residual);
        rec["bethe_residual"] = scalar_to_string(rep.max_bethe_residual);
        rec["runtime_ms"] = ms_since(t0);
        rec["pass"] = ok;
        records.push_back(std::move(rec));
    }
    MpFloat::default_precision(old_digits);
    return records;
}

std::vector<Json> run_one_check(const Json& job, int workers)
{
    std::string which = job.at("which").get<std::string>();
    if (which == "rtt")
        return check_rtt(job, workers);
    if (which == "izergin")
        return check_izergin(job, workers);
    if (which == "equivalence")
        return check_equivalence(job, workers);
    if (which == "action")
        return check_action(job, workers);
    if (which == "dual")
        return check_dual(job, workers);
    if (which == "coproduct")
        return check_coproduct(job, workers);
    if (which == "morphism")
        return check_morphism(job, workers);
    if (which == "onshell")
        return check_onshell(job, workers);
    throw ContractError("unknown check '" + which + "'");
}

int run_check(const std::string& config_path, const std::string& out_path, int workers)
{
    Json cfg = read_config(config_path);
    std::vector<Json> jobs;
    if (cfg.contains("checks"))
        for (const Json& c : cfg.at("checks"))
            jobs.push_back(c);
    else
        jobs.push_back(cfg);

    std::string lines;
    bool all_pass = true;
    for (const Json& job : jobs) {
        auto t0 = Clock::now();
        std::vector<Json> records = run_one_check(job, workers);
        int failures = 0;
        for (const Json& rec : records) {
            if (!rec.at("pass").get<bool>())
                ++failures;
            lines += rec.dump() + "\n";
        }
        all_pass = all_pass && failures == 0;

        Json summary;
        summary["check"] = job.at("which");
        summary["instances"] = records.size();
        summary["failures"] = failures;
        summary["wall_ms"] = ms_since(t0);
        std::cerr << summary.dump() << "\n";
    }
    write_text(out_path, lines);
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact nested Bethe vectors on graded inhomogeneous spin chains"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int workers = 1;

    CLI::App* build = app.add_subcommand("build", "construct one vector and emit model, table and state");
    CLI::App* solve = app.add_subcommand("solve", "search for admissible root tables");
    CLI::App* check = app.add_subcommand("check", "run identity checks and emit a JSONL report");
    for (CLI::App* sub : {build, solve, check}) {
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_path, "output path, stdout when omitted");
    }
    check->add_option("--workers", workers, "parallel instance workers")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed())
            return run_build(config_path, out_path);
        if (solve->parsed())
            return run_solve(config_path, out_path);
        return run_check(config_path, out_path, workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

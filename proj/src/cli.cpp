#include "ogcb/cli.hpp"

#include "ogcb/bench.hpp"
#include "ogcb/evaluate.hpp"
#include "ogcb/theory.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace ogcb::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Flat run configuration; JSON config files carry exactly these keys and
// unknown keys are rejected. Explicit flags override file values.
struct RunConfig {
    std::string env_id = "pointreach";
    std::string algo = "wgcsl";
    std::string dataset_path;
    std::int64_t total_steps = 50000;
    int batch_size = 128;
    std::uint64_t seed = 1;
    std::int64_t eval_every = 5000;
    int eval_episodes = 100;
    double drw_gamma = 0.98;
    double clip_bound = 10.0;
    double eps_min = 0.05;
    double baw_percentile_final = 80.0;
    double baw_increment = 0.15;
    std::int64_t queue_capacity = 50000;
    bool use_drw = true;
    bool use_geaw = true;
    bool use_baw = true;
    double rl_gamma = 0.98;
    double learning_rate = 5e-4;
    double polyak = 0.9;
    double p_relabel = 1.0;
    std::string relabel_strategy = "future";
    std::string output_dir = "runs";
};

json run_config_to_json(const RunConfig& c) {
    return json{{"env_id", c.env_id},
                {"algo", c.algo},
                {"dataset_path", c.dataset_path},
                {"total_steps", c.total_steps},
                {"batch_size", c.batch_size},
                {"seed", c.seed},
                {"eval_every", c.eval_every},
                {"eval_episodes", c.eval_episodes},
                {"drw_gamma", c.drw_gamma},
                {"clip_bound", c.clip_bound},
                {"eps_min", c.eps_min},
                {"baw_percentile_final", c.baw_percentile_final},
                {"baw_increment", c.baw_increment},
                {"queue_capacity", c.queue_capacity},
                {"use_drw", c.use_drw},
                {"use_geaw", c.use_geaw},
                {"use_baw", c.use_baw},
                {"rl_gamma", c.rl_gamma},
                {"learning_rate", c.learning_rate},
                {"polyak", c.polyak},
                {"p_relabel", c.p_relabel},
                {"relabel_strategy", c.relabel_strategy},
                {"output_dir", c.output_dir}};
}

void apply_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config: " + path);
    json j;
    in >> j;
    const json known = run_config_to_json(c);
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key))
            throw std::runtime_error("config: unknown key '" + key + "'");
        (void)value;
    }
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key))
            field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("env_id", c.env_id);
    get("algo", c.algo);
    get("dataset_path", c.dataset_path);
    get("total_steps", c.total_steps);
    get("batch_size", c.batch_size);
    get("seed", c.seed);
    get("eval_every", c.eval_every);
    get("eval_episodes", c.eval_episodes);
    get("drw_gamma", c.drw_gamma);
    get("clip_bound", c.clip_bound);
    get("eps_min", c.eps_min);
    get("baw_percentile_final", c.baw_percentile_final);
    get("baw_increment", c.baw_increment);
    get("queue_capacity", c.queue_capacity);
    get("use_drw", c.use_drw);
    get("use_geaw", c.use_geaw);
    get("use_baw", c.use_baw);
    get("rl_gamma", c.rl_gamma);
    get("learning_rate", c.learning_rate);
    get("polyak", c.polyak);
    get("p_relabel", c.p_relabel);
    get("relabel_strategy", c.relabel_strategy);
    get("output_dir", c.output_dir);
}

void validate_run_config(const RunConfig& c) {
    if (c.total_steps < 1 || c.batch_size < 1 || c.eval_every < 1 ||
        c.eval_episodes < 1)
        throw std::runtime_error("config: counts must be positive");
    if (c.p_relabel < 0.0 || c.p_relabel > 1.0)
        throw std::runtime_error("config: p_relabel outside [0,1]");
    if (c.rl_gamma <= 0.0 || c.rl_gamma >= 1.0)
        throw std::runtime_error("config: rl_gamma outside (0,1)");
    if (c.drw_gamma <= 0.0 || c.drw_gamma > 1.0)
        throw std::runtime_error("config: drw_gamma outside (0,1]");
    if (c.eps_min <= 0.0 || c.eps_min > 1.0)
        throw std::runtime_error("config: eps_min outside (0,1]");
    if (c.clip_bound <= 0.0)
        throw std::runtime_error("config: clip_bound must be positive");
    if (c.baw_percentile_final < 0.0 || c.baw_percentile_final > 100.0)
        throw std::runtime_error("config: baw_percentile_final outside [0,100]");
    if (c.baw_increment < 0.0)
        throw std::runtime_error("config: baw_increment must be >= 0");
    if (c.queue_capacity < 1)
        throw std::runtime_error("config: queue_capacity must be positive");
    if (c.polyak < 0.0 || c.polyak > 1.0)
        throw std::runtime_error("config: polyak outside [0,1]");
    if (c.learning_rate <= 0.0)
        throw std::runtime_error("config: learning_rate must be positive");
}

agent::AgentConfig to_agent_config(const RunConfig& c) {
    agent::AgentConfig cfg;
    cfg.algo = agent::algo_from_string(c.algo);
    cfg.relabel_strategy =
        agent::relabel_strategy_from_string(c.relabel_strategy);
    cfg.weights.drw_gamma = c.drw_gamma;
    cfg.weights.clip_bound = c.clip_bound;
    cfg.weights.eps_min = c.eps_min;
    cfg.weights.baw_percentile_final = c.baw_percentile_final;
    cfg.weights.baw_increment = c.baw_increment;
    cfg.weights.queue_capacity = c.queue_capacity;
    cfg.weights.use_drw = c.use_drw;
    cfg.weights.use_geaw = c.use_geaw;
    cfg.weights.use_baw = c.use_baw;
    cfg.rl_gamma = c.rl_gamma;
    cfg.learning_rate = c.learning_rate;
    cfg.polyak = c.polyak;
    cfg.p_relabel = c.p_relabel;
    cfg.batch_size = c.batch_size;
    return cfg;
}

std::string default_output_dir() {
    if (const char* env = std::getenv("OGCB_OUTPUT_DIR"))
        return env;
    return "runs";
}

int cmd_collect(const std::string& env_name, const std::string& collector_name,
                std::int64_t n_traj, std::uint64_t seed, float noise_sigma,
                const std::string& out_path) {
    const env::EnvSpec spec = env::make_spec(env::env_id_from_string(env_name));
    const data::Collector collector = data::collector_from_string(collector_name);
    const data::OfflineDataset ds =
        data::collect(spec, collector, n_traj, seed, noise_sigma);
    data::save(ds, out_path);
    std::cout << "wrote " << out_path << "\n"
              << "  env=" << env::to_string(ds.manifest.env_id)
              << " collector=" << data::to_string(ds.manifest.collector)
              << " n_traj=" << ds.manifest.n_traj
              << " transitions=" << ds.n_transitions()
              << " noise_sigma=" << ds.manifest.noise_sigma
              << " seed=" << ds.manifest.seed << "\n"
              << "  avg_return=" << data::dataset_return(ds)
              << " avg_discounted_return="
              << data::dataset_return(ds, 0.98) << "\n";
    return 0;
}

int cmd_train(const RunConfig& cfg) {
    validate_run_config(cfg);
    if (cfg.dataset_path.empty())
        throw std::runtime_error("train: --dataset is required");
    const env::EnvSpec spec = env::make_spec(env::env_id_from_string(cfg.env_id));
    const data::OfflineDataset ds = data::load(cfg.dataset_path);
    if (ds.manifest.env_id != spec.id)
        throw std::runtime_error("train: dataset env does not match --env");

    fs::create_directories(cfg.output_dir);
    {
        std::ofstream out(fs::path(cfg.output_dir) / "effective_config.json");
        out << run_config_to_json(cfg).dump(2) << '\n';
    }

    agent::TrainOptions opts;
    opts.total_steps = cfg.total_steps;
    opts.eval_every = cfg.eval_every;
    opts.eval_episodes = cfg.eval_episodes;
    opts.seed = cfg.seed;

    const agent::TrainResult result =
        agent::train(to_agent_config(cfg), spec, ds, opts);

    const fs::path ckpt = fs::path(cfg.output_dir) / "agent.ckpt";
    const fs::path csv = fs::path(cfg.output_dir) / "metrics.csv";
    agent::save_agent(ckpt.string(), result.agent, spec.id);
    eval::emit_metrics(result.log, csv.string());

    std::cout << "trained " << cfg.algo << " for " << cfg.total_steps
              << " steps\n"
              << "  checkpoint=" << ckpt.string() << "\n"
              << "  metrics=" << csv.string() << "\n";
    if (!result.log.empty()) {
        const auto& last = result.log.back();
        std::cout << "  final avg_return=" << last.avg_return
                  << " success_rate=" << last.success_rate << "\n";
    }
    return 0;
}

int cmd_eval(const std::string& ckpt_path, int episodes, std::uint64_t seed,
             const std::string& out_path) {
    const agent::LoadedAgent loaded = agent::load_agent(ckpt_path);
    const env::EnvSpec spec = env::make_spec(loaded.env_id);
    const eval::EvalReport rep =
        eval::evaluate(loaded.agent, spec, episodes, seed);
    const json j{{"env_id", env::to_string(loaded.env_id)},
                 {"n_episodes", rep.n_episodes},
                 {"seed", rep.seed},
                 {"avg_return", rep.avg_return},
                 {"avg_discounted_return", rep.avg_discounted_return},
                 {"final_distance", rep.final_distance},
                 {"success_rate", rep.success_rate}};
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_theory(const std::string& check, int trials, std::uint64_t seed,
               const std::string& out_path) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw std::runtime_error("cannot open for writing: " + out_path);
        os = &file;
    }
    const double gammas[] = {0.5, 0.9, 1.0};
    bool all_ok = true;
    auto emit = [&](json j) {
        j["check"] = check;
        (*os) << j.dump() << "\n";
    };

    if (check == "prop2") {
        const auto fixtures = theory::prop2_fixtures();
        for (int trial = 0; trial < trials; ++trial) {
            const std::uint64_t inst_seed = rng::mix(seed, trial);
            for (const auto& fx : fixtures) {
                const theory::Prop2Report rep =
                    theory::check_prop2(fx.mdp, fx.pi_b, 200, inst_seed);
                if (rep.applicable != fx.expect_applicable ||
                    (rep.applicable && !rep.holds))
                    all_ok = false;
                json line{{"instance_seed", inst_seed},
                          {"fixture", fx.name},
                          {"quantities", {{"max_violation", rep.max_violation}}},
                          {"applicable", rep.applicable},
                          {"note", rep.note}};
                line["holds"] = rep.applicable ? json(rep.holds) : json(nullptr);
                emit(std::move(line));
            }
        }
    } else {
        for (int trial = 0; trial < trials; ++trial) {
            const std::uint64_t inst_seed = rng::mix(seed, trial);
            rng::Engine eng(inst_seed);
            const theory::DiscreteGCMDP mdp =
                theory::random_mdp(eng, 4, 4, 4, 3, gammas);
            if (check == "theorem1") {
                const theory::TabularPolicy pi = theory::random_policy(mdp, eng);
                const theory::TabularPolicy pi_b = theory::random_policy(mdp, eng);
                const theory::Theorem1Report rep =
                    theory::check_theorem1(mdp, pi, pi_b);
                all_ok = all_ok && rep.holds;
                emit(json{{"instance_seed", inst_seed},
                          {"quantities",
                           {{"j_surr", rep.j_surr},
                            {"t_j_wgcsl", rep.t_j_wgcsl},
                            {"t_j_gcsl", rep.t_j_gcsl}}},
                          {"holds", rep.holds}});
            } else if (check == "corollary1") {
                const theory::TabularPolicy pi = theory::random_policy(mdp, eng);
                const theory::TabularPolicy pi_b = theory::random_policy(mdp, eng);
                std::vector<double> h(static_cast<std::size_t>(mdp.n_states) *
                                      mdp.n_actions * mdp.n_goals);
                for (auto& v : h)
                    v = rng::uniform(eng, 1.0, 5.0);
                const theory::CheckReport rep =
                    theory::check_corollary1(mdp, pi, pi_b, h);
                all_ok = all_ok && rep.holds;
                emit(json{{"instance_seed", inst_seed},
                          {"quantities", {{"max_violation", rep.max_violation}}},
                          {"holds", rep.holds}});
            } else if (check == "gradmatch") {
                std::vector<double> logits(static_cast<std::size_t>(mdp.n_states) *
                                           mdp.n_goals * mdp.n_actions);
                for (auto& v : logits)
                    v = rng::uniform(eng, -1.0, 1.0);
                const double diff = theory::grad_match(mdp, logits);
                const bool holds = diff < 1e-5;
                all_ok = all_ok && holds;
                emit(json{{"instance_seed", inst_seed},
                          {"quantities", {{"max_rel_diff", diff}}},
                          {"holds", holds}});
            } else if (check == "prop1") {
                const theory::TabularPolicy pi = theory::random_policy(mdp, eng);
                const theory::CheckReport rep =
                    theory::check_prop1(mdp, pi, theory::Prop1Config{});
                all_ok = all_ok && rep.holds;
                emit(json{{"instance_seed", inst_seed},
                          {"quantities", {{"max_violation", rep.max_violation}}},
                          {"holds", rep.holds}});
            } else {
                throw CLI::ValidationError("--check",
                                           "unknown check name: " + check);
            }
        }
    }
    return all_ok ? 0 : 2;
}

int cmd_bench(int seeds, std::int64_t steps, int batch, std::int64_t n_traj,
              std::int64_t eval_every, std::uint64_t seed_base, int jobs,
              const std::string& out_dir) {
    fs::create_directories(out_dir);
    const env::EnvId envs[] = {env::EnvId::point_reach, env::EnvId::point_rooms};
    const data::Collector collectors[] = {data::Collector::random,
                                          data::Collector::expert};

    struct Cell {
        std::string task;
        std::string algo;
        std::vector<std::size_t> run_indices;
    };
    std::vector<Cell> cells;
    std::vector<bench::RunRequest> requests;
    std::vector<env::EnvSpec> specs;
    std::vector<data::OfflineDataset> datasets;
    specs.reserve(2);
    datasets.reserve(4);

    for (const auto env_id : envs) {
        specs.push_back(env::make_spec(env_id));
        const env::EnvSpec& spec = specs.back();
        for (const auto collector : collectors) {
            const std::uint64_t ds_seed =
                rng::mix(seed_base, 1000 + datasets.size());
            datasets.push_back(
                data::collect(spec, collector, n_traj, ds_seed, 0.2f));
            const data::OfflineDataset& ds = datasets.back();
            const std::string task = env::to_string(env_id) + "-" +
                                     data::to_string(collector);
            for (const auto& name : bench::variant_names()) {
                Cell cell{task, name, {}};
                for (int k = 0; k < seeds; ++k) {
                    bench::RunRequest req;
                    req.label = task + "/" + name;
                    req.spec = &spec;
                    req.dataset = &ds;
                    req.cfg = bench::variant_config(name);
                    req.cfg.batch_size = batch;
                    req.opts.total_steps = steps;
                    req.opts.eval_every = eval_every;
                    req.opts.eval_episodes = 100;
                    req.opts.seed = seed_base + static_cast<std::uint64_t>(k);
                    cell.run_indices.push_back(requests.size());
                    requests.push_back(req);
                }
                cells.push_back(std::move(cell));
            }
        }
    }

    std::cout << "bench: " << cells.size() << " cells, " << requests.size()
              << " runs, jobs=" << jobs << "\n";
    const std::vector<bench::RunOutcome> outcomes =
        bench::run_parallel(requests, jobs);

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        std::string name = requests[i].label + "_s" +
                           std::to_string(requests[i].opts.seed);
        for (auto& ch : name)
            if (ch == '/')
                ch = '_';
        eval::emit_metrics(outcomes[i].log,
                           (fs::path(out_dir) / (name + ".csv")).string());
    }

    const fs::path summary_path = fs::path(out_dir) / "bench_summary.csv";
    std::ofstream summary(summary_path);
    summary << "task,algo,mean_return,std_return,seeds\n";
    for (const auto& cell : cells) {
        std::vector<double> finals;
        for (const std::size_t i : cell.run_indices)
            finals.push_back(outcomes[i].final_return);
        summary << cell.task << ',' << cell.algo << ','
                << bench::mean(finals) << ',' << bench::sample_stddev(finals)
                << ',' << finals.size() << "\n";
        std::cout << cell.task << " " << cell.algo << ": "
                  << bench::mean(finals) << " +- "
                  << bench::sample_stddev(finals) << "\n";
    }
    std::cout << "summary written to " << summary_path.string() << "\n";
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"offline goal-conditioned benchmark toolkit"};
    app.require_subcommand(1);

    // collect
    auto* collect = app.add_subcommand("collect", "collect an offline dataset");
    std::string c_env = "pointreach", c_collector = "random",
                c_out = "dataset.ogcb";
    std::int64_t c_ntraj = 2000;
    std::uint64_t c_seed = 1;
    float c_sigma = 0.2f;
    collect->add_option("--env", c_env, "pointreach|pointrooms");
    collect->add_option("--collector", c_collector, "random|expert");
    collect->add_option("--n-traj", c_ntraj, "number of trajectories");
    collect->add_option("--seed", c_seed, "rng seed");
    collect->add_option("--noise-sigma", c_sigma, "expert action noise stddev");
    collect->add_option("--out", c_out, "output dataset path");

    // train
    auto* train = app.add_subcommand("train", "train an agent offline");
    std::string t_config;
    RunConfig t_defaults;
    std::string t_env, t_algo, t_dataset, t_outdir, t_strategy;
    std::int64_t t_steps = -1, t_eval_every = -1, t_queue = -1;
    int t_batch = -1, t_eval_eps = -1;
    double t_lr = -1, t_gamma = -1, t_polyak = -1, t_prelabel = -1,
           t_drw_gamma = -1, t_clip = -1, t_eps_min = -1, t_baw_final = -1,
           t_baw_inc = -1;
    std::int64_t t_seed = -1;
    bool t_no_drw = false, t_no_geaw = false, t_no_baw = false;
    train->add_option("--config", t_config, "JSON config file");
    train->add_option("--env", t_env);
    train->add_option("--algo", t_algo, "wgcsl|gcsl|goal_bc|goal_marwil");
    train->add_option("--dataset", t_dataset, "dataset file");
    train->add_option("--steps", t_steps, "training steps");
    train->add_option("--batch", t_batch, "batch size");
    train->add_option("--seed", t_seed);
    train->add_option("--eval-every", t_eval_every);
    train->add_option("--eval-episodes", t_eval_eps);
    train->add_option("--lr", t_lr, "learning rate");
    train->add_option("--gamma", t_gamma, "discount factor");
    train->add_option("--polyak", t_polyak, "target retention coefficient");
    train->add_option("--p-relabel", t_prelabel);
    train->add_option("--drw-gamma", t_drw_gamma);
    train->add_option("--clip-bound", t_clip);
    train->add_option("--eps-min", t_eps_min);
    train->add_option("--baw-percentile", t_baw_final);
    train->add_option("--baw-increment", t_baw_inc);
    train->add_option("--queue-capacity", t_queue);
    train->add_flag("--no-drw", t_no_drw, "disable the discount weight");
    train->add_flag("--no-geaw", t_no_geaw, "disable the exponential advantage weight");
    train->add_flag("--no-baw", t_no_baw, "disable the best-advantage weight");
    train->add_option("--relabel-strategy", t_strategy, "future|prop2");
    train->add_option("--out-dir", t_outdir, "output directory");

    // eval
    auto* evalc = app.add_subcommand("eval", "evaluate a trained checkpoint");
    std::string e_ckpt, e_out;
    int e_episodes = 100;
    std::uint64_t e_seed = 1;
    evalc->add_option("--checkpoint", e_ckpt, "agent checkpoint")->required();
    evalc->add_option("--episodes", e_episodes);
    evalc->add_option("--seed", e_seed);
    evalc->add_option("--out", e_out, "also write the report JSON here");

    // theory
    auto* theoryc = app.add_subcommand("theory", "run a tabular verifier");
    std::string th_check, th_out;
    int th_trials = 100;
    std::uint64_t th_seed = 1;
    theoryc
        ->add_option("--check", th_check,
                     "theorem1|corollary1|prop1|prop2|gradmatch")
        ->required();
    theoryc->add_option("--trials", th_trials);
    theoryc->add_option("--seed", th_seed);
    theoryc->add_option("--out", th_out, "write JSON lines here");

    // bench
    auto* benchc = app.add_subcommand("bench", "run the task x algorithm matrix");
    int b_seeds = 5, b_batch = 128, b_jobs = 2;
    std::int64_t b_steps = 50000, b_ntraj = 2000, b_eval_every = 10000;
    std::uint64_t b_seed = 1;
    std::string b_outdir = "bench_out";
    benchc->add_option("--seeds", b_seeds, "seeds per cell");
    benchc->add_option("--steps", b_steps);
    benchc->add_option("--batch", b_batch);
    benchc->add_option("--n-traj", b_ntraj);
    benchc->add_option("--eval-every", b_eval_every);
    benchc->add_option("--seed", b_seed, "base seed");
    benchc->add_option("--jobs", b_jobs, "parallel worker threads");
    benchc->add_option("--out-dir", b_outdir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (collect->parsed())
            return cmd_collect(c_env, c_collector, c_ntraj, c_seed, c_sigma,
                               c_out);
        if (train->parsed()) {
            RunConfig cfg;
            cfg.output_dir = default_output_dir();
            if (!t_config.empty())
                apply_config_file(cfg, t_config);
            if (!t_env.empty())
                cfg.env_id = t_env;
            if (!t_algo.empty())
                cfg.algo = t_algo;
            if (!t_dataset.empty())
                cfg.dataset_path = t_dataset;
            if (t_steps >= 0)
                cfg.total_steps = t_steps;
            if (t_batch >= 0)
                cfg.batch_size = t_batch;
            if (t_seed >= 0)
                cfg.seed = static_cast<std::uint64_t>(t_seed);
            if (t_eval_every >= 0)
                cfg.eval_every = t_eval_every;
            if (t_eval_eps >= 0)
                cfg.eval_episodes = t_eval_eps;
            if (t_lr >= 0)
                cfg.learning_rate = t_lr;
            if (t_gamma >= 0)
                cfg.rl_gamma = t_gamma;
            if (t_polyak >= 0)
                cfg.polyak = t_polyak;
            if (t_prelabel >= 0)
                cfg.p_relabel = t_prelabel;
            if (t_drw_gamma >= 0)
                cfg.drw_gamma = t_drw_gamma;
            if (t_clip >= 0)
                cfg.clip_bound = t_clip;
            if (t_eps_min >= 0)
                cfg.eps_min = t_eps_min;
            if (t_baw_final >= 0)
                cfg.baw_percentile_final = t_baw_final;
            if (t_baw_inc >= 0)
                cfg.baw_increment = t_baw_inc;
            if (t_queue >= 0)
                cfg.queue_capacity = t_queue;
            if (t_no_drw)
                cfg.use_drw = false;
            if (t_no_geaw)
                cfg.use_geaw = false;
            if (t_no_baw)
                cfg.use_baw = false;
            if (!t_strategy.empty())
                cfg.relabel_strategy = t_strategy;
            if (!t_outdir.empty())
                cfg.output_dir = t_outdir;
            return cmd_train(cfg);
        }
        if (evalc->parsed())
            return cmd_eval(e_ckpt, e_episodes, e_seed, e_out);
        if (theoryc->parsed())
            return cmd_theory(th_check, th_trials, th_seed, th_out);
        if (benchc->parsed())
            return cmd_bench(b_seeds, b_steps, b_batch, b_ntraj, b_eval_every,
                             b_seed, b_jobs, b_outdir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace ogcb::cli

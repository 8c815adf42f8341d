#include "socialai/runner.hpp"

#include <atomic>
#include <exception>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "socialai/errors.hpp"

namespace socialai {

EpisodeResult run_episode(const ParamSet& params, std::uint64_t env_seed, Policy& policy, std::uint64_t policy_seed,
                          BonusKind bonus, const BonusParams& bonus_params) {
    if (bonus != BonusKind::None) validate(bonus_params);
    Env env(params_from_set(params), env_seed);
    policy.reset(env.state(), policy_seed);
    EpisodicCounts counts;

    EpisodeResult out;
    out.trajectory.seed = env_seed;
    out.trajectory.params = params;
    out.trajectory.bonus_kind = bonus;
    out.trajectory.bonus_params = bonus_params;
    out.trajectory.initial_obs_hash = observation_hash(env.state());
    while (!env.done()) {
        const AgentAction a = policy.act(env.state());
        const std::size_t heard_before = env.state().dialogue.entries().size();
        const StepResult r = env.step(a);
        StepRecord rec;
        rec.t = env.state().step;
        rec.action = a;
        rec.reward = r.reward;
        rec.done = r.done;
        rec.obs_hash = observation_hash(env.state());
        rec.info = r.info;
        if (bonus != BonusKind::None)
            rec.bonus = step_bonus(bonus, counts, env.view(), env.state().dialogue, heard_before, bonus_params);
        out.total_reward += r.reward;
        out.bonus_total += rec.bonus.value_or(0.0);
        out.trajectory.steps.push_back(rec);
    }
    out.success = env.state().success;
    out.steps = env.state().step;
    return out;
}

EpisodeSeeds episode_seeds(const ParamTree& tree, std::uint64_t seed, int index) {
    const Rng root(seed);
    Rng prm = root.fork(2 * static_cast<std::uint64_t>(index));
    Rng env = root.fork(2 * static_cast<std::uint64_t>(index) + 1);
    EpisodeSeeds s;
    s.params = tree.sample(prm);
    s.env_seed = env.next();
    s.policy_seed = env.next();
    return s;
}

std::vector<EpisodeResult> run_tree(const ParamTree& tree, const RunOptions& opt) {
    if (opt.episodes < 0) throw ConfigError("episode count must be non-negative");
    if (opt.jobs < 1) throw ConfigError("jobs must be at least 1");
    make_policy(opt.policy);  // reject bad names before spawning workers
    std::vector<EpisodeResult> results(static_cast<std::size_t>(opt.episodes));
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        auto policy = make_policy(opt.policy);
        for (int i = next++; i < opt.episodes; i = next++) {
            try {
                const EpisodeSeeds s = episode_seeds(tree, opt.seed, i);
                results[static_cast<std::size_t>(i)] =
                    run_episode(s.params, s.env_seed, *policy, s.policy_seed, opt.bonus, opt.bonus_params);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = opt.episodes;
            }
        }
    };
    const int jobs = std::min(opt.jobs, std::max(1, opt.episodes));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);
    return results;
}

RunSummary summarize(const std::vector<EpisodeResult>& results) {
    RunSummary s;
    s.episodes = static_cast<int>(results.size());
    for (const auto& r : results) {
        s.successes += r.success ? 1 : 0;
        s.mean_reward += r.total_reward;
        s.mean_steps += r.steps;
        s.bonus_total += r.bonus_total;
    }
    if (s.episodes > 0) {
        s.success_rate = static_cast<double>(s.successes) / s.episodes;
        s.mean_reward /= s.episodes;
        s.mean_steps /= s.episodes;
    }
    return s;
}

std::string summary_json(const RunSummary& s, const RunOptions& opt) {
    const std::string bonus(bonus_kind_name(opt.bonus));
    nlohmann::ordered_json j{{"episodes", s.episodes},       {"seed", opt.seed},
                             {"policy", opt.policy},         {"bonus", bonus},
                             {"successes", s.successes},     {"success_rate", s.success_rate},
                             {"mean_reward", s.mean_reward}, {"mean_steps", s.mean_steps},
                             {"bonus_total", s.bonus_total}};
    return j.dump(2) + "\n";
}

}  // namespace socialai

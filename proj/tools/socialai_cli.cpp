#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "socialai.h"

namespace {

// Failure of a C API call, carrying its status and message.
struct ApiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(sai_status s) {
    if (s != SAI_OK) throw ApiError(std::string(sai_status_name(s)) + ": " + sai_last_error());
}

// Owns a string returned by the C API.
std::string take(char* s) {
    std::string out = s != nullptr ? s : "";
    sai_free_string(s);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ApiError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw ApiError("cannot write " + path);
}

// A tree argument is a file path or the name of a shipped tree.
std::string resolve_tree(const std::string& arg) {
    if (std::filesystem::exists(arg)) return arg;
    const std::string shipped = std::string(sai_data_dir()) + "/trees/" + arg + ".json";
    if (std::filesystem::exists(shipped)) return shipped;
    throw ApiError("no tree file or shipped tree named '" + arg + "'");
}

struct Tree {
    sai_tree* handle = nullptr;
    explicit Tree(const std::string& arg) { check(sai_tree_load(resolve_tree(arg).c_str(), &handle)); }
    ~Tree() { sai_tree_free(handle); }
    Tree(const Tree&) = delete;
    Tree& operator=(const Tree&) = delete;
};

struct RunArgs {
    std::string tree;
    int episodes = 1;
    std::uint64_t seed = 0;
    std::string policy = "oracle";
    std::string bonus = "none";
    double T = 1.0, C = 1.0, M = 2.0;
    int jobs = 1;
    std::string out;
};

int cmd_run(const RunArgs& a) {
    Tree tree(a.tree);
    sai_run_options o;
    sai_run_options_init(&o);
    o.seed = a.seed;
    o.episodes = a.episodes;
    o.policy = a.policy.c_str();
    o.bonus = a.bonus.c_str();
    o.bonus_T = a.T;
    o.bonus_C = a.C;
    o.bonus_M = a.M;
    o.jobs = a.jobs;
    o.out_dir = a.out.empty() ? nullptr : a.out.c_str();
    char* summary = nullptr;
    check(sai_run(tree.handle, &o, &summary));
    std::cout << take(summary);
    return 0;
}

struct SampleArgs {
    std::string tree;
    std::uint64_t seed = 0;
    int count = 1;
};

int cmd_sample(const SampleArgs& a) {
    Tree tree(a.tree);
    for (int i = 0; i < a.count; ++i) {
        char* json = nullptr;
        check(sai_tree_sample(tree.handle, a.seed + static_cast<std::uint64_t>(i), &json));
        std::cout << take(json) << "\n";
    }
    return 0;
}

struct ReplayArgs {
    std::vector<std::string> files;
};

int cmd_replay(const ReplayArgs& a) {
    int failures = 0;
    for (const auto& f : a.files) {
        sai_replay_result r{};
        check(sai_replay(read_file(f).c_str(), &r));
        if (r.ok) {
            std::printf("%s: ok (%d steps)\n", f.c_str(), r.steps_checked);
        } else {
            std::printf("%s: MISMATCH %s\n", f.c_str(), r.mismatch);
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}

struct ExportArgs {
    std::string file;
    std::string format = "transcript";
    std::string out;
};

int cmd_export(const ExportArgs& a) {
    char* text = nullptr;
    check(sai_export(read_file(a.file).c_str(), a.format.c_str(), &text));
    write_output(a.out, take(text));
    return 0;
}

struct LlmArgs {
    std::string testset;
    std::string provider = "mock:oracle";
    std::string data_dir;
    int history = 3;
    int budget = 3;
    int step_limit = 15;
    std::string out;
};

int cmd_llm_eval(const LlmArgs& a) {
    sai_llm_options o;
    sai_llm_options_init(&o);
    o.testset = a.testset.c_str();
    o.provider = a.provider.c_str();
    o.data_dir = a.data_dir.empty() ? nullptr : a.data_dir.c_str();
    o.history_steps = a.history;
    o.budget = a.budget;
    o.step_limit = a.step_limit;
    char* report = nullptr;
    check(sai_llm_eval(&o, &report));
    const std::string text = take(report);
    if (!a.out.empty()) write_output(a.out, text);
    // One-line summary on stdout; the full report goes to --out.
    std::size_t pos = text.find("\"records\"");
    std::string head = text.substr(0, pos == std::string::npos ? text.size() : pos);
    std::cout << (a.out.empty() ? text : head + "...\n");
    return 0;
}

struct PlayArgs {
    std::string tree;
    std::uint64_t seed = 0;
    std::string save;
};

const char* kPlayHelp =
    "keys: a turn left, d turn right, w forward, t toggle, n no_op, x done,\n"
    "      s T N speak template T noun N (s 1 0 = Help please), h help, q quit\n";

void redraw(sai_env* env) {
    char* ascii = nullptr;
    char* text = nullptr;
    char* dialogue = nullptr;
    check(sai_env_render_ascii(env, &ascii));
    check(sai_env_render_text(env, &text));
    check(sai_env_dialogue(env, &dialogue));
    std::cout << take(ascii) << take(text) << "\n";
    const std::string d = take(dialogue);
    if (!d.empty()) std::cout << "-- dialogue --\n" << d;
}

int cmd_play(const PlayArgs& a) {
    Tree tree(a.tree);
    sai_env* env = nullptr;
    check(sai_env_from_tree(tree.handle, &env));
    std::unique_ptr<sai_env, void (*)(sai_env*)> guard(env, sai_env_free);
    check(sai_env_reset(env, a.seed, nullptr));
    char* params = nullptr;
    check(sai_env_params(env, &params));
    std::cout << take(params) << "\n" << kPlayHelp;
    redraw(env);
    bool done = false;
    std::string line;
    while (!done && std::cout << "> " << std::flush && std::getline(std::cin, line)) {
        std::istringstream in(line);
        std::string key;
        if (!(in >> key)) continue;
        int prim = -1, tmpl = -1, noun = -1;
        if (key == "q") break;
        if (key == "h") {
            std::cout << kPlayHelp;
            continue;
        }
        if (key == "a") prim = SAI_TURN_LEFT;
        else if (key == "d") prim = SAI_TURN_RIGHT;
        else if (key == "w") prim = SAI_FORWARD;
        else if (key == "t") prim = SAI_TOGGLE;
        else if (key == "n") prim = SAI_NO_OP;
        else if (key == "x") prim = SAI_DONE;
        else if (key == "s" && in >> tmpl >> noun) prim = SAI_NO_OP;
        if (prim < 0) {
            std::cout << "unknown command\n" << kPlayHelp;
            continue;
        }
        sai_step_info info{};
        const sai_status s = sai_env_step(env, prim, tmpl, noun, nullptr, &info);
        if (s == SAI_ERR_INVALID_ARGUMENT) {
            std::cout << sai_last_error() << "\n";
            continue;
        }
        check(s);
        redraw(env);
        std::printf("step %d reward %.3f%s%s\n", info.step, info.reward, info.blocked ? " blocked" : "",
                    info.success ? " success" : "");
        done = info.done != 0;
    }
    if (!a.save.empty()) {
        char* traj = nullptr;
        check(sai_env_trajectory(env, &traj));
        write_output(a.save, take(traj));
        std::cout << "saved " << a.save << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Social grid-world simulator"};
    app.require_subcommand(1);

    RunArgs run;
    auto* c_run = app.add_subcommand("run", "Sample episodes from a tree and run a policy");
    c_run->add_option("tree", run.tree, "Tree file or shipped tree name")->required();
    c_run->add_option("-n,--episodes", run.episodes, "Number of episodes")->check(CLI::NonNegativeNumber);
    c_run->add_option("--seed", run.seed, "Run seed");
    c_run->add_option("--policy", run.policy, "Policy")->check(CLI::IsMember({"oracle", "random", "random-text", "guesser"}));
    c_run->add_option("--bonus", run.bonus, "Exploration bonus")->check(CLI::IsMember({"none", "cb", "cbl"}));
    c_run->add_option("--bonus-T", run.T, "Bonus scale T");
    c_run->add_option("--bonus-C", run.C, "Bonus numerator C");
    c_run->add_option("--bonus-M", run.M, "Bonus count exponent M");
    c_run->add_option("-j,--jobs", run.jobs, "Worker threads")->check(CLI::PositiveNumber);
    c_run->add_option("-o,--out", run.out, "Directory for trajectories and summary.json");

    SampleArgs sample;
    auto* c_sample = app.add_subcommand("sample", "Print sampled parameter sets");
    c_sample->add_option("tree", sample.tree, "Tree file or shipped tree name")->required();
    c_sample->add_option("--seed", sample.seed, "First seed");
    c_sample->add_option("-n,--count", sample.count, "Number of samples")->check(CLI::NonNegativeNumber);

    ReplayArgs rep;
    auto* c_replay = app.add_subcommand("replay", "Re-execute trajectories and compare every step");
    c_replay->add_option("files", rep.files, "Trajectory files")->required();

    ExportArgs exp;
    auto* c_export = app.add_subcommand("export", "Render a trajectory as a transcript or jsonl");
    c_export->add_option("file", exp.file, "Trajectory file")->required();
    c_export->add_option("--format", exp.format, "Output format")->check(CLI::IsMember({"transcript", "jsonl"}));
    c_export->add_option("-o,--out", exp.out, "Output file (default stdout)");

    LlmArgs llm;
    auto* c_llm = app.add_subcommand("llm-eval", "Evaluate a completion provider on a text-world test set");
    c_llm->add_option("testset", llm.testset, "asocialbox, colorboxes or colorboxes-gen")
        ->required()
        ->check(CLI::IsMember({"asocialbox", "colorboxes", "colorboxes-gen"}));
    c_llm->add_option("--provider", llm.provider, "http, mock:oracle, mock:garbage or mock:random:SEED");
    c_llm->add_option("--data-dir", llm.data_dir, "Data directory");
    c_llm->add_option("--history", llm.history, "Observations kept in the prompt")->check(CLI::PositiveNumber);
    c_llm->add_option("--budget", llm.budget, "Generation budget")->check(CLI::PositiveNumber);
    c_llm->add_option("--step-limit", llm.step_limit, "Steps per episode")->check(CLI::PositiveNumber);
    c_llm->add_option("-o,--out", llm.out, "Report file");

    PlayArgs play;
    auto* c_play = app.add_subcommand("play", "Play an episode from the terminal");
    c_play->add_option("tree", play.tree, "Tree file or shipped tree name")->required();
    c_play->add_option("--seed", play.seed, "Episode seed");
    c_play->add_option("--save", play.save, "Save the trajectory here on exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_run) return cmd_run(run);
        if (*c_sample) return cmd_sample(sample);
        if (*c_replay) return cmd_replay(rep);
        if (*c_export) return cmd_export(exp);
        if (*c_llm) return cmd_llm_eval(llm);
        if (*c_play) return cmd_play(play);
    } catch (const ApiError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

#ifndef SOCIALAI_H
#define SOCIALAI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SAI_API __declspec(dllexport)
#else
#define SAI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Every fallible call returns a status; on failure sai_last_error() describes
// the cause for the calling thread until its next failing call.
typedef enum sai_status {
    SAI_OK = 0,
    SAI_ERR_INVALID_ARGUMENT = 1,
    SAI_ERR_CONFIG = 2,
    SAI_ERR_IO = 3,
    SAI_ERR_STATE = 4,
    SAI_ERR_PROVIDER = 5,
    SAI_ERR_INTERNAL = 6
} sai_status;

enum {
    SAI_VIEW_SIZE = 7,
    SAI_CHANNELS = 8,
    SAI_OBS_BYTES = SAI_VIEW_SIZE * SAI_VIEW_SIZE * SAI_CHANNELS,
    SAI_TEMPLATE_COUNT = 4,
    SAI_NOUN_COUNT = 16
};

// Agent primitives.
enum {
    SAI_NO_OP = 0,
    SAI_TURN_LEFT = 1,
    SAI_TURN_RIGHT = 2,
    SAI_FORWARD = 3,
    SAI_TOGGLE = 4,
    SAI_DONE = 5
};

typedef struct sai_tree sai_tree;
typedef struct sai_env sai_env;

SAI_API const char* sai_version(void);
SAI_API const char* sai_last_error(void);
SAI_API const char* sai_status_name(sai_status s);

// Strings returned through `char**` are heap-allocated; release with sai_free_string.
SAI_API void sai_free_string(char* s);

// Directory holding trees/, testsets/ and in_context/. SOCIALAI_DATA_DIR
// overrides the built-in location.
SAI_API const char* sai_data_dir(void);

// ---------------------------------------------------------------------------
// Parameter trees

SAI_API sai_status sai_tree_load(const char* path, sai_tree** out);
SAI_API sai_status sai_tree_parse(const char* json, sai_tree** out);
SAI_API void sai_tree_free(sai_tree* tree);
// `path` alternates parameter and value names and ends on a parameter node.
SAI_API sai_status sai_tree_set_weights(sai_tree* tree, const char* path, const double* weights, size_t count);
// One sampled assignment as a JSON object in sampling order.
SAI_API sai_status sai_tree_sample(const sai_tree* tree, uint64_t seed, char** json_out);
SAI_API sai_status sai_tree_to_json(const sai_tree* tree, char** json_out);

// ---------------------------------------------------------------------------
// Environments

typedef struct sai_step_info {
    double reward;
    int done;
    int success;
    int blocked;
    int intro_satisfied;
    int peer_seen;  // the peer currently sees the agent
    int step;
} sai_step_info;

// A tree-backed environment samples fresh parameters at every reset.
SAI_API sai_status sai_env_from_tree(const sai_tree* tree, sai_env** out);
// Fixed parameters given as a JSON object such as {"Env_type": "InformationSeeking", ...}.
SAI_API sai_status sai_env_from_params(const char* params_json, sai_env** out);
SAI_API void sai_env_free(sai_env* env);

// Starts an episode. With a tree, parameters and the environment seed are
// derived from `seed` exactly as episode 0 of sai_run with that seed.
// `obs` (optional) receives SAI_OBS_BYTES bytes, row-major [row][col][channel].
SAI_API sai_status sai_env_reset(sai_env* env, uint64_t seed, uint8_t* obs);
// template_index and noun_index are both -1 for silence.
SAI_API sai_status sai_env_step(sai_env* env, int primitive, int template_index, int noun_index, uint8_t* obs,
                                sai_step_info* info);
SAI_API sai_status sai_env_observation(const sai_env* env, uint8_t* obs);

SAI_API sai_status sai_env_render_text(const sai_env* env, char** text_out);
SAI_API sai_status sai_env_render_ascii(const sai_env* env, char** text_out);
// Everything the agent heard or said, one "Agent: ..." / "Caretaker: ..." line per entry.
SAI_API sai_status sai_env_dialogue(const sai_env* env, char** text_out);
SAI_API sai_status sai_env_params(const sai_env* env, char** json_out);
// Episode so far as a trajectory document (line-delimited JSON).
SAI_API sai_status sai_env_trajectory(const sai_env* env, char** jsonl_out);

// ---------------------------------------------------------------------------
// Batch runs, trajectories and evaluation

typedef struct sai_run_options {
    uint64_t seed;
    int episodes;
    const char* policy;  // "oracle", "random", "random-text" or "guesser"
    const char* bonus;   // "none", "cb" or "cbl"; NULL means none
    double bonus_T, bonus_C, bonus_M;
    int jobs;
    const char* out_dir;  // trajectory files are written here unless NULL
} sai_run_options;

SAI_API void sai_run_options_init(sai_run_options* opts);
SAI_API sai_status sai_run(const sai_tree* tree, const sai_run_options* opts, char** summary_json_out);

typedef struct sai_replay_result {
    int ok;
    int steps_checked;
    char mismatch[128];
} sai_replay_result;

SAI_API sai_status sai_replay(const char* jsonl, sai_replay_result* result);
// format: "transcript" or "jsonl" (normalized re-serialization).
SAI_API sai_status sai_export(const char* jsonl, const char* format, char** text_out);

// Text-world evaluation of a completion provider on a shipped test set
// ("asocialbox", "colorboxes", "colorboxes-gen"). Providers: "http",
// "mock:oracle", "mock:garbage", "mock:random:SEED".
typedef struct sai_llm_options {
    const char* testset;
    const char* provider;
    const char* data_dir;  // NULL for sai_data_dir()
    int history_steps;
    int budget;
    int step_limit;
} sai_llm_options;

SAI_API void sai_llm_options_init(sai_llm_options* opts);
SAI_API sai_status sai_llm_eval(const sai_llm_options* opts, char** report_json_out);
// Action matched from generated text, as a primitive.
SAI_API int sai_match_action(const char* generated);

#ifdef __cplusplus
}
#endif

#endif

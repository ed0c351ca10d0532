#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = CONFLAB_CLI_PATH;

struct Invocation {
    int exit_code = -1;
    std::string out;
    std::string err;
};

int counter = 0;

fs::path fresh_dir() {
    const fs::path dir =
        fs::temp_directory_path() / ("conflab_cli_test_" + std::to_string(::getpid()) + "_" +
                                     std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

Invocation invoke(const std::string& args, const std::string& env = "") {
    const fs::path dir = fresh_dir();
    const fs::path out_file = dir / "stdout.txt";
    const fs::path err_file = dir / "stderr.txt";
    const std::string command = env + (env.empty() ? "" : " ") + kCli + " " + args + " > " +
                                out_file.string() + " 2> " + err_file.string();
    const int status = std::system(command.c_str());
    Invocation result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

const char* kMinimalConfig = R"({
  "concept_count": 20,
  "agent_count": 4,
  "template_count": 5,
  "ticks": 8,
  "tasks_per_tick": 4,
  "strategy": "localized",
  "grounding_budget": 2,
  "shared_fraction": 0.5,
  "seed": 12,
  "task": {"required_min": 2, "required_max": 4, "skew": 2.0, "utility": 10.0},
  "drift": {"p_task_drift": 0.05, "p_impl_drift": 0.05},
  "costs": {"c_sync": 1.0, "c_map_discover": 5.0, "c_map_apply": 0.25,
            "c_ground_exchange": 4.0, "c_revision": 20.0, "c_failure": 8.0}
})";

// Fetches "key = value" from a summary file.
std::string summary_value(const fs::path& summary, const std::string& key) {
    std::ifstream in(summary);
    std::string line;
    const std::string prefix = key + " = ";
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    }
    return "<missing>";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run writes summary and per-tick table deterministically") {
    const fs::path dir = fresh_dir();
    spit(dir / "config.json", kMinimalConfig);
    const fs::path out_a = dir / "out_a";
    const fs::path out_b = dir / "out_b";

    const Invocation first =
        invoke("run --config " + (dir / "config.json").string() + " --out " + out_a.string());
    CHECK(first.exit_code == 0);
    CHECK(fs::exists(out_a / "summary.txt"));
    CHECK(fs::exists(out_a / "per_tick.csv"));

    const Invocation second =
        invoke("run --config " + (dir / "config.json").string() + " --out " + out_b.string());
    CHECK(second.exit_code == 0);
    CHECK(slurp(out_a / "summary.txt") == slurp(out_b / "summary.txt"));
    CHECK(slurp(out_a / "per_tick.csv") == slurp(out_b / "per_tick.csv"));

    const std::string csv = slurp(out_a / "per_tick.csv");
    CHECK(csv.rfind("tick,tasks_attempted,tasks_succeeded,", 0) == 0);
    CHECK(summary_value(out_a / "summary.txt", "config.strategy") == "localized");
}

TEST_CASE("run rejects an out-of-range field naming it") {
    const fs::path dir = fresh_dir();
    spit(dir / "config.json", R"({"concept_count": 10, "shared_fraction": 1.5})");
    const Invocation r =
        invoke("run --config " + (dir / "config.json").string() + " --out " +
               (dir / "out").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("shared_fraction") != std::string::npos);
}

TEST_CASE("run rejects unknown keys and malformed json") {
    const fs::path dir = fresh_dir();
    spit(dir / "config.json", R"({"concept_count": 10, "concepts": 4})");
    const Invocation unknown = invoke("run --config " + (dir / "config.json").string() +
                                      " --out " + (dir / "out").string());
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.err.find("concepts") != std::string::npos);

    spit(dir / "broken.json", "{");
    const Invocation broken = invoke("run --config " + (dir / "broken.json").string() +
                                     " --out " + (dir / "out").string());
    CHECK(broken.exit_code == 2);
}

TEST_CASE("run exits 2 on a missing config and 1 on an unwritable out dir") {
    const fs::path dir = fresh_dir();
    const Invocation missing = invoke("run --config " + (dir / "nope.json").string() +
                                      " --out " + (dir / "out").string());
    CHECK(missing.exit_code == 2);

    spit(dir / "config.json", kMinimalConfig);
    spit(dir / "blocker", "");  // a file where a directory is needed
    const Invocation blocked =
        invoke("run --config " + (dir / "config.json").string() + " --out " +
               (dir / "blocker" / "out").string());
    CHECK(blocked.exit_code == 1);
}

TEST_CASE("seed override changes the outputs") {
    const fs::path dir = fresh_dir();
    spit(dir / "config.json", kMinimalConfig);
    const fs::path out_a = dir / "a";
    const fs::path out_b = dir / "b";
    invoke("run --config " + (dir / "config.json").string() + " --out " + out_a.string());
    invoke("run --config " + (dir / "config.json").string() + " --out " + out_b.string() +
           " --seed-override 999");
    CHECK(slurp(out_a / "per_tick.csv") != slurp(out_b / "per_tick.csv"));
    CHECK(summary_value(out_b / "summary.txt", "config.seed") == "999");
}

TEST_CASE("roc analyses a sample file") {
    const fs::path dir = fresh_dir();
    spit(dir / "separable.csv", "marker,suitable\n0.9,1\n0.8,1\n0.4,0\n0.2,0\n");
    const fs::path out = dir / "out";
    const Invocation r = invoke("roc " + (dir / "separable.csv").string() + " --out " +
                                out.string());
    CHECK(r.exit_code == 0);
    CHECK(summary_value(out / "summary.txt", "auc") == "1");
    CHECK(fs::exists(out / "roc_points.csv"));

    // The 0.75 fixture: positives {0.9, 0.4}, negatives {0.8, 0.2}.
    spit(dir / "inverted.csv", "marker,suitable\n0.9,1\n0.4,1\n0.8,0\n0.2,0\n");
    const Invocation inv = invoke("roc " + (dir / "inverted.csv").string() + " --out " +
                                  (dir / "out2").string() + " --criterion min-error");
    CHECK(inv.exit_code == 0);
    CHECK(summary_value(dir / "out2" / "summary.txt", "auc") == "0.75");
    CHECK(summary_value(dir / "out2" / "summary.txt", "criterion") == "min-error");
}

TEST_CASE("roc rejects malformed rows and single-class input") {
    const fs::path dir = fresh_dir();
    spit(dir / "bad.csv", "marker,suitable\n0.9,1\noops,0\n");
    const Invocation bad =
        invoke("roc " + (dir / "bad.csv").string() + " --out " + (dir / "out").string());
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("row 3") != std::string::npos);

    spit(dir / "single.csv", "marker,suitable\n0.9,1\n0.4,1\n");
    const Invocation single =
        invoke("roc " + (dir / "single.csv").string() + " --out " + (dir / "out").string());
    CHECK(single.exit_code == 2);
    CHECK(single.err.find("both classes") != std::string::npos);
}

TEST_CASE("fitness decomposes the worked curve pair") {
    const fs::path dir = fresh_dir();
    spit(dir / "ref.csv", "bin_start,bin_end,probability\n0,1,0.8\n");
    spit(dir / "impl.csv", "bin_start,bin_end,probability\n0,0.5,1\n0.5,1,0.4\n");
    const fs::path out = dir / "out";
    const Invocation r = invoke("fitness " + (dir / "ref.csv").string() + " " +
                                (dir / "impl.csv").string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(summary_value(out / "summary.txt", "intrinsic_if") == "0.6");
    CHECK(summary_value(out / "summary.txt", "additional_af") == "0.1");
    CHECK(summary_value(out / "summary.txt", "missing_mf") == "0.2");
    CHECK(summary_value(out / "summary.txt", "potential_pf") == "0.9");
    CHECK(summary_value(out / "summary.txt", "realized_rf") == "-0.1");
    CHECK(summary_value(out / "summary.txt", "fidelity_fi") == "0.3");

    const Invocation same = invoke("fitness " + (dir / "ref.csv").string() + " " +
                                   (dir / "ref.csv").string() + " --out " +
                                   (dir / "out_same").string());
    CHECK(same.exit_code == 0);
    CHECK(summary_value(dir / "out_same" / "summary.txt", "additional_af") == "0");
    CHECK(summary_value(dir / "out_same" / "summary.txt", "missing_mf") == "0");
}

TEST_CASE("fitness rejects invalid probabilities and mismatched domains") {
    const fs::path dir = fresh_dir();
    spit(dir / "ref.csv", "bin_start,bin_end,probability\n0,1,0.8\n");
    spit(dir / "bad.csv", "bin_start,bin_end,probability\n0,1,1.2\n");
    const Invocation bad = invoke("fitness " + (dir / "ref.csv").string() + " " +
                                  (dir / "bad.csv").string() + " --out " +
                                  (dir / "out").string());
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("probability") != std::string::npos);

    spit(dir / "short.csv", "bin_start,bin_end,probability\n0,0.5,0.8\n");
    const Invocation mismatch = invoke("fitness " + (dir / "ref.csv").string() + " " +
                                       (dir / "short.csv").string() + " --out " +
                                       (dir / "out").string());
    CHECK(mismatch.exit_code == 2);
}

TEST_CASE("sweep emits one row per grid point plus the argmin") {
    const fs::path dir = fresh_dir();
    spit(dir / "config.json", kMinimalConfig);
    const fs::path out = dir / "out";
    const Invocation r = invoke("sweep --config " + (dir / "config.json").string() + " --out " +
                                out.string() + " --grid 0:1:0.5 --seeds 3");
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(out / "sweep.csv");
    std::size_t rows = 0;
    for (char ch : csv) rows += ch == '\n' ? 1 : 0;
    CHECK(rows == 4);  // header + 3 grid points
    CHECK(summary_value(out / "summary.txt", "points") == "3");
    CHECK(summary_value(out / "summary.txt", "argmin.shared_fraction") != "<missing>");
}

TEST_CASE("sweep validates grid and seeds flags") {
    const fs::path dir = fresh_dir();
    spit(dir / "config.json", kMinimalConfig);
    const Invocation zero_seeds =
        invoke("sweep --config " + (dir / "config.json").string() + " --out " +
               (dir / "out").string() + " --seeds 0");
    CHECK(zero_seeds.exit_code == 2);

    const Invocation bad_grid =
        invoke("sweep --config " + (dir / "config.json").string() + " --out " +
               (dir / "out").string() + " --grid 0:1");
    CHECK(bad_grid.exit_code == 2);
    CHECK(bad_grid.err.find("grid") != std::string::npos);
}

TEST_CASE("sweep output does not depend on the thread count") {
    const fs::path dir = fresh_dir();
    spit(dir / "config.json", kMinimalConfig);
    const fs::path out_a = dir / "a";
    const fs::path out_b = dir / "b";
    const Invocation solo =
        invoke("sweep --config " + (dir / "config.json").string() + " --out " + out_a.string() +
                   " --grid 0:1:0.25 --seeds 4",
               "CONFLAB_THREADS=1");
    const Invocation many =
        invoke("sweep --config " + (dir / "config.json").string() + " --out " + out_b.string() +
                   " --grid 0:1:0.25 --seeds 4",
               "CONFLAB_THREADS=8");
    CHECK(solo.exit_code == 0);
    CHECK(many.exit_code == 0);
    CHECK(slurp(out_a / "sweep.csv") == slurp(out_b / "sweep.csv"));
    CHECK(slurp(out_a / "summary.txt") == slurp(out_b / "summary.txt"));

    const Invocation bad_env =
        invoke("sweep --config " + (dir / "config.json").string() + " --out " +
                   (dir / "c").string(),
               "CONFLAB_THREADS=banana");
    CHECK(bad_env.exit_code == 2);
}

}  // TEST_SUITE

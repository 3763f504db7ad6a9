// Acceptance suite: prints one pass/fail line per criterion and exits
// nonzero if any fails.
//
// Usage: adlmon_acceptance <path-to-cli-binary> <path-to-data-dir>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adlmon/activity_model.hpp"
#include "adlmon/edscca.hpp"
#include "adlmon/evaluation.hpp"
#include "adlmon/knn.hpp"
#include "adlmon/pipeline.hpp"
#include "adlmon/trace_sim.hpp"

#include "../support/fixtures.hpp"
#include "../support/knn_oracle.hpp"
#include "../support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace adlmon;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << '\n';
    if (!pass) ++g_failures;
}

std::string run_cli(const std::string& cli, const std::string& args, const fs::path& stdout_file,
                    int* exit_code = nullptr) {
    const std::string cmd = cli + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (exit_code) *exit_code = rc;
    std::ifstream in(stdout_file);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool near_pp(double value, double expected_pct, double tol_pp = 0.005) {
    return std::abs(value * 100.0 - expected_pct) <= tol_pp;
}

// --- criterion 1: combinatorics exactness ---
void criterion1(const std::string& cli, const std::string& data_dir, const fs::path& tmp) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;

    const std::string out =
        run_cli(cli, "enumerate --defs " + data_dir + "/eating_lunch.json", tmp / "enum.txt");
    if (out.find("alpha=64 beta=4 gamma=60") == std::string::npos) {
        pass = false;
        detail = "cli output: " + out.substr(0, 60);
    }

    for (std::size_t a = 1; a <= 12 && pass; ++a) {
        for (std::size_t c = 1; c <= a && pass; ++c) {
            const auto def = adlmon::testing::synthetic_definition(a, c);
            std::uint64_t all = 0, goal = 0;
            for (const auto& inst : enumerate_instances(def)) {
                ++all;
                if (inst.goal_reached) ++goal;
            }
            if (alpha_count(def) != all || beta_count(def) != goal ||
                gamma_count(def) != all - goal) {
                pass = false;
                detail = "mismatch at a_t=" + std::to_string(a) + " c_t=" + std::to_string(c);
            }
        }
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    if (ms >= 1000) {
        pass = false;
        detail = "took " + std::to_string(ms) + " ms";
    }
    report(1, "combinatorics exactness", pass, detail);
}

// --- criterion 2: metric arithmetic exactness ---
void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;

    const ConfusionMatrix beh({"lying", "standing", "sitting", "walking"},
                              {{19, 8, 3, 0}, {1, 3, 0, 0}, {4, 1, 22, 0}, {0, 0, 0, 12}});
    pass = pass && near_pp(accuracy(beh), 76.71);
    pass = pass && near_pp(*precision(beh, "lying"), 63.33);
    pass = pass && near_pp(*precision(beh, "standing"), 75.00);
    pass = pass && near_pp(*precision(beh, "sitting"), 81.48);
    pass = pass && near_pp(*precision(beh, "walking"), 100.00);
    pass = pass && near_pp(*recall(beh, "lying"), 79.17);
    pass = pass && near_pp(*recall(beh, "standing"), 25.00);
    pass = pass && near_pp(*recall(beh, "sitting"), 88.00);
    pass = pass && near_pp(*recall(beh, "walking"), 100.00);

    const ConfusionMatrix emg({"Non-Emergency", "Emergency"}, {{41, 7}, {3, 11}});
    pass = pass && near_pp(accuracy(emg), 83.87);
    pass = pass && near_pp(*precision(emg, "Non-Emergency"), 85.42);
    pass = pass && near_pp(*precision(emg, "Emergency"), 78.57);
    pass = pass && near_pp(*recall(emg, "Non-Emergency"), 93.18);
    pass = pass && near_pp(*recall(emg, "Emergency"), 61.11);

    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    report(2, "metric arithmetic exactness", pass && ms < 1000);
}

// --- criterion 3: k-NN oracle equivalence ---
void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7777);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    std::size_t checked = 0, agreed = 0;
    for (int instance = 0; instance < 50; ++instance) {
        std::uniform_int_distribution<std::size_t> n_dist(12, 200), p_dist(1, 8);
        const std::size_t n = n_dist(rng), p = p_dist(rng);
        const std::size_t k = std::vector<std::size_t>{1, 5, 11}[instance % 3];
        const VoteScheme vote =
            (instance % 2 == 0) ? VoteScheme::Uniform : VoteScheme::InverseDistance;
        std::vector<std::vector<double>> x(n, std::vector<double>(p));
        std::vector<std::string> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& v : x[i]) v = coord(rng);
            y[i] = "c" + std::to_string(i % 3);
        }
        const TrainedKnn model(x, y, k, {vote, false});
        for (int q = 0; q < 20; ++q) {
            std::vector<double> query(p);
            for (auto& v : query) v = coord(rng);
            ++checked;
            if (model.predict(query).label ==
                adlmon::testing::knn_oracle(x, y, k, vote, query).label)
                ++agreed;
        }
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    report(3, "k-NN oracle equivalence", agreed == checked && ms < 10000,
           std::to_string(agreed) + "/" + std::to_string(checked) + " queries, " +
               std::to_string(ms) + " ms");
}

// --- criterion 4: EDSCCA truth table ---
void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto def = adlmon::testing::eating_lunch();
    const auto sdca = sdca_build(def);
    std::size_t checked = 0, agreed = 0;
    bool branch_ok = true;
    for (const auto* tail : {"lying", "standing", "sitting", "walking"}) {
        SimConfig cfg;
        cfg.behavior_tail = tail;
        for (const auto& trace : generate(def, cfg)) {
            ++checked;
            const auto expected = label_trace(def, trace);
            const auto got = edscca_decide(sdca, trace);
            if (got.branch == expected.branch && got.outcome == expected.outcome) ++agreed;
            // Exactly one branch fires: the verdict names exactly one of
            // iii..vi, and it is consistent with the start/end scan.
            if (got.branch != Branch::StartOnly && got.branch != Branch::Completed &&
                got.branch != Branch::EndOnly && got.branch != Branch::NoActivity)
                branch_ok = false;
        }
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    report(4, "EDSCCA truth table (256 traces)", agreed == checked && branch_ok && ms < 1000,
           std::to_string(agreed) + "/" + std::to_string(checked));
}

// --- criterion 5: dataset reproduction fallback (synthetic floors) ---
void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    // The published dataset is not reachable from this environment, so
    // the separable-data floors apply: both pipelines must reach >= 0.95
    // accuracy on well-separated synthetic data.
    const auto beh_records = adlmon::testing::separable_behavior_records(75, 21); // 300 rows
    const auto beh = eval_behavior(beh_records, {});
    const bool beh_ok = beh.report.overall_accuracy >= 0.95;

    const auto emg_records = adlmon::testing::separable_emergency_records(100, 22); // 200 rows
    const auto emg = eval_emergency(emg_records, {});
    const bool emg_ok = emg.report.overall_accuracy >= 0.95;

    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    report(5, "synthetic separable-data floors (dataset unreachable)",
           beh_ok && emg_ok && ms < 60000,
           "behavior acc=" + std::to_string(beh.report.overall_accuracy) +
               ", emergency acc=" + std::to_string(emg.report.overall_accuracy));
}

// --- criterion 6: weight/threshold property ---
void criterion6() {
    bool implication_ok = true;
    for (std::size_t a = 1; a <= 12; ++a) {
        for (std::size_t c = 1; c <= a; ++c) {
            const auto def = adlmon::testing::synthetic_definition(a, c);
            const double threshold = threshold_weight(def);
            for (const auto& inst : enumerate_instances(def))
                if (inst.goal_reached && inst.instance_weight < threshold - 1e-12)
                    implication_ok = false;
        }
    }

    // Constructed counterexample: weight clears the bar, goal does not.
    ComplexActivityDefinition def;
    def.name = "counterexample";
    def.atomics = {{"A", "A", 0.3, true, false, true, {}},
                   {"B", "B", 0.35, false, false, false, {}},
                   {"C", "C", 0.35, false, true, false, {}}};
    def.contexts = {{"CA", "CA", 0.3, true, false, true, "A"},
                    {"CB", "CB", 0.35, false, false, false, "B"},
                    {"CC", "CC", 0.35, false, true, false, "C"}};
    validate(def);
    const std::set<std::string> heavy = {"B", "C"};
    const bool counter_ok =
        instance_weight(def, heavy) >= threshold_weight(def) && !goal_reached(def, heavy);

    report(6, "goal implies threshold weight; predicate is authoritative",
           implication_ok && counter_ok);
}

// --- criterion 7: CLI determinism ---
void criterion7(const std::string& cli, const std::string& data_dir, const fs::path& tmp) {
    bool pass = true;
    std::string detail;

    // simulate twice with a fixed seed.
    const std::string sim_args = "simulate --defs " + data_dir +
                                 "/eating_lunch.json --policy random-n --n 40 --seed 17 "
                                 "--mismatch-rate 0.3 --tail lying --out ";
    run_cli(cli, sim_args + (tmp / "sim_a.json").string(), tmp / "sim_a.log");
    run_cli(cli, sim_args + (tmp / "sim_b.json").string(), tmp / "sim_b.log");
    if (slurp(tmp / "sim_a.json").empty() || slurp(tmp / "sim_a.json") != slurp(tmp / "sim_b.json")) {
        pass = false;
        detail = "simulate outputs differ";
    }

    // eval-behavior twice with a fixed seed on a synthetic CSV.
    const auto records = adlmon::testing::separable_behavior_records(30, 3);
    save_csv((tmp / "synthetic.csv").string(), records);
    const std::string eval_args = "eval-behavior --data " + (tmp / "synthetic.csv").string() +
                                  " --seed 5 --out ";
    run_cli(cli, eval_args + (tmp / "eval_a").string(), tmp / "eval_a.log");
    run_cli(cli, eval_args + (tmp / "eval_b").string(), tmp / "eval_b.log");
    for (const auto* file : {"predictions.csv", "confusion.csv", "metrics.txt"}) {
        if (slurp(tmp / "eval_a" / file).empty() ||
            slurp(tmp / "eval_a" / file) != slurp(tmp / "eval_b" / file)) {
            pass = false;
            detail = std::string("eval outputs differ: ") + file;
        }
    }

    // detect on the simulated traces twice.
    const std::string det_args = "detect --traces " + (tmp / "sim_a.json").string() + " --defs " +
                                 data_dir + "/eating_lunch.json --out ";
    run_cli(cli, det_args + (tmp / "det_a.json").string(), tmp / "det_a.log");
    run_cli(cli, det_args + (tmp / "det_b.json").string(), tmp / "det_b.log");
    if (slurp(tmp / "det_a.json").empty() || slurp(tmp / "det_a.json") != slurp(tmp / "det_b.json")) {
        pass = false;
        detail = "detect outputs differ";
    }

    report(7, "fixed-seed CLI runs are byte-identical", pass, detail);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: adlmon_acceptance <cli-binary> <data-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string data_dir = argv[2];
    const fs::path tmp = fs::temp_directory_path() / "adlmon_acceptance";
    fs::remove_all(tmp);
    fs::create_directories(tmp);

    criterion1(cli, data_dir, tmp);
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7(cli, data_dir, tmp);

    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
}

// Command-line front end: activity enumeration, trace simulation,
// emergency detection, and the two k-NN evaluation pipelines.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adlmon/activity_model.hpp"
#include "adlmon/edscca.hpp"
#include "adlmon/errors.hpp"
#include "adlmon/evaluation.hpp"
#include "adlmon/json_io.hpp"
#include "adlmon/pipeline.hpp"
#include "adlmon/trace_sim.hpp"
#include "adlmon/zone_model.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw adlmon::IoError("cannot write '" + path.string() + "'");
    out << content;
}

struct EvalFlags {
    std::string data;
    std::string out_dir;
    std::uint64_t seed = 0;
    double train_fraction = 0.75;
    std::size_t k = 0;
    std::string vote = "inverse";
    std::vector<std::string> features;
    double outlier_z = 3.0;
    bool minmax = false;
};

void add_eval_flags(CLI::App* cmd, EvalFlags& f) {
    cmd->add_option("--data", f.data, "sensor CSV file")->required();
    cmd->add_option("--out", f.out_dir, "output directory")->required();
    cmd->add_option("--seed", f.seed, "split seed");
    cmd->add_option("--train-fraction", f.train_fraction, "train split fraction (default 0.75)");
    cmd->add_option("--k", f.k, "neighbor count (default 11 behavior / 5 emergency)");
    cmd->add_option("--vote", f.vote, "vote scheme: uniform|inverse")
        ->check(CLI::IsMember({"uniform", "inverse"}));
    cmd->add_option("--features", f.features,
                    "feature names from: ax ay az gx gy gz zone behavior");
    cmd->add_option("--outlier-z", f.outlier_z, "z-score outlier threshold (default 3.0)");
    cmd->add_flag("--minmax", f.minmax, "min-max scale features before distance");
}

adlmon::EvalOptions to_options(const EvalFlags& f) {
    adlmon::EvalOptions o;
    o.seed = f.seed;
    o.train_fraction = f.train_fraction;
    o.k = f.k;
    o.vote = f.vote == "uniform" ? adlmon::VoteScheme::Uniform : adlmon::VoteScheme::InverseDistance;
    o.features = f.features;
    o.outlier_z = f.outlier_z;
    o.minmax_scale = f.minmax;
    return o;
}

adlmon::json config_echo(const std::string& subcommand, const EvalFlags& f) {
    return {{"subcommand", subcommand},
            {"data", f.data},
            {"seed", f.seed},
            {"train_fraction", f.train_fraction},
            {"k", f.k},
            {"vote", f.vote},
            {"features", f.features},
            {"outlier_z", f.outlier_z},
            {"minmax", f.minmax}};
}

void write_eval_outputs(const std::string& subcommand, const EvalFlags& flags,
                        const adlmon::EvalResult& res) {
    fs::create_directories(flags.out_dir);
    const fs::path dir(flags.out_dir);
    write_file(dir / "metrics.txt", adlmon::render_text(res.cm));
    write_file(dir / "confusion.csv", adlmon::to_csv(res.cm));
    write_file(dir / "predictions.csv", adlmon::to_csv(res.table));
    adlmon::json echo = config_echo(subcommand, flags);
    echo["rows_input"] = res.n_input;
    echo["rows_after_outliers"] = res.n_after_outliers;
    echo["rows_train"] = res.n_train;
    echo["rows_test"] = res.n_test;
    write_file(dir / "run_config.json", echo.dump(2) + "\n");
    std::cout << adlmon::render_text(res.cm);
    std::cout << "train=" << res.n_train << " test=" << res.n_test << " (of " << res.n_input
              << " input rows, " << res.n_after_outliers << " after outlier removal)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral-pattern and emergency detection over wearable ADL data"};
    app.require_subcommand(1);

    // enumerate
    std::string enum_defs;
    bool enum_dump = false;
    auto* cmd_enum = app.add_subcommand("enumerate", "print instance counts for a definition");
    cmd_enum->add_option("--defs", enum_defs, "activity definition JSON")->required();
    cmd_enum->add_flag("--dump", enum_dump, "also dump every instance");

    // simulate
    std::string sim_defs, sim_out, sim_policy = "all", sim_tail = "standing";
    std::uint64_t sim_seed = 0;
    std::size_t sim_n = 0;
    double sim_mismatch = 0.0;
    auto* cmd_sim = app.add_subcommand("simulate", "generate synthetic activity traces");
    cmd_sim->add_option("--defs", sim_defs, "activity definition JSON")->required();
    cmd_sim->add_option("--out", sim_out, "trace file to write")->required();
    cmd_sim->add_option("--policy", sim_policy, "all|random-n")
        ->check(CLI::IsMember({"all", "random-n"}));
    cmd_sim->add_option("--n", sim_n, "trace count under random-n");
    cmd_sim->add_option("--seed", sim_seed, "simulation seed");
    cmd_sim->add_option("--tail", sim_tail, "behavior appended after the last event")
        ->check(CLI::IsMember({"lying", "standing", "sitting", "walking"}));
    cmd_sim->add_option("--mismatch-rate", sim_mismatch, "wrong-context probability");

    // detect
    std::string det_traces, det_defs, det_zones, det_out;
    std::int64_t det_lie_duration = 0;
    auto* cmd_det = app.add_subcommand("detect", "classify traces as emergency/non-emergency");
    cmd_det->add_option("--traces", det_traces, "trace file")->required();
    cmd_det->add_option("--defs", det_defs, "activity definitions JSON (single or array)");
    cmd_det->add_option("--zones", det_zones, "zone map JSON");
    cmd_det->add_option("--lie-duration", det_lie_duration,
                        "minimum terminal lying duration for the zone rule (default 0)");
    cmd_det->add_option("--out", det_out, "verdict file to write (default stdout)");

    // zones
    std::string zones_data, zones_out;
    auto* cmd_zones = app.add_subcommand("zones", "infer and dump the zone map from a dataset");
    cmd_zones->add_option("--data", zones_data, "sensor CSV file")->required();
    cmd_zones->add_option("--out", zones_out, "zone map file to write (default stdout)");

    // eval-behavior / eval-emergency
    EvalFlags beh_flags, emg_flags;
    auto* cmd_beh =
        app.add_subcommand("eval-behavior", "behavior-pattern k-NN evaluation (k=11, 3 features)");
    add_eval_flags(cmd_beh, beh_flags);
    auto* cmd_emg =
        app.add_subcommand("eval-emergency", "binary emergency k-NN evaluation (k=5, 8 features)");
    add_eval_flags(cmd_emg, emg_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_enum->parsed()) {
            const auto def = adlmon::load_definition(enum_defs);
            const auto s = adlmon::instance_counts(def);
            std::cout << "alpha=" << s.alpha << " beta=" << s.beta << " gamma=" << s.gamma << '\n';
            std::cout << "a_t=" << s.a_t << " b_t=" << s.b_t << " c_t=" << s.c_t << " d_t=" << s.d_t
                      << '\n';
            if (enum_dump) {
                for (const auto& inst : adlmon::enumerate_instances(def)) {
                    std::cout << '{';
                    for (std::size_t i = 0; i < inst.performed.size(); ++i)
                        std::cout << (i ? "," : "") << inst.performed[i];
                    std::cout << "} weight=" << inst.instance_weight
                              << " goal=" << (inst.goal_reached ? "yes" : "no") << '\n';
                }
            }
        } else if (cmd_sim->parsed()) {
            const auto def = adlmon::load_definition(sim_defs);
            adlmon::SimConfig cfg;
            cfg.seed = sim_seed;
            cfg.policy = sim_policy == "all" ? adlmon::SimConfig::Policy::All
                                             : adlmon::SimConfig::Policy::RandomN;
            cfg.n = sim_n;
            cfg.behavior_tail = sim_tail;
            cfg.mismatch_rate = sim_mismatch;
            const auto traces = adlmon::generate(def, cfg);
            write_file(sim_out, adlmon::to_json(traces).dump(2) + "\n");
            adlmon::json echo = {{"subcommand", "simulate"}, {"defs", sim_defs},
                                 {"policy", sim_policy},    {"n", sim_n},
                                 {"seed", sim_seed},        {"tail", sim_tail},
                                 {"mismatch_rate", sim_mismatch}};
            write_file(sim_out + ".config.json", echo.dump(2) + "\n");
            std::cout << "wrote " << traces.size() << " traces to " << sim_out << '\n';
        } else if (cmd_det->parsed()) {
            const auto traces = adlmon::load_traces(det_traces);
            std::vector<adlmon::ComplexActivityDefinition> defs;
            if (!det_defs.empty()) defs = adlmon::load_definitions(det_defs);
            adlmon::KnowledgeBase kb;
            for (const auto& def : defs) kb.insert(adlmon::sdca_build(def));
            adlmon::ZoneMap zonemap;
            if (!det_zones.empty()) {
                std::ifstream in(det_zones);
                if (!in) throw adlmon::IoError("cannot open '" + det_zones + "'");
                adlmon::json j;
                in >> j;
                zonemap = adlmon::zonemap_from_json(j);
            } else {
                // Minimal default: every zone named in the traces exists,
                // bedroom/sleeping are lying-compatible.
                for (const auto& t : traces) {
                    zonemap.zones[t.zone].name = t.zone;
                    if (t.zone == "bedroom" || t.zone == "sleeping")
                        zonemap.bedroom_equivalent.insert(t.zone);
                }
            }
            adlmon::ClassifyOptions opts;
            opts.min_lie_duration = det_lie_duration;
            adlmon::json verdicts = adlmon::json::array();
            std::size_t emergencies = 0;
            for (const auto& t : traces) {
                const auto v = adlmon::classify_trace(kb, zonemap, t, defs, opts);
                verdicts.push_back(adlmon::to_json(v));
                if (v.outcome == adlmon::Outcome::Emergency) ++emergencies;
            }
            const adlmon::json out = {{"verdicts", verdicts},
                                      {"total", traces.size()},
                                      {"emergencies", emergencies}};
            if (det_out.empty())
                std::cout << out.dump(2) << '\n';
            else
                write_file(det_out, out.dump(2) + "\n");
            std::cerr << emergencies << "/" << traces.size() << " traces classified as emergency\n";
        } else if (cmd_zones->parsed()) {
            const auto records = adlmon::load_csv(zones_data);
            const auto map = adlmon::zones_from_dataset(records);
            const std::string dump = adlmon::to_json(map).dump(2) + "\n";
            if (zones_out.empty())
                std::cout << dump;
            else
                write_file(zones_out, dump);
        } else if (cmd_beh->parsed()) {
            const auto records = adlmon::load_csv(beh_flags.data);
            const auto res = adlmon::eval_behavior(records, to_options(beh_flags));
            write_eval_outputs("eval-behavior", beh_flags, res);
        } else if (cmd_emg->parsed()) {
            const auto records = adlmon::load_csv(emg_flags.data);
            const auto res = adlmon::eval_emergency(records, to_options(emg_flags));
            write_eval_outputs("eval-emergency", emg_flags, res);
        }
    } catch (const adlmon::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const adlmon::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const adlmon::CapacityError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}

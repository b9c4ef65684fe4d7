// Command-line front end: parse models and profiles, generate partition
// plans, estimate per-device energies, sweep strategy x device-count grids,
// cross-check the communication formulas against the brute-force oracle, and
// compute battery lifetimes.
//
// Exit codes: 0 success, 1 validation or mismatch, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "edgepart/edgepart.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw edgepart::error("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw edgepart::error("cannot write '" + path + "'");
    }
    out << content;
}

struct GAFlags {
    std::uint64_t seed = 0;
    int population = 64;
    int generations = 200;
    double mutation_rate = 0.05;
    int tournament = 3;
    std::string objective = "max";

    edgepart::GAConfig config() const {
        edgepart::GAConfig c;
        c.seed = seed;
        c.population_size = population;
        c.generations = generations;
        c.mutation_rate = mutation_rate;
        c.tournament_size = tournament;
        return c;
    }

    edgepart::Objective objective_enum() const {
        return objective == "spread" ? edgepart::Objective::spread
                                     : edgepart::Objective::max_energy;
    }
};

void add_ga_flags(CLI::App* cmd, GAFlags& flags) {
    cmd->add_option("--seed", flags.seed, "Random seed for GA strategies")->capture_default_str();
    cmd->add_option("--population", flags.population, "GA population size")->capture_default_str();
    cmd->add_option("--generations", flags.generations, "GA generation count")->capture_default_str();
    cmd->add_option("--mutation-rate", flags.mutation_rate, "GA per-gene mutation probability")
        ->capture_default_str();
    cmd->add_option("--tournament", flags.tournament, "GA tournament size")->capture_default_str();
    cmd->add_option("--objective", flags.objective, "Planner objective")
        ->check(CLI::IsMember({"max", "spread"}))
        ->capture_default_str();
}

int run_plan(const std::string& model_path, const std::string& profile_path,
             const std::string& strategy_name, int partitions, const GAFlags& flags,
             const std::string& output_path) {
    using namespace edgepart;
    const NetworkModel model = parse_model(read_file(model_path));
    const Strategy strategy = strategy_from_string(strategy_name);

    PlanDocument document;
    document.strategy = strategy;
    switch (strategy) {
    case Strategy::data:
        document.plan = plan_data(model, partitions);
        break;
    case Strategy::horizontal:
        document.plan = plan_horizontal(model, partitions);
        break;
    case Strategy::sequential:
    case Strategy::vertical: {
        if (profile_path.empty()) {
            throw error("strategy '" + strategy_name + "' needs --profile for its fitness");
        }
        const DeviceProfile profile = parse_profile(read_file(profile_path), model);
        document.seed = flags.seed;
        if (strategy == Strategy::sequential) {
            document.plan = plan_sequential_ga(model, profile, partitions, flags.config(),
                                               flags.objective_enum());
        } else {
            document.plan = plan_vertical_ga(model, profile, partitions, flags.config(),
                                             flags.objective_enum());
        }
        break;
    }
    }
    const std::string text = serialize_plan(document);
    if (output_path.empty()) {
        std::cout << text;
    } else {
        write_file(output_path, text);
    }
    return 0;
}

int run_estimate(const std::string& model_path, const std::string& profile_path,
                 const std::string& plan_path, const std::string& format) {
    using namespace edgepart;
    const NetworkModel model = parse_model(read_file(model_path));
    const DeviceProfile profile = parse_profile(read_file(profile_path), model);
    const PlanDocument document = parse_plan(read_file(plan_path));

    FleetSummary summary;
    switch (document.strategy) {
    case Strategy::data:
        summary = energy_data(model, profile, std::get<DataPlan>(document.plan));
        break;
    case Strategy::horizontal:
        summary = energy_horizontal(model, profile, std::get<HorizontalPlan>(document.plan));
        break;
    case Strategy::sequential:
        summary = energy_sequential(model, profile, std::get<SequentialPlan>(document.plan));
        break;
    case Strategy::vertical:
        summary = energy_vertical(model, profile, std::get<VerticalPlan>(document.plan));
        break;
    }
    if (format == "json") {
        std::cout << breakdown_json(document.strategy, summary).dump(2) << "\n";
    } else {
        std::cout << breakdown_csv(document.strategy, summary);
    }
    return 0;
}

int run_sweep_cmd(const std::string& model_path, const std::string& profile_path, int max_devices,
                  const GAFlags& flags, const std::string& format) {
    using namespace edgepart;
    const NetworkModel model = parse_model(read_file(model_path));
    const DeviceProfile profile = parse_profile(read_file(profile_path), model);
    SweepOptions options;
    options.max_devices = max_devices;
    options.ga = flags.config();
    options.objective = flags.objective_enum();
    const std::vector<SweepRow> rows = run_sweep(model, profile, options);
    if (format == "json") {
        std::cout << sweep_json(rows).dump(2) << "\n";
    } else {
        std::cout << sweep_csv(rows);
    }
    return 0;
}

template <typename Closed, typename Oracle>
bool print_agreement(const char* strategy, int devices, int layer_id, const Closed& closed,
                     const Oracle& oracle) {
    bool ok = true;
    std::ostringstream line;
    line << strategy << " M=" << devices << " layer=" << layer_id << " closed=[";
    for (std::size_t j = 0; j < closed.size(); ++j) {
        line << (j ? " " : "") << closed[j];
    }
    line << "] oracle=[";
    for (std::size_t j = 0; j < oracle.size(); ++j) {
        line << (j ? " " : "") << oracle[j];
        if (static_cast<long long>(closed[j]) != static_cast<long long>(oracle[j])) {
            ok = false;
        }
    }
    line << "] " << (ok ? "ok" : "MISMATCH");
    std::cout << line.str() << "\n";
    return ok;
}

bool check_data_plan(const edgepart::NetworkModel& model, const edgepart::DataPlan& plan) {
    bool all_ok = true;
    for (int i = 0; i + 1 < model.layer_count(); ++i) {
        const edgepart::LayerSpec& consumer = model.layers[static_cast<std::size_t>(i) + 1];
        std::vector<long long> closed;
        for (int j = 0; j < plan.partitions; ++j) {
            closed.push_back(edgepart::comm_height(consumer, plan.heights[static_cast<std::size_t>(i)],
                                                   plan.heights[static_cast<std::size_t>(i) + 1], j));
        }
        const std::vector<long long> oracle = edgepart::remote_rows_for_pair(
            consumer, plan.heights[static_cast<std::size_t>(i)],
            plan.heights[static_cast<std::size_t>(i) + 1]);
        all_ok &= print_agreement("data", plan.partitions, i + 1, closed, oracle);
    }
    return all_ok;
}

bool check_horizontal_plan(const edgepart::NetworkModel& model,
                           const edgepart::HorizontalPlan& plan) {
    bool all_ok = true;
    for (int i = 0; i + 1 < model.layer_count(); ++i) {
        const edgepart::LayerSpec& layer = model.layers[static_cast<std::size_t>(i)];
        std::vector<long long> closed;
        for (int j = 0; j < plan.partitions; ++j) {
            closed.push_back(layer.out_shape.channels -
                             plan.channel_counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
        const std::vector<long long> oracle =
            edgepart::remote_channels_for_layer(plan.channel_counts[static_cast<std::size_t>(i)]);
        all_ok &= print_agreement("horizontal", plan.partitions, i + 1, closed, oracle);
    }
    return all_ok;
}

int run_validate(const std::string& model_path, const std::string& plan_path, int max_partitions) {
    using namespace edgepart;
    const NetworkModel model = parse_model(read_file(model_path));
    bool all_ok = true;
    if (!plan_path.empty()) {
        const PlanDocument document = parse_plan(read_file(plan_path));
        if (const auto* data = std::get_if<DataPlan>(&document.plan)) {
            validate_plan(model, *data);
            all_ok = check_data_plan(model, *data);
        } else if (const auto* horizontal = std::get_if<HorizontalPlan>(&document.plan)) {
            validate_plan(model, *horizontal);
            all_ok = check_horizontal_plan(model, *horizontal);
        } else {
            throw validation_error("validate needs a data or horizontal plan; '" +
                                   std::string(to_string(document.strategy)) +
                                   "' plans have no communication formula to cross-check");
        }
    } else {
        for (int devices = 1; devices <= max_partitions; ++devices) {
            all_ok &= check_data_plan(model, plan_data(model, devices));
            all_ok &= check_horizontal_plan(model, plan_horizontal(model, devices));
        }
    }
    if (!all_ok) {
        std::cerr << "validation found mismatches between the closed forms and the oracle\n";
        return 1;
    }
    std::cout << "closed forms and oracle agree\n";
    return 0;
}

int run_lifetime(double capacity_mah, double voltage, double energy_per_image,
                 double time_per_image) {
    using namespace edgepart;
    const BatteryLifetime life =
        battery_lifetime(capacity_mah, voltage, energy_per_image, time_per_image);
    std::cout << "battery: " << format_number(life.battery_joules) << " J ("
              << format_number(capacity_mah) << " mAh at " << format_number(voltage) << " V)\n";
    std::cout << "runtime: " << format_number(life.seconds) << " s = "
              << format_number(life.days()) << " days\n";
    std::cout << "images:  " << life.images << "\n";
    nlohmann::json doc{{"battery_joules", life.battery_joules},
                       {"seconds", life.seconds},
                       {"days", life.days()},
                       {"images", life.images}};
    std::cout << doc.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition planning and per-device energy estimation for distributed CNN "
                 "inference at the edge"};
    app.require_subcommand(1);

    std::string model_path;
    std::string profile_path;
    std::string plan_path;
    std::string strategy = "data";
    std::string output_path;
    std::string format = "csv";
    int partitions = 1;
    int max_devices = 4;
    int max_partitions = 6;
    GAFlags ga;
    double capacity_mah = 0, voltage = 0, energy_per_image = 0, time_per_image = 0;

    CLI::App* plan_cmd = app.add_subcommand("plan", "Generate a partition plan");
    plan_cmd->add_option("--model", model_path, "Model file")->required();
    plan_cmd->add_option("--profile", profile_path, "Profile file (required for GA strategies)");
    plan_cmd->add_option("--strategy", strategy, "Partitioning strategy")
        ->check(CLI::IsMember({"data", "horizontal", "sequential", "vertical"}))
        ->required();
    plan_cmd->add_option("--partitions", partitions, "Number of partitions/devices")->required();
    plan_cmd->add_option("--output", output_path, "Plan file to write (stdout when omitted)");
    add_ga_flags(plan_cmd, ga);

    CLI::App* estimate_cmd = app.add_subcommand("estimate", "Evaluate a plan's per-device energy");
    estimate_cmd->add_option("--model", model_path, "Model file")->required();
    estimate_cmd->add_option("--profile", profile_path, "Profile file")->required();
    estimate_cmd->add_option("--plan", plan_path, "Plan file")->required();
    estimate_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Evaluate all strategies over 1..N devices");
    sweep_cmd->add_option("--model", model_path, "Model file")->required();
    sweep_cmd->add_option("--profile", profile_path, "Profile file")->required();
    sweep_cmd->add_option("--max-devices", max_devices, "Largest device count")->required();
    sweep_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    add_ga_flags(sweep_cmd, ga);

    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "Cross-check the communication formulas against the brute-force oracle");
    validate_cmd->add_option("--model", model_path, "Model file")->required();
    validate_cmd->add_option("--plan", plan_path, "Check one specific data/horizontal plan");
    validate_cmd->add_option("--max-partitions", max_partitions,
                             "Check generated plans for 1..N partitions")
        ->capture_default_str();

    CLI::App* lifetime_cmd =
        app.add_subcommand("lifetime", "Battery lifetime for repeated inference");
    lifetime_cmd->add_option("capacity_mah", capacity_mah, "Battery capacity in mAh")->required();
    lifetime_cmd->add_option("voltage", voltage, "Battery output voltage in V")->required();
    lifetime_cmd->add_option("energy_per_image", energy_per_image, "Joules per inference")
        ->required();
    lifetime_cmd->add_option("time_per_image", time_per_image, "Seconds per inference")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(plan_cmd)) {
            return run_plan(model_path, profile_path, strategy, partitions, ga, output_path);
        }
        if (app.got_subcommand(estimate_cmd)) {
            return run_estimate(model_path, profile_path, plan_path, format);
        }
        if (app.got_subcommand(sweep_cmd)) {
            return run_sweep_cmd(model_path, profile_path, max_devices, ga, format);
        }
        if (app.got_subcommand(validate_cmd)) {
            return run_validate(model_path, plan_path, max_partitions);
        }
        if (app.got_subcommand(lifetime_cmd)) {
            return run_lifetime(capacity_mah, voltage, energy_per_image, time_per_image);
        }
    } catch (const edgepart::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

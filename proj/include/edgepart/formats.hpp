#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "edgepart/model.hpp"
#include "edgepart/partition.hpp"
#include "edgepart/profile.hpp"

namespace edgepart {

enum class Strategy { data, horizontal, sequential, vertical };

inline const char* to_string(Strategy strategy) {
    switch (strategy) {
    case Strategy::data: return "data";
    case Strategy::horizontal: return "horizontal";
    case Strategy::sequential: return "sequential";
    case Strategy::vertical: return "vertical";
    }
    return "?";
}

inline Strategy strategy_from_string(const std::string& name) {
    if (name == "data") return Strategy::data;
    if (name == "horizontal") return Strategy::horizontal;
    if (name == "sequential") return Strategy::sequential;
    if (name == "vertical") return Strategy::vertical;
    throw validation_error("unknown strategy '" + name + "'");
}

/// One partition plan as stored on disk. GA-produced plans record the seed
/// they were planned with.
struct PlanDocument {
    Strategy strategy = Strategy::data;
    std::optional<std::uint64_t> seed;
    std::variant<DataPlan, HorizontalPlan, SequentialPlan, VerticalPlan> plan;

    int partitions() const {
        return std::visit([](const auto& p) { return p.partitions; }, plan);
    }
};

/// Fixed numeric formatting for files and reports: 12 significant digits,
/// enough for the profile round-trip contract and stable across runs.
inline std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

namespace detail {

struct Record {
    int line = 0;
    std::string type;
    std::vector<std::string> tokens; // everything after the type
};

inline std::vector<Record> tokenize(const std::string& text) {
    std::vector<Record> records;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        std::istringstream fields(line);
        std::string token;
        Record record;
        record.line = line_number;
        while (fields >> token) {
            if (token.front() == '#') {
                break;
            }
            if (record.type.empty()) {
                record.type = token;
            } else {
                record.tokens.push_back(token);
            }
        }
        if (!record.type.empty()) {
            records.push_back(std::move(record));
        }
    }
    return records;
}

/// key=value fields of one record, with required/optional lookups.
struct FieldMap {
    int line;
    std::string record_type;
    std::map<std::string, std::string> fields;

    FieldMap(const Record& record) : line(record.line), record_type(record.type) {
        for (const std::string& token : record.tokens) {
            const std::size_t eq = token.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw parse_error("expected key=value, got '" + token + "'", line);
            }
            const std::string key = token.substr(0, eq);
            if (!fields.emplace(key, token.substr(eq + 1)).second) {
                throw parse_error("duplicate key '" + key + "'", line);
            }
        }
    }

    const std::string& require(const std::string& key) const {
        auto it = fields.find(key);
        if (it == fields.end()) {
            throw parse_error(record_type + " record is missing key '" + key + "'", line);
        }
        return it->second;
    }

    std::optional<std::string> get(const std::string& key) const {
        auto it = fields.find(key);
        if (it == fields.end()) {
            return std::nullopt;
        }
        return it->second;
    }
};

inline long long to_int(const std::string& text, int line) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw parse_error("expected an integer, got '" + text + "'", line);
    }
    if (used != text.size()) {
        throw parse_error("expected an integer, got '" + text + "'", line);
    }
    return value;
}

inline double to_double(const std::string& text, int line) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw parse_error("expected a number, got '" + text + "'", line);
    }
    if (used != text.size()) {
        throw parse_error("expected a number, got '" + text + "'", line);
    }
    return value;
}

inline bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            continue;
        }
        return c == '{';
    }
    return false;
}

inline nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

template <typename T>
T json_get(const nlohmann::json& object, const std::string& key) {
    if (!object.contains(key)) {
        throw parse_error("JSON object is missing key '" + key + "'");
    }
    try {
        return object.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("JSON key '" + key + "': " + e.what());
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// model documents
// ---------------------------------------------------------------------------

inline nlohmann::json model_to_json(const NetworkModel& model) {
    nlohmann::json doc;
    doc["name"] = model.name;
    doc["input_height"] = model.input_shape.height;
    doc["input_width"] = model.input_shape.width;
    doc["input_channels"] = model.input_shape.channels;
    nlohmann::json layers = nlohmann::json::array();
    for (const LayerSpec& layer : model.layers) {
        layers.push_back({{"id", layer.id},
                          {"kind", to_string(layer.kind)},
                          {"window_h", layer.window_h},
                          {"window_w", layer.window_w},
                          {"stride", layer.stride},
                          {"padding", layer.padding},
                          {"neurons", layer.neurons}});
    }
    doc["layers"] = std::move(layers);
    return doc;
}

inline NetworkModel model_from_json(const nlohmann::json& doc) {
    NetworkModel model;
    model.name = detail::json_get<std::string>(doc, "name");
    model.input_shape.height = detail::json_get<int>(doc, "input_height");
    model.input_shape.width = detail::json_get<int>(doc, "input_width");
    model.input_shape.channels = detail::json_get<int>(doc, "input_channels");
    if (!doc.contains("layers") || !doc.at("layers").is_array()) {
        throw parse_error("JSON model needs a 'layers' array");
    }
    for (const nlohmann::json& item : doc.at("layers")) {
        LayerSpec layer;
        layer.id = detail::json_get<int>(item, "id");
        layer.kind = layer_kind_from_string(detail::json_get<std::string>(item, "kind"));
        layer.window_h = detail::json_get<int>(item, "window_h");
        layer.window_w = detail::json_get<int>(item, "window_w");
        layer.stride = detail::json_get<int>(item, "stride");
        layer.padding = detail::json_get<int>(item, "padding");
        layer.neurons = detail::json_get<int>(item, "neurons");
        model.layers.push_back(layer);
    }
    model = infer_shapes(std::move(model));
    validate_model(model);
    return model;
}

/**
 * @brief Parses a model document, line-oriented or JSON.
 *
 * The line format is one `network` header record followed by one `layer`
 * record per layer; `#` starts a comment. All shapes are inferred and the
 * model invariants checked before returning.
 */
inline NetworkModel parse_model(const std::string& text) {
    if (detail::looks_like_json(text)) {
        return model_from_json(detail::parse_json(text));
    }
    NetworkModel model;
    bool saw_header = false;
    for (const detail::Record& record : detail::tokenize(text)) {
        const detail::FieldMap fields(record);
        if (record.type == "network") {
            if (saw_header) {
                throw parse_error("duplicate network record", record.line);
            }
            saw_header = true;
            model.name = fields.require("name");
            model.input_shape.height = static_cast<int>(detail::to_int(fields.require("input_height"), record.line));
            model.input_shape.width = static_cast<int>(detail::to_int(fields.require("input_width"), record.line));
            model.input_shape.channels = static_cast<int>(detail::to_int(fields.require("input_channels"), record.line));
        } else if (record.type == "layer") {
            if (!saw_header) {
                throw parse_error("layer record before the network header", record.line);
            }
            LayerSpec layer;
            layer.id = static_cast<int>(detail::to_int(fields.require("id"), record.line));
            try {
                layer.kind = layer_kind_from_string(fields.require("kind"));
            } catch (const validation_error& e) {
                throw parse_error(e.what(), record.line);
            }
            layer.window_h = static_cast<int>(detail::to_int(fields.require("window_h"), record.line));
            layer.window_w = static_cast<int>(detail::to_int(fields.require("window_w"), record.line));
            layer.stride = static_cast<int>(detail::to_int(fields.require("stride"), record.line));
            layer.padding = static_cast<int>(detail::to_int(fields.require("padding"), record.line));
            layer.neurons = static_cast<int>(detail::to_int(fields.require("neurons"), record.line));
            model.layers.push_back(layer);
        } else {
            throw parse_error("unknown record type '" + record.type + "'", record.line);
        }
    }
    if (!saw_header) {
        throw parse_error("model document has no network header", 1);
    }
    model = infer_shapes(std::move(model));
    validate_model(model);
    return model;
}

inline std::string serialize_model(const NetworkModel& model) {
    std::ostringstream out;
    out << "network name=" << model.name << " input_height=" << model.input_shape.height
        << " input_width=" << model.input_shape.width
        << " input_channels=" << model.input_shape.channels << "\n";
    for (const LayerSpec& layer : model.layers) {
        out << "layer id=" << layer.id << " kind=" << to_string(layer.kind)
            << " window_h=" << layer.window_h << " window_w=" << layer.window_w
            << " stride=" << layer.stride << " padding=" << layer.padding
            << " neurons=" << layer.neurons << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// profile documents
// ---------------------------------------------------------------------------

inline nlohmann::json profile_to_json(const DeviceProfile& profile) {
    nlohmann::json doc;
    doc["device_name"] = profile.device_name;
    doc["bytes_per_element"] = profile.bytes_per_element;
    doc["internal"] = {{"base", profile.internal_model.base_energy},
                       {"per_element", profile.internal_model.per_element_energy}};
    doc["external"] = {{"base", profile.external_model.base_energy},
                       {"per_element", profile.external_model.per_element_energy}};
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& [id, entry] : profile.layer_profiles) {
        layers.push_back({{"id", id},
                          {"comp_energy", entry.comp_energy},
                          {"comp_time", entry.comp_time},
                          {"in_comm_energy", entry.in_comm_energy},
                          {"ex_comm_energy", entry.ex_comm_energy},
                          {"send_energy", entry.send_energy},
                          {"recv_energy", entry.recv_energy}});
    }
    doc["layers"] = std::move(layers);
    return doc;
}

namespace detail {

struct RawProfileEntry {
    double comp_energy = 0;
    double comp_time = 0;
    std::optional<double> in_comm_energy;
    std::optional<double> ex_comm_energy;
    std::optional<double> send_energy;
    std::optional<double> recv_energy;
};

/// Completes sparse per-layer entries with cost-model values at full tensor
/// sizes and validates coverage against the model.
inline DeviceProfile assemble_profile(std::string device_name, double bytes_per_element,
                                      CommCostModel internal, CommCostModel external,
                                      const std::map<int, RawProfileEntry>& entries,
                                      const NetworkModel& model) {
    DeviceProfile profile;
    profile.device_name = std::move(device_name);
    profile.bytes_per_element = bytes_per_element;
    profile.internal_model = internal;
    profile.external_model = external;
    for (const auto& [id, raw] : entries) {
        if (id < 1 || id > model.layer_count()) {
            throw validation_error("profile names unknown layer " + std::to_string(id));
        }
        const LayerSpec& layer = model.layer(id);
        LayerProfile entry;
        entry.comp_energy = raw.comp_energy;
        entry.comp_time = raw.comp_time;
        entry.in_comm_energy =
            raw.in_comm_energy.value_or(comm_energy(internal, layer.out_shape.element_count()));
        entry.ex_comm_energy =
            raw.ex_comm_energy.value_or(comm_energy(external, layer.out_shape.element_count()));
        entry.send_energy =
            raw.send_energy.value_or(comm_energy(external, layer.out_shape.element_count()));
        entry.recv_energy =
            raw.recv_energy.value_or(comm_energy(external, layer.in_shape.element_count()));
        profile.layer_profiles.emplace(id, entry);
    }
    validate_profile(profile, model);
    return profile;
}

} // namespace detail

inline DeviceProfile profile_from_json(const nlohmann::json& doc, const NetworkModel& model) {
    const nlohmann::json internal = detail::json_get<nlohmann::json>(doc, "internal");
    const nlohmann::json external = detail::json_get<nlohmann::json>(doc, "external");
    CommCostModel internal_model{detail::json_get<double>(internal, "base"),
                                 detail::json_get<double>(internal, "per_element")};
    CommCostModel external_model{detail::json_get<double>(external, "base"),
                                 detail::json_get<double>(external, "per_element")};
    std::map<int, detail::RawProfileEntry> entries;
    if (!doc.contains("layers") || !doc.at("layers").is_array()) {
        throw parse_error("JSON profile needs a 'layers' array");
    }
    for (const nlohmann::json& item : doc.at("layers")) {
        const int id = detail::json_get<int>(item, "id");
        detail::RawProfileEntry raw;
        raw.comp_energy = detail::json_get<double>(item, "comp_energy");
        raw.comp_time = detail::json_get<double>(item, "comp_time");
        if (item.contains("in_comm_energy")) raw.in_comm_energy = item.at("in_comm_energy").get<double>();
        if (item.contains("ex_comm_energy")) raw.ex_comm_energy = item.at("ex_comm_energy").get<double>();
        if (item.contains("send_energy")) raw.send_energy = item.at("send_energy").get<double>();
        if (item.contains("recv_energy")) raw.recv_energy = item.at("recv_energy").get<double>();
        if (!entries.emplace(id, raw).second) {
            throw validation_error("profile repeats layer " + std::to_string(id));
        }
    }
    return detail::assemble_profile(detail::json_get<std::string>(doc, "device_name"),
                                    doc.value("bytes_per_element", 4.0), internal_model,
                                    external_model, entries, model);
}

/**
 * @brief Parses a profile document (line-oriented or JSON) against the model
 * it calibrates.
 *
 * Per-layer records need comp_energy and comp_time; omitted communication
 * fields are computed from the cost models at the layer's tensor sizes, and
 * explicit fields always win over computed ones.
 */
inline DeviceProfile parse_profile(const std::string& text, const NetworkModel& model) {
    if (detail::looks_like_json(text)) {
        return profile_from_json(detail::parse_json(text), model);
    }
    std::string device_name;
    double bytes_per_element = 4.0;
    std::optional<CommCostModel> internal;
    std::optional<CommCostModel> external;
    std::map<int, detail::RawProfileEntry> entries;
    bool saw_header = false;
    for (const detail::Record& record : detail::tokenize(text)) {
        const detail::FieldMap fields(record);
        if (record.type == "profile") {
            saw_header = true;
            device_name = fields.require("device_name");
            if (auto bytes = fields.get("bytes_per_element")) {
                bytes_per_element = detail::to_double(*bytes, record.line);
            }
        } else if (record.type == "internal" || record.type == "external") {
            CommCostModel cost{detail::to_double(fields.require("base"), record.line),
                               detail::to_double(fields.require("per_element"), record.line)};
            (record.type == "internal" ? internal : external) = cost;
        } else if (record.type == "layer") {
            const int id = static_cast<int>(detail::to_int(fields.require("id"), record.line));
            detail::RawProfileEntry raw;
            raw.comp_energy = detail::to_double(fields.require("comp_energy"), record.line);
            raw.comp_time = detail::to_double(fields.require("comp_time"), record.line);
            if (auto v = fields.get("in_comm_energy")) raw.in_comm_energy = detail::to_double(*v, record.line);
            if (auto v = fields.get("ex_comm_energy")) raw.ex_comm_energy = detail::to_double(*v, record.line);
            if (auto v = fields.get("send_energy")) raw.send_energy = detail::to_double(*v, record.line);
            if (auto v = fields.get("recv_energy")) raw.recv_energy = detail::to_double(*v, record.line);
            if (!entries.emplace(id, raw).second) {
                throw parse_error("profile repeats layer " + std::to_string(id), record.line);
            }
        } else {
            throw parse_error("unknown record type '" + record.type + "'", record.line);
        }
    }
    if (!saw_header) {
        throw parse_error("profile document has no profile header", 1);
    }
    if (!internal || !external) {
        throw parse_error("profile document needs internal and external cost records", 1);
    }
    return detail::assemble_profile(std::move(device_name), bytes_per_element, *internal,
                                    *external, entries, model);
}

inline std::string serialize_profile(const DeviceProfile& profile) {
    std::ostringstream out;
    out << "profile device_name=" << profile.device_name
        << " bytes_per_element=" << format_number(profile.bytes_per_element) << "\n";
    out << "internal base=" << format_number(profile.internal_model.base_energy)
        << " per_element=" << format_number(profile.internal_model.per_element_energy) << "\n";
    out << "external base=" << format_number(profile.external_model.base_energy)
        << " per_element=" << format_number(profile.external_model.per_element_energy) << "\n";
    for (const auto& [id, entry] : profile.layer_profiles) {
        out << "layer id=" << id << " comp_energy=" << format_number(entry.comp_energy)
            << " comp_time=" << format_number(entry.comp_time)
            << " in_comm_energy=" << format_number(entry.in_comm_energy)
            << " ex_comm_energy=" << format_number(entry.ex_comm_energy)
            << " send_energy=" << format_number(entry.send_energy)
            << " recv_energy=" << format_number(entry.recv_energy) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// plan documents
// ---------------------------------------------------------------------------

inline nlohmann::json plan_to_json(const PlanDocument& document) {
    nlohmann::json doc;
    doc["strategy"] = to_string(document.strategy);
    doc["partitions"] = document.partitions();
    if (document.seed) {
        doc["seed"] = *document.seed;
    }
    if (const auto* data = std::get_if<DataPlan>(&document.plan)) {
        doc["heights"] = data->heights;
    } else if (const auto* horizontal = std::get_if<HorizontalPlan>(&document.plan)) {
        doc["neurons"] = horizontal->neuron_counts;
        doc["channels"] = horizontal->channel_counts;
    } else if (const auto* sequential = std::get_if<SequentialPlan>(&document.plan)) {
        nlohmann::json groups = nlohmann::json::array();
        for (const auto& [first, last] : sequential->groups) {
            groups.push_back({first, last});
        }
        doc["groups"] = std::move(groups);
    } else if (const auto* vertical = std::get_if<VerticalPlan>(&document.plan)) {
        nlohmann::json assignment = nlohmann::json::array();
        for (int p : vertical->assignment) {
            assignment.push_back(p + 1); // 1-based on disk
        }
        doc["assignment"] = std::move(assignment);
    }
    return doc;
}

inline std::string serialize_plan(const PlanDocument& document) {
    std::ostringstream out;
    out << "plan strategy=" << to_string(document.strategy)
        << " partitions=" << document.partitions();
    if (document.seed) {
        out << " seed=" << *document.seed;
    }
    out << "\n";
    auto write_rows = [&out](const char* type, const std::vector<std::vector<int>>& rows) {
        int id = 1;
        for (const auto& row : rows) {
            out << type << " " << id++;
            for (int v : row) {
                out << " " << v;
            }
            out << "\n";
        }
    };
    if (const auto* data = std::get_if<DataPlan>(&document.plan)) {
        write_rows("heights", data->heights);
    } else if (const auto* horizontal = std::get_if<HorizontalPlan>(&document.plan)) {
        write_rows("neurons", horizontal->neuron_counts);
        write_rows("channels", horizontal->channel_counts);
    } else if (const auto* sequential = std::get_if<SequentialPlan>(&document.plan)) {
        for (const auto& [first, last] : sequential->groups) {
            out << "group " << first << " " << last << "\n";
        }
    } else if (const auto* vertical = std::get_if<VerticalPlan>(&document.plan)) {
        out << "assign";
        for (int p : vertical->assignment) {
            out << " " << p + 1;
        }
        out << "\n";
    }
    return out.str();
}

namespace detail {

inline void check_vector_table(const std::vector<std::vector<int>>& rows, int partitions,
                               const char* what) {
    if (rows.empty()) {
        throw validation_error(std::string("plan document has no ") + what + " records");
    }
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != partitions) {
            throw validation_error(std::string(what) +
                                   " record width does not match the partition count");
        }
    }
}

} // namespace detail

inline PlanDocument plan_from_json(const nlohmann::json& doc) {
    PlanDocument document;
    document.strategy = strategy_from_string(detail::json_get<std::string>(doc, "strategy"));
    const int partitions = detail::json_get<int>(doc, "partitions");
    if (partitions < 1) {
        throw validation_error("plan must have at least one partition");
    }
    if (doc.contains("seed")) {
        document.seed = doc.at("seed").get<std::uint64_t>();
    }
    switch (document.strategy) {
    case Strategy::data: {
        DataPlan plan;
        plan.partitions = partitions;
        plan.heights = detail::json_get<std::vector<std::vector<int>>>(doc, "heights");
        detail::check_vector_table(plan.heights, partitions, "heights");
        document.plan = std::move(plan);
        break;
    }
    case Strategy::horizontal: {
        HorizontalPlan plan;
        plan.partitions = partitions;
        plan.neuron_counts = detail::json_get<std::vector<std::vector<int>>>(doc, "neurons");
        plan.channel_counts = detail::json_get<std::vector<std::vector<int>>>(doc, "channels");
        detail::check_vector_table(plan.neuron_counts, partitions, "neurons");
        detail::check_vector_table(plan.channel_counts, partitions, "channels");
        document.plan = std::move(plan);
        break;
    }
    case Strategy::sequential: {
        SequentialPlan plan;
        plan.partitions = partitions;
        for (const auto& pair : detail::json_get<std::vector<std::vector<int>>>(doc, "groups")) {
            if (pair.size() != 2) {
                throw validation_error("sequential plan groups must be [first, last] pairs");
            }
            plan.groups.emplace_back(pair[0], pair[1]);
        }
        document.plan = std::move(plan);
        break;
    }
    case Strategy::vertical: {
        VerticalPlan plan;
        plan.partitions = partitions;
        for (int p : detail::json_get<std::vector<int>>(doc, "assignment")) {
            plan.assignment.push_back(p - 1);
        }
        document.plan = std::move(plan);
        break;
    }
    }
    return document;
}

/**
 * @brief Parses a plan document, line-oriented or JSON.
 *
 * Only internal consistency is checked here; conservation against a model
 * happens in validate_plan when the plan is used.
 */
inline PlanDocument parse_plan(const std::string& text) {
    if (detail::looks_like_json(text)) {
        return plan_from_json(detail::parse_json(text));
    }
    std::optional<Strategy> strategy;
    std::optional<std::uint64_t> seed;
    int partitions = 0;
    std::vector<std::vector<int>> heights;
    std::vector<std::vector<int>> neurons;
    std::vector<std::vector<int>> channels;
    std::vector<std::pair<int, int>> groups;
    std::vector<int> assignment;

    auto read_row = [](const detail::Record& record, std::vector<std::vector<int>>& rows) {
        if (record.tokens.size() < 2) {
            throw parse_error("record needs a layer id and at least one value", record.line);
        }
        const int id = static_cast<int>(detail::to_int(record.tokens.front(), record.line));
        if (id != static_cast<int>(rows.size()) + 1) {
            throw parse_error("layer records must appear in id order; expected " +
                                  std::to_string(rows.size() + 1),
                              record.line);
        }
        std::vector<int> row;
        for (std::size_t t = 1; t < record.tokens.size(); ++t) {
            row.push_back(static_cast<int>(detail::to_int(record.tokens[t], record.line)));
        }
        rows.push_back(std::move(row));
    };

    for (const detail::Record& record : detail::tokenize(text)) {
        if (record.type == "plan") {
            const detail::FieldMap fields(record);
            try {
                strategy = strategy_from_string(fields.require("strategy"));
            } catch (const validation_error& e) {
                throw parse_error(e.what(), record.line);
            }
            partitions = static_cast<int>(detail::to_int(fields.require("partitions"), record.line));
            if (partitions < 1) {
                throw parse_error("plan must have at least one partition", record.line);
            }
            if (auto s = fields.get("seed")) {
                seed = static_cast<std::uint64_t>(detail::to_int(*s, record.line));
            }
        } else if (record.type == "heights") {
            read_row(record, heights);
        } else if (record.type == "neurons") {
            read_row(record, neurons);
        } else if (record.type == "channels") {
            read_row(record, channels);
        } else if (record.type == "group") {
            if (record.tokens.size() != 2) {
                throw parse_error("group record needs exactly first and last layer ids", record.line);
            }
            groups.emplace_back(static_cast<int>(detail::to_int(record.tokens[0], record.line)),
                                static_cast<int>(detail::to_int(record.tokens[1], record.line)));
        } else if (record.type == "assign") {
            for (const std::string& token : record.tokens) {
                assignment.push_back(static_cast<int>(detail::to_int(token, record.line)) - 1);
            }
        } else {
            throw parse_error("unknown record type '" + record.type + "'", record.line);
        }
    }
    if (!strategy) {
        throw parse_error("plan document has no plan header", 1);
    }

    PlanDocument document;
    document.strategy = *strategy;
    document.seed = seed;
    switch (*strategy) {
    case Strategy::data: {
        detail::check_vector_table(heights, partitions, "heights");
        document.plan = DataPlan{partitions, std::move(heights)};
        break;
    }
    case Strategy::horizontal: {
        detail::check_vector_table(neurons, partitions, "neurons");
        detail::check_vector_table(channels, partitions, "channels");
        document.plan = HorizontalPlan{partitions, std::move(neurons), std::move(channels)};
        break;
    }
    case Strategy::sequential: {
        if (groups.empty()) {
            throw validation_error("sequential plan document has no group records");
        }
        document.plan = SequentialPlan{partitions, std::move(groups)};
        break;
    }
    case Strategy::vertical: {
        if (assignment.empty()) {
            throw validation_error("vertical plan document has no assign record");
        }
        document.plan = VerticalPlan{partitions, std::move(assignment)};
        break;
    }
    }
    return document;
}

} // namespace edgepart

// Named experiment presets and the flat key/value config format.
//
// Config files are plain "key = value" lines; '#' starts a comment. Keys
// mirror ExperimentConfig fields (see README for the schema). Every reference
// experiment ships as a preset that a file can override key by key.
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgelighter/experiments.hpp"

namespace edgelighter {

inline ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    if (name == "er-reference") {
        cfg.model = ExperimentConfig::Model::er;
        cfg.n_values = {49, 100, 144, 225, 324, 729};
        cfg.p = 0.5;
        cfg.q_on_to_off = cfg.q_off_to_on = 0.5;
        cfg.reference_cadence = true;
        cfg.replicates = 5;
        cfg.init = SgmInit::identity;
        cfg.stop_after_detection = true;
    } else if (name == "er-ci") {
        cfg.model = ExperimentConfig::Model::er;
        cfg.n_values = {49, 100, 144, 225};
        cfg.p = 0.5;
        cfg.q_on_to_off = cfg.q_off_to_on = 0.5;
        cfg.replicates = 5;
        cfg.init = SgmInit::identity;
        cfg.stop_after_detection = true;
    } else if (name == "sbm-reference") {
        cfg.model = ExperimentConfig::Model::sbm;
        cfg.n_values = {81, 256, 625};
        cfg.q_on_to_off = cfg.q_off_to_on = 0.5;
        cfg.reference_cadence = true;
        cfg.replicates = 5;
        cfg.init = SgmInit::identity;
        cfg.stop_after_detection = true;
    } else if (name == "sbm-ci") {
        cfg.model = ExperimentConfig::Model::sbm;
        cfg.n_values = {81, 256};
        cfg.q_on_to_off = cfg.q_off_to_on = 0.5;
        cfg.replicates = 5;
        cfg.init = SgmInit::identity;
        cfg.stop_after_detection = true;
    } else if (name == "facebook") {
        // Friendship subnetwork run: standard walk, matching every 150 steps.
        cfg.model = ExperimentConfig::Model::loaded;
        cfg.walk_kind = WalkKind::standard;
        cfg.q_on_to_off = cfg.q_off_to_on = 0.5;
        cfg.steps = 900000;
        cfg.cadence = 150;
        cfg.replicates = 1;
        cfg.init = SgmInit::identity;
    } else if (name == "eu-email") {
        // Email network run: departments as communities, matching every 220 steps.
        cfg.model = ExperimentConfig::Model::loaded;
        cfg.walk_kind = WalkKind::block;
        cfg.q_on_to_off = cfg.q_off_to_on = 0.5;
        cfg.steps = 900000;
        cfg.cadence = 220;
        cfg.replicates = 1;
        cfg.init = SgmInit::identity;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return cfg;
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a != std::string::npos) items.push_back(item.substr(a, b - a + 1));
    }
    return items;
}

}  // namespace detail

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error("config: malformed line " + std::to_string(line_no));
            continue;
        }
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            std::size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config: empty key at line " + std::to_string(line_no));
        kv[key] = value;
    }
    return kv;
}

inline void apply_config_overrides(ExperimentConfig& cfg,
                                   const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        try {
            if (key == "model") {
                if (value == "er")
                    cfg.model = ExperimentConfig::Model::er;
                else if (value == "sbm")
                    cfg.model = ExperimentConfig::Model::sbm;
                else if (value == "loaded")
                    cfg.model = ExperimentConfig::Model::loaded;
                else
                    throw std::runtime_error("bad model");
            } else if (key == "name") {
                cfg.name = value;
            } else if (key == "n_values") {
                cfg.n_values.clear();
                for (const std::string& item : detail::split_list(value))
                    cfg.n_values.push_back(std::stoi(item));
            } else if (key == "p") {
                cfg.p = std::stod(value);
            } else if (key == "q_on_to_off" || key == "q1") {
                cfg.q_on_to_off = std::stod(value);
            } else if (key == "q_off_to_on" || key == "q2") {
                cfg.q_off_to_on = std::stod(value);
            } else if (key == "walk") {
                if (value == "standard")
                    cfg.walk_kind = WalkKind::standard;
                else if (value == "block")
                    cfg.walk_kind = WalkKind::block;
                else
                    throw std::runtime_error("bad walk kind");
            } else if (key == "steps") {
                cfg.steps = std::stoll(value);
            } else if (key == "cadence") {
                cfg.cadence = std::stoll(value);
            } else if (key == "seed_fraction") {
                cfg.seed_fraction = std::stod(value);
            } else if (key == "betas") {
                cfg.betas.clear();
                for (const std::string& item : detail::split_list(value))
                    cfg.betas.push_back(std::stod(item));
            } else if (key == "persistence") {
                cfg.persistence = std::stoi(value);
            } else if (key == "replicates") {
                cfg.replicates = std::stoi(value);
            } else if (key == "init") {
                if (value == "identity")
                    cfg.init = SgmInit::identity;
                else if (value == "barycenter")
                    cfg.init = SgmInit::barycenter;
                else if (value == "random")
                    cfg.init = SgmInit::random;
                else
                    throw std::runtime_error("bad init");
            } else if (key == "max_iterations") {
                cfg.max_iterations = std::stoi(value);
            } else if (key == "tolerance") {
                cfg.tolerance = std::stod(value);
            } else if (key == "seed") {
                cfg.master_seed = std::stoull(value);
            } else if (key == "threads") {
                cfg.threads = std::stoi(value);
            } else if (key == "stop_after_detection") {
                cfg.stop_after_detection = (value == "true" || value == "1");
            } else if (key == "reference_cadence") {
                cfg.reference_cadence = (value == "true" || value == "1");
            } else {
                throw std::runtime_error("unknown key");
            }
        } catch (const std::exception&) {
            throw std::runtime_error("config: bad entry '" + key + " = " + value + "'");
        }
    }
    cfg.validate();
}

}  // namespace edgelighter

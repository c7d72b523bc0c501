#pragma once

#include "rearrange/model.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace rearrange {

class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PlanStats {
    std::size_t actions = 0;
    double time_s = 0.0;
    std::uint64_t collision_checks = 0;
};

nlohmann::json instance_to_json(const Instance &inst);
Instance instance_from_json(const nlohmann::json &j);

nlohmann::json plan_to_json(const Plan &plan, const PlanStats &stats);
Plan plan_from_json(const nlohmann::json &j, PlanStats *stats = nullptr);

nlohmann::json read_json_file(const std::filesystem::path &path);
void write_json_file(const std::filesystem::path &path, const nlohmann::json &j);

Instance load_instance(const std::filesystem::path &path);
void save_instance(const std::filesystem::path &path, const Instance &inst);

} // namespace rearrange

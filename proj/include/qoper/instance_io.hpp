#pragma once

#include <json.hpp>
#include <optional>

#include "qoper/qq.hpp"

namespace qoper {

inline constexpr int kInstanceVersion = 1;
inline constexpr int kReportVersion = 1;

struct InstanceFile {
  QQInstance inst;
  std::optional<QQSolution> solution;
};

// strict: unknown keys, wrong shapes and invalid data raise InputError with the key path
InstanceFile parse_instance(const nlohmann::json& j);
InstanceFile load_instance(const std::string& path);
nlohmann::json serialize_instance(const InstanceFile& f);

nlohmann::json complex_json(Scalar z);
Scalar complex_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json poly_json(const CPoly& p);
CPoly poly_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace qoper

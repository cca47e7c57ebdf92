#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "takagi/levelsets.hpp"

namespace takagi {

/// Rendering options shared by the JSON/CSV writers. Rationals always appear
/// as exact "p/q" strings; `decimals` adds truncated decimal companions.
struct SerializeOptions {
    std::optional<unsigned> decimals;
};

nlohmann::json json_rational(const Rational& r, const SerializeOptions& so = {});
nlohmann::json json_interval(const RatInterval& iv, const SerializeOptions& so = {});
nlohmann::json json_hump(const Hump& h, const SerializeOptions& so = {});
nlohmann::json json_spine_point(const SpinePoint& p, const SerializeOptions& so = {});
nlohmann::json json_level_report(const LevelSetReport& rep, const SerializeOptions& so = {});
nlohmann::json json_local_record(const LocalClassRecord& rec, const SerializeOptions& so = {});
nlohmann::json json_local_set(const LocalLevelSet& set, const SerializeOptions& so = {});
nlohmann::json json_classification(const ClassificationReport& rep, const SerializeOptions& so = {});

std::string csv_humps(const std::vector<Hump>& humps);
std::string csv_brackets(const LevelSetReport& rep);

}  // namespace takagi

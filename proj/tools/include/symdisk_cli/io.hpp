#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "symdisk/linalg.hpp"
#include "symdisk/pick.hpp"
#include "symdisk/realization.hpp"

namespace symdisk::cli {

using nlohmann::json;

/// Throws InputError naming the first key of `obj` outside `allowed`.
void require_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view context);

Complex parse_complex(const json& j);
json complex_json(Complex z);

/// {"rows": [[{"re":..,"im":..}, ...], ...]}
ComplexMatrix parse_matrix(const json& j);
json matrix_json(const ComplexMatrix& m);

GammaPoint parse_point(const json& j);
json point_json(const GammaPoint& x);

/// {"nodes": [{"s":..,"p":..}], "targets": [..]}
PickData parse_pick_data(const json& j);

/// {"tau", "A", "B", "C", "D"} as matrices.
RealizationModel parse_model(const json& j);
json model_json(const RealizationModel& m);

json read_json_file(const std::filesystem::path& path);

/// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// 17 significant digits.
std::string csv_number(double v);

}  // namespace symdisk::cli

#include "symdisk_cli/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "symdisk/errors.hpp"

namespace symdisk::cli {

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view context) {
    if (!obj.is_object()) throw InputError(std::string(context) + ": expected a JSON object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw InputError(std::string(context) + ": unknown key \"" + key + "\"");
    }
}

Complex parse_complex(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    require_keys(j, {"re", "im"}, "complex number");
    const auto part = [&](const char* name) {
        if (!j.contains(name)) return 0.0;
        if (!j.at(name).is_number()) throw InputError(std::string("complex number: \"") + name + "\" is not a number");
        return j.at(name).get<double>();
    };
    if (!j.contains("re") && !j.contains("im")) throw InputError("complex number: needs \"re\" or \"im\"");
    return {part("re"), part("im")};
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

ComplexMatrix parse_matrix(const json& j) {
    require_keys(j, {"rows"}, "matrix");
    if (!j.contains("rows") || !j.at("rows").is_array()) throw InputError("matrix: \"rows\" must be an array");
    const auto& rows = j.at("rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) throw InputError("matrix: no rows");
    if (!rows[0].is_array()) throw InputError("matrix: each row must be an array");
    const auto m = static_cast<Eigen::Index>(rows[0].size());
    ComplexMatrix out(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) throw InputError("matrix: ragged rows");
        for (Eigen::Index c = 0; c < m; ++c) out(i, c) = parse_complex(row[static_cast<std::size_t>(c)]);
    }
    if (!out.allFinite()) throw InputError("matrix: non-finite entry");
    return out;
}

json matrix_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(i, c)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", rows}};
}

GammaPoint parse_point(const json& j) {
    require_keys(j, {"s", "p"}, "node");
    if (!j.contains("s") || !j.contains("p")) throw InputError("node: needs \"s\" and \"p\"");
    return {parse_complex(j.at("s")), parse_complex(j.at("p"))};
}

json point_json(const GammaPoint& x) { return json{{"s", complex_json(x.s)}, {"p", complex_json(x.p)}}; }

PickData parse_pick_data(const json& j) {
    require_keys(j, {"nodes", "targets"}, "pick data");
    if (!j.contains("nodes") || !j.at("nodes").is_array() || !j.contains("targets") || !j.at("targets").is_array())
        throw InputError("pick data: \"nodes\" and \"targets\" arrays are required");
    PickData d;
    for (const auto& n : j.at("nodes")) d.nodes.push_back(parse_point(n));
    for (const auto& t : j.at("targets")) d.targets.push_back(parse_complex(t));
    return d;
}

RealizationModel parse_model(const json& j) {
    require_keys(j, {"tau", "A", "B", "C", "D"}, "realization model");
    for (const char* k : {"tau", "A", "B", "C", "D"})
        if (!j.contains(k)) throw InputError(std::string("realization model: missing \"") + k + "\"");
    return {parse_matrix(j.at("tau")), parse_matrix(j.at("A")), parse_matrix(j.at("B")), parse_matrix(j.at("C")),
            parse_matrix(j.at("D"))};
}

json model_json(const RealizationModel& m) {
    return json{{"tau", matrix_json(m.tau)}, {"A", matrix_json(m.A)}, {"B", matrix_json(m.B)},
                {"C", matrix_json(m.C)},     {"D", matrix_json(m.D)}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InputError("cannot move output into " + path.string() + ": " + ec.message());
    }
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace symdisk::cli

#include "cosy/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cosy {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

InstanceDocument to_document(const SubmanifoldPoint& pt, std::optional<std::uint64_t> seed) {
    InstanceDocument doc;
    doc.m = pt.ambient.m;
    doc.c = pt.ambient.c;
    doc.tangent_frame = pt.tangent_frame;
    doc.normal_frame = pt.normal_frame;
    doc.h = pt.shape;
    doc.geometric_mode = pt.geometric_mode;
    doc.seed = seed;
    return doc;
}

SubmanifoldPoint from_document(const InstanceDocument& doc) {
    if (doc.schema_version != kSchemaVersion)
        throw ValidationError("schema_version: unsupported value (expected " +
                              std::to_string(kSchemaVersion) + ")");
    return make_submanifold_point(make_standard_structure(doc.m, doc.c), doc.tangent_frame,
                                  doc.normal_frame, doc.h, doc.geometric_mode);
}

namespace {

void write_vector(std::ostringstream& out, const Vec& v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << format_double(v[i]);
    }
    out << ']';
}

void write_frame(std::ostringstream& out, const std::vector<Vec>& frame, const char* indent) {
    out << "[\n";
    for (std::size_t i = 0; i < frame.size(); ++i) {
        out << indent;
        write_vector(out, frame[i]);
        out << (i + 1 < frame.size() ? ",\n" : "\n");
    }
    out << "  ]";
}

}  // namespace

std::string serialize_document(const InstanceDocument& doc) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"schema_version\": " << doc.schema_version << ",\n";
    out << "  \"ambient\": {\"m\": " << doc.m << ", \"c\": " << format_double(doc.c) << "},\n";
    out << "  \"tangent_frame\": ";
    write_frame(out, doc.tangent_frame, "    ");
    out << ",\n  \"normal_frame\": ";
    write_frame(out, doc.normal_frame, "    ");
    out << ",\n  \"h\": [\n";
    for (std::size_t r = 0; r < doc.h.size(); ++r) {
        out << "    [\n";
        for (int i = 0; i < doc.h[r].rows(); ++i) {
            Vec row(doc.h[r].cols());
            for (int j = 0; j < doc.h[r].cols(); ++j) row[j] = doc.h[r](i, j);
            out << "      ";
            write_vector(out, row);
            out << (i + 1 < doc.h[r].rows() ? ",\n" : "\n");
        }
        out << (r + 1 < doc.h.size() ? "    ],\n" : "    ]\n");
    }
    out << "  ],\n";
    out << "  \"geometric_mode\": " << (doc.geometric_mode ? "true" : "false");
    if (doc.seed) out << ",\n  \"seed\": " << *doc.seed;
    out << "\n}\n";
    return out.str();
}

namespace {

const json& require_field(const json& node, const char* key, const std::string& path) {
    const auto it = node.find(key);
    if (it == node.end()) throw ValidationError(path + ": missing field");
    return *it;
}

double number_at(const json& node, const std::string& path) {
    if (!node.is_number()) throw ValidationError(path + ": expected a number");
    return node.get<double>();
}

std::vector<Vec> frame_at_path(const json& node, const std::string& path) {
    if (!node.is_array()) throw ValidationError(path + ": expected an array of vectors");
    std::vector<Vec> frame;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const json& row = node[i];
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!row.is_array()) throw ValidationError(row_path + ": expected an array");
        Vec v;
        for (std::size_t j = 0; j < row.size(); ++j)
            v.push_back(number_at(row[j], row_path + "[" + std::to_string(j) + "]"));
        frame.push_back(std::move(v));
    }
    return frame;
}

}  // namespace

InstanceDocument parse_document(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("document is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ValidationError("document root must be an object");

    InstanceDocument doc;
    const json& version = require_field(root, "schema_version", "schema_version");
    if (!version.is_number_integer())
        throw ValidationError("schema_version: expected an integer");
    doc.schema_version = version.get<int>();
    if (doc.schema_version != kSchemaVersion)
        throw ValidationError("schema_version: unsupported value (expected " +
                              std::to_string(kSchemaVersion) + ")");

    const json& ambient = require_field(root, "ambient", "ambient");
    if (!ambient.is_object()) throw ValidationError("ambient: expected an object");
    const json& m_node = require_field(ambient, "m", "ambient.m");
    if (!m_node.is_number_integer() || m_node.get<int>() < 1)
        throw ValidationError("ambient.m: expected a positive integer");
    doc.m = m_node.get<int>();
    doc.c = number_at(require_field(ambient, "c", "ambient.c"), "ambient.c");

    doc.tangent_frame = frame_at_path(require_field(root, "tangent_frame", "tangent_frame"),
                                      "tangent_frame");
    doc.normal_frame = frame_at_path(require_field(root, "normal_frame", "normal_frame"),
                                     "normal_frame");

    const int d = 2 * doc.m + 1;
    for (std::size_t i = 0; i < doc.tangent_frame.size(); ++i)
        if (static_cast<int>(doc.tangent_frame[i].size()) != d)
            throw ValidationError("tangent_frame[" + std::to_string(i) +
                                  "]: wrong length for ambient dimension " + std::to_string(d));
    for (std::size_t i = 0; i < doc.normal_frame.size(); ++i)
        if (static_cast<int>(doc.normal_frame[i].size()) != d)
            throw ValidationError("normal_frame[" + std::to_string(i) +
                                  "]: wrong length for ambient dimension " + std::to_string(d));

    const json& h_node = require_field(root, "h", "h");
    if (!h_node.is_array()) throw ValidationError("h: expected an array");
    const int nt = static_cast<int>(doc.tangent_frame.size());
    for (std::size_t r = 0; r < h_node.size(); ++r) {
        const std::string r_path = "h[" + std::to_string(r) + "]";
        const std::vector<Vec> rows = frame_at_path(h_node[r], r_path);
        if (static_cast<int>(rows.size()) != nt)
            throw ValidationError(r_path + ": expected " + std::to_string(nt) + " rows");
        Matrix a(nt, nt);
        for (int i = 0; i < nt; ++i) {
            if (static_cast<int>(rows[i].size()) != nt)
                throw ValidationError(r_path + "[" + std::to_string(i) + "]: expected " +
                                      std::to_string(nt) + " entries");
            for (int j = 0; j < nt; ++j) a(i, j) = rows[i][j];
        }
        if (!a.all_finite()) throw ValidationError(r_path + ": non-finite entry");
        for (int i = 0; i < nt; ++i)
            for (int j = i + 1; j < nt; ++j)
                if (a(i, j) != a(j, i))
                    throw ValidationError("h[" + std::to_string(r) + "][" + std::to_string(i) +
                                          "][" + std::to_string(j) + "]: breaks symmetry");
        doc.h.push_back(std::move(a));
    }

    const json& mode = require_field(root, "geometric_mode", "geometric_mode");
    if (!mode.is_boolean()) throw ValidationError("geometric_mode: expected a boolean");
    doc.geometric_mode = mode.get<bool>();

    if (root.contains("seed")) {
        const json& seed = root["seed"];
        if (!seed.is_number_unsigned()) throw ValidationError("seed: expected a non-negative integer");
        doc.seed = seed.get<std::uint64_t>();
    }
    return doc;
}

InstanceDocument load_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

void save_document_file(const InstanceDocument& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write instance file: " + path);
    out << serialize_document(doc);
}

}  // namespace cosy

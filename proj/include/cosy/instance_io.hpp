#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cosy/submanifold.hpp"

namespace cosy {

inline constexpr int kSchemaVersion = 1;

/// Serializable form of a SubmanifoldPoint. Deserialization validates every
/// structural rule and reports the offending field path; construction then
/// runs the full SubmanifoldPoint validation.
struct InstanceDocument {
    int schema_version = kSchemaVersion;
    int m = 0;
    double c = 0.0;
    std::vector<Vec> tangent_frame;
    std::vector<Vec> normal_frame;
    std::vector<Matrix> h;
    bool geometric_mode = true;
    std::optional<std::uint64_t> seed;
};

InstanceDocument to_document(const SubmanifoldPoint& pt,
                             std::optional<std::uint64_t> seed = std::nullopt);
SubmanifoldPoint from_document(const InstanceDocument& doc);

/// JSON text with numbers written to 17 significant digits so documents
/// round-trip bit-faithfully.
std::string serialize_document(const InstanceDocument& doc);

/// Parse and structurally validate; errors carry the JSON field path
/// (for example "h[0][1][2]").
InstanceDocument parse_document(const std::string& text);

InstanceDocument load_document_file(const std::string& path);
void save_document_file(const InstanceDocument& doc, const std::string& path);

/// Decimal form with 17 significant digits (the serialization used in
/// documents and CSV output).
std::string format_double(double x);

}  // namespace cosy

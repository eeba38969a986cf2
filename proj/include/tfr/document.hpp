#pragma once

#include "tfr/mcomplex.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace tfr {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct Document {
    int schema_version = kSchemaVersion;
    RawComplex raw;
    /// prime reference (alias or canonical id) -> coefficient
    std::map<std::string, Rat> boundary;
};

/// ParseError naming the offending field (with line:column for malformed JSON)
Document parse_document(const std::string& text);
Json document_json(const Document& doc);
std::string write_document(const Document& doc);

/// UnknownConeId for references the complex cannot resolve
std::map<std::size_t, Rat> resolve_boundary(const MonoidalComplex& mc, const std::map<std::string, Rat>& refs);

/// 64-bit FNV-1a, as 16 hex digits
std::string fnv1a(const std::string& bytes);

}  // namespace tfr

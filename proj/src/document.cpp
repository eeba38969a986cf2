#include "tfr/document.hpp"

#include <cstdio>

namespace tfr {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw Error("ParseError", "field '" + field + "': " + what);
}

Int read_int(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<unsigned long long>())) : Int(std::to_string(j.get<long long>()));
    if (j.is_number_float()) fail(field, "decimal numbers are not allowed, use integers");
    if (j.is_string()) {
        try {
            return parse_integer(j.get<std::string>());
        } catch (const Error& e) {
            fail(field, e.what());
        }
    }
    fail(field, "expected an integer");
}

Rat read_rat(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rat(read_int(j, field));
    if (j.is_number_float()) fail(field, "decimal numbers are not allowed, use \"p/q\"");
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            fail(field, e.what());
        }
    }
    fail(field, "expected a rational \"p/q\"");
}

Mat read_mat(const Json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "expected a list of integer vectors");
    Mat m;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string f = field + "[" + std::to_string(i) + "]";
        if (!j[i].is_array()) fail(f, "expected an integer vector");
        Vec v;
        for (std::size_t k = 0; k < j[i].size(); ++k) v.push_back(read_int(j[i][k], f + "[" + std::to_string(k) + "]"));
        m.push_back(v);
    }
    return m;
}

std::vector<RawCone> read_cones(const Json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "expected a list of cones");
    std::vector<RawCone> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string f = field + "[" + std::to_string(i) + "]";
        if (!j[i].is_object()) fail(f, "expected {\"id\", \"generators\"}");
        if (!j[i].contains("id") || !j[i]["id"].is_string()) fail(f + ".id", "expected a string");
        if (!j[i].contains("generators")) fail(f + ".generators", "missing");
        out.push_back({j[i]["id"].get<std::string>(), read_mat(j[i]["generators"], f + ".generators")});
    }
    return out;
}

std::map<std::string, Mat> read_table(const Json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "expected an object keyed by cone id");
    std::map<std::string, Mat> out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = read_mat(it.value(), field + "." + it.key());
    return out;
}

Json mat_json(const Mat& m) {
    Json a = Json::array();
    for (const auto& v : m) {
        Json row = Json::array();
        for (const auto& x : v) {
            if (x.fits_slong_p())
                row.push_back(x.get_si());
            else
                row.push_back(x.get_str());
        }
        a.push_back(row);
    }
    return a;
}

}  // namespace

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error("ParseError", "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object()) fail("<root>", "expected an object");
    Document doc;
    if (j.contains("schema_version")) {
        Int v = read_int(j["schema_version"], "schema_version");
        if (v != kSchemaVersion) fail("schema_version", "unsupported version " + v.get_str());
    }
    if (!j.contains("lattice_rank")) fail("lattice_rank", "missing");
    Int rank = read_int(j["lattice_rank"], "lattice_rank");
    if (rank < 0 || !rank.fits_ulong_p()) fail("lattice_rank", "out of range");
    doc.raw.rank = rank.get_ui();
    if (j.contains("characteristic")) {
        Int p = read_int(j["characteristic"], "characteristic");
        if (p < 0 || !p.fits_ulong_p()) fail("characteristic", "out of range");
        doc.raw.characteristic = p.get_ui();
    }
    std::string mode = "lattice_family";
    if (j.contains("mode")) {
        if (!j["mode"].is_string()) fail("mode", "expected \"generators\" or \"lattice_family\"");
        mode = j["mode"].get<std::string>();
    }
    if (mode == "generators")
        doc.raw.mode = SemigroupMode::Generators;
    else if (mode == "lattice_family")
        doc.raw.mode = SemigroupMode::LatticeFamily;
    else
        fail("mode", "expected \"generators\" or \"lattice_family\", got \"" + mode + "\"");
    if (!j.contains("maximal_cones")) fail("maximal_cones", "missing");
    doc.raw.maximal_cones = read_cones(j["maximal_cones"], "maximal_cones");
    if (j.contains("faces")) doc.raw.faces = read_cones(j["faces"], "faces");
    if (j.contains("lattices")) doc.raw.lattices = read_table(j["lattices"], "lattices");
    if (j.contains("semigroups")) doc.raw.semigroups = read_table(j["semigroups"], "semigroups");
    if (j.contains("boundary")) {
        const Json& b = j["boundary"];
        if (!b.is_object()) fail("boundary", "expected an object keyed by prime id");
        for (auto it = b.begin(); it != b.end(); ++it) doc.boundary[it.key()] = read_rat(it.value(), "boundary." + it.key());
    }
    return doc;
}

Json document_json(const Document& doc) {
    Json j;
    j["schema_version"] = doc.schema_version;
    j["lattice_rank"] = doc.raw.rank;
    j["characteristic"] = doc.raw.characteristic;
    j["mode"] = doc.raw.mode == SemigroupMode::Generators ? "generators" : "lattice_family";
    auto cones = [](const std::vector<RawCone>& cs) {
        Json a = Json::array();
        for (const auto& c : cs) a.push_back(Json{{"id", c.id}, {"generators", mat_json(c.generators)}});
        return a;
    };
    j["maximal_cones"] = cones(doc.raw.maximal_cones);
    if (!doc.raw.faces.empty()) j["faces"] = cones(doc.raw.faces);
    auto table = [](const std::map<std::string, Mat>& t) {
        Json o = Json::object();
        for (const auto& [k, m] : t) o[k] = mat_json(m);
        return o;
    };
    if (doc.raw.mode == SemigroupMode::Generators)
        j["semigroups"] = table(doc.raw.semigroups);
    else if (!doc.raw.lattices.empty())
        j["lattices"] = table(doc.raw.lattices);
    if (!doc.boundary.empty()) {
        Json b = Json::object();
        for (const auto& [k, v] : doc.boundary) b[k] = str(v);
        j["boundary"] = b;
    }
    return j;
}

std::string write_document(const Document& doc) { return document_json(doc).dump(2) + "\n"; }

std::map<std::size_t, Rat> resolve_boundary(const MonoidalComplex& mc, const std::map<std::string, Rat>& refs) {
    std::map<std::size_t, Rat> out;
    for (const auto& [ref, v] : refs) {
        auto i = mc.resolve(ref);
        if (!i) throw Error("UnknownConeId", "boundary prime '" + ref + "' is not a cone of the fan");
        out[*i] = v;
    }
    return out;
}

std::string fnv1a(const std::string& bytes) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

}  // namespace tfr

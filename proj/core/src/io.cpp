#include "mdpc/io.hpp"

#include <fstream>

#include <json.hpp>

#include "mdpc/errors.hpp"
#include "mdpc/version.hpp"

namespace mdpc {

using nlohmann::json;

namespace {

json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError(path + ": expected a JSON object");
    return j;
}

void store(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::uint32_t get_u32(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw ValidationError(path + ": missing or non-integer \"" + key + "\"");
    auto v = j[key].get<std::uint64_t>();
    if (v > 0xffffffffull) throw ValidationError(path + ": \"" + key + "\" out of range");
    return static_cast<std::uint32_t>(v);
}

std::vector<std::uint32_t> get_support(const json& arr, const std::string& what) {
    if (!arr.is_array()) throw ValidationError(what + ": expected an array");
    std::vector<std::uint32_t> out;
    out.reserve(arr.size());
    for (const auto& e : arr) {
        if (!e.is_number_unsigned()) throw ValidationError(what + ": non-integer entry");
        auto v = e.get<std::uint64_t>();
        if (v > 0xffffffffull) throw ValidationError(what + ": entry out of range");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

}  // namespace

SparseBinaryMatrix read_matrix(const std::string& path) {
    json j = load(path);
    const auto rows = get_u32(j, "rows", path);
    const auto cols = get_u32(j, "cols", path);
    if (!j.contains("row_supports") || !j["row_supports"].is_array())
        throw ValidationError(path + ": missing \"row_supports\" array");
    std::vector<std::vector<std::uint32_t>> supports;
    supports.reserve(j["row_supports"].size());
    for (const auto& r : j["row_supports"]) supports.push_back(get_support(r, path + " row"));
    try {
        return SparseBinaryMatrix(rows, cols, std::move(supports));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_matrix(const SparseBinaryMatrix& m, const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["row_supports"] = m.row_supports();
    store(j, path);
}

QcMdpcKey read_qc_key(const std::string& path) {
    json j = load(path);
    QcMdpcKey key;
    key.block_size = get_u32(j, "p", path);
    if (!j.contains("h0") || !j.contains("h1"))
        throw ValidationError(path + ": missing \"h0\" or \"h1\"");
    key.h0 = get_support(j["h0"], path + " h0");
    key.h1 = get_support(j["h1"], path + " h1");
    try {
        key.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return key;
}

void write_qc_key(const QcMdpcKey& key, const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["p"] = key.block_size;
    j["h0"] = key.h0;
    j["h1"] = key.h1;
    store(j, path);
}

BinaryWord read_word(const std::string& path) {
    json j = load(path);
    const auto length = get_u32(j, "length", path);
    if (!j.contains("support"))
        throw ValidationError(path + ": missing \"support\"");
    auto support = get_support(j["support"], path + " support");
    try {
        return BinaryWord(length, std::move(support));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_word(const BinaryWord& w, const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["length"] = w.length();
    j["support"] = w.support();
    store(j, path);
}

}  // namespace mdpc

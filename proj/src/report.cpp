#include "hml/report.hpp"

#include <cmath>
#include <cstdio>

namespace hml {

using nlohmann::ordered_json;

std::string format_double17(double v) {
    if (!std::isfinite(v)) return v > 0 ? "1e999" : (v < 0 ? "-1e999" : "0");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void write_json(std::string& out, const ordered_json& j) {
    switch (j.type()) {
        case ordered_json::value_t::null: out += "null"; break;
        case ordered_json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case ordered_json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            break;
        case ordered_json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            break;
        case ordered_json::value_t::number_float:
            out += format_double17(j.get<double>());
            break;
        case ordered_json::value_t::string: write_escaped(out, j.get<std::string>()); break;
        case ordered_json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ',';
                first = false;
                write_json(out, el);
            }
            out += ']';
            break;
        }
        case ordered_json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                write_escaped(out, it.key());
                out += ':';
                write_json(out, it.value());
            }
            out += '}';
            break;
        }
        default: out += "null";
    }
}

std::string scalar_text(const ordered_json& j) {
    if (j.is_number_float()) return format_double17(j.get<double>());
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "";
    std::string out;
    write_json(out, j);
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

void flatten(const ordered_json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), path.empty() ? it.key() : path + "/" + it.key(), rows);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& el : j) flatten(el, path + "/" + std::to_string(i++), rows);
    } else {
        rows.emplace_back(path, scalar_text(j));
    }
}

}  // namespace

std::string payload_json(const ReportDocument& doc) {
    std::string out;
    write_json(out, doc.payload);
    return out;
}

std::string to_json(const ReportDocument& doc) {
    ordered_json command = ordered_json::object();
    for (const auto& [k, v] : doc.command) command[k] = v;
    std::string out;
    out += "{\"schema\":";
    write_escaped(out, doc.schema);
    out += ",\"command\":";
    write_json(out, command);
    out += ",\"payload\":";
    write_json(out, doc.payload);
    out += ",\"provenance\":";
    write_json(out, ordered_json(doc.provenance));
    out += ",\"duration_ms\":";
    out += format_double17(doc.duration_ms);
    out += "}\n";
    return out;
}

std::string to_csv(const ReportDocument& doc) {
    std::string out;
    for (const auto& [k, v] : doc.command) out += "# " + k + " = " + v + "\n";
    const ordered_json* table = nullptr;
    for (auto it = doc.payload.begin(); it != doc.payload.end(); ++it) {
        if (it.key() == "table") {
            table = &it.value();
            continue;
        }
        if (it.value().is_object() || it.value().is_array()) continue;
        out += "# " + it.key() + " = " + scalar_text(it.value()) + "\n";
    }
    if (table && table->contains("columns") && table->contains("rows")) {
        const auto& cols = (*table)["columns"];
        bool first = true;
        for (const auto& c : cols) {
            if (!first) out += ',';
            first = false;
            out += csv_field(c.get<std::string>());
        }
        out += '\n';
        for (const auto& row : (*table)["rows"]) {
            first = true;
            for (const auto& cell : row) {
                if (!first) out += ',';
                first = false;
                out += csv_field(scalar_text(cell));
            }
            out += '\n';
        }
    } else {
        out += "key,value\n";
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(doc.payload, "", rows);
        for (const auto& [k, v] : rows) out += csv_field(k) + "," + csv_field(v) + "\n";
    }
    return out;
}

}  // namespace hml

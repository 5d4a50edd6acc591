#include "json_text.hpp"

#include <cmath>

#include "qprime/io.hpp"

namespace qprime::io {

namespace {

void indent(std::string& out, int depth) {
    out.push_back('\n');
    out.append(static_cast<std::size_t>(2 * depth), ' ');
}

void emit(const nlohmann::ordered_json& v, std::string& out, int depth) {
    switch (v.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out.push_back('{');
            bool first = true;
            for (const auto& [key, item] : v.items()) {
                if (!first) out.push_back(',');
                first = false;
                indent(out, depth + 1);
                out += nlohmann::ordered_json(key).dump();
                out += ": ";
                emit(item, out, depth + 1);
            }
            indent(out, depth);
            out.push_back('}');
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out.push_back('[');
            bool first = true;
            for (const auto& item : v) {
                if (!first) out.push_back(',');
                first = false;
                indent(out, depth + 1);
                emit(item, out, depth + 1);
            }
            indent(out, depth);
            out.push_back(']');
            return;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            const double x = v.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            return;
        }
        default:
            out += v.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& value) {
    std::string out;
    emit(value, out, 0);
    out.push_back('\n');
    return out;
}

}  // namespace qprime::io

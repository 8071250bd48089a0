#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace hscli {

std::string format_double_17(double v)
{
    if (std::isnan(v))
        return "null";
    if (std::isinf(v))
        return v > 0 ? "1e999" : "-1e999"; // out-of-range literal, parsed as inf
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Json& Json::set(const std::string& key, Json value)
{
    std::get<Object>(value_).emplace_back(key, std::move(value));
    return *this;
}

Json& Json::push(Json value)
{
    std::get<Array>(value_).push_back(std::move(value));
    return *this;
}

namespace {

void write_string(std::string& out, const std::string& s)
{
    out += '"';
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

void pad(std::string& out, int indent, int depth)
{
    if (indent > 0) {
        out += '\n';
        out.append(static_cast<std::size_t>(indent * depth), ' ');
    }
}

} // namespace

void Json::write(std::string& out, int indent, int depth) const
{
    if (std::holds_alternative<Null>(value_)) {
        out += "null";
    } else if (const bool* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (const long long* i = std::get_if<long long>(&value_)) {
        out += std::to_string(*i);
    } else if (const double* d = std::get_if<double>(&value_)) {
        out += format_double_17(*d);
    } else if (const std::string* s = std::get_if<std::string>(&value_)) {
        write_string(out, *s);
    } else if (const Object* o = std::get_if<Object>(&value_)) {
        if (o->empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [k, v] : *o) {
            if (!first)
                out += ',';
            first = false;
            pad(out, indent, depth + 1);
            write_string(out, k);
            out += indent > 0 ? ": " : ":";
            v.write(out, indent, depth + 1);
        }
        pad(out, indent, depth);
        out += '}';
    } else if (const Array* a = std::get_if<Array>(&value_)) {
        if (a->empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& v : *a) {
            if (!first)
                out += ',';
            first = false;
            pad(out, indent, depth + 1);
            v.write(out, indent, depth + 1);
        }
        pad(out, indent, depth);
        out += ']';
    }
}

std::string Json::dump(int indent) const
{
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

} // namespace hscli

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hscli {

// Small ordered JSON document builder. Numbers are emitted with 17
// significant digits so reports round-trip exactly and regression fixtures
// stay byte-stable.
class Json {
public:
    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }
    static Json number(double v) { return Json(v); }
    static Json integer(long long v) { return Json(v); }
    static Json boolean(bool v) { return Json(v); }
    static Json string(std::string v) { return Json(std::move(v)); }
    static Json null() { return Json(Null{}); }

    Json& set(const std::string& key, Json value);
    Json& push(Json value);

    std::string dump(int indent = 2) const;

private:
    struct Null {};
    using Object = std::vector<std::pair<std::string, Json>>;
    using Array = std::vector<Json>;
    using Value = std::variant<Null, bool, long long, double, std::string, Object, Array>;

    template <typename T>
    explicit Json(T v) : value_(std::move(v)) {}

    void write(std::string& out, int indent, int depth) const;

    Value value_;
};

std::string format_double_17(double v);
std::string csv_escape(const std::string& field);

} // namespace hscli

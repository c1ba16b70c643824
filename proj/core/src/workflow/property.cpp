#include "adaptopt/workflow/property.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "adaptopt/error.hpp"

namespace adaptopt {

std::string_view to_string(ValueType type) noexcept
{
    switch (type) {
    case ValueType::String: return "string";
    case ValueType::Int: return "int";
    case ValueType::Real: return "real";
    case ValueType::Bool: return "bool";
    }
    return "string";
}

std::optional<ValueType> parse_value_type(std::string_view text) noexcept
{
    if (text == "string") return ValueType::String;
    if (text == "int") return ValueType::Int;
    if (text == "real") return ValueType::Real;
    if (text == "bool") return ValueType::Bool;
    return std::nullopt;
}

Property Property::string(std::string key, std::string value)
{
    return Property { std::move(key), ValueType::String, Scalar { std::move(value) } };
}

Property Property::integer(std::string key, std::int64_t value)
{
    return Property { std::move(key), ValueType::Int, Scalar { value } };
}

Property Property::real(std::string key, double value)
{
    if (!std::isfinite(value)) {
        throw TypeError("property '" + key + "': real value must be finite");
    }
    return Property { std::move(key), ValueType::Real, Scalar { value } };
}

Property Property::boolean(std::string key, bool value)
{
    return Property { std::move(key), ValueType::Bool, Scalar { value } };
}

namespace {
    [[noreturn]] void bad_value(const std::string& key, ValueType type, std::string_view text)
    {
        throw TypeError("property '" + key + "': value '" + std::string(text) + "' is not a valid "
            + std::string(to_string(type)));
    }
} // namespace

Property Property::parse(std::string key, ValueType type, std::string_view text)
{
    const char* first = text.data();
    const char* last = text.data() + text.size();
    switch (type) {
    case ValueType::String:
        return string(std::move(key), std::string(text));
    case ValueType::Int: {
        std::int64_t v {};
        if (text.empty() || text.front() == '+') bad_value(key, type, text);
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc {} || ptr != last) bad_value(key, type, text);
        return integer(std::move(key), v);
    }
    case ValueType::Real: {
        double v {};
        if (text.empty() || text.front() == '+') bad_value(key, type, text);
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc {} || ptr != last || !std::isfinite(v)) bad_value(key, type, text);
        return real(std::move(key), v);
    }
    case ValueType::Bool:
        if (text == "true") return boolean(std::move(key), true);
        if (text == "false") return boolean(std::move(key), false);
        bad_value(key, type, text);
    }
    bad_value(key, type, text);
}

bool Property::is_consistent() const noexcept
{
    if (value.index() != static_cast<std::size_t>(type)) return false;
    if (const auto* r = as_real()) return std::isfinite(*r);
    return true;
}

std::string Property::value_text() const
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                std::array<char, 64> buf {};
                auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
                return std::string(buf.data(), ptr);
            }
        },
        value);
}

const Property* find_property(const PropertySet& set, std::string_view key) noexcept
{
    auto it = std::find_if(set.begin(), set.end(), [&](const Property& p) { return p.key == key; });
    return it == set.end() ? nullptr : &*it;
}

void upsert_property(PropertySet& set, Property property)
{
    if (property.key.empty()) {
        throw TypeError("property key must not be empty");
    }
    if (!property.is_consistent()) {
        throw TypeError("property '" + property.key + "': value does not match declared type "
            + std::string(to_string(property.type)));
    }
    auto it = std::find_if(set.begin(), set.end(), [&](const Property& p) { return p.key == property.key; });
    if (it == set.end()) {
        set.push_back(std::move(property));
    } else {
        *it = std::move(property);
    }
}

} // namespace adaptopt

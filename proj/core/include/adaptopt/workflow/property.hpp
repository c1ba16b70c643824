#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adaptopt {

// Alternatives are in the same order as ValueType.
using Scalar = std::variant<std::string, std::int64_t, double, bool>;

enum class ValueType { String, Int, Real, Bool };

std::string_view to_string(ValueType type) noexcept;
std::optional<ValueType> parse_value_type(std::string_view text) noexcept;

// A typed key/value annotation attached to an action, asset or decision.
struct Property {
    std::string key;
    ValueType type = ValueType::String;
    Scalar value;

    static Property string(std::string key, std::string value);
    static Property integer(std::string key, std::int64_t value);
    static Property real(std::string key, double value);
    static Property boolean(std::string key, bool value);

    // Strict parse of `text` as `type`; throws TypeError on any mismatch
    // (no whitespace trimming, no int->real widening, only "true"/"false").
    static Property parse(std::string key, ValueType type, std::string_view text);

    // True when the held alternative matches `type` (and reals are finite).
    bool is_consistent() const noexcept;

    // Canonical text form; parse(key, type, value_text()) reproduces the value exactly.
    std::string value_text() const;

    const std::string* as_string() const noexcept { return std::get_if<std::string>(&value); }
    const std::int64_t* as_int() const noexcept { return std::get_if<std::int64_t>(&value); }
    const double* as_real() const noexcept { return std::get_if<double>(&value); }
    const bool* as_bool() const noexcept { return std::get_if<bool>(&value); }

    friend bool operator==(const Property&, const Property&) = default;
};

using PropertySet = std::vector<Property>;

const Property* find_property(const PropertySet& set, std::string_view key) noexcept;

// Replaces the property with the same key or appends it. Throws TypeError if
// the property is internally inconsistent.
void upsert_property(PropertySet& set, Property property);

} // namespace adaptopt

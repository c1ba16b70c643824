#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace adaptopt {

enum class EncodingKind { BinaryVector, RealVector, Permutation };

std::string_view to_string(EncodingKind kind) noexcept;

struct Bounds {
    double low = 0.0;
    double high = 1.0;

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct SubEncodingSpec {
    std::string name;
    EncodingKind kind = EncodingKind::BinaryVector;
    std::size_t length = 1;
    std::vector<Bounds> bounds; // RealVector only, one entry per dimension

    static SubEncodingSpec binary(std::string name, std::size_t length);
    static SubEncodingSpec real(std::string name, std::vector<Bounds> bounds);
    static SubEncodingSpec permutation(std::string name, std::size_t length);

    friend bool operator==(const SubEncodingSpec&, const SubEncodingSpec&) = default;
};

// Ordered list of sub-encodings; order equals manipulator registration order.
using MultiEncodingSpec = std::vector<SubEncodingSpec>;

// Problems found in a spec itself (length 0, inverted bounds, duplicate names).
std::vector<std::string> check_encoding_spec(const MultiEncodingSpec& spec);

struct BinaryValue {
    std::vector<bool> bits;

    friend bool operator==(const BinaryValue&, const BinaryValue&) = default;
    friend bool operator<(const BinaryValue& a, const BinaryValue& b) { return a.bits < b.bits; }
};

struct RealValue {
    std::vector<double> values;

    friend bool operator==(const RealValue&, const RealValue&) = default;
    friend bool operator<(const RealValue& a, const RealValue& b) { return a.values < b.values; }
};

struct PermutationValue {
    std::vector<std::size_t> order;

    friend bool operator==(const PermutationValue&, const PermutationValue&) = default;
    friend bool operator<(const PermutationValue& a, const PermutationValue& b) { return a.order < b.order; }
};

using SubValue = std::variant<BinaryValue, RealValue, PermutationValue>;

struct Genotype {
    std::vector<SubValue> parts;

    friend bool operator==(const Genotype&, const Genotype&) = default;
    friend bool operator<(const Genotype& a, const Genotype& b) { return a.parts < b.parts; }
};

// Every violated constraint (arity, kind, length, bounds, permutation validity).
// Empty means the genotype conforms to the spec.
std::vector<std::string> validate_genotype(const MultiEncodingSpec& spec, const Genotype& genotype);

// "0110" for bit vectors; gene 0 is the leftmost character.
std::string to_bit_string(const BinaryValue& value);
BinaryValue parse_bit_string(std::string_view text);

} // namespace adaptopt

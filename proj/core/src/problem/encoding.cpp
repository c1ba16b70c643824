#include "adaptopt/problem/encoding.hpp"

#include <cmath>
#include <set>

#include "adaptopt/error.hpp"

namespace adaptopt {

std::string_view to_string(EncodingKind kind) noexcept
{
    switch (kind) {
    case EncodingKind::BinaryVector: return "binary";
    case EncodingKind::RealVector: return "real";
    case EncodingKind::Permutation: return "permutation";
    }
    return "binary";
}

SubEncodingSpec SubEncodingSpec::binary(std::string name, std::size_t length)
{
    return { std::move(name), EncodingKind::BinaryVector, length, {} };
}

SubEncodingSpec SubEncodingSpec::real(std::string name, std::vector<Bounds> bounds)
{
    const auto length = bounds.size();
    return { std::move(name), EncodingKind::RealVector, length, std::move(bounds) };
}

SubEncodingSpec SubEncodingSpec::permutation(std::string name, std::size_t length)
{
    return { std::move(name), EncodingKind::Permutation, length, {} };
}

std::vector<std::string> check_encoding_spec(const MultiEncodingSpec& spec)
{
    std::vector<std::string> problems;
    std::set<std::string> names;
    for (const auto& sub : spec) {
        if (!names.insert(sub.name).second) {
            problems.push_back("duplicate sub-encoding name '" + sub.name + "'");
        }
        if (sub.length < 1) {
            problems.push_back("sub-encoding '" + sub.name + "' has length 0");
        }
        if (sub.kind == EncodingKind::RealVector) {
            if (sub.bounds.size() != sub.length) {
                problems.push_back("sub-encoding '" + sub.name + "' needs one bounds pair per dimension");
            }
            for (std::size_t i = 0; i < sub.bounds.size(); ++i) {
                const auto& b = sub.bounds[i];
                if (!(std::isfinite(b.low) && std::isfinite(b.high) && b.low < b.high)) {
                    problems.push_back("sub-encoding '" + sub.name + "' dimension " + std::to_string(i)
                        + " has invalid bounds");
                }
            }
        } else if (!sub.bounds.empty()) {
            problems.push_back("sub-encoding '" + sub.name + "' declares bounds but is not a real vector");
        }
    }
    return problems;
}

std::vector<std::string> validate_genotype(const MultiEncodingSpec& spec, const Genotype& genotype)
{
    std::vector<std::string> violations;
    if (genotype.parts.size() != spec.size()) {
        violations.push_back("arity mismatch: genotype has " + std::to_string(genotype.parts.size())
            + " parts, encoding has " + std::to_string(spec.size()));
        return violations;
    }
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& sub = spec[i];
        const auto& part = genotype.parts[i];
        const auto prefix = "sub-encoding '" + sub.name + "': ";
        auto length_check = [&](std::size_t actual) {
            if (actual != sub.length) {
                violations.push_back(prefix + "length " + std::to_string(actual) + " != expected "
                    + std::to_string(sub.length));
                return false;
            }
            return true;
        };
        switch (sub.kind) {
        case EncodingKind::BinaryVector: {
            const auto* v = std::get_if<BinaryValue>(&part);
            if (v == nullptr) {
                violations.push_back(prefix + "expected a bit vector");
                break;
            }
            length_check(v->bits.size());
            break;
        }
        case EncodingKind::RealVector: {
            const auto* v = std::get_if<RealValue>(&part);
            if (v == nullptr) {
                violations.push_back(prefix + "expected a real vector");
                break;
            }
            if (!length_check(v->values.size()) || sub.bounds.size() != sub.length) break;
            for (std::size_t d = 0; d < v->values.size(); ++d) {
                const auto x = v->values[d];
                const auto& b = sub.bounds[d];
                if (!(x >= b.low && x <= b.high)) {
                    violations.push_back(prefix + "dimension " + std::to_string(d) + " value " + std::to_string(x)
                        + " outside bounds (" + std::to_string(b.low) + ", " + std::to_string(b.high) + ")");
                }
            }
            break;
        }
        case EncodingKind::Permutation: {
            const auto* v = std::get_if<PermutationValue>(&part);
            if (v == nullptr) {
                violations.push_back(prefix + "expected a permutation");
                break;
            }
            if (!length_check(v->order.size())) break;
            std::vector<bool> seen(v->order.size(), false);
            bool valid = true;
            for (auto x : v->order) {
                if (x >= seen.size() || seen[x]) {
                    valid = false;
                    break;
                }
                seen[x] = true;
            }
            if (!valid) violations.push_back(prefix + "not a permutation of 0.." + std::to_string(sub.length - 1));
            break;
        }
        }
    }
    return violations;
}

std::string to_bit_string(const BinaryValue& value)
{
    std::string s;
    s.reserve(value.bits.size());
    for (bool b : value.bits) s += b ? '1' : '0';
    return s;
}

BinaryValue parse_bit_string(std::string_view text)
{
    BinaryValue v;
    v.bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw EncodingError("invalid bit string '" + std::string(text) + "'");
        v.bits.push_back(c == '1');
    }
    return v;
}

} // namespace adaptopt

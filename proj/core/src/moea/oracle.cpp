#include "adaptopt/moea/oracle.hpp"

#include "adaptopt/error.hpp"

namespace adaptopt {

ParetoArchive brute_force_front(const AssembledProblem& problem)
{
    const auto& spec = problem.encoding();
    if (spec.size() != 1 || spec.front().kind != EncodingKind::BinaryVector) {
        throw ContractError("brute-force enumeration needs a single bit-vector encoding");
    }
    const auto n = spec.front().length;
    if (n > max_brute_force_bits) {
        throw ContractError("brute-force enumeration limited to " + std::to_string(max_brute_force_bits)
            + " bits, encoding has " + std::to_string(n));
    }

    ParetoArchive archive(ParetoArchive::Duplicates::KeepAll);
    Genotype g { { BinaryValue { std::vector<bool>(n, false) } } };
    auto& bits = std::get<BinaryValue>(g.parts.front()).bits;
    const std::uint64_t count = std::uint64_t { 1 } << n;
    for (std::uint64_t code = 0; code < count; ++code) {
        for (std::size_t i = 0; i < n; ++i) bits[i] = ((code >> i) & 1U) != 0;
        archive.insert(g, problem.evaluate(g));
    }
    return archive;
}

} // namespace adaptopt

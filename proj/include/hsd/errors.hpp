#ifndef HSD_ERRORS_HPP
#define HSD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsd {

enum class errc {
    division_by_zero,
    prime_mismatch,
    order_mismatch,
    not_a_pth_power,
    nonzero_constant_term,
    not_invertible,
    truncation_inconclusive,
    constant_witness,
    inconsistent,
    not_normalizable,
    trivial_derivation,
    not_iterative,
    parse_error,
    bad_input,
};

constexpr const char* errc_name(errc k) {
    switch (k) {
        case errc::division_by_zero: return "DivisionByZero";
        case errc::prime_mismatch: return "PrimeMismatch";
        case errc::order_mismatch: return "OrderMismatch";
        case errc::not_a_pth_power: return "NotAPthPower";
        case errc::nonzero_constant_term: return "NonzeroConstantTerm";
        case errc::not_invertible: return "NotInvertible";
        case errc::truncation_inconclusive: return "TruncationInconclusive";
        case errc::constant_witness: return "ConstantWitness";
        case errc::inconsistent: return "Inconsistent";
        case errc::not_normalizable: return "NotNormalizable";
        case errc::trivial_derivation: return "TrivialDerivation";
        case errc::not_iterative: return "NotIterative";
        case errc::parse_error: return "ParseError";
        case errc::bad_input: return "BadInput";
    }
    return "UnknownError";
}

/// All engine failures are thrown as Error; kind() names the failure the
/// same way reports and the CLI do. Parse errors additionally carry the
/// byte offset of the offending token.
class Error : public std::runtime_error {
   public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Error(errc kind, const std::string& message, std::size_t position = npos)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + message),
          kind_(kind),
          position_(position) {}

    errc kind() const noexcept { return kind_; }

    /// Byte offset into the source text for parse errors, npos otherwise.
    std::size_t position() const noexcept { return position_; }

   private:
    errc kind_;
    std::size_t position_;
};

}  // namespace hsd

#endif

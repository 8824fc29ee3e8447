#ifndef HSD_JSON_IO_HPP
#define HSD_JSON_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsd/derivation.hpp"
#include "hsd/equivalence.hpp"
#include "hsd/idmodule.hpp"
#include "hsd/parser.hpp"

namespace hsd {

using json = nlohmann::ordered_json;

/// JSON envelopes use the shared expression syntax for all series text, so
/// every serialized value re-parses to an equal value.

inline json to_json(const IterativeDerivation& theta) {
    return json{{"p", theta.prime()}, {"N", theta.order()}, {"g", to_string(theta.generator_image())}};
}

inline json to_json(const Substitution& lambda) {
    return json{{"p", lambda.prime()}, {"N", lambda.order()}, {"P", to_string(lambda.parameter())}};
}

inline json to_json(const IdModule& m) {
    json entries = json::array();
    for (const auto& e : m.entries()) entries.push_back(to_string(e));
    return json{{"p", m.prime()},
                {"N", m.order()},
                {"theta", to_string(m.derivation().generator_image())},
                {"n", m.rank()},
                {"A", std::move(entries)}};
}

namespace detail {

inline void require_fields(const json& j, std::initializer_list<const char*> names, const char* what) {
    if (!j.is_object()) throw Error(errc::bad_input, std::string(what) + " must be a JSON object");
    for (const char* name : names)
        if (!j.contains(name))
            throw Error(errc::bad_input, std::string(what) + " is missing the field \"" + name + "\"");
}

inline std::uint64_t uint_field(const json& j, const char* name) {
    if (!j.at(name).is_number_unsigned())
        throw Error(errc::bad_input, std::string("field \"") + name + "\" must be a nonnegative integer");
    return j.at(name).get<std::uint64_t>();
}

inline std::string text_field(const json& j, const char* name) {
    if (!j.at(name).is_string())
        throw Error(errc::bad_input, std::string("field \"") + name + "\" must be a string");
    return j.at(name).get<std::string>();
}

}  // namespace detail

inline IterativeDerivation derivation_from_json(const json& j) {
    detail::require_fields(j, {"p", "N", "g"}, "a derivation");
    std::uint64_t p = detail::uint_field(j, "p");
    std::uint32_t order = static_cast<std::uint32_t>(detail::uint_field(j, "N"));
    return IterativeDerivation(parse_series(detail::text_field(j, "g"), p, order));
}

inline Substitution substitution_from_json(const json& j) {
    detail::require_fields(j, {"p", "N", "P"}, "a substitution");
    std::uint64_t p = detail::uint_field(j, "p");
    std::uint32_t order = static_cast<std::uint32_t>(detail::uint_field(j, "N"));
    return Substitution(parse_series(detail::text_field(j, "P"), p, order));
}

inline IdModule module_from_json(const json& j) {
    detail::require_fields(j, {"p", "N", "theta", "n", "A"}, "a module");
    std::uint64_t p = detail::uint_field(j, "p");
    std::uint32_t order = static_cast<std::uint32_t>(detail::uint_field(j, "N"));
    std::size_t rank = static_cast<std::size_t>(detail::uint_field(j, "n"));
    IterativeDerivation theta(parse_series(detail::text_field(j, "theta"), p, order));
    if (!j.at("A").is_array())
        throw Error(errc::bad_input, "field \"A\" must be an array of entry texts");
    std::vector<TruncSeries<Ratfun>> entries;
    entries.reserve(j.at("A").size());
    for (const auto& cell : j.at("A")) {
        if (!cell.is_string()) throw Error(errc::bad_input, "matrix entries must be strings");
        entries.push_back(parse_series(cell.get<std::string>(), p, order));
    }
    return IdModule(std::move(theta), rank, std::move(entries));
}

inline json to_json(const Mismatch& mm) {
    return json{{"i", mm.u_exp}, {"j", mm.t_exp}, {"lhs", to_string(mm.lhs)}, {"rhs", to_string(mm.rhs)}};
}

inline json to_json(const ModuleMismatch& mm) {
    return json{{"row", mm.row}, {"col", mm.col},           {"i", mm.u_exp},
                {"j", mm.t_exp}, {"lhs", to_string(mm.lhs)}, {"rhs", to_string(mm.rhs)}};
}

}  // namespace hsd

#endif

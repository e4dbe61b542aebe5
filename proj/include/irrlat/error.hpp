#pragma once

#include <stdexcept>
#include <string>

namespace irrlat {

enum class errc {
  out_of_supported_range,
  twist_in_char_zero,
  rank_mismatch,
  not_a_character,
  unsupported_type,
  unresolved,
  syntax_error,
  unbound_variable,
  ambiguous_rows,
  parse_error,
  dangling_reference,
  duplicate_id,
  dimension_mismatch,
  unknown_id,
  condition_violated,
  missing_data,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::out_of_supported_range: return "OutOfSupportedRange";
    case errc::twist_in_char_zero: return "TwistInCharZero";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::not_a_character: return "NotACharacter";
    case errc::unsupported_type: return "UnsupportedType";
    case errc::unresolved: return "Unresolved";
    case errc::syntax_error: return "SyntaxError";
    case errc::unbound_variable: return "UnboundVariable";
    case errc::ambiguous_rows: return "AmbiguousRows";
    case errc::parse_error: return "ParseError";
    case errc::dangling_reference: return "DanglingReference";
    case errc::duplicate_id: return "DuplicateId";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::unknown_id: return "UnknownId";
    case errc::condition_violated: return "ConditionViolated";
    case errc::missing_data: return "MissingData";
  }
  return "Error";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace irrlat

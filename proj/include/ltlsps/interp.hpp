#pragma once

#include <string>
#include <string_view>

#include "ltlsps/ltl.hpp"
#include "ltlsps/schema.hpp"

namespace ltlsps {

// Reserved variable names used by the translations.
inline constexpr const char* kLessMark = "lt_n";   // true exactly below n
inline constexpr const char* kEndMark = "eq_n";    // true exactly at n
inline constexpr const char* kPrefixMark = "pfx";  // true exactly below k
inline constexpr const char* kLoopMark = "eq_k";   // true exactly at k
inline constexpr const char* kSubPrefix = "sub_";
inline constexpr const char* kSubPrimedPrefix = "subp_";
inline constexpr const char* kElimPrefix = "evq_";

bool is_reserved_ltl_side(const std::string& name);
bool is_reserved_schema_side(const std::string& name);

struct SegmentReport {
  enum class Kind { Initial, TwoInitial, None } kind = Kind::None;
  std::string var;
  std::size_t length = 0;        // initial segments
  std::size_t short_length = 0;  // 2-initial segments
  std::size_t long_length = 0;
};

/// Is `var` true exactly at times < k for some k?
SegmentReport segment_report(const UPInterpretation& sigma,
                             const std::string& var);
/// Is `var` true exactly at indices < k for some k <= n, judged on 0..n?
SegmentReport segment_report(const SchemaInterpretation& interp,
                             const std::string& var);

/// Embeds a schema interpretation as an LTL interpretation: an initial
/// segment of length n for lt_n, with eq_n placed at n, represented as a
/// lasso whose loop is the all-false tail.
UPInterpretation embed_schema_interp(const SchemaInterpretation& interp);

/// Inverse of embed_schema_interp: reads the segment length off lt_n and
/// keeps the non-reserved variables. Values are recorded up to
/// max(horizon, prefix+period) and default to false beyond.
SchemaInterpretation project_initial_segment(const UPInterpretation& sigma,
                                             std::size_t horizon = 0);

/// Embeds a UP interpretation as a schema interpretation with parameter
/// k+l-1: an initial segment of length k for pfx, eq_k at k, and the
/// original variables copied on 0..k+l-1.
SchemaInterpretation embed_up_interp(const UPInterpretation& sigma);

/// Inverse of embed_up_interp on 2-initial segments: indices below the short
/// length become the prefix, the rest up to n the loop; pfx, eq_k and the
/// sub_* variables are dropped.
UPInterpretation project_two_segment(const SchemaInterpretation& interp);

// Text formats.
//   schema side: n=3; p: 0,1,2; q: 3;
//   LTL side:    prefix: {p q} {} ; loop: {p}
std::string render_schema_interp(const SchemaInterpretation& interp);
SchemaInterpretation parse_schema_interp(std::string_view text);
std::string render_up_interp(const UPInterpretation& sigma);
UPInterpretation parse_up_interp(std::string_view text);

}  // namespace ltlsps

#pragma once

namespace nakamura {

inline constexpr const char* engine_version = "0.1.0";
inline constexpr int spec_schema_version = 1;
inline constexpr int report_schema_version = 1;

// Refinement precision policy: start here, double until a decision is
// reached, give up (internal error) past the cap.
inline constexpr long default_start_bits = 64;
inline constexpr long default_precision_cap_bits = 4096;

} // namespace nakamura

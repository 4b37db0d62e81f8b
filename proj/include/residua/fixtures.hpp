#pragma once

#include <string>

namespace residua::fixtures {

/// Built-in specimen library: the stream typestate property, the
/// whole-method CFG example, the greylist/whitelist transfer property,
/// the per-user-type transaction CFGs, and the payment-pattern property
/// the benchmark monitors. Each text parses with the matching parser.
const std::string& fig1_date();
const std::string& fig2_prog();
const std::string& fig3_date();      // 5 states, guarded whiteList edges only
const std::string& fig3_full_date(); // with the q5 sink and star edges
const std::string& fig3_linear_prog(); // whiteList; greyList; transfer*
const std::string& fig4_bronze_prog();
const std::string& fig4_silver_prog();
const std::string& fig4_combined_prog();
const std::string& fig5_date();

} // namespace residua::fixtures

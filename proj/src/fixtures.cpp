#include "residua/fixtures.hpp"

namespace residua::fixtures {

// Kept byte-identical to the files under fixtures/; a regression test
// compares them.

const std::string& fig1_date() {
    static const std::string text = R"(date fig1
param s
alphabet close lookAhead open read write
states q_a q_b q_c q_d q_e
initial q_a
bad q_c q_e
trans q_a -> q_a on *
trans q_a -> q_b on open
trans q_a -> q_c on write
trans q_b -> q_a on close
trans q_b -> q_b on *
trans q_b -> q_d on read
trans q_c -> q_b on open
trans q_c -> q_c on *
trans q_d -> q_b on read
trans q_d -> q_d on lookAhead
trans q_d -> q_d on open
trans q_d -> q_e on *
trans q_e -> q_e on *
)";
    return text;
}

const std::string& fig2_prog() {
    static const std::string text = R"(program fig2
ids s1 s2 s3 s4 s5 s6 s7 s8
must s1 s2
must s2 s3
must s3 s4
must s4 s5
must s5 s6
must s6 s7
must s7 s8
nodes c1 c2 c3 c4 c5
entry c1
edge c1 -> c1 : s1.write
edge c1 -> c1 : s2.open
edge c1 -> c2 : s3.open
edge c2 -> c3 : s4.close
edge c3 -> c4 : s5.open
edge c4 -> c4 : s1.write
edge c4 -> c4 : s2.open
edge c4 -> c5 : s8.close
edge c5 -> c1 : eps
edge c5 -> c5 : s1.write
edge c5 -> c5 : s2.open
)";
    return text;
}

const std::string& fig3_date() {
    static const std::string text = R"(date fig3
param u
alphabet greyList permanentlyDisabled transfer whiteList
var int transferCount = 0
states q0 q1 q2 q3 q4
initial q0
bad q3
trans q0 -> q1 on greyList
trans q0 -> q2 on permanentlyDisabled
trans q1 -> q4 on permanentlyDisabled
trans q1 -> q1 on transfer do transferCount := transferCount + 1
trans q1 -> q3 on whiteList if transferCount < 3
trans q1 -> q0 on whiteList if transferCount >= 3 do transferCount := 0
)";
    return text;
}

const std::string& fig3_full_date() {
    static const std::string text = R"(date fig3_full
param u
alphabet greyList permanentlyDisabled transfer whiteList
var int transferCount = 0
states q0 q1 q2 q3 q4 q5
initial q0
bad q3
trans q0 -> q1 on greyList
trans q0 -> q2 on permanentlyDisabled
trans q1 -> q4 on permanentlyDisabled
trans q1 -> q1 on transfer do transferCount := transferCount + 1
trans q1 -> q3 on whiteList if transferCount < 3
trans q1 -> q0 on whiteList if transferCount >= 3 do transferCount := 0
trans q2 -> q5 on *
trans q4 -> q5 on *
)";
    return text;
}

const std::string& fig3_linear_prog() {
    static const std::string text = R"(program fig3_linear
ids u
nodes n0 n1 n2
entry n0
edge n0 -> n1 : u.whiteList
edge n1 -> n2 : u.greyList
edge n2 -> n2 : u.transfer
)";
    return text;
}

const std::string& fig4_bronze_prog() {
    static const std::string text = R"(program fig4_bronze
ids bronze
nodes b0 b1 b2
entry b0
edge b0 -> b1 : bronze.createdUser
edge b1 -> b1 : bronze.activate
edge b1 -> b2 : bronze.activate
edge b2 -> b1 : bronze.blacklist
edge b2 -> b1 : bronze.greylist
edge b2 -> b1 : bronze.whitelist
edge b2 -> b2 : bronze.tau
)";
    return text;
}

const std::string& fig4_silver_prog() {
    static const std::string text = R"(program fig4_silver
ids silver
nodes s0 s1 s3 s4 s5
entry s0
edge s0 -> s1 : silver.createdUser
edge s1 -> s1 : silver.activate
edge s1 -> s3 : silver.activate
edge s3 -> s5 : silver.blacklist
edge s3 -> s4 : silver.whitelist
edge s4 -> s1 : silver.pay
edge s5 -> s1 : silver.tau
)";
    return text;
}

const std::string& fig4_combined_prog() {
    static const std::string text = R"(program fig4_combined
ids bronze gold silver
nodes b0 b1 b2 g0 g1 g3 g4 g5 p0 s0 s1 s3 s4 s5
entry p0
edge p0 -> b0 : eps
edge p0 -> g0 : eps
edge p0 -> s0 : eps
edge b0 -> b1 : bronze.createdUser
edge b1 -> b1 : bronze.activate
edge b1 -> b2 : bronze.activate
edge b2 -> b1 : bronze.blacklist
edge b2 -> b1 : bronze.greylist
edge b2 -> b1 : bronze.whitelist
edge b2 -> b2 : bronze.tau
edge g0 -> g1 : gold.createdUser
edge g1 -> g1 : gold.activate
edge g1 -> g3 : gold.activate
edge g3 -> g5 : gold.blacklist
edge g3 -> g4 : gold.whitelist
edge g4 -> g1 : gold.pay
edge g5 -> g1 : gold.tau
edge s0 -> s1 : silver.createdUser
edge s1 -> s1 : silver.activate
edge s1 -> s3 : silver.activate
edge s3 -> s5 : silver.blacklist
edge s3 -> s4 : silver.whitelist
edge s4 -> s1 : silver.pay
edge s5 -> s1 : silver.tau
)";
    return text;
}

const std::string& fig5_date() {
    static const std::string text = R"(date fig5
param u
alphabet activate blacklist createdUser pay transfer whitelist
var bool success = true
var bool riskHigh = false
var bool destWhitelisted = false
states q_a q_b q_c q_d q_e q_f q_g q_h
initial q_a
bad q_c q_f q_h
trans q_a -> q_b on createdUser
trans q_b -> q_d on activate if success
trans q_b -> q_c on pay
trans q_d -> q_g on blacklist if not riskHigh
trans q_d -> q_e on blacklist if riskHigh
trans q_e -> q_g on blacklist if not riskHigh
trans q_e -> q_f on pay
trans q_e -> q_f on transfer
trans q_e -> q_d on whitelist
trans q_g -> q_e on blacklist if riskHigh
trans q_g -> q_h on pay if not destWhitelisted
trans q_g -> q_h on transfer
trans q_g -> q_d on whitelist
)";
    return text;
}

} // namespace residua::fixtures

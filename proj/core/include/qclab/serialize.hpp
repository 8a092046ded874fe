#pragma once

#include <string>

#include <json.hpp>

#include "qclab/cell_probe.hpp"
#include "qclab/fks.hpp"
#include "qclab/game.hpp"
#include "qclab/round_elim.hpp"

namespace qclab {

using json = nlohmann::json;

// Structured text form of games, distributions and protocols. Matrices are
// nested arrays of [real, imag] pairs; rationals are "num/den" strings.
// Round trips are bit-exact.
json to_json(const GameSpec& g);
GameSpec game_from_json(const json& j);

json to_json(const JointDistribution& d);
JointDistribution distribution_from_json(const json& j);

json to_json(const ClassicalProtocol& p);
ClassicalProtocol classical_protocol_from_json(const json& j);

json to_json(const QuantumSafeProtocol& p);
QuantumSafeProtocol quantum_protocol_from_json(const json& j);

json to_json(const FksRankTable& t);
FksRankTable fks_table_from_json(const json& j);

// Certificates render exact rationals as num/den and reals at 12
// significant digits.
json to_json(const EliminationCertificate& c);
json to_json(const EliminationLedger& l);

}  // namespace qclab

#pragma once

#include <string>

#include <json.hpp>

#include "ionsynth/circuit.hpp"
#include "ionsynth/coupling.hpp"
#include "ionsynth/synth.hpp"
#include "ionsynth/trap_modes.hpp"

namespace ionsynth {

// Wire formats. Qubit indices are 1-based in every file and CLI surface;
// in-memory indices are 0-based.

/// {"n", "anisotropy", "positions", "frequencies", "vectors"} with the
/// mode-vector matrix stored row-major (vectors[i][k] = component of mode k
/// at ion i).
nlohmann::json mode_data_to_json(const ModeData& modes);

/// {"n", "j_upper"} with the upper triangle in row-major (i < j) order.
nlohmann::json target_to_json(const CouplingMatrix& target);
CouplingMatrix target_from_json(const nlohmann::json& j);

/// {"n", "convention", "anisotropy", "blocks", "total_runtime", "residual"};
/// each block is {"flips", "duration", "mode_weights"}.
nlohmann::json schedule_to_json(const DriveSchedule& schedule);
DriveSchedule schedule_from_json(const nlohmann::json& j);

/// Gate list: [{"gate": "rx|ry|rz|h|xx|ising", ...}]. Rotation gates carry
/// "qubit" and "angle"; "xx" carries "qubits" and "angle"; "ising" carries
/// "j_upper". Schedule blocks are flattened to their realized "ising" form.
nlohmann::json circuit_to_json(const Circuit& circuit);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace ionsynth

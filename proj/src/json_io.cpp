#include "ionsynth/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace ionsynth {

using nlohmann::json;

nlohmann::json mode_data_to_json(const ModeData& modes) {
    json j;
    j["n"] = modes.n;
    j["anisotropy"] = modes.anisotropy;
    j["positions"] = std::vector<double>(modes.positions.begin(), modes.positions.end());
    j["frequencies"] = std::vector<double>(modes.frequencies.begin(), modes.frequencies.end());
    json rows = json::array();
    for (int i = 0; i < modes.n; ++i) {
        json row = json::array();
        for (int k = 0; k < modes.n; ++k) row.push_back(modes.vectors(i, k));
        rows.push_back(std::move(row));
    }
    j["vectors"] = std::move(rows);
    return j;
}

nlohmann::json target_to_json(const CouplingMatrix& target) {
    const Eigen::VectorXd v = vectorize(target);
    json j;
    j["n"] = target.n;
    j["j_upper"] = std::vector<double>(v.begin(), v.end());
    return j;
}

CouplingMatrix target_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const std::vector<double> upper = j.at("j_upper").get<std::vector<double>>();
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(upper.data(), upper.size());
    return devectorize(v, n);
}

nlohmann::json schedule_to_json(const DriveSchedule& schedule) {
    json j;
    j["n"] = schedule.n;
    j["convention"] = schedule.convention;
    j["anisotropy"] = schedule.anisotropy;
    json blocks = json::array();
    for (const ScheduleBlock& block : schedule.blocks) {
        json b;
        std::vector<int> flips;
        for (int q : block.flips.flips) flips.push_back(q + 1);
        b["flips"] = std::move(flips);
        b["duration"] = block.duration;
        b["mode_weights"] = std::vector<double>(block.weights.begin(), block.weights.end());
        blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    j["total_runtime"] = schedule.total_runtime;
    j["residual"] = schedule.residual;
    return j;
}

DriveSchedule schedule_from_json(const nlohmann::json& j) {
    DriveSchedule s;
    s.n = j.at("n").get<int>();
    s.convention = j.value("convention", std::string(kWeightConvention));
    s.anisotropy = j.at("anisotropy").get<double>();
    for (const json& b : j.at("blocks")) {
        ScheduleBlock block;
        std::vector<int> flips;
        for (int q : b.at("flips").get<std::vector<int>>()) {
            if (q < 1 || q > s.n) {
                throw std::invalid_argument("schedule_from_json: flip index out of range");
            }
            flips.push_back(q - 1);
        }
        block.flips = FlipPattern(std::move(flips));
        block.duration = b.at("duration").get<double>();
        const std::vector<double> w = b.at("mode_weights").get<std::vector<double>>();
        if (static_cast<int>(w.size()) != s.n) {
            throw std::invalid_argument("schedule_from_json: mode_weights length mismatch");
        }
        block.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
        s.blocks.push_back(std::move(block));
    }
    s.total_runtime = j.at("total_runtime").get<double>();
    s.residual = j.at("residual").get<double>();
    return s;
}

nlohmann::json circuit_to_json(const Circuit& circuit) {
    json gates = json::array();
    for (const Gate& gate : circuit.gates) {
        json g;
        if (const auto* rx = std::get_if<RxGate>(&gate)) {
            g["gate"] = "rx";
            g["qubit"] = rx->qubit + 1;
            g["angle"] = rx->angle;
        } else if (const auto* ry = std::get_if<RyGate>(&gate)) {
            g["gate"] = "ry";
            g["qubit"] = ry->qubit + 1;
            g["angle"] = ry->angle;
        } else if (const auto* rz = std::get_if<RzGate>(&gate)) {
            g["gate"] = "rz";
            g["qubit"] = rz->qubit + 1;
            g["angle"] = rz->angle;
        } else if (const auto* h = std::get_if<HadamardGate>(&gate)) {
            g["gate"] = "h";
            g["qubit"] = h->qubit + 1;
        } else if (const auto* xx = std::get_if<XxGate>(&gate)) {
            g["gate"] = "xx";
            g["qubits"] = {xx->a + 1, xx->b + 1};
            g["angle"] = xx->angle;
        } else if (const auto* ising = std::get_if<IsingBlockGate>(&gate)) {
            g["gate"] = "ising";
            g["j_upper"] = target_to_json(ising->couplings)["j_upper"];
        } else if (const auto* sched = std::get_if<ScheduleBlockGate>(&gate)) {
            g["gate"] = "ising";
            g["j_upper"] =
                target_to_json(realized_couplings(sched->schedule, sched->modes))["j_upper"];
            g["schedule"] = schedule_to_json(sched->schedule);
        }
        gates.push_back(std::move(g));
    }
    json j;
    j["n"] = circuit.n;
    j["gates"] = std::move(gates);
    return j;
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace ionsynth

#include "ringrc/readout.hpp"

#include <cmath>

#include "json.hpp"

namespace ringrc {

std::vector<double> decade_grid(int lo_exponent, int hi_exponent) {
    std::vector<double> grid;
    for (int e = lo_exponent; e <= hi_exponent; ++e) grid.push_back(std::pow(10.0, e));
    return grid;
}

std::string model_to_json(const ReadoutModel& model) {
    nlohmann::ordered_json j;
    j["lambda"] = model.lambda;
    j["weights"] = std::vector<double>(model.weights.data(), model.weights.data() + model.weights.size());
    return j.dump(2);
}

}  // namespace ringrc

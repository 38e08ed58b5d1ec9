#include "ringrc/tasks.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "ringrc/errors.hpp"
#include "ringrc/random.hpp"

namespace ringrc {

namespace {
constexpr double divergence_limit = 1e3;
}

std::vector<double> narma10_response(std::span<const double> u) {
    std::vector<double> y(u.size(), 0.0);
    if (u.size() <= 10) throw OutOfRange("NARMA-10 needs more than 10 samples");
    double window = 0.0;  // sum of y(k-9..k)
    for (std::size_t k = 9; k + 1 < u.size(); ++k) {
        window += y[k];
        if (k >= 10) window -= y[k - 10];
        const double next = 0.3 * y[k] + 0.05 * y[k] * window + 1.5 * u[k] * u[k - 9] + 0.1;
        if (!std::isfinite(next) || std::abs(next) > divergence_limit) {
            throw Diverged("NARMA-10 series diverged at k = " + std::to_string(k + 1));
        }
        y[k + 1] = next;
    }
    return y;
}

TaskDataset narma10(std::uint64_t seed, std::size_t length) {
    if (length <= 10) throw OutOfRange("NARMA-10 needs more than 10 samples");
    TaskDataset d;
    d.seed = seed;
    d.u.resize(length);
    SeededUniform rng(seed);
    for (auto& v : d.u) v = rng.next(0.0, 0.5);
    d.y = narma10_response(d.u);
    return d;
}

DatasetSplit split(const TaskDataset& dataset, std::size_t warmup, std::size_t train, std::size_t test) {
    if (warmup + train + test > dataset.u.size()) {
        throw OutOfRange("warmup + train + test = " + std::to_string(warmup + train + test) +
                         " exceeds dataset length " + std::to_string(dataset.u.size()));
    }
    return {warmup, train, test};
}

void write_dataset_csv(std::ostream& out, const TaskDataset& dataset) {
    out << "k,u,y\n";
    out.precision(17);
    for (std::size_t k = 0; k < dataset.u.size(); ++k) out << k << ',' << dataset.u[k] << ',' << dataset.y[k] << '\n';
}

}  // namespace ringrc

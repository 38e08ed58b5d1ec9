#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace ringrc {

struct TaskDataset {
    std::vector<double> u;
    std::vector<double> y;
    std::uint64_t seed = 0;
};

/// NARMA-10 benchmark series:
///   y(k+1) = 0.3 y(k) + 0.05 y(k) sum_{i=0..9} y(k-i) + 1.5 u(k) u(k-9) + 0.1
/// with u(k) uniform on [0, 0.5] and y(0..9) = 0. Throws Diverged if |y|
/// exceeds 1e3, OutOfRange if length <= 10.
TaskDataset narma10(std::uint64_t seed, std::size_t length);

/// NARMA-10 recurrence applied to a given input sequence.
std::vector<double> narma10_response(std::span<const double> u);

/// Contiguous warmup -> train -> test partition. Row k of the state matrix
/// (counted from the start of the dataset) predicts y(k).
struct DatasetSplit {
    std::size_t warmup = 0;
    std::size_t train = 0;
    std::size_t test = 0;

    std::size_t train_begin() const { return warmup; }
    std::size_t test_begin() const { return warmup + train; }
    std::size_t end() const { return warmup + train + test; }

    template <typename T>
    std::span<const T> warmup_view(std::span<const T> v) const { return v.subspan(0, warmup); }
    template <typename T>
    std::span<const T> train_view(std::span<const T> v) const { return v.subspan(train_begin(), train); }
    template <typename T>
    std::span<const T> test_view(std::span<const T> v) const { return v.subspan(test_begin(), test); }
};

/// Throws OutOfRange if the partition does not fit in the dataset.
DatasetSplit split(const TaskDataset& dataset, std::size_t warmup, std::size_t train, std::size_t test);

/// CSV with columns k, u, y.
void write_dataset_csv(std::ostream& out, const TaskDataset& dataset);

}  // namespace ringrc

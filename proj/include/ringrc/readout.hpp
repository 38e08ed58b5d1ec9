#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ringrc/errors.hpp"

namespace ringrc {

/// Linear output layer. The last weight multiplies the bias column when the
/// features were built with `with_bias_column`.
struct ReadoutModel {
    Eigen::VectorXd weights;
    double lambda = 0.0;
};

/// Appends a column of ones.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> with_bias_column(
    const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(x.rows(), x.cols() + 1);
    out.leftCols(x.cols()) = x;
    out.col(x.cols()).setOnes();
    return out;
}

/// Solves (X^T X + lambda I) w = X^T y. lambda applies to every column,
/// bias included. Throws SingularSystem when lambda = 0 and X^T X is
/// numerically singular.
template <typename DerivedX, typename DerivedY>
ReadoutModel ridge_train(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y, double lambda) {
    if (x.rows() != y.size()) throw ShapeMismatch("ridge_train: row count differs from target length");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ShapeMismatch("ridge_train: lambda must be >= 0");

    const Eigen::Index n = x.cols();
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose().template cast<double>());
    gram.diagonal().array() += lambda;
    const Eigen::VectorXd rhs = x.transpose().template cast<double>() * y.template cast<double>();

    const Eigen::LDLT<Eigen::MatrixXd, Eigen::Lower> ldlt(gram);
    const Eigen::VectorXd d = ldlt.vectorD().cwiseAbs();
    const double d_max = d.size() ? d.maxCoeff() : 0.0;
    const double tolerance = std::numeric_limits<double>::epsilon() * double(std::max<Eigen::Index>(n, 1)) * d_max;
    const bool singular = lambda == 0.0 && (d_max == 0.0 || d.minCoeff() <= tolerance);
    if (ldlt.info() != Eigen::Success || singular) {
        throw SingularSystem("normal equations are singular; use a positive ridge parameter");
    }

    ReadoutModel model;
    model.weights = ldlt.solve(rhs);
    model.lambda = lambda;
    if (!model.weights.allFinite()) throw SingularSystem("ridge solution is not finite");
    return model;
}

template <typename Derived>
Eigen::VectorXd predict(const Eigen::MatrixBase<Derived>& x, const ReadoutModel& model) {
    if (x.cols() != model.weights.size()) throw ShapeMismatch("predict: feature count differs from weight count");
    return x.template cast<double>() * model.weights;
}

/// mean((pred - target)^2) / var(target), population variance.
template <typename DerivedP, typename DerivedT>
double nmse(const Eigen::MatrixBase<DerivedP>& pred, const Eigen::MatrixBase<DerivedT>& target) {
    if (pred.size() != target.size()) throw ShapeMismatch("nmse: lengths differ");
    if (target.size() < 2) throw ShapeMismatch("nmse: need at least two samples");
    const double mean = target.template cast<double>().mean();
    const double variance = (target.template cast<double>().array() - mean).square().mean();
    if (!(variance > 0.0)) throw ConstantTarget("nmse: target is constant");
    const double mse = (pred.template cast<double>() - target.template cast<double>()).squaredNorm() / double(target.size());
    return mse / variance;
}

inline double nmse(std::span<const double> pred, std::span<const double> target) {
    using Map = Eigen::Map<const Eigen::VectorXd>;
    return nmse(Map(pred.data(), Eigen::Index(pred.size())), Map(target.data(), Eigen::Index(target.size())));
}

struct LambdaSearchResult {
    double lambda = 0.0;
    double validation_nmse = 0.0;
    ReadoutModel model;
};

/// Picks the grid value with the lowest validation NMSE; ties go to the
/// larger lambda.
template <typename DX1, typename DY1, typename DX2, typename DY2>
LambdaSearchResult lambda_search(const Eigen::MatrixBase<DX1>& x_train, const Eigen::MatrixBase<DY1>& y_train,
                                 const Eigen::MatrixBase<DX2>& x_val, const Eigen::MatrixBase<DY2>& y_val,
                                 std::vector<double> grid) {
    if (grid.empty()) throw ShapeMismatch("lambda_search: empty grid");
    std::sort(grid.begin(), grid.end(), std::greater<>());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    LambdaSearchResult best;
    bool have_best = false;
    for (double lambda : grid) {
        ReadoutModel model = ridge_train(x_train, y_train, lambda);
        const double score = nmse(predict(x_val, model), y_val);
        // Descending order plus strict comparison keeps the larger lambda on ties.
        if (!have_best || score < best.validation_nmse) {
            best = {lambda, score, std::move(model)};
            have_best = true;
        }
    }
    return best;
}

/// Decade grid 10^lo .. 10^hi.
std::vector<double> decade_grid(int lo_exponent, int hi_exponent);

/// {"lambda": ..., "weights": [...]}
std::string model_to_json(const ReadoutModel& model);

}  // namespace ringrc

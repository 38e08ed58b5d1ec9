#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "ringrc/random.hpp"
#include "ringrc/readout.hpp"
#include "ringrc/validate.hpp"

using namespace ringrc;

namespace {

Eigen::MatrixXd random_matrix(SeededUniform& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next(-1.0, 1.0);
    return m;
}

Eigen::VectorXd random_vector(SeededUniform& rng, Eigen::Index n) { return random_matrix(rng, n, 1).col(0); }

}  // namespace

TEST_CASE("closed-form two by two") {
    const ReadoutModel m = ridge_train(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1.0, 2.0), 1.0);
    CHECK(m.weights(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.weights(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.lambda == 1.0);
}

TEST_CASE("shrinkage is monotone") {
    SeededUniform rng(1);
    const Eigen::MatrixXd x = random_matrix(rng, 40, 6);
    const Eigen::VectorXd y = random_vector(rng, 40);
    double previous = INFINITY;
    for (double lambda : decade_grid(-6, 8)) {
        const double norm = ridge_train(x, y, lambda).weights.norm();
        CHECK(norm < previous);
        previous = norm;
    }
    CHECK(previous < 1e-6);
}

TEST_CASE("weights are continuous in lambda") {
    SeededUniform rng(2);
    const Eigen::MatrixXd x = random_matrix(rng, 30, 5);
    const Eigen::VectorXd y = random_vector(rng, 30);
    const Eigen::VectorXd w = ridge_train(x, y, 1e-2).weights;
    double previous = INFINITY;
    for (double eps : {1e-4, 1e-6, 1e-8}) {
        const double change = (ridge_train(x, y, 1e-2 + eps).weights - w).norm();
        CHECK(change < previous);
        previous = change;
    }
    CHECK(previous < 1e-8);
}

TEST_CASE("normal equations against an independent solve") {
    CHECK(ridge_oracle(1, 20, 5).passed);
    CHECK(ridge_oracle(10, 200, 51).passed);
}

TEST_CASE("singular systems need a ridge parameter") {
    Eigen::MatrixXd x(4, 2);
    x << 1, 2, 2, 4, 3, 6, 4, 8;
    const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(4, 0.0, 1.0);
    CHECK_THROWS_AS(ridge_train(x, y, 0.0), SingularSystem);
    CHECK_NOTHROW(ridge_train(x, y, 1e-6));
    CHECK_THROWS_AS(ridge_train(x, y, -1.0), ShapeMismatch);
    CHECK_THROWS_AS(ridge_train(x, Eigen::VectorXd::Zero(3), 1.0), ShapeMismatch);
}

TEST_CASE("prediction") {
    SeededUniform rng(3);
    ReadoutModel m{random_vector(rng, 4), 0.0};
    CHECK(predict(Eigen::MatrixXd::Identity(4, 4), m) == m.weights);
    m.weights.setZero();
    CHECK(predict(random_matrix(rng, 7, 4), m).isZero());
    CHECK_THROWS_AS(predict(random_matrix(rng, 7, 3), m), ShapeMismatch);
}

TEST_CASE("exact interpolation on a square full-rank system") {
    SeededUniform rng(4);
    const Eigen::MatrixXd x = random_matrix(rng, 12, 12);
    const Eigen::VectorXd y = random_vector(rng, 12);
    const ReadoutModel m = ridge_train(x, y, 0.0);
    CHECK((predict(x, m) - y).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("nmse definition") {
    const Eigen::Vector4d target(0.0, 1.0, 2.0, 3.0);
    CHECK(nmse(target, target) == 0.0);
    CHECK(std::abs(nmse(Eigen::Vector4d::Constant(1.5), target) - 1.0) <= 1e-12);
    CHECK(std::abs(nmse(Eigen::Vector4d(0.0, 1.0, 2.0, 4.0), target) - 0.2) <= 1e-12);
    CHECK_THROWS_AS(nmse(target, Eigen::Vector4d::Constant(2.0)), ConstantTarget);
    CHECK_THROWS_AS(nmse(Eigen::VectorXd::Zero(3), target), ShapeMismatch);
    CHECK(nmse_definition_oracle().passed);
}

TEST_CASE("trained model is never worse than the mean on its training set") {
    SeededUniform rng(5);
    for (double lambda : {0.0, 1e-6, 1e-2}) {
        const Eigen::MatrixXd x = with_bias_column(random_matrix(rng, 80, 10));
        const Eigen::VectorXd y = random_vector(rng, 80);
        CHECK(nmse(predict(x, ridge_train(x, y, lambda)), y) <= 1.0 + 1e-12);
    }
}

TEST_CASE("a huge ridge parameter also shrinks the bias") {
    // lambda applies to the bias column too, so heavy regularization drives
    // predictions to zero rather than to the mean.
    SeededUniform rng(8);
    const Eigen::MatrixXd x = with_bias_column(random_matrix(rng, 80, 10));
    const Eigen::VectorXd y = (random_vector(rng, 80).array() + 3.0).matrix();
    CHECK(nmse(predict(x, ridge_train(x, y, 1e8)), y) > 1.0);
}

TEST_CASE("scaling the target scales the weights") {
    SeededUniform rng(6);
    const Eigen::MatrixXd x = with_bias_column(random_matrix(rng, 60, 8));
    const Eigen::VectorXd y = random_vector(rng, 60);
    const ReadoutModel a = ridge_train(x, y, 1e-3);
    const ReadoutModel b = ridge_train(x, (7.5 * y).eval(), 1e-3);
    CHECK((b.weights - 7.5 * a.weights).norm() <= 1e-12 * b.weights.norm());
    CHECK(nmse(predict(x, b), (7.5 * y).eval()) == doctest::Approx(nmse(predict(x, a), y)).epsilon(1e-12));
}

TEST_CASE("bias column") {
    const Eigen::MatrixXd x = Eigen::MatrixXd::Constant(3, 2, 4.0);
    const Eigen::MatrixXd b = with_bias_column(x);
    CHECK(b.cols() == 3);
    CHECK(b.col(2).isOnes());
    CHECK(b.leftCols(2) == x);
}

TEST_CASE("lambda search") {
    SeededUniform rng(7);
    // Noisy linear data with few rows and many features, where
    // regularization genuinely helps.
    const Eigen::MatrixXd x_all = random_matrix(rng, 80, 30);
    const Eigen::VectorXd w_true = random_vector(rng, 30);
    Eigen::VectorXd y_all = x_all * w_true;
    for (Eigen::Index i = 0; i < y_all.size(); ++i) y_all(i) += 2.0 * rng.next(-1.0, 1.0);
    const auto xt = x_all.topRows(40);
    const auto yt = y_all.head(40);
    const auto xv = x_all.bottomRows(40);
    const auto yv = y_all.tail(40);

    SUBCASE("single element") {
        CHECK(lambda_search(xt, yt, xv, yv, {0.25}).lambda == 0.25);
    }
    SUBCASE("duplicates do not matter") {
        const auto a = lambda_search(xt, yt, xv, yv, {1e-3, 1e-1, 10.0});
        const auto b = lambda_search(xt, yt, xv, yv, {10.0, 1e-3, 1e-1, 1e-1, 1e-3});
        CHECK(a.lambda == b.lambda);
        CHECK(a.validation_nmse == b.validation_nmse);
        CHECK(a.model.weights == b.model.weights);
    }
    SUBCASE("ties go to the larger value") {
        // Validation target with zero response to any feature and all
        // predictions zero: every lambda scores the same.
        const Eigen::MatrixXd x = Eigen::MatrixXd::Zero(5, 2);
        const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(5, 0.0, 1.0);
        CHECK(lambda_search(x, y, x, y, {1e-3, 1.0, 1e-1}).lambda == 1.0);
    }
    SUBCASE("interior optimum beats both ends") {
        const auto grid = decade_grid(-8, 6);
        const auto best = lambda_search(xt, yt, xv, yv, grid);
        const double low = nmse(predict(xv, ridge_train(xt, yt, grid.front())), yv);
        const double high = nmse(predict(xv, ridge_train(xt, yt, grid.back())), yv);
        CHECK(best.validation_nmse < low);
        CHECK(best.validation_nmse < high);
        CHECK(best.lambda > grid.front());
        CHECK(best.lambda < grid.back());
    }
    CHECK_THROWS_AS(lambda_search(xt, yt, xv, yv, {}), ShapeMismatch);
}

TEST_CASE("decade grid") {
    const auto g = decade_grid(-2, 1);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == doctest::Approx(1e-2));
    CHECK(g[3] == doctest::Approx(10.0));
}

TEST_CASE("model json") {
    ReadoutModel m{Eigen::Vector3d(1.0, -2.5, 0.125), 1e-6};
    const auto j = nlohmann::json::parse(model_to_json(m));
    CHECK(j["lambda"].get<double>() == 1e-6);
    CHECK(j["weights"].size() == 3);
    CHECK(j["weights"][1].get<double>() == -2.5);
}

#include <gtest/gtest.h>

#include <cmath>

#include "dagda/adam.hpp"
#include "dagda/errors.hpp"
#include "support.hpp"

using namespace dagda;

namespace {

// Scalar Adam written out from the recurrence, used as the oracle.
struct ScalarAdam {
  double lr, b1 = 0.9, b2 = 0.999, eps = 1e-8, m = 0.0, v = 0.0;
  int t = 0;
  double step(double w, double g) {
    ++t;
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    const double mhat = m / (1 - std::pow(b1, t));
    const double vhat = v / (1 - std::pow(b2, t));
    return w - lr * mhat / (std::sqrt(vhat) + eps);
  }
};

double run_step(AdamState& adam, Mat& w, const Mat& g) {
  Mat* params[] = {&w};
  const Mat grads[] = {g};
  adam.step(params, grads);
  return w(0, 0);
}

}  // namespace

TEST(Adam, ZeroGradientLeavesParamsUnchanged) {
  Rng rng(1);
  Mat a = fixtures::random_mat(rng, 3, 2), b = fixtures::random_mat(rng, 1, 4);
  const Mat a0 = a, b0 = b;
  AdamState adam;
  Mat* params[] = {&a, &b};
  const Mat grads[] = {Mat(3, 2), Mat(1, 4)};
  for (int i = 0; i < 5; ++i) adam.step(params, grads);
  EXPECT_EQ(a, a0);
  EXPECT_EQ(b, b0);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  AdamState adam(AdamConfig{.learning_rate = 0.1});
  Mat w{{0.0}};
  run_step(adam, w, Mat{{1.0}});
  // m̂ = 1, v̂ = 1: the step is lr / (1 + ε).
  EXPECT_NEAR(w(0, 0), -0.1 / (1.0 + 1e-8), 1e-15);
}

TEST(Adam, MatchesScalarRecurrence) {
  AdamState adam(AdamConfig{.learning_rate = 0.01});
  ScalarAdam oracle{.lr = 0.01};
  Mat w{{0.7}};
  double ref = 0.7;
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const double g = rng.uniform(-2.0, 2.0);
    run_step(adam, w, Mat{{g}});
    ref = oracle.step(ref, g);
    ASSERT_NEAR(w(0, 0), ref, 1e-14) << "step " << t;
  }
  EXPECT_EQ(adam.steps(), 50u);
}

TEST(Adam, MinimizesSquare) {
  AdamState adam(AdamConfig{.learning_rate = 0.05});
  ScalarAdam oracle{.lr = 0.05};
  Mat w{{1.0}};
  double ref = 1.0;
  for (int t = 0; t < 100; ++t) {
    run_step(adam, w, Mat{{2.0 * w(0, 0)}});
    ref = oracle.step(ref, 2.0 * ref);
  }
  EXPECT_LT(std::abs(w(0, 0)), 0.1);
  EXPECT_NEAR(w(0, 0), ref, 1e-12);
}

TEST(Adam, InvariantToLossOffset) {
  // Adding a constant to the loss leaves the gradient, and so every update,
  // unchanged: two states fed the same gradients stay bitwise equal.
  Rng rng(3);
  Mat a = fixtures::random_mat(rng, 2, 2), b = a;
  AdamState sa, sb;
  for (int t = 0; t < 10; ++t) {
    const Mat g = 2.0 * a;  // ∇‖W‖² and ∇(‖W‖² + 17)
    Mat* pa[] = {&a};
    Mat* pb[] = {&b};
    const Mat ga[] = {g};
    const Mat gb[] = {2.0 * b};
    sa.step(pa, ga);
    sb.step(pb, gb);
  }
  EXPECT_EQ(a, b);
}

TEST(Adam, ShapeMismatchThrows) {
  Mat w(2, 2);
  AdamState adam;
  Mat* params[] = {&w};
  const Mat grads[] = {Mat(2, 3)};
  EXPECT_THROW(adam.step(params, grads), DimensionError);
}

TEST(Adam, NonFiniteGradientNamesParameter) {
  Mat w(1, 1), v(1, 1);
  AdamState adam;
  Mat* params[] = {&w, &v};
  const Mat grads[] = {Mat(1, 1), Mat{{std::nan("")}}};
  const std::string names[] = {"first", "second"};
  try {
    adam.step(params, grads, names);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("second"), std::string::npos) << e.what();
  }
}

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <random>

#include "oracles.hpp"
#include "radtrack/kalman.hpp"

using namespace radtrack;

namespace
{

oracle::Vec to_vec(const StateVector<double>& v)
{
  oracle::Vec out;
  for (int i = 0; i < kStateSize; ++i) out[i] = v(i);
  return out;
}

oracle::Mat to_mat(const StateMatrix<double>& m)
{
  oracle::Mat out;
  for (int i = 0; i < kStateSize; ++i)
    for (int j = 0; j < kStateSize; ++j) oracle::at(out, i, j) = m(i, j);
  return out;
}

StateMatrix<double> random_spd(std::mt19937_64& rng)
{
  std::normal_distribution<double> g(0.0, 1.0);
  StateMatrix<double> L;
  for (int i = 0; i < kStateSize; ++i)
    for (int j = 0; j < kStateSize; ++j) L(i, j) = g(rng);
  return L * L.transpose() / kStateSize + 0.05 * StateMatrix<double>::Identity();
}

StateVector<double> random_state(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  StateVector<double> x;
  for (int i = 0; i < kStateSize; ++i) x(i) = u(rng);
  if (x(kBXmax) < x(kBXmin)) std::swap(x(kBXmax), x(kBXmin));
  if (x(kBYmax) < x(kBYmin)) std::swap(x(kBYmax), x(kBYmin));
  return x;
}

void expect_symmetric_psd(const StateMatrix<double>& P)
{
  EXPECT_LE((P - P.transpose()).cwiseAbs().maxCoeff(), 1e-9);
  const Eigen::SelfAdjointEigenSolver<StateMatrix<double>> es(P);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
}

}  // namespace

TEST(Predict, ZeroVelocityKeepsPositions)
{
  KFConfig cfg;
  KFStated s;
  s.x << 1, 2, 0, 0, 1.5, 0.5, 2.5, 1.5;
  // No velocity uncertainty, so the only growth is Q.
  s.P(kVx, kVx) = s.P(kVy, kVy) = 0.0;
  const auto p = predict(s, 0.37, cfg);
  EXPECT_EQ(p.x, s.x);
  EXPECT_LE((p.P - (s.P + process_noise(0.37, cfg))).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Predict, HandMultipliedExample)
{
  KFStated s;
  s.x << 0, 0, 1, 2, 0.5, -0.5, 0.5, -0.5;
  const auto p = predict(s, 1.0, KFConfig{});
  StateVector<double> expected;
  expected << 1, 2, 1, 2, 1.5, 0.5, 2.5, 1.5;
  EXPECT_EQ(p.x, expected);
}

TEST(Predict, HalfStepsComposeInTheMean)
{
  std::mt19937_64 rng(4);
  KFStated s;
  s.x = random_state(rng);
  const KFConfig cfg;
  const auto once = predict(s, 0.2, cfg);
  const auto twice = predict(predict(s, 0.1, cfg), 0.1, cfg);
  EXPECT_LE((once.x - twice.x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Predict, Errors)
{
  KFStated s;
  EXPECT_THROW(predict(s, 0.0, KFConfig{}), ValidationError);
  EXPECT_THROW(predict(s, -1.0, KFConfig{}), ValidationError);
  s.x(0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(predict(s, 0.1, KFConfig{}), Error);
}

TEST(Update, ZeroInnovation)
{
  std::mt19937_64 rng(9);
  KFStated s;
  s.x = random_state(rng);
  s.P = random_spd(rng);
  const auto u = update(s, s.x, KFConfig{});
  EXPECT_LE((u.x - s.x).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(u.P.trace(), s.P.trace());
}

TEST(Update, ScalarSlice)
{
  KFConfig cfg;
  cfg.r_pos = cfg.r_vel = cfg.r_box = 1.0;
  KFStated s;  // P = I
  StateVector<double> z = StateVector<double>::Zero();
  z(kPx) = 2.0;
  const auto u = update(s, z, cfg);
  EXPECT_DOUBLE_EQ(u.x(kPx), 1.0);  // K = 0.5
  for (int i = 0; i < kStateSize; ++i) EXPECT_DOUBLE_EQ(u.P(i, i), 0.5);
}

TEST(Update, BoxEdgesReordered)
{
  KFStated s;
  s.x << 0, 0, 0, 0, 1, -1, 1, -1;
  StateVector<double> z;
  z << 0, 0, 0, 0, -5, 5, -5, 5;
  const auto u = update(s, z, KFConfig{});
  EXPECT_GE(u.x(kBXmax), u.x(kBXmin));
  EXPECT_GE(u.x(kBYmax), u.x(kBYmin));
}

TEST(Update, NonFiniteMeasurement)
{
  KFStated s;
  StateVector<double> z = StateVector<double>::Zero();
  z(3) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(update(s, z, KFConfig{}), ValidationError);
}

TEST(Oracle, RandomPredictUpdateMatch)
{
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> dtd(0.01, 0.5), var(0.001, 1.0);
  for (int trial = 0; trial < 500; ++trial)
  {
    KFConfig cfg;
    cfg.q_pos = var(rng);
    cfg.q_vel = var(rng);
    cfg.q_box = var(rng);
    cfg.r_pos = var(rng);
    cfg.r_vel = var(rng);
    cfg.r_box = var(rng);
    KFStated s;
    s.x = random_state(rng);
    s.P = random_spd(rng);
    const double dt = dtd(rng);
    const StateVector<double> z = random_state(rng);

    const oracle::Vec q{cfg.q_pos, cfg.q_pos, cfg.q_vel, cfg.q_vel,
                        cfg.q_box, cfg.q_box, cfg.q_box, cfg.q_box};
    const oracle::Vec r{cfg.r_pos, cfg.r_pos, cfg.r_vel, cfg.r_vel,
                        cfg.r_box, cfg.r_box, cfg.r_box, cfg.r_box};

    const auto p = predict(s, dt, cfg);
    const auto op = oracle::predict({to_vec(s.x), to_mat(s.P)}, dt, q);
    const auto u = update(p, z, cfg);
    const auto ou = oracle::update(op, to_vec(z), r);

    for (int i = 0; i < kStateSize; ++i)
    {
      ASSERT_NEAR(p.x(i), op.x[i], 1e-9);
      ASSERT_NEAR(u.x(i), ou.x[i], 1e-9);
      for (int j = 0; j < kStateSize; ++j)
      {
        ASSERT_NEAR(p.P(i, j), oracle::at(op.P, i, j), 1e-9);
        ASSERT_NEAR(u.P(i, j), oracle::at(ou.P, i, j), 1e-9);
      }
    }
  }
}

TEST(Covariance, StaysSymmetricPsd)
{
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> dtd(0.01, 0.3);
  for (int run = 0; run < 20; ++run)
  {
    const KFConfig cfg;
    KFStated s;
    s.x = random_state(rng);
    s.P = random_spd(rng);
    for (int k = 0; k < 100; ++k)
    {
      s = predict(s, dtd(rng), cfg);
      expect_symmetric_psd(s.P);
      if (k % 5 != 4)
      {
        s = update(s, random_state(rng), cfg);
        expect_symmetric_psd(s.P);
      }
    }
  }
}

TEST(Convergence, ExactMeasurementsZeroProcessNoise)
{
  // Exact measurements: R is tiny next to the seeded uncertainty.
  KFConfig cfg;
  cfg.q_pos = cfg.q_vel = cfg.q_box = 0.0;
  cfg.r_pos = cfg.r_vel = cfg.r_box = 1e-8;
  const double dt = 0.1;
  StateVector<double> truth;
  truth << 2, 10, 1.5, -2, 2.5, 1.5, 10.5, 9.5;

  KFStated s;
  s.x = truth + (StateVector<double>() << 0.8, -0.6, 3, 2, 0.5, -0.5, 0.4, -0.2).finished();
  double prev_err = std::hypot(s.x(kPx) - truth(kPx), s.x(kPy) - truth(kPy));
  for (int k = 0; k < 10; ++k)
  {
    s = predict(s, dt, cfg);
    truth = transition_matrix(dt) * truth;
    s = update(s, truth, cfg);
    const double err = std::hypot(s.x(kPx) - truth(kPx), s.x(kPy) - truth(kPy));
    EXPECT_LE(err, prev_err);
    prev_err = err;
  }
  EXPECT_LT(std::hypot(s.x(kPx) - truth(kPx), s.x(kPy) - truth(kPy)), 1e-3);
}

TEST(Tangential, PurelyRadial)
{
  const Eigen::Vector2d prev(3, 4), curr(3.3, 4.4);
  const auto v = estimate_tangential_velocity(prev, curr, 5.0, 0.1, 0.7);
  const double phi = std::atan2(3.3, 4.4);
  EXPECT_NEAR(v.x(), 5.0 * std::sin(phi), 1e-12);
  EXPECT_NEAR(v.y(), 5.0 * std::cos(phi), 1e-12);
}

TEST(Tangential, LateralStepExample)
{
  const Eigen::Vector2d prev(0, 10), curr(0.5, 10);
  const auto v = estimate_tangential_velocity(prev, curr, 0.0, 0.1, 1.0);
  const double theta = std::atan2(0.5, 10.0);
  const double vt = 10.0 * std::sin(theta) / 0.1;
  EXPECT_NEAR(v.x(), vt * std::cos(theta), 1e-12);
  EXPECT_NEAR(v.x(), 4.99, 0.01);
  // Lateral motion across boresight produces a small closing component.
  EXPECT_NEAR(v.y(), -vt * std::sin(theta), 1e-12);
}

TEST(Tangential, XiZeroDropsTangentialTerm)
{
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 200; ++i)
  {
    const Eigen::Vector2d prev(u(rng), std::abs(u(rng)) + 1), curr(u(rng), std::abs(u(rng)) + 1);
    const double vr = u(rng);
    EXPECT_EQ(estimate_tangential_velocity(prev, curr, vr, 0.1, 0.0),
              radial_velocity_vector(curr, vr));
  }
}

TEST(Tangential, RecoversConstantVelocity)
{
  // For rigid constant-velocity motion the chord estimate is exact: with
  // xi = 1 and the true vr at curr the full velocity is recovered up to the
  // range change over the step.
  const Eigen::Vector2d v_true(2.0, -1.0);
  const Eigen::Vector2d prev(-3.0, 12.0);
  const double dt = 0.05;
  const Eigen::Vector2d curr = prev + v_true * dt;
  const double phi = std::atan2(curr.x(), curr.y());
  const double vr = v_true.dot(Eigen::Vector2d(std::sin(phi), std::cos(phi)));
  const auto v = estimate_tangential_velocity(prev, curr, vr, dt, 1.0);
  EXPECT_NEAR(v.x(), v_true.x(), 0.05);
  EXPECT_NEAR(v.y(), v_true.y(), 0.05);
}

TEST(Tangential, Errors)
{
  const Eigen::Vector2d o(0, 0), p(1, 1);
  EXPECT_THROW(estimate_tangential_velocity(o, p, 1.0, 0.1, 0.5), ValidationError);
  EXPECT_THROW(estimate_tangential_velocity(p, p, 1.0, 0.0, 0.5), ValidationError);
}

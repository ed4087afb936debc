#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "nrgg/errors.hpp"
#include "nrgg/theory.hpp"

using namespace nrgg;

namespace {

double binomial_tail(double n, double prob, double k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  return boost::math::cdf(boost::math::complement(boost::math::binomial_distribution<>(n, prob), k - 1));
}

double poisson_tail(double mu, double k) {
  if (k <= 0) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::poisson_distribution<>(mu), k - 1));
}

// Plain bisection for τ(ln τ − 1) = rhs on [e, 1e6].
double tau_oracle(double rhs) {
  double lo = std::numbers::e, hi = 1e6;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * (std::log(mid) - 1) >= rhs ? hi : lo) = mid;
  }
  return hi;
}

InstanceParams instance(double n, double nrd, int d, Norm norm = Norm::L2) {
  InstanceParams p;
  p.n = n;
  p.d = d;
  p.norm = norm;
  p.r = std::pow(nrd / n, 1.0 / d);
  return p;
}

}  // namespace

TEST_CASE("H") {
  CHECK(H(1.0) == doctest::Approx(0.0));
  CHECK(H(0.0) == 1.0);
  CHECK(H(std::numbers::e) == doctest::Approx(1.0));
  CHECK_THROWS_AS(H(-0.5), ArgumentError);
}

TEST_CASE("tail sandwich examples") {
  auto s = binomial_tail_sandwich(1, 1);
  CHECK(s.lower == doctest::Approx(1 / std::numbers::e));
  CHECK(s.upper == doctest::Approx(std::numbers::e));

  s = binomial_tail_sandwich(1, 3);
  CHECK(s.lower == doctest::Approx(1.68e-3).epsilon(0.01));
  CHECK(s.upper == doctest::Approx(0.744).epsilon(0.01));
  const double exact = binomial_tail(10, 0.1, 3);
  CHECK(exact == doctest::Approx(0.0702).epsilon(0.01));
  CHECK(s.lower <= exact);
  CHECK(exact <= s.upper);

  s = binomial_tail_sandwich(2, 10);
  const double pois = poisson_tail(2, 10);
  CHECK(pois == doctest::Approx(4.65e-5).epsilon(0.01));
  CHECK(s.lower <= pois);
  CHECK(pois <= s.upper);

  CHECK_THROWS_AS(binomial_tail_sandwich(3, 2), ArgumentError);
  CHECK_THROWS_AS(binomial_tail_sandwich(0, 2), ArgumentError);
}

TEST_CASE("Chernoff examples") {
  CHECK(chernoff_tail(4, 4) == doctest::Approx(1.0));
  CHECK(chernoff_tail(1, 3) == doctest::Approx(std::exp(-(1 - 3 + 3 * std::log(3.0)))));
  CHECK(chernoff_tail(1, 3) == doctest::Approx(0.2736).epsilon(1e-3));
  CHECK(poisson_tail(1, 3) == doctest::Approx(0.0803).epsilon(1e-2));
  CHECK(poisson_tail(1, 3) <= chernoff_tail(1, 3));
  CHECK(chernoff_tail(5, 20) < 1.0);
  CHECK(poisson_tail(5, 20) <= chernoff_tail(5, 20));
  CHECK_THROWS_AS(chernoff_tail(2, 1), ArgumentError);
}

TEST_CASE("sandwich and Chernoff hold on the grid") {
  for (double mu : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (double k = std::ceil(mu); k <= 25; ++k) {
      const auto s = binomial_tail_sandwich(mu, k);
      const double ch = chernoff_tail(mu, k);
      const double pois = poisson_tail(mu, k);
      CHECK(s.lower <= pois);
      CHECK(pois <= s.upper);
      CHECK(pois <= ch);
      for (double n : {50.0, 200.0, 1000.0, 10000.0}) {
        const double b = binomial_tail(n, mu / n, k);
        CHECK(s.lower <= b);
        CHECK(b <= s.upper);
        CHECK(b <= ch);
      }
    }
  }
}

TEST_CASE("solve_eta") {
  CHECK(solve_eta(1, 1, 2) == doctest::Approx(std::numbers::e).epsilon(1e-10));
  const double big = solve_eta(1e6, 1, 2);
  CHECK(big > 1.0);
  CHECK(big < 1.01);
  for (double t : {0.5, 2.0, 5.0, 40.0}) {
    for (int d = 1; d <= 3; ++d) {
      for (Norm norm : {Norm::L1, Norm::L2, Norm::LInf}) {
        const double theta = unit_ball_volume(d, norm);
        const double c = theta / std::pow(2.0, d);
        const double eta = solve_eta(t, d, theta);
        CHECK(eta >= c);
        CHECK(std::fabs(H(eta / c) - 1 / (c * t)) < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(solve_eta(0, 2, 1), ArgumentError);
}

TEST_CASE("solve_tau") {
  CHECK(solve_tau_rhs(-1.0) == 2.0);
  CHECK(solve_tau_rhs(2 * (std::log(2.0) - 1)) == 2.0);
  const double tau = solve_tau(2, 1, 2);
  CHECK(tau == doctest::Approx(tau_oracle(0.5)).epsilon(1e-10));
  CHECK(std::fabs(tau * (std::log(tau) - 1) - 0.5) < 1e-10);
  const double tau2 = solve_tau(1, 2, std::numbers::pi);
  CHECK(std::fabs(tau2 * (std::log(tau2) - 1) - 1 / std::numbers::pi) < 1e-10);
  for (double t : {0.1, 1.0, 10.0, 1e6}) {
    const double v = solve_tau(t, 2, std::numbers::pi);
    CHECK(v >= 2.0);
    CHECK(v * (std::log(v) - 1) >= 4 / (4 * std::numbers::pi * t) - 1e-10);
  }
}

TEST_CASE("T threshold") {
  CHECK(T_threshold(2, std::numbers::pi) == doctest::Approx(160 / std::numbers::pi));
  CHECK(T_threshold(1, 2) == doctest::Approx(40.0));
  double prev = T_threshold(3, 0.5);
  for (double theta = 1; theta < 1e6; theta *= 3) {
    const double v = T_threshold(3, theta);
    CHECK(v > 0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(T_threshold(2, 0), ArgumentError);
}

TEST_CASE("occupancy bounds") {
  RegimeParams sub;
  sub.regime = Regime::Subcritical;
  sub.alpha = 0.5;
  CHECK(m_w_bound(Window::W1, sub, 1e4, 1e-3) == 8.0);
  CHECK(m_w_bound(Window::W3, sub, 1e4, 1e-3) == 8.0);
  CHECK_THROWS_AS(m_w_bound(Window::Half, sub, 1e4, 1e-3), ArgumentError);

  RegimeParams sup;
  sup.regime = Regime::Supercritical;
  sup.t = 2;
  sup.n = 1000;
  const double r = radius_for_regime(sup);
  const double nrd = 1000 * r * r;
  CHECK(nrd == doctest::Approx(2 * std::log(1000.0)));
  CHECK(m_w_bound(Window::W1, sup, 1000, r) ==
        doctest::Approx(solve_tau(2, 2, std::numbers::pi) * 4 * std::numbers::pi * nrd));

  RegimeParams th;
  th.regime = Regime::Thermodynamic;
  const double n = 1e5, g = std::log(n) / std::log(std::log(n));
  CHECK_THROWS_AS(m_w_bound(Window::W3, th, n, std::sqrt(g / n)), DomainError);
  const double small = 0.001;
  const double inner = std::log(n) / (std::numbers::pi * 4 * n * small * small);
  CHECK(m_w_bound(Window::W1, th, n, small) == doctest::Approx(5 * std::log(n) / std::log(inner)));
}

TEST_CASE("prediction examples") {
  InstanceParams er;
  er.n = 1024;
  er.q = 0.5;
  const auto e = predict_omega(PerturbModel::ErdosRenyi, "ER", er);
  CHECK(e.lower == 10.0);
  CHECK(e.upper == doctest::Approx(20.0));

  auto del = instance(1e5, 4.72, 2);
  del.p = 0.5;
  const auto dp = predict_omega(PerturbModel::DeletionOnly, "II", del);
  const double phi = std::log(1e5) / (2 * std::log(std::log(1e5) / 4.72));
  CHECK(phi == doctest::Approx(6.45).epsilon(1e-3));
  CHECK(dp.lower == 2.0);

  auto ins = instance(1000, 2 * std::log(1000.0), 2);
  ins.t = 2;
  const auto ip = predict_omega(PerturbModel::InsertionOnly, "III", ins);
  CHECK(ip.lower == doctest::Approx(0.5 * solve_eta(2, 2, std::numbers::pi) * 13.8155).epsilon(1e-4));
  CHECK(ip.upper_scaling_only);
  CHECK_FALSE(ip.lower_scaling_only);

  auto sup = instance(4096, 45 * std::log(4096.0), 1, Norm::LInf);
  sup.p = 0.5;
  const auto sp = predict_omega(PerturbModel::DeletionOnly, "III", sup);
  CHECK(sp.condition == ConditionStatus::Satisfied);
  CHECK(sp.upper == doctest::Approx(3 * std::log(sup.nrd()) / std::log(2.0)));
  CHECK(sp.lower == std::floor(std::log(2 * sup.nrd() / 16) / std::log(2.0)));

  CHECK_THROWS_AS(predict_omega(PerturbModel::DeletionOnly, "II.a", del), ArgumentError);
  CHECK_THROWS_AS(predict_omega(PerturbModel::InsertionOnly, "IV", ins), ArgumentError);
}

TEST_CASE("lower <= upper on a parameter grid") {
  int evaluated = 0;
  for (PerturbModel model : {PerturbModel::InsertionOnly, PerturbModel::DeletionOnly, PerturbModel::Combined,
                             PerturbModel::ErdosRenyi}) {
    for (const auto& tag : case_tags(model)) {
      for (double n : {100.0, 1e4, 1e6}) {
        for (double nrd : {1e-3, 0.5, 3.0, 20.0, 500.0}) {
          for (double q : {0.0, 1e-4, 0.1, 0.5}) {
            for (double pp : {0.0, 0.3, 0.7}) {
              auto p = instance(n, nrd, 2);
              p.q = q;
              p.p = pp;
              p.alpha = 0.5;
              try {
                const auto pr = predict_omega(model, tag, p);
                CHECK(pr.lower <= pr.upper);
                CHECK(std::isfinite(pr.lower));
                ++evaluated;
              } catch (const ArgumentError&) {
              } catch (const NumericError&) {
              }
            }
          }
        }
      }
    }
  }
  CHECK(evaluated > 300);
}

TEST_CASE("case inference and model names") {
  auto p = instance(1e4, 0.5, 2);
  p.q = 0.0;
  CHECK(infer_case(PerturbModel::InsertionOnly, Regime::Thermodynamic, p) == "II.a");
  p.q = 0.3;
  CHECK(infer_case(PerturbModel::InsertionOnly, Regime::Thermodynamic, p) == "II.b");
  CHECK(infer_case(PerturbModel::DeletionOnly, Regime::Supercritical, p) == "III");
  CHECK(infer_case(PerturbModel::ErdosRenyi, Regime::Supercritical, p) == "ER");
  CHECK(model_for(0, 0.1) == PerturbModel::InsertionOnly);
  CHECK(model_for(0.1, 0) == PerturbModel::DeletionOnly);
  CHECK(model_for(0.1, 0.1) == PerturbModel::Combined);
  for (PerturbModel m : {PerturbModel::InsertionOnly, PerturbModel::DeletionOnly, PerturbModel::Combined,
                         PerturbModel::ErdosRenyi})
    CHECK(parse_model(to_string(m)) == m);
}

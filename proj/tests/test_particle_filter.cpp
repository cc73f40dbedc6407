#include <doctest.h>

#include <cmath>

#include "sgtrack/particle_filter.hpp"

using namespace sgtrack;

namespace {

FilterParams table_params() {
  FilterParams p;  // defaults follow the reference parameter table
  return p;
}

Frame solid_frame(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f.set_pixel(x, y, r, g, b);
  return f;
}

Frame frame_with_target(int w, int h, const BBox& box, uint8_t r, uint8_t g,
                        uint8_t b) {
  Frame f = solid_frame(w, h, 96, 96, 96);
  const int x0 = std::max(0, static_cast<int>(std::lround(box.left())));
  const int y0 = std::max(0, static_cast<int>(std::lround(box.top())));
  const int x1 = std::min(w, x0 + static_cast<int>(box.width));
  const int y1 = std::min(h, y0 + static_cast<int>(box.height));
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) f.set_pixel(x, y, r, g, b);
  return f;
}

ColorHistogram red_model() {
  ColorHistogram h;
  h[9] = 1.0;  // fully saturated red
  return h;
}

}  // namespace

TEST_CASE("init_cloud spreads uniformly weighted particles") {
  const FilterParams params = table_params();
  RandomStream rng(3);
  ParticleCloud cloud({100, 100}, 20, 30, red_model(), params, rng);
  REQUIRE(cloud.particles().size() == 50);
  for (const Particle& p : cloud.particles())
    CHECK(p.weight == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("init_cloud sample mean concentrates around the center") {
  const FilterParams params = table_params();
  int within = 0;
  const int runs = 1000;
  const double bound = 3.0 * params.sigma_c / std::sqrt(50.0);
  for (int s = 0; s < runs; ++s) {
    RandomStream rng(1000 + s);
    ParticleCloud cloud({200, 150}, 20, 30, red_model(), params, rng);
    double mx = 0.0, my = 0.0;
    for (const Particle& p : cloud.particles()) {
      mx += p.state.x;
      my += p.state.y;
    }
    mx /= 50.0;
    my /= 50.0;
    if (std::fabs(mx - 200.0) <= bound && std::fabs(my - 150.0) <= bound) ++within;
  }
  CHECK(within >= static_cast<int>(0.99 * runs));
}

TEST_CASE("init_cloud with zero spread puts everything at the center") {
  FilterParams params = table_params();
  params.sigma_c = 0.0;
  RandomStream rng(5);
  ParticleCloud cloud({42, 24}, 20, 30, red_model(), params, rng);
  for (const Particle& p : cloud.particles()) {
    CHECK(p.state.x == 42.0);
    CHECK(p.state.y == 24.0);
  }
}

TEST_CASE("resample keeps the count and honors degenerate weights") {
  const FilterParams params = table_params();
  RandomStream rng(7);
  ParticleCloud cloud({50, 50}, 20, 30, red_model(), params, rng);

  auto& particles = cloud.mutable_particles();
  for (Particle& p : particles) p.weight = 0.0;
  particles[0].weight = 1.0;
  const Point2 winner = particles[0].state;
  cloud.resample(rng);
  REQUIRE(cloud.particles().size() == 50);
  for (const Particle& p : cloud.particles()) {
    CHECK(p.state.x == winner.x);
    CHECK(p.state.y == winner.y);
    CHECK(p.weight == doctest::Approx(0.02));
  }
}

TEST_CASE("systematic resampling at uniform weights selects each particle once") {
  const FilterParams params = table_params();
  RandomStream rng(9);
  ParticleCloud cloud({50, 50}, 20, 30, red_model(), params, rng);
  std::vector<Point2> before;
  for (const Particle& p : cloud.particles()) before.push_back(p.state);
  cloud.resample(rng);
  for (size_t i = 0; i < before.size(); ++i) {
    CHECK(cloud.particles()[i].state.x == before[i].x);
    CHECK(cloud.particles()[i].state.y == before[i].y);
  }
}

TEST_CASE("resample falls back to uniform selection on all-zero weights") {
  const FilterParams params = table_params();
  RandomStream rng(11);
  ParticleCloud cloud({50, 50}, 20, 30, red_model(), params, rng);
  for (Particle& p : cloud.mutable_particles()) p.weight = 0.0;
  cloud.resample(rng);
  REQUIRE(cloud.particles().size() == 50);
  for (const Particle& p : cloud.particles()) CHECK(p.weight == doctest::Approx(0.02));
}

TEST_CASE("adaptive_sigma saturates at both ends") {
  FilterParams params = table_params();
  params.sigma_c = 0.0;
  RandomStream rng(13);
  ParticleCloud cloud({50, 50}, 20, 30, red_model(), params, rng);

  // Before the first reweight the lower bound applies.
  CHECK(cloud.adaptive_sigma(params) ==
        doctest::Approx(params.tau_lambda * params.sigma_u));

  // All 50 particles on an exact match: the likelihood sum tops beta and
  // lambda clamps to the lower bound.
  const Frame f = frame_with_target(200, 200, BBox{{50, 50}, 20, 30}, 255, 0, 0);
  const HsvPlane plane(f);
  cloud.reweight(plane, params);
  CHECK(cloud.last_likelihood_sum() == doctest::Approx(50.0).epsilon(1e-9));
  CHECK(cloud.adaptive_sigma(params) ==
        doctest::Approx(params.tau_lambda * params.sigma_u));

  // Zero likelihood everywhere: lambda rises to alpha.
  ParticleCloud lost({-500, -500}, 20, 30, red_model(), params, rng);
  lost.reweight(plane, params);
  CHECK(lost.adaptive_sigma(params) ==
        doctest::Approx(params.alpha * params.sigma_u));
}

TEST_CASE("adaptive lambda formula against hand values") {
  // lambda_hat = max(alpha (1 - min(sum, beta)/beta), tau_lambda)
  const double alpha = 5.0, beta = 25.0, tau = 0.2, sigma_u = 8.0;
  auto sigma_for = [&](double sum) {
    const double lambda = alpha * (1.0 - std::min(sum, beta) / beta);
    return std::max(lambda, tau) * sigma_u;
  };
  CHECK(sigma_for(25.0) == doctest::Approx(tau * sigma_u));
  CHECK(sigma_for(0.0) == doctest::Approx(5.0 * sigma_u));
  CHECK(sigma_for(20.0) == doctest::Approx(1.0 * sigma_u).epsilon(1e-9));
  CHECK(sigma_for(50.0) == doctest::Approx(tau * sigma_u));
}

TEST_CASE("propagate adds zero-mean noise with the adaptive deviation") {
  FilterParams params = table_params();
  params.sigma_c = 0.0;
  params.particle_count = 10000;
  RandomStream rng(17);
  ParticleCloud cloud({300, 300}, 20, 30, red_model(), params, rng);
  const double expected_sigma = cloud.adaptive_sigma(params);
  cloud.propagate(params, rng);
  double sx = 0.0, sy = 0.0;
  for (const Particle& p : cloud.particles()) {
    sx += (p.state.x - 300.0) * (p.state.x - 300.0);
    sy += (p.state.y - 300.0) * (p.state.y - 300.0);
    CHECK(p.weight == doctest::Approx(1.0 / 10000));
  }
  const double dev_x = std::sqrt(sx / 10000);
  const double dev_y = std::sqrt(sy / 10000);
  CHECK(dev_x == doctest::Approx(expected_sigma).epsilon(0.05));
  CHECK(dev_y == doctest::Approx(expected_sigma).epsilon(0.05));
}

TEST_CASE("reweight follows pi_t ~ pi_{t-1} * likelihood") {
  FilterParams params = table_params();
  params.particle_count = 2;
  params.sigma_c = 0.0;
  RandomStream rng(19);
  // Two particles: one dead on the red target, one on background.
  const Frame f = frame_with_target(200, 200, BBox{{60, 60}, 20, 30}, 255, 0, 0);
  const HsvPlane plane(f);
  ParticleCloud cloud({60, 60}, 20, 30, red_model(), params, rng);
  cloud.mutable_particles()[1].state = Point2{150, 150};
  cloud.reweight(plane, params);
  // Background box has bhattacharyya distance 1 to the red model.
  const double l_bg = likelihood_from_distance(1.0, params.sigma_b);
  const double expected_w0 = 0.5 / (0.5 + 0.5 * l_bg);
  CHECK(cloud.particles()[0].weight == doctest::Approx(expected_w0).epsilon(1e-9));
  CHECK(cloud.particles()[0].weight + cloud.particles()[1].weight ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cloud.last_likelihood_sum() == doctest::Approx(1.0 + l_bg).epsilon(1e-9));
  CHECK(cloud.last_confidence_product_sum() ==
        doctest::Approx(0.5 + 0.5 * l_bg).epsilon(1e-9));
}

TEST_CASE("reweight with uniform priors and unit likelihoods accumulates exactly 1") {
  FilterParams params = table_params();
  params.sigma_c = 0.0;
  RandomStream rng(23);
  const Frame f = frame_with_target(200, 200, BBox{{60, 60}, 20, 30}, 255, 0, 0);
  const HsvPlane plane(f);
  ParticleCloud cloud({60, 60}, 20, 30, red_model(), params, rng);
  cloud.reweight(plane, params);
  CHECK(cloud.last_confidence_product_sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cloud.confidence() ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
  CHECK(cloud.confidence() == doctest::Approx(0.6321205588285577).epsilon(1e-9));
}

TEST_CASE("reweight resets to uniform when every likelihood is zero") {
  FilterParams params = table_params();
  params.sigma_c = 0.0;
  RandomStream rng(29);
  // Model is red but the frame is pure background.
  const Frame f = solid_frame(200, 200, 96, 96, 96);
  const HsvPlane plane(f);
  ParticleCloud cloud({60, 60}, 20, 30, red_model(), params, rng);
  cloud.reweight(plane, params);
  // Bhattacharyya distance 1 gives a tiny but nonzero likelihood, so use
  // an out-of-frame cloud for the true zero case.
  ParticleCloud outside({-500, -500}, 20, 30, red_model(), params, rng);
  outside.reweight(plane, params);
  CHECK(outside.last_confidence_product_sum() == 0.0);
  CHECK(outside.last_likelihood_sum() == 0.0);
  for (const Particle& p : outside.particles())
    CHECK(p.weight == doctest::Approx(0.02));
  CHECK(outside.confidence() == 0.0);
}

TEST_CASE("estimate_state oracle values") {
  FilterParams params = table_params();
  params.particle_count = 2;
  params.sigma_c = 0.0;
  RandomStream rng(31);
  ParticleCloud cloud({0, 0}, 20, 30, red_model(), params, rng);
  auto& particles = cloud.mutable_particles();
  particles[0].state = {0, 0};
  particles[0].weight = 0.25;
  particles[1].state = {4, 8};
  particles[1].weight = 0.75;
  const Point2 est = cloud.estimate_state();
  CHECK(est.x == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(est.y == doctest::Approx(6.0).epsilon(1e-12));

  particles[0].weight = 1.0;
  particles[1].weight = 0.0;
  CHECK(cloud.estimate_state().x == 0.0);
}

TEST_CASE("confidence is monotone and below 1") {
  // With normalized prior weights the accumulator cannot exceed 1; check
  // well past that range, stopping where 1 - exp(-x) is representably
  // below 1 in double precision.
  double prev = -1.0;
  for (double acc = 0.0; acc <= 30.0; acc += 1.5) {
    const double zeta = 1.0 - std::exp(-acc);
    CHECK(zeta > prev);
    CHECK(zeta < 1.0);
    prev = zeta;
  }
}

TEST_CASE("estimate_likelihood is 1 on an exact match and tiny off-target") {
  FilterParams params = table_params();
  params.sigma_c = 0.0;
  RandomStream rng(37);
  const Frame f = frame_with_target(200, 200, BBox{{60, 60}, 20, 30}, 255, 0, 0);
  const HsvPlane plane(f);
  ParticleCloud cloud({60, 60}, 20, 30, red_model(), params, rng);
  CHECK(cloud.estimate_likelihood(plane, params) == doctest::Approx(1.0));
  ParticleCloud off({150, 150}, 20, 30, red_model(), params, rng);
  CHECK(off.estimate_likelihood(plane, params) ==
        doctest::Approx(3.726653172078671e-06).epsilon(1e-6));
}

TEST_CASE("deterministic clouds from identical seeds") {
  const FilterParams params = table_params();
  const Frame f = frame_with_target(200, 200, BBox{{60, 60}, 20, 30}, 255, 0, 0);
  const HsvPlane plane(f);
  auto run = [&]() {
    RandomStream rng(4242);
    ParticleCloud cloud({60, 60}, 20, 30, red_model(), params, rng);
    for (int t = 0; t < 5; ++t) {
      cloud.resample(rng);
      cloud.propagate(params, rng);
      cloud.reweight(plane, params);
    }
    return cloud;
  };
  const ParticleCloud a = run();
  const ParticleCloud b = run();
  for (size_t i = 0; i < a.particles().size(); ++i) {
    CHECK(a.particles()[i].state.x == b.particles()[i].state.x);
    CHECK(a.particles()[i].state.y == b.particles()[i].state.y);
    CHECK(a.particles()[i].weight == b.particles()[i].weight);
  }
}

TEST_CASE("static target stays locked for 100 frames") {
  const FilterParams params = table_params();
  const BBox target{{120, 90}, 20, 30};
  const Frame f = frame_with_target(320, 180, target, 255, 0, 0);
  const HsvPlane plane(f);
  int frames_total = 0;
  int frames_within = 0;
  for (int s = 0; s < 20; ++s) {
    RandomStream rng(9000 + s);
    ParticleCloud cloud(target.center, 20, 30, red_model(), params, rng);
    for (int t = 0; t < 100; ++t) {
      cloud.resample(rng);
      cloud.propagate(params, rng);
      cloud.reweight(plane, params);
      const Point2 est = cloud.estimate_state();
      ++frames_total;
      if (std::hypot(est.x - 120.0, est.y - 90.0) <= 2.0 * params.sigma_u)
        ++frames_within;
    }
  }
  CHECK(frames_within >= static_cast<int>(0.95 * frames_total));
}

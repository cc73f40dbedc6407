#include "sgtrack/particle_filter.hpp"

#include <cmath>
#include <stdexcept>

namespace sgtrack {

void FilterParams::validate() const {
  if (particle_count <= 0)
    throw std::invalid_argument("filter: particle count must be positive");
  if (sigma_u <= 0.0 || alpha <= 0.0 || beta <= 0.0 || sigma_c < 0.0 ||
      sigma_b <= 0.0 || tau_lambda <= 0.0)
    throw std::invalid_argument("filter: parameters must be positive");
  if (tau_lambda > alpha)
    throw std::invalid_argument("filter: tau_lambda must not exceed alpha");
}

ParticleCloud::ParticleCloud(const Point2& center, double box_width,
                             double box_height, ColorHistogram model_hist,
                             const FilterParams& params, RandomStream& rng)
    : box_width_(box_width), box_height_(box_height),
      model_hist_(std::move(model_hist)) {
  params.validate();
  if (box_width <= 0.0 || box_height <= 0.0)
    throw std::invalid_argument("ParticleCloud: box size must be positive");
  particles_.resize(params.particle_count);
  const double w0 = 1.0 / params.particle_count;
  for (Particle& p : particles_) {
    p.state.x = rng.gaussian(center.x, params.sigma_c);
    p.state.y = rng.gaussian(center.y, params.sigma_c);
    p.weight = w0;
  }
}

void ParticleCloud::resample(RandomStream& rng) {
  const size_t n = particles_.size();
  double total = 0.0;
  for (const Particle& p : particles_) total += p.weight;

  std::vector<Particle> out(n);
  const double w0 = 1.0 / static_cast<double>(n);
  if (total <= 0.0) {
    // Degenerate cloud: fall back to uniform selection.
    for (size_t k = 0; k < n; ++k) {
      out[k] = particles_[rng.uniform_index(n)];
      out[k].weight = w0;
    }
    particles_ = std::move(out);
    return;
  }

  const double start = rng.uniform01() * total / static_cast<double>(n);
  double cumulative = particles_[0].weight;
  size_t i = 0;
  for (size_t k = 0; k < n; ++k) {
    const double u = start + static_cast<double>(k) * total / static_cast<double>(n);
    while (cumulative < u && i + 1 < n) {
      ++i;
      cumulative += particles_[i].weight;
    }
    out[k] = particles_[i];
    out[k].weight = w0;
  }
  particles_ = std::move(out);
}

double ParticleCloud::adaptive_sigma(const FilterParams& params) const {
  double lambda_hat = params.tau_lambda;
  if (has_reweighted_) {
    const double s = std::min(last_likelihood_sum_, params.beta);
    const double lambda = params.alpha * (1.0 - s / params.beta);
    lambda_hat = std::max(lambda, params.tau_lambda);
  }
  return lambda_hat * params.sigma_u;
}

void ParticleCloud::propagate(const FilterParams& params, RandomStream& rng) {
  const double sigma = adaptive_sigma(params);
  for (Particle& p : particles_) {
    p.state.x += rng.gaussian(0.0, sigma);
    p.state.y += rng.gaussian(0.0, sigma);
  }
}

void ParticleCloud::reweight(const HsvPlane& frame, const FilterParams& params) {
  double likelihood_sum = 0.0;
  double product_sum = 0.0;
  std::vector<double> products(particles_.size());
  for (size_t i = 0; i < particles_.size(); ++i) {
    const BBox box{particles_[i].state, box_width_, box_height_};
    double l = 0.0;
    if (auto obs = try_extract_histogram(frame, box))
      l = likelihood(model_hist_, *obs, params.sigma_b);
    likelihood_sum += l;
    products[i] = particles_[i].weight * l;
    product_sum += products[i];
  }
  last_likelihood_sum_ = likelihood_sum;
  last_confidence_product_sum_ = product_sum;
  has_reweighted_ = true;

  if (product_sum <= 0.0) {
    const double w0 = 1.0 / static_cast<double>(particles_.size());
    for (Particle& p : particles_) p.weight = w0;
    return;
  }
  for (size_t i = 0; i < particles_.size(); ++i)
    particles_[i].weight = products[i] / product_sum;
}

Point2 ParticleCloud::estimate_state() const {
  Point2 est;
  for (const Particle& p : particles_) {
    est.x += p.weight * p.state.x;
    est.y += p.weight * p.state.y;
  }
  return est;
}

BBox ParticleCloud::estimate_box() const {
  return BBox{estimate_state(), box_width_, box_height_};
}

double ParticleCloud::confidence() const {
  return 1.0 - std::exp(-last_confidence_product_sum_);
}

double ParticleCloud::estimate_likelihood(const HsvPlane& frame,
                                          const FilterParams& params) const {
  if (auto obs = try_extract_histogram(frame, estimate_box()))
    return likelihood(model_hist_, *obs, params.sigma_b);
  return 0.0;
}

}  // namespace sgtrack

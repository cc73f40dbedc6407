#ifndef SGTRACK_PARTICLE_FILTER_HPP_
#define SGTRACK_PARTICLE_FILTER_HPP_

#include <vector>

#include "sgtrack/color_histogram.hpp"
#include "sgtrack/frame.hpp"
#include "sgtrack/geometry.hpp"
#include "sgtrack/random.hpp"

namespace sgtrack {

struct Particle {
  Point2 state;
  double weight = 0.0;
};

struct FilterParams {
  int particle_count = 50;   // N_p
  double sigma_u = 8.0;      // base diffusion deviation, pixels
  double alpha = 5.0;        // spreading factor
  double beta = 25.0;        // likelihood-sum upper bound
  double tau_lambda = 0.2;   // lower bound on the variance weight
  double sigma_c = 10.0;     // initial spread deviation, pixels
  double sigma_b = 0.2;      // appearance likelihood deviation

  void validate() const;
};

// ConDensation-style tracker for a single object: systematic resampling,
// random-walk propagation with adaptive diffusion, appearance reweighting.
class ParticleCloud {
 public:
  ParticleCloud(const Point2& center, double box_width, double box_height,
                ColorHistogram model_hist, const FilterParams& params,
                RandomStream& rng);

  void resample(RandomStream& rng);
  void propagate(const FilterParams& params, RandomStream& rng);
  void reweight(const HsvPlane& frame, const FilterParams& params);

  // lambda_hat * sigma_u from the latest likelihood sum; tau_lambda * sigma_u
  // before the first reweight.
  double adaptive_sigma(const FilterParams& params) const;

  Point2 estimate_state() const;
  BBox estimate_box() const;

  // zeta(P) = 1 - exp(-sum pi_{t-1} * likelihood), from the latest reweight.
  double confidence() const;

  // Appearance likelihood of the box centered at the current estimate.
  double estimate_likelihood(const HsvPlane& frame,
                             const FilterParams& params) const;

  const std::vector<Particle>& particles() const { return particles_; }
  std::vector<Particle>& mutable_particles() { return particles_; }
  const ColorHistogram& model_hist() const { return model_hist_; }
  double box_width() const { return box_width_; }
  double box_height() const { return box_height_; }
  double last_likelihood_sum() const { return last_likelihood_sum_; }
  double last_confidence_product_sum() const {
    return last_confidence_product_sum_;
  }
  bool has_reweighted() const { return has_reweighted_; }

 private:
  std::vector<Particle> particles_;
  double box_width_;
  double box_height_;
  ColorHistogram model_hist_;
  double last_likelihood_sum_ = 0.0;          // sum of bare likelihoods
  double last_confidence_product_sum_ = 0.0;  // sum of pi_{t-1} * likelihood
  bool has_reweighted_ = false;
};

}  // namespace sgtrack

#endif  // SGTRACK_PARTICLE_FILTER_HPP_

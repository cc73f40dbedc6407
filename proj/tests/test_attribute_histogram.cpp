#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sgtrack/attribute_histogram.hpp"

using namespace sgtrack;

namespace {
AttributeHistogram distance_hist() {
  return AttributeHistogram(25, 0.0, 1.0, AttributeHistogram::Topology::kBounded);
}
AttributeHistogram angle_hist() {
  return AttributeHistogram(18, 0.0, 2.0 * M_PI,
                            AttributeHistogram::Topology::kCircular);
}
}  // namespace

TEST_CASE("built-in kernels sum to one exactly") {
  CHECK(Kernel::high_confidence().sums_to_one_exactly());
  CHECK(Kernel::mid_confidence().sums_to_one_exactly());
  CHECK(Kernel::low_confidence().sums_to_one_exactly());
  CHECK(Kernel::high_confidence().taps().size() == 3);
  CHECK(Kernel::mid_confidence().taps().size() == 5);
  CHECK(Kernel::low_confidence().taps().size() == 7);
}

TEST_CASE("kernel construction validates its taps") {
  CHECK_THROWS_AS(Kernel({0.5, 0.5}), std::invalid_argument);       // even
  CHECK_THROWS_AS(Kernel({0.5, 0.2, 0.2}), std::invalid_argument);  // sum != 1
  CHECK_THROWS_AS(Kernel({1.5, -0.5, 0.0}), std::invalid_argument); // negative
  CHECK_NOTHROW(Kernel({0.25, 0.5, 0.25}));
}

TEST_CASE("select_kernel follows the confidence tiers") {
  CHECK(select_kernel(0.9).taps().size() == 3);
  CHECK(select_kernel(0.71).taps().size() == 3);
  CHECK(select_kernel(0.7).taps().size() == 5);
  CHECK(select_kernel(0.5).taps().size() == 5);
  CHECK(select_kernel(0.31).taps().size() == 5);
  CHECK(select_kernel(0.3).taps().size() == 7);
  CHECK(select_kernel(0.1).taps().size() == 7);
  CHECK(select_kernel(0.0).taps().size() == 7);
}

TEST_CASE("bin assignment is half-open with terminal inclusion") {
  const AttributeHistogram h = distance_hist();
  CHECK(h.bin_index(0.0) == 0);
  CHECK(h.bin_index(0.5) == 12);
  CHECK(h.bin_index(1.0) == 24);
  CHECK(h.bin_index(2.5) == 24);   // clamps above the range
  CHECK(h.bin_index(-0.5) == 0);   // clamps below
  CHECK(h.bin_center(12) == doctest::Approx(0.5));
}

TEST_CASE("bounded vote at mid-range spreads the 3-tap kernel") {
  AttributeHistogram h = distance_hist();
  h.vote(0.5, Kernel::high_confidence());
  CHECK(h.bin_mass(11) == doctest::Approx(0.3));
  CHECK(h.bin_mass(12) == doctest::Approx(0.4));
  CHECK(h.bin_mass(13) == doctest::Approx(0.3));
  CHECK(h.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("circular vote wraps around the ring") {
  AttributeHistogram h = angle_hist();
  h.vote(0.05, Kernel::high_confidence());  // bin 0
  CHECK(h.bin_mass(17) == doctest::Approx(0.3));
  CHECK(h.bin_mass(0) == doctest::Approx(0.4));
  CHECK(h.bin_mass(1) == doctest::Approx(0.3));
  CHECK(h.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("bounded vote clamps out-of-range taps into the edge bin") {
  AttributeHistogram h = distance_hist();
  h.vote(0.0, Kernel::high_confidence());  // bin 0
  CHECK(h.bin_mass(0) == doctest::Approx(0.7));
  CHECK(h.bin_mass(1) == doctest::Approx(0.3));
  CHECK(h.total_mass() == doctest::Approx(1.0).epsilon(1e-9));

  AttributeHistogram top = distance_hist();
  top.vote(1.0, Kernel::high_confidence());  // bin 24
  CHECK(top.bin_mass(24) == doctest::Approx(0.7));
  CHECK(top.bin_mass(23) == doctest::Approx(0.3));
}

TEST_CASE("NaN votes are rejected") {
  AttributeHistogram h = distance_hist();
  CHECK_THROWS_AS(h.vote(std::nan(""), Kernel::high_confidence()),
                  std::invalid_argument);
}

TEST_CASE("mass conservation over randomized votes") {
  RandomStream rng(101);
  AttributeHistogram bounded = distance_hist();
  AttributeHistogram circular = angle_hist();
  const Kernel* kernels[3] = {&Kernel::high_confidence(), &Kernel::mid_confidence(),
                              &Kernel::low_confidence()};
  const int votes = 10000;
  for (int i = 0; i < votes; ++i) {
    const Kernel& k = *kernels[rng.uniform_index(3)];
    // Range overshoot exercises the clamping paths.
    bounded.vote(rng.uniform01() * 1.4 - 0.2, k);
    circular.vote(rng.uniform01() * 2.0 * M_PI, k);
  }
  CHECK(std::fabs(bounded.total_mass() - votes) < 1e-6);
  CHECK(std::fabs(circular.total_mass() - votes) < 1e-6);
}

TEST_CASE("lookup_likelihood is mode-normalized") {
  AttributeHistogram h = distance_hist();
  CHECK_THROWS_AS(h.lookup_likelihood(0.5), std::invalid_argument);
  h.set_bin_mass(3, 2.0);
  h.set_bin_mass(4, 1.0);
  CHECK(h.lookup_likelihood(h.bin_center(3)) == doctest::Approx(1.0));
  CHECK(h.lookup_likelihood(h.bin_center(4)) == doctest::Approx(0.5));
  CHECK(h.lookup_likelihood(h.bin_center(10)) == 0.0);
}

TEST_CASE("sampling matches bin masses in distribution") {
  AttributeHistogram h = distance_hist();
  h.set_bin_mass(2, 10.0);
  h.set_bin_mass(7, 30.0);
  h.set_bin_mass(19, 60.0);
  RandomStream rng(505);
  const int n = 100000;
  AttributeHistogram counts = distance_hist();
  const Kernel delta({1.0});
  for (int i = 0; i < n; ++i) counts.vote(h.sample(rng), delta);
  // Total-variation distance between the two normalized histograms.
  double tv = 0.0;
  for (int b = 0; b < 25; ++b)
    tv += std::fabs(counts.bin_mass(b) / n - h.bin_mass(b) / 100.0);
  CHECK(tv / 2.0 < 0.02);
}

TEST_CASE("sampling returns bin centers for a point mass") {
  AttributeHistogram h = distance_hist();
  h.set_bin_mass(12, 5.0);
  RandomStream rng(17);
  for (int i = 0; i < 20; ++i) CHECK(h.sample(rng) == doctest::Approx(0.5));
}

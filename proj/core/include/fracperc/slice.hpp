#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracperc/rational.hpp"

namespace fracperc {

/// The plane z = a x + b y + c.
struct PlaneParams {
  Rational a;
  Rational b;
  Rational c;
  friend bool operator==(const PlaneParams&, const PlaneParams&) = default;
};

std::string to_string(const PlaneParams& p);

/// Maps any plane with |a|, |b| <= 1 to one with 0 <= a <= b <= 1 and the same
/// projected slice area, using reflections of the cube and the x <-> y swap.
PlaneParams to_wedge(const PlaneParams& p);

/// Which of the nine closed-form pieces applies (0..8), scanning top-down.
/// Requires 0 <= a <= b <= 1.
int slice_case(const PlaneParams& p);

/// Area of the (x, y)-projection of the unit cube cut by the plane.
/// Requires 0 <= a <= b <= 1; throws InputError otherwise.
Rational ftilde(const PlaneParams& p);

/// Actual slice area ftilde * sqrt(1 + a^2 + b^2). Display only.
double area3d(const PlaneParams& p);

/// Lower-left corners (times 3) of the seven level-1 cubes removed from the Menger sponge.
const std::array<std::array<int, 3>, 7>& removed_corners();

/// (5/9) ftilde(a, b, c) - (1/9) sum over removed corners (u, v, w) of
/// ftilde(a, b, 3(a u + b v + c - w)).
Rational htilde(const PlaneParams& p);

enum class SliceRegion {
  PositiveOffsetUnitSum,  ///< c > 0 and a + b + c <= 1
  HighOffset,             ///< 1/3 <= c <= 1
  SmallSum,               ///< a + b + c <= 2/3
  SmallSlopeSum,          ///< a + b <= 2/3
  SmallSlopeA,            ///< a < 1/3
  Grid,                   ///< remaining region, covered by the grid certificate
};
std::string to_string(SliceRegion r);

/// True iff 0 <= a <= b <= 1 and -(a + b) <= c <= 1.
bool in_admissible_region(const PlaneParams& p);
/// True iff the point lies in the grid-certified region
/// a in [1/3, 1], b in [a, 1], c in [2/3 - (a+b), 0] u [max(0, 1 - (a+b)), 1/3].
bool in_grid_region(const PlaneParams& p);

/// First analytic region containing p, else Grid. Throws InputError outside the admissible region.
SliceRegion classify_region(const PlaneParams& p);

struct VerificationReport {
  Rational step;
  std::uint64_t points = 0;
  Rational minimum;
  PlaneParams argmin;
  /// min > 0 and min^2 > 675 step^2, i.e. min > 15 sqrt(3) step.
  bool certified = false;
  double wall_seconds = 0.0;
};

/// Exact minimum of htilde over the grid a = 1/3 + i s <= 1, b = a + j s <= 1,
/// c = 2/3 - (a + b) + k s <= 1/3. Slices in a are spread over `threads` workers;
/// ties keep the first point in (a, b, c) lexicographic grid order.
VerificationReport verify_grid(const Rational& step, unsigned threads = 1);

struct NonnegativityFailure {
  PlaneParams point;
  Rational value;
};

/// Draws `count` random rational points of the admissible region (restricted to
/// `region` when given) and returns those with htilde < 0.
std::vector<NonnegativityFailure> sample_nonnegativity(std::optional<SliceRegion> region, std::uint64_t count,
                                                       std::uint64_t seed);

}  // namespace fracperc

#pragma once

// Particular-solution basis for the fully symmetric Dirichlet mode of the
// pi-area regular S-gon.
//
// Centre functions   J_{jS}(k r) cos(jS theta),            j = 0..Kc-1
// Corner functions   sum_m J_{n nu}(k rho_m) cos(n nu phi_m)
//                    for the first Kv odd n with n nu not an integer
// with k = sqrt(lambda), nu = S/(S-2), and (rho_m, phi_m) polar coordinates
// about vertex m measured from its inward bisector. Every function solves the
// Helmholtz equation exactly and is invariant under the dihedral group, so
// the Dirichlet condition only has to be checked on one half-edge. Corner
// functions of vertex m vanish on both edges meeting at m.
//
// The polygon is centred at the origin with the midpoint of edge 0 on the
// positive x axis; vertex m sits at angle (2m+1) pi / S.

#include "polyeig/bigreal.hpp"

#include <span>
#include <vector>

namespace polyeig {

struct BasisSize {
  int center = 1;
  int corner = 0;
  int total() const { return center + corner; }
  bool operator==(const BasisSize&) const = default;
};

/// pi-area regular polygon placed as described above.
struct PolygonFrame {
  PolygonFrame(long sides, int digits);

  long sides;
  BigReal circumradius;
  BigReal apothem;
  BigReal half_edge;    // length of the half-edge from the midpoint to vertex 0
  BigReal corner_order;  // nu = pi / interior angle = S / (S - 2)
  std::vector<BigReal> vertex_x;
  std::vector<BigReal> vertex_y;
  std::vector<BigReal> bisector;  // direction of the inward bisector at each vertex

  /// True when the interior angle is pi/n for an integer n, i.e. the corner
  /// functions are analytic and duplicate the centre expansion.
  bool corners_regular() const { return sides == 3 || sides == 4; }
};

class MpsBasis {
 public:
  MpsBasis(long sides, BasisSize size, int digits);

  const PolygonFrame& frame() const { return frame_; }
  BasisSize size() const { return size_; }
  int digits() const { return digits_; }

  void set_lambda(const BigReal& lambda);
  const BigReal& lambda() const { return lambda_; }
  /// Odd multiples n of nu used by the corner functions, in order.
  const std::vector<int>& corner_multiples() const { return corner_multiple_; }

  /// Values of every basis function at (x, y); `out` gets size().total() entries.
  void evaluate(const BigReal& x, const BigReal& y, std::vector<BigReal>& out) const;

 private:
  void add_center(const BigReal& x, const BigReal& y, std::vector<BigReal>& out) const;
  void add_corners(const BigReal& x, const BigReal& y, std::vector<BigReal>& out) const;
  // Horner sum of coeffs[m] * q^m for m <= last.
  void horner(const std::vector<BigReal>& coeffs, int last, const BigReal& q, BigReal& out) const;
  int cutoff(const std::vector<double>& log_coeffs, double log_t) const;

  PolygonFrame frame_;
  BasisSize size_;
  int digits_;
  BigReal lambda_;
  BigReal wavenumber_;
  std::vector<int> corner_multiple_;

  // Series coefficients 1/(m! Gamma(order + m + 1)) per basis order, and
  // their log10 as doubles for truncation decisions.
  std::vector<std::vector<BigReal>> center_series_;
  std::vector<std::vector<double>> center_log_;
  std::vector<std::vector<BigReal>> corner_series_;
  std::vector<std::vector<double>> corner_log_;

  // Scratch values at working precision, reused across calls.
  mutable std::vector<BigReal> scratch_;
};

}  // namespace polyeig

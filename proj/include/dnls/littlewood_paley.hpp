#pragma once

#include "dnls/field.hpp"

namespace dnls {

/// The dyadic bump: even, p = 1 on [0,1], p = 0 on [2,inf), smooth monotone
/// transition on [1,2] built from the standard exp(-1/t) step. By symmetry
/// p(1.5) = 1/2 exactly.
double bump(double xi);

/// Smooth step h: h = 0 for t <= 0, h = 1 for t >= 1.
double smooth_step(double t);

/// Dyadic projector selector: P_{<=k}, P_k = P_{<=k} - P_{<=k-1},
/// P_{[j,k]} = sum_{l=j}^{k} P_l and P_{>=j} = I - P_{<=j-1},
/// with P_{<=k} = 0 for k <= -1.
struct ProjectorSelector {
  enum class Kind { Leq, Band, Range, Geq };
  Kind kind;
  int k = 0;
  int j = 0;

  static ProjectorSelector leq(int k) { return {Kind::Leq, k, 0}; }
  static ProjectorSelector band(int k) { return {Kind::Band, k, 0}; }
  static ProjectorSelector range(int j, int k) { return {Kind::Range, k, j}; }
  static ProjectorSelector geq(int j) { return {Kind::Geq, 0, j}; }

  double symbol(double eta) const;
};

/// Applies the selector's Fourier multiplier. Returns the input's
/// representation.
Field project(const Field& f, const ProjectorSelector& sel);

/// Smallest K with 2^K >= max grid frequency, so P_{<=K} acts as the
/// identity on grid fields.
int max_shell(const Grid& g);

/// ||P_l f||_Linf / (2^{l/2} ||P_l f||_L2). Throws when the band content of
/// f is numerically zero.
double bernstein_ratio(const Field& f, int l);

enum class LpExponent { Two, Inf };

/// Ratio of ||[P_k, f]g||_{L^p} against the commutator-estimate majorant
/// 2^{-k} sup_y ||T_y(dx f) g||_{L^p}, the sup running over all grid shifts.
/// With low_pass_form the refined inequality is checked instead: f is
/// replaced by P_{<=k-3} f and the majorant uses P_{[k-2,k+2]} g.
/// Throws when the majorant is numerically zero.
double commutator_ratio(const Field& f, const Field& g, int k, LpExponent p,
                        bool low_pass_form = false);

}  // namespace dnls

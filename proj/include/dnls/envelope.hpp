#pragma once

#include <json.hpp>

#include "dnls/field.hpp"
#include "dnls/linfit.hpp"
#include "dnls/trajectory.hpp"

namespace dnls {

/// Bona-Smith mollifier J_{eta,s} f: spectral multiplication by
/// exp(-eta |freq|^s). Requires eta in (0,1] and s >= 1.
Field bona_smith(const Field& f, double eta, double s);

/// Log-log slope of ||J_{eta,s} f||_{H^{s+j}} against eta. Requires at least
/// 4 eta values spanning >= 2 decades. The rate contract is
/// slope >= -j/s - 0.1.
LinearFit bona_smith_rate(const Field& f, double s, double j,
                          std::span<const double> etas);

/// Minimal delta-frequency envelope of phi in H^s, normalized by R:
///   c_k = sup_j 2^{-delta |j-k|} ||P_j phi||_{H^s} / R,  k = 0..max_shell.
/// Satisfies (i) sum c_k^2 <= 2/(1-2^{-2 delta}) - 1, (ii) slow variation
/// c_j <= 2^{delta|j-k|} c_k, (iii) ||P_k phi||_{H^s} <= R c_k, and is
/// shell-wise minimal among sequences with (ii)-(iii).
struct Envelope {
  std::vector<double> c;  // shells 0..K_max
  double s = 0.0;
  double delta = 0.0;
  double R = 0.0;

  int shells() const { return static_cast<int>(c.size()); }
  /// (sum_{l >= k} c_l^2)^{1/2}
  double tail_l2(int k) const;
};

Envelope build_envelope(const Field& phi, double s, double delta, double R);

nlohmann::json envelope_to_json(const Envelope& env);
Envelope envelope_from_json(const nlohmann::json& j);

/// Discrete S_T norm of a stored shell trajectory:
/// max_t ||w(t)||_L2 + (trapezoid of ||w(t)||_Linf^4)^{1/4}.
double st_norm(const Trajectory& traj_shell);

struct EnvelopeDiagnostic {
  double m = 0.0;                          // M(T) over shells with c_k > 0
  std::vector<double> per_shell;           // 2^{sk} c_k^{-1} ||P_k v||_{S_T}
  std::vector<int> flagged_shells;         // c_k == 0 but P_k v != 0
};

/// Envelope-weighted a priori quantity M(T) on a v-trajectory.
EnvelopeDiagnostic envelope_diagnostic(const Trajectory& traj_v, const Envelope& env,
                                       double s);

struct TailBound {
  double lhs = 0.0;      // ||P_{>=k} v|| in L_T^inf H^s  +  L_T^4 Wdot^{1,inf}
  double tail_env = 0.0; // (sum_{l>=k} c_l^2)^{1/2}
  double ratio = 0.0;
  bool violation = false;  // zero tail envelope against nonzero tail field
};

TailBound tail_bound_check(const Trajectory& traj_v, const Envelope& env, double s,
                           int k);

}  // namespace dnls

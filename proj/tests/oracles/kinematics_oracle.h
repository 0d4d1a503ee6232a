// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Travel times by stepping a jerk-limited car forward in 1 ms increments.
// No closed forms: a velocity ramp is driven by a feedback jerk
// controller, and peak speeds are found by bisection on integrated
// distance.

#ifndef ELEVSCHED_TESTS_ORACLES_KINEMATICS_ORACLE_H_
#define ELEVSCHED_TESTS_ORACLES_KINEMATICS_ORACLE_H_

#include <algorithm>
#include <cmath>

namespace oracle {

struct Limits {
  double speed;
  double accel;
  double jerk;
};

struct Ramp {
  double time = 0.0;
  double distance = 0.0;  // travelled during the ramp, unsigned
};

constexpr double kStep = 1e-3;

// Changes speed from v0 to v1 (both >= 0). The controller raises |a| at
// full jerk until either the accel limit is hit or it is time to start
// unwinding it, then unwinds at full jerk. The final partial step is cut
// where the target speed is reached.
inline Ramp NumericRamp(double v0, double v1, const Limits& m) {
  Ramp r;
  if (v0 == v1) return r;
  const double s = v1 > v0 ? 1.0 : -1.0;
  double v = v0;
  double a = 0.0;  // magnitude along s
  bool unwinding = false;
  for (int guard = 0; guard < 10'000'000; ++guard) {
    const double left = s * (v1 - v);
    if (left <= 0.0) break;
    double dt = kStep;
    double jerk = 0.0;
    if (!unwinding) {
      // Raise |a| (or hold it at the limit). Shorten the step to land on
      // the instant where the limit is hit or where unwinding must start:
      // the speed still to gain equals a^2 / 2J.
      jerk = a < m.accel ? m.jerk : 0.0;
      const auto late = [&](double tau) {
        const double at = std::min(a + jerk * tau, m.accel);
        const double gained = a * tau + 0.5 * jerk * tau * tau;
        return at * at / (2.0 * m.jerk) >= left - gained;
      };
      if (jerk > 0.0) dt = std::min(dt, (m.accel - a) / jerk);
      if (late(dt)) {
        double lo = 0.0;
        double hi = dt;
        for (int i = 0; i < 60; ++i) {
          const double mid = 0.5 * (lo + hi);
          (late(mid) ? hi : lo) = mid;
        }
        dt = hi;
        unwinding = true;
      }
    } else {
      // Feedback: the jerk that lands a = 0 exactly at the target speed.
      jerk = -std::min(m.jerk, a * a / (2.0 * left));
      if (a + jerk * dt <= 0.0) dt = a / -jerk;
    }
    const double dv = a * dt + 0.5 * jerk * dt * dt;
    r.distance += v * dt + s * (0.5 * a * dt * dt + jerk * dt * dt * dt / 6.0);
    r.time += dt;
    v += s * dv;
    a = std::clamp(a + jerk * dt, 0.0, m.accel);
    if (unwinding && a == 0.0) break;
  }
  return r;
}

// Accelerate from v0 to peak vp and brake to rest: time and distance.
inline Ramp SpeedUpAndStop(double v0, double vp, const Limits& m) {
  const Ramp up = NumericRamp(v0, vp, m);
  const Ramp down = NumericRamp(vp, 0.0, m);
  return {up.time + down.time, up.distance + down.distance};
}

// Moving at v0 >= 0 towards a point `distance` ahead and stopping there.
// Requires the stopping distance from v0 to fit.
inline double TimeToStopAhead(double v0, double distance, const Limits& m) {
  if (distance <= 0.0 && v0 == 0.0) return 0.0;
  const Ramp full = SpeedUpAndStop(v0, m.speed, m);
  if (full.distance <= distance) {
    return full.time + (distance - full.distance) / m.speed;
  }
  double lo = v0;
  double hi = m.speed;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (SpeedUpAndStop(v0, mid, m).distance <= distance) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Ramp best = SpeedUpAndStop(v0, lo, m);
  // Whatever the bisection could not place is covered at the peak speed.
  const double rest = distance - best.distance;
  return best.time + (lo > 0.0 ? std::max(0.0, rest) / lo : 0.0);
}

inline double RestToRest(double distance, const Limits& m) {
  if (distance == 0.0) return 0.0;
  return TimeToStopAhead(0.0, distance, m);
}

// Car at `position` moving with signed `velocity` (zero acceleration) must
// come to rest at `target`.
inline double FromMotion(double position, double velocity, double target,
                         const Limits& m) {
  const double speed = std::abs(velocity);
  if (speed == 0.0) return RestToRest(std::abs(target - position), m);
  const double s = velocity > 0.0 ? 1.0 : -1.0;
  const double ahead = s * (target - position);
  const Ramp stop = NumericRamp(speed, 0.0, m);
  if (ahead >= stop.distance) return TimeToStopAhead(speed, ahead, m);
  const double stopped_at = position + s * stop.distance;
  return stop.time + RestToRest(std::abs(target - stopped_at), m);
}

}  // namespace oracle

#endif  // ELEVSCHED_TESTS_ORACLES_KINEMATICS_ORACLE_H_

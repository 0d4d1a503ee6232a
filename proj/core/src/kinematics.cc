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

#include "elevsched/kinematics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace elevsched {
namespace {

constexpr double kSpeedEps = 1e-12;
constexpr double kElapsedSlack = 1e-9;

void AppendRamp(MotionProfile& profile, double sign, double dv,
                const MotionLimits& limits) {
  if (dv <= 0.0) return;
  const double a = limits.max_accel;
  const double j = limits.max_jerk;
  if (dv >= a * a / j) {
    profile.Append(sign * j, a / j);
    profile.Append(0.0, dv / a - a / j);
    profile.Append(-sign * j, a / j);
  } else {
    const double peak = std::sqrt(dv * j);
    profile.Append(sign * j, peak / j);
    profile.Append(-sign * j, peak / j);
  }
}

// Distance of a ramp from v0 up to vp followed by a ramp from vp to rest.
double AccelBrakeDistance(double v0, double vp, const MotionLimits& limits) {
  return 0.5 * (v0 + vp) * VelocityChangeTime(vp - v0, limits) +
         0.5 * vp * VelocityChangeTime(vp, limits);
}

// Peak speed of an accelerate-then-brake move from v0 covering `distance`,
// assuming the distance does not allow reaching the rated speed.
double SolvePeakSpeed(double v0, double distance, const MotionLimits& limits) {
  double lo = v0;
  double hi = limits.rated_speed;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (AccelBrakeDistance(v0, mid, limits) <= distance) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Peak speed of a rest-to-rest move; the three regimes of the S-curve.
double RestToRestPeak(double distance, const MotionLimits& limits) {
  const double v = limits.rated_speed;
  const double a = limits.max_accel;
  const double j = limits.max_jerk;
  if (distance >= v * VelocityChangeTime(v, limits)) return v;
  if (distance >= 2.0 * a * a * a / (j * j)) {
    return 0.5 * (-a * a / j +
                  std::sqrt(a * a * a * a / (j * j) + 4.0 * a * distance));
  }
  return std::pow(0.5 * distance * std::sqrt(j), 2.0 / 3.0);
}

}  // namespace

void MotionLimits::Validate() const {
  if (!(rated_speed > 0.0) || !(max_accel > 0.0) || !(max_jerk > 0.0)) {
    throw std::domain_error("motion limits must be strictly positive");
  }
}

void DoorTiming::Validate() const {
  if (!(open_time >= 0.0) || !(dwell_time >= 0.0) || !(close_time >= 0.0)) {
    throw std::domain_error("door timings must be nonnegative");
  }
}

const char* DoorPhaseName(DoorPhase phase) {
  switch (phase) {
    case DoorPhase::kClosed:
      return "closed";
    case DoorPhase::kOpening:
      return "opening";
    case DoorPhase::kOpen:
      return "open";
    case DoorPhase::kClosing:
      return "closing";
  }
  return "unknown";
}

void CarKinematicState::Validate(const MotionLimits& limits) const {
  if (!(position >= -1e-9)) {
    throw std::domain_error("car position below the lobby");
  }
  if (std::abs(velocity) > limits.rated_speed + 1e-9) {
    throw std::domain_error("car velocity exceeds rated speed");
  }
  if (std::abs(velocity) > kSpeedEps && door.phase != DoorPhase::kClosed) {
    throw std::domain_error("moving car must have closed doors");
  }
}

double VelocityChangeTime(double dv, const MotionLimits& limits) {
  dv = std::abs(dv);
  if (dv <= 0.0) return 0.0;
  const double a = limits.max_accel;
  const double j = limits.max_jerk;
  if (dv >= a * a / j) return dv / a + a / j;
  return 2.0 * std::sqrt(dv / j);
}

double StoppingDistance(double v, const MotionLimits& limits) {
  v = std::abs(v);
  return 0.5 * v * VelocityChangeTime(v, limits);
}

double TravelTimeRestToRest(double distance, const MotionLimits& limits) {
  if (distance < 0.0) {
    throw std::domain_error("travel distance must be nonnegative");
  }
  if (distance == 0.0) return 0.0;
  const double v = limits.rated_speed;
  const double a = limits.max_accel;
  const double j = limits.max_jerk;
  const double full = v * VelocityChangeTime(v, limits);
  if (distance >= full) {
    return 2.0 * VelocityChangeTime(v, limits) + (distance - full) / v;
  }
  if (distance >= 2.0 * a * a * a / (j * j)) {
    const double peak = RestToRestPeak(distance, limits);
    return 2.0 * (peak / a + a / j);
  }
  return 4.0 * std::cbrt(distance / (2.0 * j));
}

double TravelTimeFromMotion(const CarKinematicState& state, double target,
                            const MotionLimits& limits) {
  state.Validate(limits);
  const double delta = target - state.position;
  const double speed = std::abs(state.velocity);
  if (speed <= kSpeedEps) return TravelTimeRestToRest(std::abs(delta), limits);

  const double sign = state.velocity > 0.0 ? 1.0 : -1.0;
  const double ahead = delta * sign;
  const double stop = StoppingDistance(speed, limits);
  if (ahead >= stop - 1e-12) {
    const double distance = std::max(ahead, stop);
    const double v = limits.rated_speed;
    const double full = AccelBrakeDistance(speed, v, limits);
    if (full <= distance) {
      return VelocityChangeTime(v - speed, limits) +
             VelocityChangeTime(v, limits) + (distance - full) / v;
    }
    const double peak = SolvePeakSpeed(speed, distance, limits);
    return VelocityChangeTime(peak - speed, limits) +
           VelocityChangeTime(peak, limits);
  }
  const double stop_at = state.position + sign * stop;
  return VelocityChangeTime(speed, limits) +
         TravelTimeRestToRest(std::abs(target - stop_at), limits);
}

double DoorCycleRemaining(const DoorTiming& timing, const DoorState& door) {
  const auto check = [&](double duration) {
    if (door.elapsed < 0.0 || door.elapsed > duration + kElapsedSlack) {
      throw std::domain_error(
          std::string("door elapsed time out of range in ") +
          DoorPhaseName(door.phase) + " phase");
    }
    return std::max(0.0, duration - door.elapsed);
  };
  switch (door.phase) {
    case DoorPhase::kClosed:
      return 0.0;
    case DoorPhase::kOpening:
      return check(timing.open_time) + timing.dwell_time + timing.close_time;
    case DoorPhase::kOpen:
      return check(timing.dwell_time) + timing.close_time;
    case DoorPhase::kClosing:
      return check(timing.close_time);
  }
  return 0.0;
}

void MotionProfile::Append(double jerk, double duration) {
  if (duration <= 0.0) return;
  phases_.push_back({jerk, duration});
}

void MotionProfile::Extend(const MotionProfile& tail) {
  for (const Phase& p : tail.phases_) Append(p.jerk, p.duration);
}

double MotionProfile::Duration() const {
  double total = 0.0;
  for (const Phase& p : phases_) total += p.duration;
  return total;
}

MotionProfile::Sample MotionProfile::At(double t) const {
  Sample s{start_position_, start_velocity_, 0.0};
  double left = std::max(0.0, t);
  for (const Phase& p : phases_) {
    if (left <= 0.0) break;
    const double tau = std::min(left, p.duration);
    s.position += s.velocity * tau + 0.5 * s.accel * tau * tau +
                  p.jerk * tau * tau * tau / 6.0;
    s.velocity += s.accel * tau + 0.5 * p.jerk * tau * tau;
    s.accel += p.jerk * tau;
    left -= tau;
  }
  return s;
}

MotionProfile PlanRestToRest(double from, double to,
                             const MotionLimits& limits) {
  MotionProfile profile(from, 0.0);
  const double distance = std::abs(to - from);
  if (distance == 0.0) return profile;
  const double sign = to > from ? 1.0 : -1.0;
  const double peak = RestToRestPeak(distance, limits);
  AppendRamp(profile, sign, peak, limits);
  const double ramps = peak * VelocityChangeTime(peak, limits);
  if (distance > ramps) profile.Append(0.0, (distance - ramps) / peak);
  AppendRamp(profile, -sign, peak, limits);
  return profile;
}

MotionProfile PlanFromMotion(double position, double velocity, double target,
                             const MotionLimits& limits) {
  const double speed = std::abs(velocity);
  if (speed <= kSpeedEps) return PlanRestToRest(position, target, limits);

  MotionProfile profile(position, velocity);
  const double sign = velocity > 0.0 ? 1.0 : -1.0;
  const double ahead = (target - position) * sign;
  const double stop = StoppingDistance(speed, limits);
  if (ahead >= stop - 1e-12) {
    const double distance = std::max(ahead, stop);
    const double v = limits.rated_speed;
    const double full = AccelBrakeDistance(speed, v, limits);
    const double peak =
        full <= distance ? v : SolvePeakSpeed(speed, distance, limits);
    AppendRamp(profile, sign, peak - speed, limits);
    const double used = AccelBrakeDistance(speed, peak, limits);
    if (distance > used) profile.Append(0.0, (distance - used) / peak);
    AppendRamp(profile, -sign, peak, limits);
    return profile;
  }
  AppendRamp(profile, -sign, speed, limits);
  profile.Extend(PlanRestToRest(position + sign * stop, target, limits));
  return profile;
}

}  // namespace elevsched

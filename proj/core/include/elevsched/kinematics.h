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

// Jerk-limited car motion and door timing.
//
// All travel times come from the standard seven-phase S-curve: jerk is
// bang-bang (+J, 0, -J), acceleration is clipped at A and velocity at V.
// A velocity change of dv costs
//
//   T(dv) = dv / A + A / J     if dv >= A^2 / J   (acceleration saturates)
//   T(dv) = 2 * sqrt(dv / J)   otherwise
//
// and, because the acceleration pulse is symmetric in time, covers exactly
// (v_from + v_to) / 2 * T(dv) metres. Every planner below is built from
// that one primitive.

#ifndef ELEVSCHED_KINEMATICS_H_
#define ELEVSCHED_KINEMATICS_H_

#include <vector>

namespace elevsched {

struct MotionLimits {
  double rated_speed = 1.6;  // m/s
  double max_accel = 1.0;    // m/s^2
  double max_jerk = 1.6;     // m/s^3

  // Throws std::domain_error unless all three limits are strictly positive.
  void Validate() const;
};

struct DoorTiming {
  double open_time = 2.0;
  double dwell_time = 3.0;
  double close_time = 3.0;

  double Cycle() const { return open_time + dwell_time + close_time; }
  void Validate() const;
};

enum class DoorPhase { kClosed, kOpening, kOpen, kClosing };

const char* DoorPhaseName(DoorPhase phase);

struct DoorState {
  DoorPhase phase = DoorPhase::kClosed;
  // Seconds spent in the current phase; ignored when closed.
  double elapsed = 0.0;

  static DoorState Closed() { return {}; }
  static DoorState Opening(double e) { return {DoorPhase::kOpening, e}; }
  static DoorState Open(double e) { return {DoorPhase::kOpen, e}; }
  static DoorState Closing(double e) { return {DoorPhase::kClosing, e}; }
};

struct CarKinematicState {
  double position = 0.0;  // metres above the lobby sill
  double velocity = 0.0;  // signed, positive is up
  DoorState door;

  // Throws std::domain_error if |velocity| exceeds the rated speed or the
  // car is moving with its doors not closed.
  void Validate(const MotionLimits& limits) const;
};

// Time for a velocity change of |dv| with acceleration starting and ending
// at zero.
double VelocityChangeTime(double dv, const MotionLimits& limits);

// Distance covered while stopping from speed |v| with a jerk-limited ramp.
double StoppingDistance(double v, const MotionLimits& limits);

// Minimum rest-to-rest travel time over `distance` metres. Throws
// std::domain_error for a negative distance.
double TravelTimeRestToRest(double distance, const MotionLimits& limits);

// Time to come to rest exactly at `target`. The car is assumed to be at
// zero acceleration (cruising or at rest). When the car can stop at or
// before the target while heading towards it, the profile accelerates to a
// peak speed and brakes into the target; otherwise it brakes to a stop and
// then performs a rest-to-rest move back to the target.
double TravelTimeFromMotion(const CarKinematicState& state, double target,
                            const MotionLimits& limits);

// Time until the doors are fully closed under the normal
// opening -> open (dwell) -> closing progression. Throws std::domain_error
// when `elapsed` exceeds the duration of the current phase.
double DoorCycleRemaining(const DoorTiming& timing, const DoorState& door);

// A piecewise-constant-jerk trajectory in world coordinates, used by the
// simulator to answer "where is the car now" mid-trip.
class MotionProfile {
 public:
  struct Phase {
    double jerk = 0.0;  // signed, world frame
    double duration = 0.0;
  };
  struct Sample {
    double position = 0.0;
    double velocity = 0.0;
    double accel = 0.0;
  };

  MotionProfile() = default;
  MotionProfile(double start_position, double start_velocity)
      : start_position_(start_position), start_velocity_(start_velocity) {}

  void Append(double jerk, double duration);
  // Appends the phases of a profile that starts where this one ends.
  void Extend(const MotionProfile& tail);

  double Duration() const;
  Sample At(double t) const;
  Sample End() const { return At(Duration()); }
  const std::vector<Phase>& phases() const { return phases_; }
  double start_position() const { return start_position_; }
  double start_velocity() const { return start_velocity_; }

 private:
  double start_position_ = 0.0;
  double start_velocity_ = 0.0;
  std::vector<Phase> phases_;
};

// Trajectory counterparts of TravelTimeRestToRest / TravelTimeFromMotion.
// Their Duration() equals the corresponding travel time up to rounding.
MotionProfile PlanRestToRest(double from, double to,
                             const MotionLimits& limits);
MotionProfile PlanFromMotion(double position, double velocity, double target,
                             const MotionLimits& limits);

}  // namespace elevsched

#endif  // ELEVSCHED_KINEMATICS_H_

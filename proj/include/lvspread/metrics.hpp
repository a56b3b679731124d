#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lvspread/model.hpp"
#include "lvspread/simulator.hpp"

namespace lvs {

enum class Field { u, v };

struct FrontTrack {
  Point direction{1.0, 0.0, 0.0};
  double level = 0.5;
  Field field = Field::u;
  std::vector<double> t;
  std::vector<double> position;  // -inf where the level is not attained
};

struct SpeedEstimate {
  double speed = 0.0;
  double intercept = 0.0;
  double t1 = 0.0, t2 = 0.0;
  double rms_residual = 0.0;
  std::size_t n_samples = 0;
};

// Outermost crossing of `level` along the ray s·e, s >= 0 (line grid: the
// sign of e[0] picks the half-line; radial grid: e is ignored).
FrontTrack track_level(const Trajectory& traj, Field field, double level, const Point& direction);

// Least squares over samples with t >= t_last/2.
SpeedEstimate fit_speed(const FrontTrack& track);

struct ZoneResult {
  std::string name;
  double c_lo = 0.0, c_hi = 0.0;  // zone is c_lo t <= |x| <= c_hi t
  std::string quantity;
  std::vector<double> t;
  std::vector<double> sup;  // per evaluation time
  double max_sup = 0.0;
  bool pass = false;
};

struct ZoneReport {
  std::string theorem;  // "c_u > c_v" or "c_v > c_u"
  double tolerance = 0.05;
  std::vector<ZoneResult> zones;
  bool pass = false;
  std::string note;
};

// c_list, fast-u case (c_u > c_v):  {c_in, c_out}
//   |x| <= c_in t: |u-1|;  |x| >= c_out t: |u|;  everywhere: |v|
// c_list, fast-v case (c_v > c_u):  {c_in, c1, c2, c_out}
//   |x| <= c_in t: |u-1|+|v|;  c1 t..c2 t: |u|+|v-1|;  |x| >= c_out t: |u|+|v|
// Evaluated on the last 25% of snapshots.
ZoneReport check_zones(const Trajectory& traj, const Speeds& speeds, const std::vector<double>& c_list, double tolerance);

void write_track_csv(std::ostream& os, const FrontTrack& track);
void write_speed_record(std::ostream& os, const SpeedEstimate& est);
void write_zone_report(std::ostream& os, const ZoneReport& rep);

}  // namespace lvs

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qaoatl/errors.hpp"
#include "qaoatl/simulator.hpp"

namespace qaoatl {

/// One row of an annealing-schedule energy table: at normalized time s the
/// hardware applies mixer amplitude A(s) and cost amplitude B(s), in GHz.
struct ScheduleTableRow {
  double s = 0.0;
  double a_ghz = 0.0;
  double b_ghz = 0.0;
};

/// Device energy-scale table A(s), B(s) on a strictly increasing s grid
/// from 0 to 1, with A non-increasing and B non-decreasing.  Violations
/// raise InputError at validation time.
class ScheduleTable {
 public:
  explicit ScheduleTable(std::vector<ScheduleTableRow> rows);

  const std::vector<ScheduleTableRow>& rows() const { return rows_; }
  double a_at_start() const { return rows_.front().a_ghz; }  // A(0)
  double b_at_end() const { return rows_.back().b_ghz; }     // B(1)

  /// Piecewise-linear inversion: the smallest s with A(s) = target
  /// (mixer) or B(s) = target (cost).  Targets beyond the table's range
  /// clamp to the nearest endpoint.
  double invert_mixer(double target_a) const;
  double invert_cost(double target_b) const;

  /// Straight-line table A(s) = 1 - s, B(s) = s on a uniform grid; used
  /// when no device table is supplied and by the test suite (its
  /// inversions have closed forms).
  static ScheduleTable synthetic_linear(std::size_t n_rows = 101);

  /// Reads "s,a_ghz,b_ghz" rows ('#' comment lines ignored) and validates.
  static ScheduleTable from_csv(std::istream& in);

 private:
  std::vector<ScheduleTableRow> rows_;
};

struct SchedulePoint {
  double t_us = 0.0;
  double s = 0.0;
};

/// Piecewise-linear annealing schedule s(t): at most kMaxSchedulePoints
/// points, t strictly increasing from 0, s non-decreasing from 0 to 1.
struct Schedule {
  std::vector<SchedulePoint> points;

  void validate() const;
  /// Two-point ramp (0, 0) -> (t_f, 1).
  static Schedule default_linear(double t_f_us);
};

inline constexpr std::size_t kMaxSchedulePoints = 12;

enum class ScheduleMode { Mixer, Cost };

std::string to_string(ScheduleMode mode);
ScheduleMode schedule_mode_from_string(const std::string& name);

/// Synthesizes a hardware schedule from QAOA angles:
///  - mixer mode matches per-layer mixer amplitudes, targeting
///    A(0) * beta_k / max beta at each layer; cost mode targets
///    B(1) * gamma_k / max gamma;
///  - layer k sits at time t_f * (k+1) / (p+1);
///  - targets map to s by table inversion (ratios and out-of-range
///    targets clamp, counting a clamped layer), then s is made
///    non-decreasing by forward clamping;
///  - the points (0, 0) and (t_f, 1) are prepended/appended;
///  - points are then retained greedily, largest vertical deviation from
///    the piecewise-linear interpolant of the kept set first (endpoints
///    always kept), until kMaxSchedulePoints are kept or every remaining
///    point is collinear — so redundant points vanish and the schedule
///    never exceeds the hardware's point budget.
Schedule schedule_from_params(const QaoaParams& params, const ScheduleTable& table,
                              ScheduleMode mode, double t_f_us);

/// CSV with "# mode ..." / "# source ..." comment headers and a
/// "t_us,s" table, doubles printed exactly.
void write_schedule_csv(std::ostream& out, const Schedule& schedule, ScheduleMode mode,
                        const std::string& source_label);

/// Parses write_schedule_csv output (comments ignored) and validates.
Schedule read_schedule_csv(std::istream& in);

}  // namespace qaoatl

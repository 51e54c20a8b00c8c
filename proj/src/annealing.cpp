#include "qaoatl/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qaoatl/format.hpp"

namespace qaoatl {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

/// Piecewise-linear s for a monotone column: smallest s where the column
/// meets `target`; clamps outside the column's range.  `decreasing` picks
/// the scan direction for A (non-increasing) vs B (non-decreasing).
double invert_column(const std::vector<ScheduleTableRow>& rows, double target, bool mixer) {
  const auto value = [&](const ScheduleTableRow& r) { return mixer ? r.a_ghz : r.b_ghz; };
  const double first = value(rows.front());
  const double last = value(rows.back());
  if (mixer) {  // non-increasing column
    if (target >= first) return rows.front().s;
    if (target <= last) return rows.back().s;
  } else {  // non-decreasing column
    if (target <= first) return rows.front().s;
    if (target >= last) return rows.back().s;
  }
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double v0 = value(rows[k]);
    const double v1 = value(rows[k + 1]);
    const bool brackets = mixer ? (v0 >= target && target >= v1) : (v0 <= target && target <= v1);
    if (!brackets) continue;
    if (v0 == v1) return rows[k].s;  // flat segment: leftmost s
    const double frac = (target - v0) / (v1 - v0);
    return rows[k].s + frac * (rows[k + 1].s - rows[k].s);
  }
  return rows.back().s;  // unreachable for a validated table
}

double interpolate(const std::vector<SchedulePoint>& pts, double t) {
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    if (t < pts[k].t_us || t > pts[k + 1].t_us) continue;
    const double span = pts[k + 1].t_us - pts[k].t_us;
    if (span == 0.0) return pts[k].s;
    const double frac = (t - pts[k].t_us) / span;
    return pts[k].s + frac * (pts[k + 1].s - pts[k].s);
  }
  return pts.back().s;
}

/// Greedy retention: endpoints first, then repeatedly the point farthest
/// (vertically) from the interpolant of the kept set, until the cap is hit
/// or everything left is collinear.
std::vector<SchedulePoint> retain_points(const std::vector<SchedulePoint>& all, std::size_t cap) {
  std::vector<bool> kept(all.size(), false);
  kept.front() = true;
  kept.back() = true;
  std::size_t n_kept = 2;

  while (n_kept < cap) {
    std::vector<SchedulePoint> current;
    for (std::size_t k = 0; k < all.size(); ++k)
      if (kept[k]) current.push_back(all[k]);

    double best_dev = 0.0;
    std::size_t best_at = all.size();
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (kept[k]) continue;
      const double dev = std::abs(all[k].s - interpolate(current, all[k].t_us));
      if (dev > best_dev) {
        best_dev = dev;
        best_at = k;
      }
    }
    if (best_at == all.size()) break;  // the rest is collinear
    kept[best_at] = true;
    ++n_kept;
  }

  std::vector<SchedulePoint> out;
  for (std::size_t k = 0; k < all.size(); ++k)
    if (kept[k]) out.push_back(all[k]);
  return out;
}

}  // namespace

ScheduleTable::ScheduleTable(std::vector<ScheduleTableRow> rows) : rows_(std::move(rows)) {
  if (rows_.size() < 2) throw InputError("ScheduleTable: needs at least two rows");
  if (rows_.front().s != 0.0 || rows_.back().s != 1.0)
    throw InputError("ScheduleTable: s must run from 0 to 1");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const auto& r = rows_[k];
    if (!std::isfinite(r.s) || !std::isfinite(r.a_ghz) || !std::isfinite(r.b_ghz))
      throw InputError("ScheduleTable: non-finite entry");
    if (r.a_ghz < 0.0 || r.b_ghz < 0.0) throw InputError("ScheduleTable: amplitudes must be nonnegative");
    if (k == 0) continue;
    if (!(rows_[k - 1].s < r.s)) throw InputError("ScheduleTable: s must be strictly increasing");
    if (rows_[k - 1].a_ghz < r.a_ghz) throw InputError("ScheduleTable: A(s) must be non-increasing");
    if (rows_[k - 1].b_ghz > r.b_ghz) throw InputError("ScheduleTable: B(s) must be non-decreasing");
  }
}

double ScheduleTable::invert_mixer(double target_a) const { return invert_column(rows_, target_a, true); }
double ScheduleTable::invert_cost(double target_b) const { return invert_column(rows_, target_b, false); }

ScheduleTable ScheduleTable::synthetic_linear(std::size_t n_rows) {
  if (n_rows < 2) throw RangeError("synthetic_linear: needs at least two rows");
  std::vector<ScheduleTableRow> rows(n_rows);
  for (std::size_t k = 0; k < n_rows; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(n_rows - 1);
    rows[k] = {s, 1.0 - s, s};
  }
  rows.front() = {0.0, 1.0, 0.0};
  rows.back() = {1.0, 0.0, 1.0};
  return ScheduleTable(std::move(rows));
}

ScheduleTable ScheduleTable::from_csv(std::istream& in) {
  std::vector<ScheduleTableRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "s,a_ghz,b_ghz") throw InputError("ScheduleTable: expected header 's,a_ghz,b_ghz'");
      header_seen = true;
      continue;
    }
    const auto fields = split_csv_row(line);
    if (fields.size() != 3) throw InputError("ScheduleTable: expected 3 fields, got line '" + line + "'");
    rows.push_back({parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2])});
  }
  return ScheduleTable(std::move(rows));
}

void Schedule::validate() const {
  if (points.size() < 2) throw InputError("Schedule: needs at least two points");
  if (points.size() > kMaxSchedulePoints)
    throw InputError("Schedule: " + std::to_string(points.size()) + " points exceeds the cap of " +
                     std::to_string(kMaxSchedulePoints));
  if (points.front().t_us != 0.0 || points.front().s != 0.0)
    throw InputError("Schedule: must start at (0, 0)");
  if (points.back().s != 1.0) throw InputError("Schedule: must end at s = 1");
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& pt = points[k];
    if (!std::isfinite(pt.t_us) || !std::isfinite(pt.s)) throw InputError("Schedule: non-finite point");
    if (pt.s < 0.0 || pt.s > 1.0) throw InputError("Schedule: s must stay within [0, 1]");
    if (k == 0) continue;
    if (!(points[k - 1].t_us < pt.t_us)) throw InputError("Schedule: times must be strictly increasing");
    if (points[k - 1].s > pt.s) throw InputError("Schedule: s must be non-decreasing");
  }
}

Schedule Schedule::default_linear(double t_f_us) {
  if (!(t_f_us > 0.0)) throw RangeError("Schedule: t_f must be positive");
  Schedule sched;
  sched.points = {{0.0, 0.0}, {t_f_us, 1.0}};
  return sched;
}

std::string to_string(ScheduleMode mode) {
  return mode == ScheduleMode::Mixer ? "mixer" : "cost";
}

ScheduleMode schedule_mode_from_string(const std::string& name) {
  if (name == "mixer") return ScheduleMode::Mixer;
  if (name == "cost") return ScheduleMode::Cost;
  throw ConfigError("schedule mode must be 'mixer' or 'cost', got '" + name + "'");
}

Schedule schedule_from_params(const QaoaParams& params, const ScheduleTable& table,
                              ScheduleMode mode, double t_f_us) {
  params.validate();
  if (!(t_f_us > 0.0)) throw RangeError("schedule_from_params: t_f must be positive");
  const std::size_t p = params.p();
  const auto& angles = mode == ScheduleMode::Mixer ? params.betas : params.gammas;
  const double peak = *std::max_element(angles.begin(), angles.end());
  const double scale = mode == ScheduleMode::Mixer ? table.a_at_start() : table.b_at_end();

  std::vector<SchedulePoint> pts;
  pts.reserve(p + 2);
  pts.push_back({0.0, 0.0});
  double floor_s = 0.0;
  for (std::size_t k = 0; k < p; ++k) {
    double ratio = peak != 0.0 ? angles[k] / peak : 0.0;
    ratio = std::clamp(ratio, 0.0, 1.0);
    const double target = scale * ratio;
    double s = mode == ScheduleMode::Mixer ? table.invert_mixer(target) : table.invert_cost(target);
    s = std::max(s, floor_s);  // forward clamp keeps s non-decreasing
    floor_s = s;
    const double t = t_f_us * static_cast<double>(k + 1) / static_cast<double>(p + 1);
    pts.push_back({t, s});
  }
  pts.push_back({t_f_us, 1.0});

  Schedule sched;
  sched.points = retain_points(pts, kMaxSchedulePoints);
  sched.validate();
  return sched;
}

void write_schedule_csv(std::ostream& out, const Schedule& schedule, ScheduleMode mode,
                        const std::string& source_label) {
  schedule.validate();
  out << "# mode " << to_string(mode) << "\n";
  out << "# source " << source_label << "\n";
  out << "t_us,s\n";
  for (const auto& pt : schedule.points)
    out << format_double(pt.t_us) << "," << format_double(pt.s) << "\n";
}

Schedule read_schedule_csv(std::istream& in) {
  Schedule sched;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "t_us,s") throw InputError("Schedule: expected header 't_us,s'");
      header_seen = true;
      continue;
    }
    const auto fields = split_csv_row(line);
    if (fields.size() != 2) throw InputError("Schedule: expected 2 fields, got line '" + line + "'");
    sched.points.push_back({parse_double(fields[0]), parse_double(fields[1])});
  }
  sched.validate();
  return sched;
}

}  // namespace qaoatl

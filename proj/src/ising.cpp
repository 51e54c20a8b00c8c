#include "qaoatl/ising.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "qaoatl/format.hpp"

namespace qaoatl {

namespace {

constexpr std::size_t kMaxDiagonalQubits = 26;

void check_qubit(std::size_t i, std::size_t n) {
  if (i >= n) {
    throw DimensionError("IsingModel: qubit index " + std::to_string(i) + " out of range for " +
                         std::to_string(n) + " qubits");
  }
}

}  // namespace

IsingModel::IsingModel(std::size_t n_qubits) : n_(n_qubits), fields_(n_qubits, 0.0) {
  if (n_qubits == 0) throw RangeError("IsingModel: needs at least one qubit");
}

double IsingModel::field(std::size_t i) const {
  check_qubit(i, n_);
  return fields_[i];
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
  check_qubit(i, n_);
  check_qubit(j, n_);
  if (i == j) throw DimensionError("IsingModel::coupling: indices must differ");
  if (i > j) std::swap(i, j);
  const Coupling probe{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 0.0};
  const auto it = std::lower_bound(couplings_.begin(), couplings_.end(), probe,
                                   [](const Coupling& a, const Coupling& b) {
                                     return a.i != b.i ? a.i < b.i : a.j < b.j;
                                   });
  if (it != couplings_.end() && it->i == probe.i && it->j == probe.j) return it->value;
  return 0.0;
}

double IsingModel::max_coefficient() const {
  double m = 0.0;
  for (const auto& c : couplings_) m = std::max(m, std::abs(c.value));
  for (const double h : fields_) m = std::max(m, std::abs(h));
  return m;
}

void IsingModel::add_coupling(std::size_t i, std::size_t j, double value) {
  check_qubit(i, n_);
  check_qubit(j, n_);
  if (i == j) throw DimensionError("IsingModel::add_coupling: indices must differ");
  if (i > j) std::swap(i, j);
  const Coupling entry{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), value};
  const auto it = std::lower_bound(couplings_.begin(), couplings_.end(), entry,
                                   [](const Coupling& a, const Coupling& b) {
                                     return a.i != b.i ? a.i < b.i : a.j < b.j;
                                   });
  if (it != couplings_.end() && it->i == entry.i && it->j == entry.j) {
    it->value += value;
  } else {
    couplings_.insert(it, entry);
  }
}

void IsingModel::add_field(std::size_t i, double value) {
  check_qubit(i, n_);
  fields_[i] += value;
}

void IsingModel::set_norm_factor(double value) {
  if (!(value > 0.0)) throw RangeError("IsingModel: norm_factor must be positive");
  norm_factor_ = value;
}

IsingModel qubo_to_ising(const Qubo& qubo) {
  const std::size_t n = qubo.num_vars();
  IsingModel m(n);
  double offset = qubo.offset();
  for (std::size_t i = 0; i < n; ++i) {
    // linear term c x_i with x = (1 - z) / 2
    const double c = qubo.coefficient(i, i);
    if (c != 0.0) {
      m.add_field(i, -0.5 * c);
      offset += 0.5 * c;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      // product term a x_i x_j = (a/4)(1 - z_i - z_j + z_i z_j)
      const double a = 2.0 * qubo.coefficient(i, j);
      if (a == 0.0) continue;
      m.add_coupling(i, j, 0.25 * a);
      m.add_field(i, -0.25 * a);
      m.add_field(j, -0.25 * a);
      offset += 0.25 * a;
    }
  }
  m.set_offset(offset);
  return m;
}

IsingModel normalize(const IsingModel& model) {
  const double scale = model.max_coefficient();
  if (scale == 0.0) {
    IsingModel out = model;
    out.set_norm_factor(1.0);
    return out;
  }
  IsingModel out(model.n_qubits());
  for (const auto& c : model.couplings()) out.add_coupling(c.i, c.j, c.value / scale);
  for (std::size_t i = 0; i < model.n_qubits(); ++i) {
    const double h = model.field(i);
    if (h != 0.0) out.add_field(i, h / scale);
  }
  out.set_offset(model.offset() / scale);
  out.set_norm_factor(scale);
  return out;
}

double ising_energy(const IsingModel& model, const Assignment& x) {
  if (x.size() != model.n_qubits())
    throw DimensionError("ising_energy: assignment has " + std::to_string(x.size()) +
                         " bits, model has " + std::to_string(model.n_qubits()) + " qubits");
  double e = model.offset();
  for (const auto& c : model.couplings()) e += c.value * x.spin(c.i) * x.spin(c.j);
  const auto& h = model.fields();
  for (std::size_t i = 0; i < x.size(); ++i) e += h[i] * x.spin(i);
  return e;
}

std::vector<double> cost_diagonal(const IsingModel& model) {
  const std::size_t n = model.n_qubits();
  if (n > kMaxDiagonalQubits)
    throw ResourceError("cost_diagonal: " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(kMaxDiagonalQubits));
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> diag(dim, 0.0);
  for (const auto& c : model.couplings()) {
    const double v = c.value;
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t aligned = ((k >> c.i) ^ (k >> c.j)) & 1u;  // spins differ
      diag[k] += aligned ? -v : v;
    }
  }
  const auto& fields = model.fields();
  for (std::size_t i = 0; i < n; ++i) {
    const double h = fields[i];
    if (h == 0.0) continue;
    for (std::size_t k = 0; k < dim; ++k) diag[k] += ((k >> i) & 1u) ? -h : h;
  }
  return diag;
}

void write_coordinate_format(std::ostream& out, const IsingModel& model) {
  out << "# n_qubits " << model.n_qubits() << "\n";
  out << "# offset " << format_double(model.offset()) << "\n";
  out << "# norm_factor " << format_double(model.norm_factor()) << "\n";
  for (const auto& c : model.couplings())
    out << c.i << " " << c.j << " " << format_double(c.value) << "\n";
  for (std::size_t i = 0; i < model.n_qubits(); ++i) {
    const double h = model.field(i);
    if (h != 0.0) out << i << " " << i << " " << format_double(h) << "\n";
  }
}

}  // namespace qaoatl

#include "qconc/io.hpp"

#include <fstream>

namespace qconc {

using nlohmann::json;

namespace {

SystemShape shape_from_json(const json& value) {
  SystemShape shape;
  shape.kind = particle_kind_from_string(value.at("kind").get<std::string>());
  shape.num_particles = value.at("L").get<int>();
  shape.local_dim = value.at("N").get<int>();
  shape.validate();
  return shape;
}

std::vector<int> index_field(const json& entry, size_t expected, const char* what) {
  const auto& idx = entry.at("index");
  if (!idx.is_array() || idx.size() != expected)
    throw ValidationError(std::string("amplitude index must list ") +
                          std::to_string(expected) + " " + what);
  std::vector<int> out;
  out.reserve(expected);
  for (const auto& v : idx) out.push_back(v.get<int>());
  return out;
}

json index_to_json(const std::vector<int>& zero_based) {
  json idx = json::array();
  for (int v : zero_based) idx.push_back(v + 1);
  return idx;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& value) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ValidationError("cannot write file '" + tmp + "'");
    out << value.dump(2) << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ValidationError("cannot move '" + tmp + "' into place");
}

bool looks_like_density_file(const json& value) {
  return value.is_object() && value.contains("matrix");
}

PureState pure_state_from_json(const json& value) {
  try {
    const SystemShape shape = shape_from_json(value);
    const std::string basis = value.at("basis").get<std::string>();
    const auto& amplitudes = value.at("amplitudes");
    if (!amplitudes.is_array() || amplitudes.empty())
      throw ValidationError("state file must list at least one amplitude");

    if (basis == "product-tensor") {
      Vector acc = Vector::Zero(shape.full_dim());
      for (const auto& entry : amplitudes) {
        const auto idx = index_field(entry, shape.num_particles, "site values");
        std::int64_t flat = 0;
        for (int v : idx) {
          if (v < 1 || v > shape.local_dim)
            throw ValidationError("site value out of range 1..N");
          flat = flat * shape.local_dim + (v - 1);
        }
        acc[flat] += Complex(entry.at("re").get<double>(), entry.at("im").get<double>());
      }
      return PureState::create(shape, std::move(acc));
    }
    if (basis == "occupation") {
      if (shape.kind != ParticleKind::boson)
        throw ValidationError("occupation basis requires kind 'boson'");
      std::vector<std::pair<OccupationVector, Complex>> terms;
      for (const auto& entry : amplitudes) {
        auto idx = index_field(entry, shape.local_dim, "mode counts");
        terms.emplace_back(OccupationVector(idx.begin(), idx.end()),
                           Complex(entry.at("re").get<double>(), entry.at("im").get<double>()));
      }
      return bosonic_state(shape, terms);
    }
    if (basis == "slater") {
      if (shape.kind != ParticleKind::fermion)
        throw ValidationError("slater basis requires kind 'fermion'");
      std::vector<std::pair<SlaterIndex, Complex>> terms;
      for (const auto& entry : amplitudes) {
        auto idx = index_field(entry, shape.num_particles, "mode indices");
        for (int& v : idx) --v;
        terms.emplace_back(SlaterIndex(idx.begin(), idx.end()),
                           Complex(entry.at("re").get<double>(), entry.at("im").get<double>()));
      }
      return slater_state(shape, terms);
    }
    throw ValidationError("unknown basis '" + basis + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad state file: ") + e.what());
  }
}

MixedState mixed_state_from_json(const json& value) {
  try {
    const SystemShape shape = shape_from_json(value);
    const auto& rows = value.at("matrix");
    const std::int64_t dim = shape.full_dim();
    if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != dim)
      throw ValidationError("density matrix must have N^L rows");
    Matrix rho(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i) {
      const auto& row = rows[i];
      if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim)
        throw ValidationError("density matrix row has the wrong length");
      for (std::int64_t j = 0; j < dim; ++j) {
        const auto& cell = row[j];
        if (!cell.is_array() || cell.size() != 2)
          throw ValidationError("density entries must be [re, im] pairs");
        rho(i, j) = Complex(cell[0].get<double>(), cell[1].get<double>());
      }
    }
    return MixedState::create(shape, std::move(rho));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad density file: ") + e.what());
  }
}

PureState read_pure_state(const std::string& path) {
  const json value = load_json_file(path);
  if (looks_like_density_file(value))
    throw ValidationError("'" + path + "' is a density file; a state file was expected");
  return pure_state_from_json(value);
}

MixedState read_mixed_state(const std::string& path) {
  const json value = load_json_file(path);
  if (!looks_like_density_file(value))
    throw ValidationError("'" + path + "' is a state file; a density file was expected");
  return mixed_state_from_json(value);
}

json pure_state_to_json(const PureState& psi) {
  const SystemShape& shape = psi.shape;
  json out{{"kind", to_string(shape.kind)},
           {"L", shape.num_particles},
           {"N", shape.local_dim}};
  json amps = json::array();

  switch (shape.kind) {
    case ParticleKind::distinguishable: {
      out["basis"] = "product-tensor";
      std::vector<int> digits(shape.num_particles, 0);
      for (std::int64_t flat = 0; flat < psi.amplitudes.size(); ++flat) {
        const Complex a = psi.amplitudes[flat];
        if (a != Complex(0.0))
          amps.push_back({{"index", index_to_json(digits)}, {"re", a.real()}, {"im", a.imag()}});
        for (int s = shape.num_particles - 1; s >= 0; --s) {
          if (++digits[s] < shape.local_dim) break;
          digits[s] = 0;
        }
      }
      break;
    }
    case ParticleKind::boson: {
      out["basis"] = "occupation";
      for (const auto& counts : occupation_basis(shape.num_particles, shape.local_dim)) {
        const Complex a = occupation_ket(shape, counts).dot(psi.amplitudes);
        if (a == Complex(0.0)) continue;
        json idx = json::array();
        for (int n : counts) idx.push_back(n);
        amps.push_back({{"index", idx}, {"re", a.real()}, {"im", a.imag()}});
      }
      break;
    }
    case ParticleKind::fermion: {
      out["basis"] = "slater";
      for (const auto& modes : slater_basis(shape.num_particles, shape.local_dim)) {
        const Complex a = slater_ket(shape, modes).dot(psi.amplitudes);
        if (a == Complex(0.0)) continue;
        amps.push_back({{"index", index_to_json(modes)}, {"re", a.real()}, {"im", a.imag()}});
      }
      break;
    }
  }
  out["amplitudes"] = std::move(amps);
  return out;
}

json mixed_state_to_json(const MixedState& rho) {
  json out{{"kind", to_string(rho.shape.kind)},
           {"L", rho.shape.num_particles},
           {"N", rho.shape.local_dim}};
  json rows = json::array();
  for (Eigen::Index i = 0; i < rho.density.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < rho.density.cols(); ++j)
      row.push_back({rho.density(i, j).real(), rho.density(i, j).imag()});
    rows.push_back(std::move(row));
  }
  out["matrix"] = std::move(rows);
  return out;
}

}  // namespace qconc

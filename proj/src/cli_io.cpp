#include "tomolab/cli_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tomolab/errors.hpp"

namespace tomolab {

using nlohmann::json;

namespace {

std::string kind_name(WeightKind kind) {
  return kind == WeightKind::quasidistribution ? "quasidistribution" : "moment";
}

WeightKind kind_from_name(const std::string& name) {
  if (name == "quasidistribution" || name == "quasidist")
    return WeightKind::quasidistribution;
  if (name == "moment") return WeightKind::moment;
  throw io_error("unknown weight kind '" + name + "'");
}

json header_json(const QuadratureDataset& data, const std::string& encoding) {
  return json{{"format", "tomolab-dataset"},
              {"version", 1},
              {"encoding", encoding},
              {"modes", data.grid.modes},
              {"theta_count", data.grid.theta_count()},
              {"psi_count", data.grid.psi_count()},
              {"theta_max", data.grid.theta_max},
              {"psi_max", data.grid.psi_max},
              {"weight_kind", kind_name(data.grid.kind)},
              {"eta", data.eta},
              {"seed", data.seed},
              {"records", data.records.size()}};
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  return out;
}

void write_json_file(const json& j, const std::string& path) {
  auto out = open_out(path, false);
  out << j.dump(2) << '\n';
  if (!out) throw io_error("write failed for '" + path + "'");
}

json estimate_json(const Estimate& e) {
  return json{{"re", e.value.real()}, {"im", e.value.imag()},
              {"std_error", e.std_error}};
}

std::string index_string(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

void write_dataset(const QuadratureDataset& data, const std::string& path,
                   bool binary, bool expanded) {
  auto out = open_out(path, binary);
  out << '#' << header_json(data, binary ? "binary" : "csv").dump() << '\n';
  if (binary) {
    for (const auto& rec : data.records) {
      out.write(reinterpret_cast<const char*>(&rec.grid_index), 4);
      out.write(reinterpret_cast<const char*>(&rec.x), 8);
    }
  } else {
    const int n = data.grid.modes;
    out << "grid_index,x_value";
    if (expanded) {
      for (int j = 1; j < n; ++j) out << ",theta_" << j;
      for (int j = 1; j <= n; ++j) out << ",psi_" << j;
    }
    out << '\n';
    out.precision(17);
    for (const auto& rec : data.records) {
      out << rec.grid_index << ',' << rec.x;
      if (expanded) {
        const auto config = data.grid.config_at(rec.grid_index);
        for (double t : config.theta) out << ',' << t;
        for (double p : config.psi) out << ',' << p;
      }
      out << '\n';
    }
  }
  if (!out) throw io_error("write failed for '" + path + "'");
}

QuadratureDataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::string header_line;
  if (!std::getline(in, header_line) || header_line.empty() ||
      header_line[0] != '#')
    throw io_error("'" + path + "': missing '#' JSON header line");

  json h;
  try {
    h = json::parse(header_line.substr(1));
  } catch (const json::exception& e) {
    throw io_error("'" + path + "': bad header JSON: " + e.what());
  }
  if (h.value("format", "") != "tomolab-dataset")
    throw io_error("'" + path + "': not a tomolab dataset file");

  QuadratureDataset data;
  try {
    data.grid = build_grid(h.at("modes").get<int>(), h.at("theta_count").get<int>(),
                           h.at("psi_count").get<int>(),
                           kind_from_name(h.at("weight_kind").get<std::string>()));
    data.eta = h.at("eta").get<double>();
    data.seed = h.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw io_error("'" + path + "': incomplete header: " + e.what());
  }
  const auto declared = h.at("records").get<std::uint64_t>();
  data.records.reserve(declared);

  const std::string encoding = h.value("encoding", "csv");
  if (encoding == "binary") {
    MeasurementRecord rec;
    char buf[12];
    while (in.read(buf, 12)) {
      std::memcpy(&rec.grid_index, buf, 4);
      std::memcpy(&rec.x, buf + 4, 8);
      data.records.push_back(rec);
    }
    if (in.gcount() != 0)
      throw io_error("'" + path + "': truncated binary record at end of file");
  } else if (encoding == "csv") {
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (first && line.rfind("grid_index", 0) == 0) {
        first = false;
        continue;  // column header row
      }
      first = false;
      const auto comma = line.find(',');
      if (comma == std::string::npos)
        throw io_error("'" + path + "': malformed CSV row '" + line + "'");
      try {
        MeasurementRecord rec;
        rec.grid_index =
            static_cast<std::uint32_t>(std::stoul(line.substr(0, comma)));
        rec.x = std::stod(line.substr(comma + 1));
        data.records.push_back(rec);
      } catch (const std::exception&) {
        throw io_error("'" + path + "': malformed CSV row '" + line + "'");
      }
    }
  } else {
    throw io_error("'" + path + "': unknown encoding '" + encoding + "'");
  }

  if (data.records.size() != declared)
    throw io_error("'" + path + "': header declares " + std::to_string(declared) +
                   " records but body contains " +
                   std::to_string(data.records.size()));
  data.rebuild_counts();  // also range-checks every grid index
  return data;
}

void write_quasidist_files(const QuasiDistTable& table, const std::string& base_path) {
  json entries = json::array();
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    json alpha = json::array();
    for (const auto& a : table.points[i].alpha)
      alpha.push_back({{"re", a.real()}, {"im", a.imag()}});
    json e = estimate_json(table.values[i]);
    e["alpha"] = alpha;
    entries.push_back(e);
  }
  write_json_file(json{{"kind", "quasidist"}, {"s", table.s}, {"entries", entries}},
                  base_path + ".json");

  auto out = open_out(base_path + ".csv", false);
  out.precision(17);
  const std::size_t modes =
      table.points.empty() ? 0 : table.points.front().alpha.size();
  for (std::size_t j = 1; j <= modes; ++j)
    out << "alpha" << j << "_re,alpha" << j << "_im,";
  out << "value,std_error\n";
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    for (const auto& a : table.points[i].alpha)
      out << a.real() << ',' << a.imag() << ',';
    out << table.values[i].value.real() << ',' << table.values[i].std_error << '\n';
  }
  if (!out) throw io_error("write failed for '" + base_path + ".csv'");
}

namespace {

void write_indexed_files(const std::string& kind,
                         const std::vector<MomentIndex>& indices,
                         const std::vector<Estimate>& values, const json& meta,
                         const std::string& base_path) {
  json entries = json::array();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    json e = estimate_json(values[i]);
    e["m"] = indices[i].m;
    e["n"] = indices[i].n;
    entries.push_back(e);
  }
  json root = meta;
  root["kind"] = kind;
  root["entries"] = entries;
  write_json_file(root, base_path + ".json");

  auto out = open_out(base_path + ".csv", false);
  out.precision(17);
  out << "m,n,re,im,std_error\n";
  for (std::size_t i = 0; i < indices.size(); ++i)
    out << index_string(indices[i].m) << ',' << index_string(indices[i].n) << ','
        << values[i].value.real() << ',' << values[i].value.imag() << ','
        << values[i].std_error << '\n';
  if (!out) throw io_error("write failed for '" + base_path + ".csv'");
}

}  // namespace

void write_rho_files(const RhoTable& table, const std::string& base_path) {
  write_indexed_files("rho_block", table.indices, table.values,
                      json{{"modes", table.modes}, {"cutoff", table.cutoff}},
                      base_path);
}

void write_moments_files(const MomentTable& table, const std::string& base_path) {
  write_indexed_files(
      "moments", table.indices, table.values,
      json{{"modes", table.modes}, {"max_order", table.max_order}, {"s", table.s}},
      base_path);
}

void write_validation_file(const ValidationReport& report, const std::string& path) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  write_json_file(json{{"passed", report.passed()},
                       {"checks", checks},
                       {"sufficient_points", report.sufficient_points},
                       {"free_parameters", report.free_parameters}},
                  path);
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw io_error("config '" + path + "': " + e.what());
  }

  RunConfig cfg;
  try {
    cfg.task = j.value("task", cfg.task);
    if (j.contains("state")) {
      const auto& s = j.at("state");
      cfg.state_type = s.value("type", cfg.state_type);
      cfg.r = s.value("r", cfg.r);
      cfg.modes = s.value("modes", cfg.modes);
      if (s.contains("alpha")) {
        cfg.displacements.clear();
        for (const auto& a : s.at("alpha"))
          cfg.displacements.emplace_back(a.value("re", 0.0), a.value("im", 0.0));
      }
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      cfg.grid_kind = g.value("kind", cfg.grid_kind);
      cfg.theta_count = g.value("theta_count", cfg.theta_count);
      cfg.psi_count = g.value("psi_count", cfg.psi_count);
    }
    cfg.per_point = j.value("per_point", cfg.per_point);
    cfg.eta = j.value("eta", cfg.eta);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.s = j.value("s", cfg.s);
    cfg.cutoff = j.value("cutoff", cfg.cutoff);
    cfg.max_order = j.value("max_order", cfg.max_order);
    cfg.out_dir = j.value("out", cfg.out_dir);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.binary = j.value("binary", cfg.binary);
    cfg.expanded = j.value("expanded", cfg.expanded);
  } catch (const json::exception& e) {
    throw io_error("config '" + path + "': " + e.what());
  }
  return cfg;
}

GaussianState build_state(const RunConfig& config) {
  if (config.state_type == "demo") return three_mode_demo_state(config.r);
  if (config.state_type == "vacuum") return vacuum(config.modes);
  if (config.state_type == "coherent") {
    if (config.displacements.empty())
      throw io_error("coherent state needs a nonempty 'alpha' list");
    GaussianState st = vacuum(static_cast<int>(config.displacements.size()));
    for (std::size_t j = 0; j < config.displacements.size(); ++j)
      st = displace(st, static_cast<int>(j), config.displacements[j]);
    return st;
  }
  throw io_error("unknown state type '" + config.state_type + "'");
}

SamplingGrid build_grid_from(const RunConfig& config) {
  const WeightKind kind = kind_from_name(config.grid_kind);
  int modes = config.modes;
  if (config.state_type == "coherent")
    modes = static_cast<int>(config.displacements.size());
  return build_grid(modes, config.theta_count, config.psi_count, kind);
}

}  // namespace tomolab

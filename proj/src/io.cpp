#include "fdcluster/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace fdc {
namespace io {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw IngestionError("cannot parse number '" + text + "'", line_no);
  return value;
}

long parse_int(const std::string& text, std::size_t line_no) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw IngestionError("cannot parse integer '" + text + "'", line_no);
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot open '" + path + "' for writing");
  return out;
}

// Strips a trailing '\r' so CRLF files ingest cleanly.
bool get_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string format_double(double v) {
  char buffer[40];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, res.ptr);
}

Grid read_grid_json(const std::string& path) {
  std::ifstream in = open_input(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IngestionError(std::string("invalid grid JSON: ") + e.what());
  }
  try {
    if (doc.contains("points")) {
      std::vector<double> pts = doc.at("points").get<std::vector<double>>();
      try {
        return Grid::from_points(pts);
      } catch (const ArgumentError& e) {
        throw IngestionError(std::string("invalid grid points: ") + e.what());
      }
    }
    const double t_min = doc.at("t_min").get<double>();
    const double t_max = doc.at("t_max").get<double>();
    const int T = doc.at("T").get<int>();
    try {
      return Grid(t_min, t_max, T);
    } catch (const ArgumentError& e) {
      throw IngestionError(std::string("invalid grid: ") + e.what());
    }
  } catch (const json::exception& e) {
    throw IngestionError(std::string("invalid grid JSON: ") + e.what());
  }
}

void write_grid_json(const std::string& path, const Grid& grid) {
  json doc{{"t_min", grid.t_min()}, {"t_max", grid.t_max()}, {"T", grid.size()}};
  std::ofstream out = open_output(path);
  out << doc.dump(2) << '\n';
}

FunctionalSample read_sample_csv(const std::string& path, GridPtr grid) {
  if (!grid) throw ArgumentError("sample ingestion requires a grid");
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 1;
  if (!get_line(in, line) || line != "curve_id,component,t_index,value")
    throw IngestionError("expected header 'curve_id,component,t_index,value'", 1);

  const int T = grid->size();
  struct Partial {
    std::vector<double> values;   // component-major
    std::vector<bool> seen;
    int max_component = 0;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Partial> curves;

  while (get_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 4) throw IngestionError("expected 4 fields", line_no);
    if (f[0].empty()) throw IngestionError("empty curve_id", line_no);
    const long comp = parse_int(f[1], line_no);
    const long t = parse_int(f[2], line_no);
    const double v = parse_double(f[3], line_no);
    if (comp < 1) throw IngestionError("component must be >= 1", line_no);
    if (t < 0 || t >= T)
      throw IngestionError("t_index out of range for the grid (T = " + std::to_string(T) + ")",
                           line_no);
    auto [it, inserted] = curves.try_emplace(f[0]);
    if (inserted) order.push_back(f[0]);
    Partial& part = it->second;
    if (comp > part.max_component) {
      part.values.resize(static_cast<std::size_t>(comp) * T, 0.0);
      part.seen.resize(static_cast<std::size_t>(comp) * T, false);
      part.max_component = static_cast<int>(comp);
    }
    const std::size_t idx = static_cast<std::size_t>(comp - 1) * T + static_cast<std::size_t>(t);
    if (part.seen[idx])
      throw IngestionError("duplicate entry for curve '" + f[0] + "'", line_no);
    part.seen[idx] = true;
    part.values[idx] = v;
  }
  if (order.empty()) throw IngestionError("no curves in file");

  const int J = curves[order.front()].max_component;
  std::vector<MultiCurve> result;
  result.reserve(order.size());
  for (const std::string& id : order) {
    const Partial& part = curves[id];
    if (part.max_component != J)
      throw IngestionError("curve '" + id + "' has " + std::to_string(part.max_component) +
                           " components, expected " + std::to_string(J));
    for (std::size_t idx = 0; idx < part.seen.size(); ++idx) {
      if (!part.seen[idx])
        throw IngestionError("curve '" + id + "' is missing component " +
                             std::to_string(idx / static_cast<std::size_t>(T) + 1) +
                             ", t_index " + std::to_string(idx % static_cast<std::size_t>(T)));
    }
    Eigen::VectorXd stacked =
        Eigen::Map<const Eigen::VectorXd>(part.values.data(),
                                          static_cast<Eigen::Index>(part.values.size()));
    result.emplace_back(std::move(stacked), J, grid);
  }
  return FunctionalSample(std::move(result), std::move(order));
}

void write_sample_csv(const std::string& path, const FunctionalSample& s) {
  std::ofstream out = open_output(path);
  out << "curve_id,component,t_index,value\n";
  const int T = s.grid()->size();
  for (int i = 0; i < s.size(); ++i) {
    const MultiCurve& c = s.curve(i);
    for (int l = 0; l < c.components(); ++l) {
      for (int t = 0; t < T; ++t) {
        out << s.ids()[static_cast<std::size_t>(i)] << ',' << (l + 1) << ',' << t << ','
            << format_double(c.value(l, t)) << '\n';
      }
    }
  }
}

std::vector<std::pair<std::string, std::string>> read_labels_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  std::size_t line_no = 1;
  if (!get_line(in, line) || line != "curve_id,label")
    throw IngestionError("expected header 'curve_id,label'", 1);
  std::vector<std::pair<std::string, std::string>> out;
  while (get_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 2) throw IngestionError("expected 2 fields", line_no);
    if (f[0].empty() || f[1].empty())
      throw IngestionError("empty curve_id or label", line_no);
    out.emplace_back(f[0], f[1]);
  }
  return out;
}

void write_labels_csv(const std::string& path, const std::vector<std::string>& ids,
                      const std::vector<std::string>& labels) {
  if (ids.size() != labels.size())
    throw ArgumentError("ids and labels must have the same length");
  std::ofstream out = open_output(path);
  out << "curve_id,label\n";
  for (std::size_t i = 0; i < ids.size(); ++i)
    out << ids[i] << ',' << labels[i] << '\n';
}

FunctionalSample attach_labels(const FunctionalSample& s,
                               const std::vector<std::pair<std::string, std::string>>& labels) {
  std::unordered_map<std::string, std::string> by_id;
  for (const auto& [id, label] : labels) {
    if (!by_id.emplace(id, label).second)
      throw IngestionError("duplicate label for curve '" + id + "'");
  }
  std::vector<std::string> ordered;
  ordered.reserve(static_cast<std::size_t>(s.size()));
  for (const std::string& id : s.ids()) {
    const auto it = by_id.find(id);
    if (it == by_id.end())
      throw IngestionError("no label for curve '" + id + "'");
    ordered.push_back(it->second);
  }
  return FunctionalSample(s.curves(), s.ids(), std::move(ordered));
}

void write_assignments_csv(const std::string& path, const std::vector<std::string>& ids,
                           const std::vector<int>& labels) {
  if (ids.size() != labels.size())
    throw ArgumentError("ids and labels must have the same length");
  std::ofstream out = open_output(path);
  out << "curve_id,cluster\n";
  for (std::size_t i = 0; i < ids.size(); ++i)
    out << ids[i] << ',' << labels[i] << '\n';
}

void write_spectrum_csv(const std::string& path, const Spectrum& spectrum) {
  std::ofstream out = open_output(path);
  out << "k,eigenvalue\n";
  for (int k = 0; k < spectrum.total_dim(); ++k)
    out << (k + 1) << ',' << format_double(spectrum.eigenvalue(k)) << '\n';
}

void write_silhouette_csv(const std::string& path, const std::vector<std::string>& ids,
                          const std::vector<int>& labels, const SilhouetteReport& report) {
  std::ofstream out = open_output(path);
  out << "curve_id,cluster,silhouette\n";
  for (int i : report.plot_order) {
    out << ids[static_cast<std::size_t>(i)] << ',' << labels[static_cast<std::size_t>(i)]
        << ',' << format_double(report.values[static_cast<std::size_t>(i)]) << '\n';
  }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points) {
  std::ofstream out = open_output(path);
  out << "log10_p,misclassified_proportion,sd\n";
  for (const SweepPoint& p : points) {
    out << format_double(p.log10_p) << ',' << format_double(p.misclassified_mean) << ','
        << format_double(p.misclassified_sd) << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out = open_output(path);
  out << content;
}

std::string file_digest(const std::string& path) {
  std::ifstream in = open_input(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char chunk[4096];
  while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + hex;
}

}  // namespace io
}  // namespace fdc

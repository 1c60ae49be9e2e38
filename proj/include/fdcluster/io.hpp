#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fdcluster/eval.hpp"
#include "fdcluster/spectral.hpp"

namespace fdc {
namespace io {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Grid JSON: { "t_min": x, "t_max": y, "T": n } where t_min/t_max are the
/// first/last sample points; alternatively { "points": [...] }, which is
/// rejected unless equispaced.
Grid read_grid_json(const std::string& path);
void write_grid_json(const std::string& path, const Grid& grid);

/// Long-format curve CSV with header `curve_id,component,t_index,value`;
/// components are 1..J, t_index 0..T-1. Every (curve, component, t) cell
/// must appear exactly once; errors carry the offending line number.
FunctionalSample read_sample_csv(const std::string& path, GridPtr grid);
void write_sample_csv(const std::string& path, const FunctionalSample& s);

/// Labels CSV with header `curve_id,label`.
std::vector<std::pair<std::string, std::string>> read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path, const std::vector<std::string>& ids,
                      const std::vector<std::string>& labels);

/// Returns a copy of the sample carrying the labels found for its ids.
FunctionalSample attach_labels(const FunctionalSample& s,
                               const std::vector<std::pair<std::string, std::string>>& labels);

/// Cluster assignment CSV with header `curve_id,cluster`.
void write_assignments_csv(const std::string& path, const std::vector<std::string>& ids,
                           const std::vector<int>& labels);

/// Spectrum dump `k,eigenvalue` (k is 1-based, zeros past the rank included).
void write_spectrum_csv(const std::string& path, const Spectrum& spectrum);

/// Silhouette CSV `curve_id,cluster,silhouette` in bar-plot order.
void write_silhouette_csv(const std::string& path, const std::vector<std::string>& ids,
                          const std::vector<int>& labels, const SilhouetteReport& report);

/// Sweep CSV `log10_p,misclassified_proportion,sd`.
void write_sweep_csv(const std::string& path, const std::vector<SweepPoint>& points);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit digest of a file's bytes, as "fnv1a64:<hex>".
std::string file_digest(const std::string& path);

}  // namespace io
}  // namespace fdc

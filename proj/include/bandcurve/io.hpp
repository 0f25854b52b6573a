#pragma once

#include <bandcurve/control_maps.hpp>
#include <bandcurve/curve.hpp>
#include <bandcurve/frenet.hpp>
#include <bandcurve/verification.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bandcurve {

/// Malformed or unreadable input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct ControlsFile {
  ControlPair controls;
  Rotation initial = Rotation::identity();
};

/// {"version", "band": [k1, k2], "grid_size", "v_hat": {"constant": c} or
/// [N numbers], "w_hat": [N numbers], optional "initial_frame": 3x3 rows}.
std::string controls_to_json(const ControlsFile& file);
ControlsFile controls_from_json(const std::string& text);

/// {"version", "param", "length", "samples": [[x, y, z], ...]}.
std::string curve_to_json(const SphericalCurve& curve);
SphericalCurve curve_from_json(const std::string& text);

/// {"version", "times": [...], "frames": [3x3 rows, ...]}.
std::string frames_to_json(const FrenetPath& path);

/// {"version", "tool_version", "config": {...}, "reports": [...]}.
std::string suite_to_json(const SuiteConfig& config, const std::vector<TrialReport>& reports);
/// Same layout with a free-form string config.
std::string reports_to_json(const std::vector<std::pair<std::string, std::string>>& config,
                            const std::vector<TrialReport>& reports);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bandcurve

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thinlaw/charlier.hpp"
#include "thinlaw/classes.hpp"
#include "thinlaw/divergences.hpp"
#include "thinlaw/pmf.hpp"

namespace thinlaw {

/// Largest |sum + tail − 1| accepted from a PMF file before renormalizing.
inline constexpr double kFileMassTolerance = 1e-9;

nlohmann::json to_json(const Pmf& p);
/// Reads {"probs": [...], "tail": t}. Rejects negative entries and masses off
/// by more than kFileMassTolerance, then rescales to total mass one.
Pmf pmf_from_json(const nlohmann::json& j);
Pmf read_pmf_file(const std::filesystem::path& path);
void write_pmf_file(const std::filesystem::path& path, const Pmf& p);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const ClassCertificate& c);
nlohmann::json to_json(const CharlierCoeffs& c);
CharlierCoeffs charlier_coeffs_from_json(const nlohmann::json& j);

/// Parses "poisson:2", "bernoulli:0.3", "binomial:5,0.4", "geometric:1",
/// "negbin:r,mean", "point:k", "uniform:a,b" (uniform on {a..b}).
FamilySpec parse_family(std::string_view text);

/// Parses "a,b,c", "a:b" (integer steps), "a:b:step" and "log:a:b:k" (k
/// log-spaced points from a to b).
std::vector<double> parse_grid(std::string_view text);

/// %.12g, with nan and inf spelled out.
std::string format_number(double v);

}  // namespace thinlaw

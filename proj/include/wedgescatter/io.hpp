#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedgescatter/eigen_oracle.hpp"
#include "wedgescatter/spectral_scan.hpp"

namespace wedgescatter {

inline constexpr const char* kScanCsvHeader =
    "E,magnitude,incident_re,incident_im,reflected_re,reflected_im,phi_re,phi_im,dphi_re,dphi_im";

/// Shortest decimal string that round-trips to the same double ("nan", "inf" for non-finite).
std::string format_double(double value);

/// Header line plus one row per grid energy, LF line endings. Failed points are written as nan.
void write_scan_csv(std::ostream& out, const ScanSeries& series);

struct ScanCsvRow {
  double energy = 0.0;
  double magnitude = 0.0;
  cplx incident;
  cplx reflected;
  cplx phi;
  cplx dphi;
};

/// Parses a scan CSV; throws UsageError on a header mismatch or malformed row.
std::vector<ScanCsvRow> read_scan_csv(std::istream& in);

nlohmann::ordered_json scan_to_json(const ScanSeries& series);
nlohmann::ordered_json zeros_to_json(const std::vector<ReflectionZero>& zeros);
std::vector<ReflectionZero> zeros_from_json(const nlohmann::json& records);
nlohmann::ordered_json eigen_to_json(const EigenResult& result);

}  // namespace wedgescatter

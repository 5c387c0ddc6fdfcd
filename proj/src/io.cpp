#include "wedgescatter/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "wedgescatter/errors.hpp"

namespace wedgescatter {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("failed to format double");
  return std::string(buf.data(), ptr);
}

namespace {

double parse_double(std::string_view text, std::size_t line) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw UsageError("scan CSV line " + std::to_string(line) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

nlohmann::ordered_json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

}  // namespace

void write_scan_csv(std::ostream& out, const ScanSeries& series) {
  out << kScanCsvHeader << '\n';
  for (const auto& p : series.points) {
    const double nan = std::nan("");
    const bool ok = !p.failed;
    const std::array<double, 10> fields{
        p.energy,
        ok ? p.magnitude : nan,
        ok ? p.amplitudes.incident.real() : nan,
        ok ? p.amplitudes.incident.imag() : nan,
        ok ? p.amplitudes.reflected.real() : nan,
        ok ? p.amplitudes.reflected.imag() : nan,
        ok ? p.endpoint.value.real() : nan,
        ok ? p.endpoint.value.imag() : nan,
        ok ? p.endpoint.derivative.real() : nan,
        ok ? p.endpoint.derivative.imag() : nan,
    };
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << format_double(fields[i]);
    }
    out << '\n';
  }
}

std::vector<ScanCsvRow> read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw UsageError("scan CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kScanCsvHeader) throw UsageError("scan CSV header mismatch: '" + line + "'");

  std::vector<ScanCsvRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 10> f{};
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (field >= f.size()) throw UsageError("scan CSV line " + std::to_string(line_no) + ": too many fields");
      const std::string_view token(line.data() + start, (comma == std::string::npos ? line.size() : comma) - start);
      f[field++] = parse_double(token, line_no);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (field != f.size()) throw UsageError("scan CSV line " + std::to_string(line_no) + ": expected 10 fields");
    rows.push_back({f[0], f[1], {f[2], f[3]}, {f[4], f[5]}, {f[6], f[7]}, {f[8], f[9]}});
  }
  return rows;
}

nlohmann::ordered_json scan_to_json(const ScanSeries& series) {
  nlohmann::ordered_json j;
  j["power"] = series.spec.power;
  j["cutoff"] = series.spec.cutoff;
  j["bc"] = std::string(to_string(series.kind));
  auto& points = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : series.points) {
    nlohmann::ordered_json r;
    r["E"] = p.energy;
    r["magnitude"] = p.failed ? nlohmann::ordered_json(nullptr) : number_or_null(p.magnitude);
    r["incident"] = {number_or_null(p.amplitudes.incident.real()), number_or_null(p.amplitudes.incident.imag())};
    r["reflected"] = {number_or_null(p.amplitudes.reflected.real()), number_or_null(p.amplitudes.reflected.imag())};
    r["phi"] = {number_or_null(p.endpoint.value.real()), number_or_null(p.endpoint.value.imag())};
    r["dphi"] = {number_or_null(p.endpoint.derivative.real()), number_or_null(p.endpoint.derivative.imag())};
    r["failed"] = p.failed;
    if (p.failed) r["failure"] = p.failure;
    points.push_back(std::move(r));
  }
  return j;
}

nlohmann::ordered_json zeros_to_json(const std::vector<ReflectionZero>& zeros) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& z : zeros) {
    nlohmann::ordered_json r;
    r["energy"] = z.energy;
    r["residual"] = z.residual;
    r["bracket_lo"] = z.bracket.lo;
    r["bracket_hi"] = z.bracket.hi;
    r["matched_eigenvalue"] = z.matched_eigenvalue ? nlohmann::ordered_json(*z.matched_eigenvalue) : nullptr;
    r["oracle"] = z.oracle.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(z.oracle);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ReflectionZero> zeros_from_json(const nlohmann::json& records) {
  if (!records.is_array()) throw UsageError("zeros JSON must be an array of records");
  std::vector<ReflectionZero> zeros;
  for (const auto& r : records) {
    ReflectionZero z;
    try {
      z.energy = r.at("energy").get<double>();
      z.residual = r.at("residual").get<double>();
      z.bracket.lo = r.at("bracket_lo").get<double>();
      z.bracket.hi = r.at("bracket_hi").get<double>();
      if (!r.at("matched_eigenvalue").is_null()) z.matched_eigenvalue = r.at("matched_eigenvalue").get<double>();
      if (!r.at("oracle").is_null()) z.oracle = r.at("oracle").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("malformed zeros record: ") + e.what());
    }
    zeros.push_back(std::move(z));
  }
  return zeros;
}

nlohmann::ordered_json eigen_to_json(const EigenResult& result) {
  nlohmann::ordered_json j;
  j["method"] = std::string(to_string(result.method));
  j["power"] = result.power;
  j["energies"] = result.energies;
  j["residuals"] = result.residuals;
  return j;
}

}  // namespace wedgescatter

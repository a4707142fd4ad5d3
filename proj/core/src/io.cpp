#include "p1energy/io.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace p1energy::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

json padic_coord_to_json(const padic::PadicNumber& x) {
  json j;
  if (x.is_exact()) {
    j["kind"] = "exact";
    j["num"] = numerator(x.rational()).str();
    j["den"] = denominator(x.rational()).str();
  } else if (x.is_ball()) {
    j["kind"] = "ball";
    j["prec"] = x.val_lower_bound();
  } else {
    j["kind"] = "digits";
    j["unit"] = x.unit().str();
    j["val"] = x.certified_val();
    j["rel"] = x.rel_prec();
  }
  return j;
}

padic::PadicNumber padic_coord_from_json(long long p, const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact") {
    BigInt num(j.at("num").get<std::string>());
    BigInt den(j.at("den").get<std::string>());
    return padic::PadicNumber::from_rational(p, BigRat(num, den));
  }
  if (kind == "ball")
    return padic::PadicNumber::zero_to_precision(p, j.at("prec").get<long long>());
  if (kind == "digits")
    return padic::PadicNumber::from_unit_val(p, BigInt(j.at("unit").get<std::string>()),
                                             j.at("val").get<long long>(),
                                             j.at("rel").get<long long>());
  throw std::invalid_argument("unknown p-adic coordinate kind: " + kind);
}

}  // namespace

std::string point_set_to_json(const metric::PointSet& z) {
  json j;
  j["schema"] = 1;
  if (z.context().archimedean) {
    j["field"] = {{"kind", "archimedean"}};
    json pts = json::array();
    for (const auto& q : z.points()) {
      pts.push_back({{q.cx0().real(), q.cx0().imag()}, {q.cx1().real(), q.cx1().imag()}});
    }
    j["points"] = std::move(pts);
  } else {
    j["field"] = {{"kind", "padic"}, {"p", z.context().p}};
    json pts = json::array();
    for (const auto& q : z.points())
      pts.push_back({padic_coord_to_json(q.px0()), padic_coord_to_json(q.px1())});
    j["points"] = std::move(pts);
  }
  return j.dump();
}

metric::PointSet point_set_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("schema").get<int>() != 1)
    throw std::invalid_argument("point_set_from_json: unsupported schema");
  const auto& field = j.at("field");
  std::vector<metric::ProjectivePoint> pts;
  if (field.at("kind") == "archimedean") {
    for (const auto& q : j.at("points")) {
      std::complex<double> c0(q.at(0).at(0).get<double>(), q.at(0).at(1).get<double>());
      std::complex<double> c1(q.at(1).at(0).get<double>(), q.at(1).at(1).get<double>());
      pts.push_back(metric::ProjectivePoint::complex_pair(c0, c1));
    }
  } else if (field.at("kind") == "padic") {
    const long long p = field.at("p").get<long long>();
    for (const auto& q : j.at("points"))
      pts.push_back(metric::ProjectivePoint::padic_pair(padic_coord_from_json(p, q.at(0)),
                                                        padic_coord_from_json(p, q.at(1))));
  } else {
    throw std::invalid_argument("point_set_from_json: unknown field kind");
  }
  return metric::PointSet(std::move(pts));
}

namespace {

// RFC 4180 quoting for cells holding commas or quotes.
std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns,
                     const std::vector<std::pair<std::string, std::string>>& meta)
    : os_(os), width_(columns.size()) {
  os_ << "# schema=1\n";
  for (const auto& [k, v] : meta) os_ << "# " << k << "=" << v << "\n";
  for (size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << csv_cell(columns[i]);
  os_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("CsvWriter: column count mismatch");
  for (size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << csv_cell(cells[i]);
  os_ << "\n";
}

}  // namespace p1energy::io

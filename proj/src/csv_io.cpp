#include "qchain/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qchain {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

void comment_line(std::ofstream& out, double theta, double epsilon) {
  out << "# theta=" << fmt17(theta) << " epsilon=" << fmt17(epsilon) << " version="
      << kToolVersion << "\n";
}

} // namespace

void write_fidelity_csv(const std::string& path, const std::vector<FidelityRecord>& recs,
                        double epsilon) {
  std::ofstream out = open_out(path);
  comment_line(out, recs.empty() ? 0.0 : recs.front().theta, epsilon);
  out << "theta,ell,f_single,bell_weight,phi_plus_overlap\n";
  for (const FidelityRecord& r : recs)
    out << fmt17(r.theta) << ',' << r.ell << ',' << fmt17(r.f_single) << ','
        << fmt17(r.bell_weight) << ',' << fmt17(r.phi_plus_overlap) << "\n";
}

void write_gap_csv(const std::string& path, const GapTable& table, double epsilon) {
  std::ofstream out = open_out(path);
  comment_line(out, table.records.empty() ? 0.0 : table.records.front().theta, epsilon);
  out << "ell,theta,ground_energy,gap,degeneracy,fit_residual\n";
  for (const GapRecord& r : table.records) {
    const double pred = table.fit.c * std::pow(static_cast<double>(r.ell), -table.fit.p);
    out << r.ell << ',' << fmt17(r.theta) << ',' << fmt17(r.ground_energy * epsilon) << ','
        << fmt17(r.gap * epsilon) << ',' << r.degeneracy << ','
        << fmt17(std::log(r.gap) - std::log(pred)) << "\n";
  }
}

void write_excite_csv(const std::string& path, const std::vector<SweepPoint>& points,
                      double epsilon) {
  std::ofstream out = open_out(path);
  comment_line(out, points.empty() ? 0.0 : points.front().theta, epsilon);
  out << "m,theta,phi,f_theta,gap,degeneracy,fit_ratio\n";
  for (const SweepPoint& p : points)
    out << p.m << ',' << fmt17(p.theta) << ',' << fmt17(p.phi) << ',' << fmt17(p.f) << ','
        << fmt17(p.gap * epsilon) << ',' << p.degeneracy << ',' << fmt17(p.fit_ratio)
        << "\n";
}

void write_gap_plot(const std::string& path, const GapTable& table, double epsilon) {
  std::ofstream out = open_out(path);
  out << "# gap versus chain length; fitted curve c/ell^p with c="
      << fmt17(table.fit.c * epsilon) << " p=" << fmt17(table.fit.p) << "\n";
  for (const GapRecord& r : table.records)
    out << r.ell << ' ' << fmt17(r.gap * epsilon) << ' '
        << fmt17(table.fit.c * std::pow(static_cast<double>(r.ell), -table.fit.p) * epsilon)
        << "\n";
}

void write_cells_plot(const std::string& path, const std::vector<VariationalResult>& rs,
                      double epsilon) {
  std::ofstream out = open_out(path);
  out << "# gap versus unit cell size with 1/m and 1/m^2 reference curves\n";
  if (rs.empty()) return;
  const double g1 = rs.front().gap * static_cast<double>(rs.front().m);
  for (const VariationalResult& r : rs)
    out << r.m << ' ' << fmt17(r.gap * epsilon) << ' ' << fmt17(g1 / r.m * epsilon) << ' '
        << fmt17(g1 / (static_cast<double>(r.m) * r.m) * epsilon) << "\n";
}

void write_sweep_plot(const std::string& path, const std::vector<SweepPoint>& points,
                      double epsilon) {
  std::ofstream out = open_out(path);
  out << "# gap versus f(theta) with the (1/8)(1-f)^3 curve\n";
  for (const SweepPoint& p : points) {
    const double law = (1.0 - p.f) * (1.0 - p.f) * (1.0 - p.f) / 8.0;
    out << fmt17(p.f) << ' ' << fmt17(p.gap * epsilon) << ' ' << fmt17(law * epsilon)
        << "\n";
  }
}

void write_operator_json(const std::string& path, const ChainOperator& H) {
  nlohmann::json j;
  j["shape"] = H.shape.dims;
  nlohmann::json terms = nlohmann::json::array();
  for (const LocalTerm& t : H.terms) {
    nlohmann::json jt;
    jt["sites"] = {t.first_site, t.last_site};
    nlohmann::json entries = nlohmann::json::array();
    for (std::int64_t r = 0; r < t.block_dim; ++r)
      for (std::int64_t c = 0; c < t.block_dim; ++c) {
        const Cx v = t.at(r, c);
        if (v == Cx{0.0, 0.0}) continue;
        entries.push_back({r, c, v.real(), v.imag()});
      }
    jt["entries"] = std::move(entries);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  std::ofstream out = open_out(path);
  out << j.dump(1) << "\n";
}

ChainOperator read_operator_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  nlohmann::json j;
  in >> j;
  ChainOperator H{ChainShape(j["shape"].get<std::vector<int>>())};
  for (const auto& jt : j["terms"]) {
    const int first = jt["sites"][0].get<int>();
    const int last = jt["sites"][1].get<int>();
    const std::int64_t d = H.shape.span_dim(first, last);
    CxVec block(d * d, Cx{0, 0});
    for (const auto& e : jt["entries"])
      block[e[0].get<std::int64_t>() * d + e[1].get<std::int64_t>()] =
          Cx{e[2].get<double>(), e[3].get<double>()};
    H.add_term(LocalTerm(first, last, d, std::move(block)));
  }
  return H;
}

} // namespace qchain

// Command-line driver: model dumps, exact-diagonalization runs, fidelity
// tables, variational scans and figure-data emission.

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "qchain/csv_io.hpp"
#include "qchain/exact_spectra.hpp"
#include "qchain/excitation.hpp"
#include "qchain/ground_state.hpp"
#include "qchain/model.hpp"

namespace {

using namespace qchain;

// Inclusive integer range "a..b" or a single integer.
std::vector<int> parse_range(const std::string& s) {
  const auto pos = s.find("..");
  if (pos == std::string::npos) return {std::stoi(s)};
  const int a = std::stoi(s.substr(0, pos));
  const int b = std::stoi(s.substr(pos + 2));
  if (b < a) throw CLI::ValidationError("range", "range must satisfy a <= b");
  std::vector<int> out;
  for (int v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start < s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stoi(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_dlist(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start < s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stod(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

struct CommonOpts {
  double epsilon = 1.0;
  int threads = 0;
  bool deterministic = false;
  double tol = 1e-9;

  void attach(CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "energy scale applied to emitted values");
    cmd->add_option("--threads", threads, "worker threads (0 = library default)");
    cmd->add_flag("--deterministic", deterministic,
                  "single-threaded deterministic reductions");
    cmd->add_option("--tol", tol, "eigensolver residual tolerance");
  }

  bool parallel() const { return !deterministic; }

  void apply_threads() const {
#ifdef _OPENMP
    if (deterministic)
      omp_set_num_threads(1);
    else if (threads > 0)
      omp_set_num_threads(threads);
#endif
  }
};

int run_model(double theta, int ell, const std::string& out) {
  ModelParams p{theta, 1.0, ell};
  ChainOperator H = build_chain(p);
  write_operator_json(out, H);
  std::printf("model theta=%s ell=%d sites=%d terms=%zu dim=%lld -> %s\n",
              fmt17(theta).c_str(), ell, H.shape.num_sites(), H.terms.size(),
              static_cast<long long>(H.dim()), out.c_str());
  return 0;
}

int run_ed(double theta, const std::vector<int>& ells, int k, const CommonOpts& c,
           const std::string& out, const std::string& plot) {
  GapTable table = gap_table(theta, ells, c.tol, c.parallel());
  (void)k;
  for (const GapRecord& r : table.records)
    std::printf("ed ell=%d E0=%s gap=%s deg=%d\n", r.ell,
                fmt17(r.ground_energy * c.epsilon).c_str(),
                fmt17(r.gap * c.epsilon).c_str(), r.degeneracy);
  std::printf("ed fit: gap ~ c/ell^p with c=%s p=%s rms_log_resid=%s\n",
              fmt17(table.fit.c * c.epsilon).c_str(), fmt17(table.fit.p).c_str(),
              fmt17(table.fit.rms_log_residual).c_str());
  if (!out.empty()) write_gap_csv(out, table, c.epsilon);
  if (!plot.empty()) write_gap_plot(plot, table, c.epsilon);
  return 0;
}

int run_fidelity(double theta, const std::vector<int>& ells, const std::string& out) {
  std::vector<FidelityRecord> recs;
  for (int ell : ells) recs.push_back(bell_fidelity(theta, ell));
  for (const FidelityRecord& r : recs)
    std::printf("fidelity theta=%s ell=%d f=%s bell_weight=%s overlap=%s\n",
                fmt17(r.theta).c_str(), r.ell, fmt17(r.f_single).c_str(),
                fmt17(r.bell_weight).c_str(), fmt17(r.phi_plus_overlap).c_str());
  if (!out.empty()) write_fidelity_csv(out, recs, 1.0);
  return 0;
}

std::vector<SweepPoint> results_to_points(const std::vector<VariationalResult>& rs) {
  std::vector<SweepPoint> pts;
  for (const VariationalResult& r : rs) {
    SweepPoint pt;
    pt.m = r.m;
    pt.theta = r.theta;
    pt.phi = r.phi;
    pt.f = fidelity_single(r.theta);
    pt.gap = r.gap;
    pt.degeneracy = r.degeneracy;
    const double law = std::pow(1.0 - pt.f, 3.0) / 8.0;
    pt.fit_ratio = law > 0.0 ? r.gap / law : 0.0;
    pts.push_back(pt);
  }
  return pts;
}

int run_excite(double theta, const std::vector<int>& ms, double phi, const CommonOpts& c,
               const std::string& out) {
  std::vector<VariationalResult> rs;
  for (int m : ms) {
    VariationalResult r = variational_gap(m, theta, phi, 1e-14, c.parallel());
    if (!r.converged) {
      std::fprintf(stderr, "excite: solver did not converge at m=%d\n", m);
      return 3;
    }
    std::printf("excite m=%d theta=%s phi=%s gap=%s deg=%d\n", m, fmt17(theta).c_str(),
                fmt17(phi).c_str(), fmt17(r.gap * c.epsilon).c_str(), r.degeneracy);
    rs.push_back(std::move(r));
  }
  if (!out.empty()) write_excite_csv(out, results_to_points(rs), c.epsilon);
  return 0;
}

int run_scan_cells(double theta, const std::vector<int>& ms, const CommonOpts& c,
                   const std::string& out, const std::string& plot) {
  std::vector<VariationalResult> rs = unit_cell_scan(theta, ms, 1e-14, c.parallel());
  for (const VariationalResult& r : rs) {
    if (!r.converged) {
      std::fprintf(stderr, "scan-cells: solver did not converge at m=%d\n", r.m);
      return 3;
    }
    std::printf("scan-cells m=%d gap=%s deg=%d\n", r.m, fmt17(r.gap * c.epsilon).c_str(),
                r.degeneracy);
  }
  if (!out.empty()) write_excite_csv(out, results_to_points(rs), c.epsilon);
  if (!plot.empty()) write_cells_plot(plot, rs, c.epsilon);
  return 0;
}

int run_sweep_theta(const std::vector<double>& thetas, const std::vector<int>& ms,
                    const CommonOpts& c, const std::string& out, const std::string& plot) {
  std::vector<SweepPoint> pts = theta_sweep(ms, thetas, 1e-14, c.parallel());
  for (const SweepPoint& pt : pts)
    std::printf("sweep m=%d theta=%s f=%s gap=%s ratio=%s\n", pt.m,
                fmt17(pt.theta).c_str(), fmt17(pt.f).c_str(),
                fmt17(pt.gap * c.epsilon).c_str(), fmt17(pt.fit_ratio).c_str());
  if (!out.empty()) write_excite_csv(out, pts, c.epsilon);
  if (!plot.empty()) write_sweep_plot(plot, pts, c.epsilon);
  return 0;
}

int run_appendix(double theta) {
  std::vector<double> ov = appendix_overlap(theta);
  std::printf("appendix-check theta=%s overlaps=%s %s %s\n", fmt17(theta).c_str(),
              fmt17(ov[0]).c_str(), fmt17(ov[1]).c_str(), fmt17(ov[2]).c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"teleportation-motivated spin-chain toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string theta_str = "1.56", ell_str = "1..4", m_str = "1,2", out, plot;
  std::string thetas_str;
  double phi = 0.0;
  int k = 6, ell_one = 1;

  auto* model = app.add_subcommand("model", "dump the chain Hamiltonian as JSON");
  model->add_option("--theta", theta_str);
  model->add_option("--ell", ell_one);
  model->add_option("--out", out)->required();

  auto* ed = app.add_subcommand("ed", "exact diagonalization gap table");
  ed->add_option("--theta", theta_str);
  ed->add_option("--ell", ell_str, "inclusive range a..b or single value");
  ed->add_option("--k", k);
  ed->add_option("--out", out);
  ed->add_option("--plot", plot);
  common.attach(ed);

  auto* fid = app.add_subcommand("fidelity", "fidelity law table");
  fid->add_option("--theta", theta_str);
  fid->add_option("--ell", ell_str);
  fid->add_option("--out", out);

  auto* exc = app.add_subcommand("excite", "variational excitation gaps");
  exc->add_option("--theta", theta_str);
  exc->add_option("--cells", m_str, "comma list of unit-cell sizes");
  exc->add_option("--phi", phi);
  exc->add_option("--out", out);
  common.attach(exc);

  auto* scan = app.add_subcommand("scan-cells", "gap versus unit-cell size");
  scan->add_option("--theta", theta_str);
  scan->add_option("--cells", m_str);
  scan->add_option("--out", out);
  scan->add_option("--plot", plot);
  common.attach(scan);

  auto* sweep = app.add_subcommand("sweep-theta", "gap versus fidelity sweep");
  sweep->add_option("--thetas", thetas_str, "comma list of theta values")->required();
  sweep->add_option("--cells", m_str);
  sweep->add_option("--out", out);
  sweep->add_option("--plot", plot);
  common.attach(sweep);

  auto* apx = app.add_subcommand("appendix-check", "variational triplet overlaps");
  apx->add_option("--theta", theta_str);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  try {
    common.apply_threads();
    const double theta = std::stod(theta_str);

    if (model->parsed()) return run_model(theta, ell_one, out);
    if (ed->parsed()) return run_ed(theta, parse_range(ell_str), k, common, out, plot);
    if (fid->parsed()) return run_fidelity(theta, parse_range(ell_str), out);
    if (exc->parsed()) return run_excite(theta, parse_list(m_str), phi, common, out);
    if (scan->parsed()) return run_scan_cells(theta, parse_list(m_str), common, out, plot);
    if (sweep->parsed())
      return run_sweep_theta(parse_dlist(thetas_str), parse_list(m_str), common, out, plot);
    if (apx->parsed()) return run_appendix(theta);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}

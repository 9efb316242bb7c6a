// Command-line driver.
//
// Subcommands:
//   verify <suite>   run a verification suite (identities|exact|kernel|
//                    moments|asymptotics|mcmc|all)
//   sample           Metropolis sampling; CSV series or SVG height profile
//   limitshape       SVG of the limit shape with the frozen boundary marked
//   moments          contour moments of slice observables
//   greens           Green's function of the cylinder (CSV grid or SVG heatmap)
//   kernel           correlation kernel entries on a site window
//   exact            small-size expectations by exact enumeration
//
// Options may also be given in a `key = value` config file (# comments);
// command-line flags override the file.  Every output file starts with a
// header line recording the resolved run configuration.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cylq/core.hpp"
#include "cylq/kernel.hpp"
#include "cylq/limitshape.hpp"
#include "cylq/mcmc.hpp"
#include "cylq/moments.hpp"
#include "cylq/special.hpp"
#include "cylq/stats.hpp"
#include "cylq/transfer.hpp"
#include "cylq/verify.hpp"

namespace {

struct RunConfig {
  int n = 2;
  double t = 0.5;
  double u = 1.0;
  int k = 1;
  std::vector<int> tau;
  std::uint64_t seed = 1;
  std::int64_t sweeps = 2000;
  std::string out;
  int threads = 0;  // 0 = hardware concurrency

  int resolved_threads() const {
    if (threads > 0) return threads;
    int h = static_cast<int>(std::thread::hardware_concurrency());
    return h > 0 ? h : 1;
  }
  std::string header(const std::string& cmd) const {
    std::ostringstream s;
    s << "cylq run: cmd=" << cmd << " n=" << n << " t=" << t << " u=" << u
      << " k=" << k << " tau=";
    if (tau.empty()) s << "-";
    for (size_t i = 0; i < tau.size(); ++i) s << (i ? "," : "") << tau[i];
    s << " seed=" << seed << " sweeps=" << sweeps
      << " threads=" << resolved_threads();
    return s.str();
  }
};

std::string f17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Opens cfg.out (or stdout) and writes the run-configuration header as the
// first line, in CSV (#) or SVG (<!-- -->) comment style.
class Output {
 public:
  Output(const RunConfig& cfg, const std::string& cmd, bool svg) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out);
      if (!file_) throw std::runtime_error("cannot open output file " + cfg.out);
    }
    if (svg)
      stream() << "<!-- " << cfg.header(cmd) << " -->\n";
    else
      stream() << "# " << cfg.header(cmd) << "\n";
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// ------------------------------------------------------------ tiny SVG helper
struct Svg {
  std::ostringstream body;
  double w, h;
  double x0, x1, y0, y1;  // data window
  Svg(double w_, double h_, double dx0, double dx1, double dy0, double dy1)
      : w(w_), h(h_), x0(dx0), x1(dx1), y0(dy0), y1(dy1) {}
  double px(double x) const { return (x - x0) / (x1 - x0) * w; }
  double py(double y) const { return h - (y - y0) / (y1 - y0) * h; }
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& style) {
    body << "<polyline fill=\"none\" style=\"" << style << "\" points=\"";
    for (auto& [x, y] : pts) body << px(x) << "," << py(y) << " ";
    body << "\"/>\n";
  }
  void line(double xa, double ya, double xb, double yb,
            const std::string& style) {
    body << "<line x1=\"" << px(xa) << "\" y1=\"" << py(ya) << "\" x2=\""
         << px(xb) << "\" y2=\"" << py(yb) << "\" style=\"" << style
         << "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& fill) {
    body << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"" << r
         << "\" fill=\"" << fill << "\"/>\n";
  }
  void rect(double xa, double ya, double xb, double yb,
            const std::string& fill) {
    body << "<rect x=\"" << px(xa) << "\" y=\"" << py(yb) << "\" width=\""
         << px(xb) - px(xa) << "\" height=\"" << py(ya) - py(yb)
         << "\" fill=\"" << fill << "\"/>\n";
  }
  void text(double x, double y, const std::string& s) {
    body << "<text x=\"" << px(x) << "\" y=\"" << py(y)
         << "\" font-size=\"12\" font-family=\"sans-serif\">" << s
         << "</text>\n";
  }
  void emit(std::ostream& os) const {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
       << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
       << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body.str() << "</svg>\n";
  }
};

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

cylq::BoxTruncation sampling_box(const RunConfig& cfg) {
  // horizontal correlation scale is 2n/|log t|; keep several multiples of it
  int L = std::max(6 * cfg.n, static_cast<int>(std::ceil(
                                  10.0 * cfg.n / std::abs(std::log(cfg.t)))));
  return {L, L};
}

// ----------------------------------------------------------------- verify
int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  std::vector<int> ids;
  try {
    ids = cylq::suite_criteria(suite);
  } catch (const std::invalid_argument&) {
    std::cerr << "error: unknown suite '" << suite
              << "'\nusage: cylq verify "
                 "{identities|exact|kernel|moments|asymptotics|mcmc|all}\n";
    return 2;
  }
  bool all = true;
  for (int id : ids) {
    cylq::CriterionResult r = cylq::run_criterion(id, cfg.resolved_threads());
    all = all && r.pass;
    std::printf("[%s] criterion %2d: %s (%.1fs) %s\n",
                r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "suite PASS" : "suite FAIL");
  return all ? 0 : 1;
}

// ----------------------------------------------------------------- sample
int cmd_sample(const RunConfig& cfg) {
  cylq::ModularData md(cfg.t, cfg.n);
  cylq::BoxTruncation box = sampling_box(cfg);
  std::int64_t burn = std::max<std::int64_t>(1, cfg.sweeps / 4);
  cylq::RunResult run =
      cylq::run_chain(md, box, cfg.sweeps, burn, 4, cfg.seed);
  if (run.boundary_occupancy > 0.01)
    std::cerr << "warning: truncation box occupied in "
              << run.boundary_occupancy * 100.0
              << "% of sweeps; results may be biased\n";
  if (ends_with(cfg.out, ".svg")) {
    int n2 = 2 * cfg.n;
    cylq::Site lo = static_cast<cylq::Site>(
                        std::floor(n2 * cylq::liquid_lower_edge(cfg.t))) -
                    4;
    cylq::Site hi = static_cast<cylq::Site>(std::ceil(2.5 * n2));
    cylq::HeightProfile hp =
        cylq::height_profile(run.samples, n2, md, lo, hi, 16);
    Output out(cfg, "sample", true);
    double ylo = lo / static_cast<double>(n2), yhi = hi / static_cast<double>(n2);
    Svg svg(640, 420, ylo - 0.1, yhi + 0.1, -0.05, 1.3);
    std::vector<std::pair<double, double>> curve;
    for (int i = 0; i <= 400; ++i) {
      double y = ylo + (yhi - ylo) * i / 400.0;
      curve.push_back({y, cylq::limit_shape_height(y, cfg.t)});
    }
    svg.polyline(curve, "stroke:#c22;stroke-width:2");
    for (const auto& row : hp.rows)
      svg.circle(row.y / static_cast<double>(n2), row.mean, 2.5, "#225");
    svg.text(ylo, 1.2, "height profile (dots) vs limit shape (line)");
    svg.emit(out.stream());
  } else {
    Output out(cfg, "sample", false);
    out.stream() << "# autocorrelation_time=" << f17(run.autocorrelation_time)
                 << " boundary_occupancy=" << f17(run.boundary_occupancy)
                 << "\nsample,observable\n";
    for (size_t i = 0; i < run.observable.size(); ++i)
      out.stream() << i << "," << f17(run.observable[i]) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- limitshape
int cmd_limitshape(const RunConfig& cfg) {
  double y0 = cylq::liquid_lower_edge(cfg.t);
  Output out(cfg, "limitshape", true);
  Svg svg(640, 420, y0 - 1.0, 3.0, -0.05, 1.25);
  std::vector<std::pair<double, double>> curve;
  for (int i = 0; i <= 600; ++i) {
    double y = (y0 - 1.0) + (3.0 - (y0 - 1.0)) * i / 600.0;
    curve.push_back({y, cylq::limit_shape_height(y, cfg.t)});
  }
  svg.polyline(curve, "stroke:#c22;stroke-width:2");
  svg.line(y0, -0.05, y0, 1.25,
           "stroke:#888;stroke-width:1;stroke-dasharray:6 3");
  svg.line(y0 - 1.0, 0.0, 3.0, 0.0, "stroke:#bbb;stroke-width:1");
  svg.text(y0 + 0.05, 1.15, "frozen boundary y0 = " + f17(y0));
  svg.emit(out.stream());
  return 0;
}

// ----------------------------------------------------------------- moments
int cmd_moments(const RunConfig& cfg) {
  cylq::ModularData md(cfg.t, cfg.n);
  std::vector<int> taus = cfg.tau.empty() ? std::vector<int>{1, 3} : cfg.tau;
  std::vector<cylq::Slice> slices;
  for (int tau : taus) slices.push_back({tau, cfg.k});
  try {
    double m = cylq::contour_moment(md, slices);
    double sm = cylq::shift_mixed_moment(md, slices, cfg.u);
    Output out(cfg, "moments", false);
    out.stream() << "slices,moment,shift_mixed\n\"";
    for (size_t i = 0; i < taus.size(); ++i)
      out.stream() << (i ? " " : "") << "(" << taus[i] << ";" << cfg.k << ")";
    out.stream() << "\"," << f17(m) << "," << f17(sm) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what()
              << "\n(hint: the contour formula needs the total moment order "
                 "below n and each k not divisible by n)\n";
    return 1;
  }
  return 0;
}

// ----------------------------------------------------------------- greens
int cmd_greens(const RunConfig& cfg) {
  cylq::ModularData md(cfg.t, cfg.n);
  std::complex<double> e2(0.27, 0.45 * md.beta);
  int nx = 96, ny = 64;
  auto value = [&](int i, int j) {
    std::complex<double> e1((i + 0.5) / nx * 0.5, (j + 0.5) / ny * md.beta);
    return cylq::greens(e1, e2, cfg.t);
  };
  if (ends_with(cfg.out, ".csv") || cfg.out.empty()) {
    Output out(cfg, "greens", false);
    out.stream() << "re_eta,im_eta,greens\n";
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        out.stream() << f17((i + 0.5) / nx * 0.5) << ","
                     << f17((j + 0.5) / ny * md.beta) << ","
                     << f17(value(i, j)) << "\n";
    return 0;
  }
  Output out(cfg, "greens", true);
  Svg svg(640, 420, 0.0, 0.5, 0.0, md.beta);
  double vmax = 1e-12;
  std::vector<double> vals(static_cast<size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double v = value(i, j);
      vals[static_cast<size_t>(i) * ny + j] = v;
      vmax = std::max(vmax, std::min(std::abs(v), 2.0));
    }
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double v = std::clamp(vals[static_cast<size_t>(i) * ny + j] / vmax,
                            -1.0, 1.0);
      int r = static_cast<int>(255 * std::max(0.0, v));
      int b = static_cast<int>(255 * std::max(0.0, -v));
      int g = 255 - std::max(r, b);
      std::ostringstream fill;
      fill << "rgb(" << 255 - b << "," << g << "," << 255 - r << ")";
      svg.rect(i * 0.5 / nx, j * md.beta / ny, (i + 1) * 0.5 / nx,
               (j + 1) * md.beta / ny, fill.str());
    }
  svg.text(0.02, 0.93 * md.beta, "Green's function heatmap");
  svg.emit(out.stream());
  return 0;
}

// ----------------------------------------------------------------- kernel
int cmd_kernel(const RunConfig& cfg) {
  cylq::ModularData md(cfg.t, cfg.n);
  cylq::KernelCache kc(md, cfg.u);
  std::vector<int> taus = cfg.tau.empty() ? std::vector<int>{1, 2} : cfg.tau;
  int w = cfg.k + 3;
  Output out(cfg, "kernel", false);
  out.stream() << "sigma,x,tau,y,kernel\n";
  for (int sigma : taus)
    for (int tau : taus)
      for (int x = -w; x < w; ++x)
        for (int y = -w; y < w; ++y)
          out.stream() << sigma << "," << x << "," << tau << "," << y << ","
                       << f17(kc.entry(sigma, x, tau, y)) << "\n";
  return 0;
}

// ----------------------------------------------------------------- exact
int cmd_exact(const RunConfig& cfg) {
  if (cfg.n > 3) {
    std::cerr << "configuration error: exact enumeration is limited to n <= 3\n";
    return 1;
  }
  cylq::ModularData md(cfg.t, cfg.n);
  double r = std::pow(md.q, 2.0 * cfg.k);
  cylq::TransferEngine eng(cfg.n, md.q, {6, 6});
  cylq::ShiftDistribution sd = cylq::shift_distribution(cfg.u, cfg.t);
  std::vector<int> taus = cfg.tau;
  if (taus.empty())
    for (int tau = 1; tau <= 2 * cfg.n; ++tau) taus.push_back(tau);
  Output out(cfg, "exact", false);
  out.stream() << "tau,expectation,shifted_expectation\n";
  for (int tau : taus)
    out.stream() << tau << "," << f17(eng.observable_expectation({{tau, r}}))
                 << ","
                 << f17(eng.observable_expectation_shifted({{tau, r}}, sd))
                 << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for volume-weighted cylinder tilings"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--n", cfg.n, "number of column pairs (period 2n)")
      ->check(CLI::PositiveNumber);
  app.add_option("--t", cfg.t, "modular parameter t in (0,1)")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  app.add_option("--u", cfg.u, "shift-mixing parameter u > 0")
      ->check(CLI::PositiveNumber);
  app.add_option("--k", cfg.k, "moment order / site-window radius")
      ->check(CLI::PositiveNumber);
  app.add_option("--tau", cfg.tau, "column indices (repeatable)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--sweeps", cfg.sweeps, "Monte Carlo sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  app.set_config("--config")
      ->description("key = value config file; flags override");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  verify->add_option("suite", suite, "suite name");
  app.add_subcommand("sample", "Metropolis sampling");
  app.add_subcommand("limitshape", "limit-shape SVG plot");
  app.add_subcommand("moments", "contour moments of slice observables");
  app.add_subcommand("greens", "cylinder Green's function");
  app.add_subcommand("kernel", "correlation kernel entries");
  app.add_subcommand("exact", "exact small-size expectations");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "verify") return cmd_verify(cfg, suite);
    if (cmd == "sample") return cmd_sample(cfg);
    if (cmd == "limitshape") return cmd_limitshape(cfg);
    if (cmd == "moments") return cmd_moments(cfg);
    if (cmd == "greens") return cmd_greens(cfg);
    if (cmd == "kernel") return cmd_kernel(cfg);
    if (cmd == "exact") return cmd_exact(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

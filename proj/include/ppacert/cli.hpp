#pragma once

#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "ppacert/dual_certificate.hpp"
#include "ppacert/ppa.hpp"
#include "ppacert/pep.hpp"
#include "ppacert/rational.hpp"
#include "ppacert/worst_case.hpp"

namespace ppacert::cli {

struct BoundCmd {
  int n = 1;
};
struct CertifyCmd {
  int n = 1;
};
struct RateTableCmd {
  int n_max = 1;
  std::string path = "-";  // "-" writes to the command's output sink
};
struct ExampleCmd {
  int n = 1;
  double scale = 1.0;
  std::string path = "-";
};
struct SdpExportCmd {
  int n = 1;
  std::string path = "-";
};
struct SimulateCmd {
  bool rotation = false;
  std::optional<double> theta;     // rotation angle; defaults to acos(sqrt(N/(N+1)))
  std::optional<Matrix> matrix;    // linear monotone operator
  std::vector<double> w0;          // empty: first unit vector
  double lambda = 1.0;
  int n = 1;                       // rate index N; runs N+1 resolvent steps
};

using Command = std::variant<BoundCmd, CertifyCmd, RateTableCmd, ExampleCmd, SdpExportCmd,
                             SimulateCmd>;

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Writes through to either the sink (path "-") or a fresh file.
class OutputTarget {
public:
  OutputTarget(const std::string& path, std::ostream& sink) : sink_(sink) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : sink_; }
  void finish() {
    stream().flush();
    if (!stream().good()) throw std::runtime_error("write failure");
  }

private:
  std::ostream& sink_;
  std::ofstream file_;
};

inline std::string rate_table_row(int n) {
  const Rational zeta = certified_upper_bound(n);
  const Rational known(1, n + 1);
  const Rational ratio = zeta * Rational(n + 1);
  return std::to_string(n) + "," + zeta.to_decimal() + "," + known.to_decimal() + "," +
         ratio.to_decimal();
}

}  // namespace detail

inline int run(const BoundCmd& cmd, std::ostream& out) {
  const Rational zeta = certified_upper_bound(cmd.n);
  out << zeta.to_string() << " = " << zeta.to_decimal() << "\n";
  return 0;
}

inline int run(const CertifyCmd& cmd, std::ostream& out) {
  try {
    const OptimalRate rate = certify_optimal_rate(cmd.n);
    out << "PASS eta = " << rate.zeta.to_string() << " = " << rate.zeta.to_decimal() << "\n";
    return 0;
  } catch (const CertificationError& e) {
    out << "FAIL " << e.what() << "\n";
    return 1;
  }
}

inline int run(const RateTableCmd& cmd, std::ostream& out) {
  // Rows are certified concurrently and emitted in ascending N order.
  std::vector<std::string> rows(static_cast<size_t>(cmd.n_max));
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = static_cast<int>(std::min<unsigned>(hw == 0 ? 1 : hw, 8));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int n = t + 1; n <= cmd.n_max; n += workers)
          rows[static_cast<size_t>(n) - 1] = detail::rate_table_row(n);
      } catch (...) {
        errors[static_cast<size_t>(t)] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  detail::OutputTarget target(cmd.path, out);
  target.stream() << "N,zeta,known_bound,ratio\n";
  for (const auto& row : rows) target.stream() << row << "\n";
  target.finish();
  return 0;
}

inline int run(const ExampleCmd& cmd, std::ostream& out) {
  const auto pts = emit_points(cmd.n, cmd.scale);
  detail::OutputTarget target(cmd.path, out);
  target.stream() << "k,x,y\n";
  for (size_t k = 0; k < pts.size(); ++k)
    target.stream() << k << "," << detail::fmt_double(pts[k][0]) << ","
                    << detail::fmt_double(pts[k][1]) << "\n";
  target.finish();
  return 0;
}

inline int run(const SdpExportCmd& cmd, std::ostream& out) {
  const PepInstance inst = build_instance(cmd.n);
  detail::OutputTarget target(cmd.path, out);
  export_sdpa(inst, target.stream());
  target.finish();
  return 0;
}

inline int run(const SimulateCmd& cmd, std::ostream& out) {
  std::optional<OperatorSpec> op;
  if (cmd.rotation) {
    const double theta =
        cmd.theta ? *cmd.theta
                  : std::acos(std::sqrt(static_cast<double>(cmd.n) / (cmd.n + 1)));
    op = OperatorSpec::rotation(theta);
  } else if (cmd.matrix) {
    op = OperatorSpec::linear_monotone(*cmd.matrix);
  } else {
    throw std::invalid_argument("simulate: need --rotation or --matrix");
  }

  Vector w0;
  if (cmd.w0.empty()) {
    w0 = Vector::Zero(op->dim());
    w0[0] = 1.0;
  } else {
    if (static_cast<int>(cmd.w0.size()) != op->dim())
      throw std::invalid_argument("simulate: w0 dimension does not match the operator");
    w0 = Vector::Map(cmd.w0.data(), static_cast<Eigen::Index>(cmd.w0.size()));
  }

  const Trajectory t = ppa_run(*op, w0, cmd.lambda, cmd.n + 1);
  for (size_t k = 0; k < t.residual_norms.size(); ++k)
    out << "residual[" << k << "] = " << detail::fmt_double(t.residual_norms[k]) << "\n";
  out << "performance_ratio = "
      << detail::fmt_double(performance_ratio(t, Vector::Zero(op->dim()))) << "\n";
  return 0;
}

/// Dispatches a parsed command; returns the process exit status (0 success,
/// 1 verification or I/O failure).
inline int run(const Command& cmd, std::ostream& out) {
  try {
    return std::visit([&](const auto& c) { return run(c, out); }, cmd);
  } catch (const CertificationError& e) {
    out << "FAIL " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ppacert::cli

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ppacert/cli.hpp"

namespace {

// "a,b;c,d" -> square row-major matrix
ppacert::Matrix parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream row_stream(text);
  std::string row;
  while (std::getline(row_stream, row, ';')) {
    std::vector<double> entries;
    std::stringstream entry_stream(row);
    std::string entry;
    while (std::getline(entry_stream, entry, ',')) entries.push_back(std::stod(entry));
    rows.push_back(entries);
  }
  if (rows.empty()) throw CLI::ValidationError("--matrix", "empty matrix");
  const size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw CLI::ValidationError("--matrix", "matrix must be square");
  ppacert::Matrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string entry;
  while (std::getline(s, entry, ',')) out.push_back(std::stod(entry));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact worst-case rate certification for the proximal point algorithm"};
  app.require_subcommand(1);

  ppacert::cli::BoundCmd bound;
  auto* bound_cmd = app.add_subcommand(
      "bound", "Print the certified worst-case rate as an exact fraction and decimal");
  bound_cmd->add_option("N", bound.n, "iteration count")->required()->check(CLI::PositiveNumber);

  ppacert::cli::CertifyCmd certify;
  auto* certify_cmd = app.add_subcommand(
      "certify", "Run the full primal/dual/zero-gap certification for one N");
  certify_cmd->add_option("N", certify.n, "iteration count")
      ->required()
      ->check(CLI::PositiveNumber);

  ppacert::cli::RateTableCmd table;
  auto* table_cmd = app.add_subcommand(
      "rate-table", "CSV of certified rate vs the classical 1/(N+1) bound for N = 1..N_max");
  table_cmd->add_option("N_max", table.n_max, "largest iteration count")
      ->required()
      ->check(CLI::PositiveNumber);
  table_cmd->add_option("path", table.path, "output file, '-' for stdout");

  ppacert::cli::ExampleCmd example;
  auto* example_cmd =
      app.add_subcommand("example", "CSV coordinates of the extremal rotation trajectory");
  example_cmd->add_option("N", example.n, "iteration count")
      ->required()
      ->check(CLI::PositiveNumber);
  example_cmd->add_option("path", example.path, "output file, '-' for stdout");
  example_cmd->add_option("--scale", example.scale, "scale of w0 (default 1)")
      ->check(CLI::PositiveNumber);

  ppacert::cli::SdpExportCmd sdp;
  auto* sdp_cmd =
      app.add_subcommand("sdp-export", "Write the performance-estimation SDP in sparse SDPA form");
  sdp_cmd->add_option("N", sdp.n, "iteration count")->required()->check(CLI::PositiveNumber);
  sdp_cmd->add_option("path", sdp.path, "output file, '-' for stdout");

  ppacert::cli::SimulateCmd sim;
  std::string matrix_text, w0_text;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Run PPA on a concrete operator and print residual norms and the ratio");
  sim_cmd->add_option("--N", sim.n, "rate index N (runs N+1 resolvent steps)")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* rot_flag = sim_cmd->add_flag("--rotation", sim.rotation,
                                     "skew rotation operator (default angle acos(sqrt(N/(N+1))))");
  double theta_value = 0.0;
  auto* theta_opt =
      sim_cmd->add_option("--theta", theta_value, "rotation angle in (0, pi/2)")->needs(rot_flag);
  auto* matrix_opt = sim_cmd->add_option("--matrix", matrix_text,
                                         "linear monotone operator, rows 'a,b;c,d'");
  matrix_opt->excludes(rot_flag);
  sim_cmd->add_option("--w0", w0_text, "initial point 'x,y,...' (default first unit vector)");
  sim_cmd->add_option("--lambda", sim.lambda, "resolvent parameter (default 1)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    ppacert::cli::Command cmd;
    if (bound_cmd->parsed()) cmd = bound;
    else if (certify_cmd->parsed()) cmd = certify;
    else if (table_cmd->parsed()) cmd = table;
    else if (example_cmd->parsed()) cmd = example;
    else if (sdp_cmd->parsed()) cmd = sdp;
    else {
      if (theta_opt->count() > 0) sim.theta = theta_value;
      if (matrix_opt->count() > 0) sim.matrix = parse_matrix(matrix_text);
      if (!w0_text.empty()) sim.w0 = parse_vector(w0_text);
      if (!sim.rotation && !sim.matrix) {
        std::cerr << "simulate: need --rotation or --matrix\n";
        return 2;
      }
      cmd = sim;
    }
    return ppacert::cli::run(cmd, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

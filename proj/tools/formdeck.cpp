// formdeck command line driver.

#include <formdeck/ddr.hpp>
#include <formdeck/lift.hpp>
#include <formdeck/mesh_gen.hpp>
#include <formdeck/poincare.hpp>
#include <formdeck/scalings.hpp>
#include <formdeck/topology.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

using namespace formdeck;

namespace {

constexpr int exit_usage = 64;
constexpr int exit_parse = 2;
constexpr int exit_invalid = 3;

PolyForm random_form(int n, int k, int deg, std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PolyForm w(n, k, deg);
  for (int a = 0; a < w.n_components(); ++a)
    for (auto& x : w.component(a).coeffs()) x = u(rng);
  return w;
}

/// Betti numbers every generated family must have
std::vector<int> expected_betti(const std::string& family, int n)
{
  std::vector<int> b(n + 1, 0);
  b[0] = 1;
  if (family == "annulus") b[1] = 1;
  return b;
}

int cmd_gen(const std::string& family, int level, int levels, std::uint64_t seed, const std::string& out)
{
  const int first = levels > 0 ? 1 : level, last = levels > 0 ? levels : level;
  for (int l = first; l <= last; ++l) {
    Mesh m = generate(family, l, seed);
    if (betti_numbers(m, ComplexKind::Cellular) != expected_betti(family, m.dim())) {
      std::cerr << "error: " << family << " level " << l << " has unexpected Betti numbers\n";
      return exit_invalid;
    }
    if (out.empty() || out == "-") {
      std::cout << m.to_json() << "\n";
      continue;
    }
    std::string path = out;
    if (levels > 0) {
      auto dot = path.rfind('.');
      std::string stem = dot == std::string::npos ? path : path.substr(0, dot);
      path = stem + "_l" + std::to_string(l) + ".json";
    }
    m.save(path);
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_validate(const std::string& path)
{
  Mesh m = Mesh::load(path);
  auto reg = m.regularity_report();
  std::cout << "valid dim=" << m.dim();
  for (int k = 0; k <= m.dim(); ++k) std::cout << " cells" << k << "=" << m.num_cells(k);
  std::cout << " rho=" << reg.rho << "\n";
  return 0;
}

int cmd_betti(const std::string& path)
{
  Mesh m = Mesh::load(path);
  std::cout << "complex,k,betti\n";
  for (auto [kind, name] : {std::pair{ComplexKind::Cellular, "cellular"}, std::pair{ComplexKind::Simplicial, "simplicial"}}) {
    auto b = betti_numbers(m, kind);
    for (size_t k = 0; k < b.size(); ++k) std::cout << name << "," << k << "," << b[k] << "\n";
  }
  return 0;
}

int cmd_lift_check(const std::string& path, std::uint64_t seed)
{
  Mesh m = Mesh::load(path);
  WhitneyComplex W(m);
  CochainLift L(m, W);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::cout << "k,cochain_map_defect,collapse_map_defect,collapse_lift_defect,max_poincare_residual,poincare_constant\n";
  double worst = 0.0;
  for (int k = 0; k <= m.dim(); ++k) {
    Eigen::MatrixXd JI = L.collapse_matrix(k) * L.lift_matrix(k);
    double ji = (JI - Eigen::MatrixXd::Identity(JI.rows(), JI.cols())).cwiseAbs().maxCoeff();
    double res = 0.0, cst = 0.0;
    if (k < m.dim()) {
      IntSparse D = coboundary_matrix(m, ComplexKind::Cellular, k);
      for (int s = 0; s < 20; ++s) {
        Eigen::VectorXd theta(m.num_cells(k));
        for (int i = 0; i < theta.size(); ++i) theta(i) = g(rng);
        res = std::max(res, L.cochain_poincare(k, D.cast<double>() * theta).residual);
      }
      cst = L.poincare_constant(k);
    }
    std::cout << k << "," << L.cochain_map_defect(k) << "," << L.collapse_map_defect(k) << "," << ji << ","
              << res << "," << cst << "\n";
    worst = std::max({worst, L.cochain_map_defect(k), L.collapse_map_defect(k), ji, res});
  }
  return worst <= 1e-9 ? 0 : 1;
}

int cmd_ddr_check(const std::string& path, int r, std::uint64_t seed)
{
  Mesh m = Mesh::load(path);
  DDRComplex X(m, r);
  std::mt19937_64 rng(seed);
  const int n = m.dim();
  std::cout << "k,dofs,dd,stokes,potential,commutation\n";
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    Eigen::VectorXd x(X.size(k));
    std::normal_distribution<double> g;
    for (int i = 0; i < x.size(); ++i) x(i) = g(rng);
    double dd = 0.0, com = 0.0;
    if (k + 1 < n) {
      Eigen::VectorXd y = X.apply_d(k + 1, X.apply_d(k, x));
      dd = y.norm() / std::max(1.0, x.norm());
    }
    if (k < n) {
      PolyForm w = random_form(n, k, r + 2, rng);
      Eigen::VectorXd lhs = X.apply_d(k, X.interpolate(k, ambient_form(m, w)));
      Eigen::VectorXd rhs = X.interpolate(k + 1, ambient_form(m, exterior_derivative(w)));
      com = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
    }
    double pot = X.potential_consistency(k, ambient_form(m, random_form(n, k, r, rng)));
    double st = X.stokes_residual(k, x);
    std::cout << k << "," << X.size(k) << "," << dd << "," << st << "," << pot << "," << com << "\n";
    worst = std::max({worst, dd, st, pot, com});
  }
  return worst <= 1e-9 ? 0 : 1;
}

int cmd_sweep(const std::string& family, int first, int levels, int k, int r, int samples, std::uint64_t seed,
              const std::string& out)
{
  auto rows = poincare_sweep(family, first, levels, k, r, seed, samples);
  std::ofstream csv(out);
  csv << "family,level,k,r,h,rho,cells,dofs,spectral_constant,sigma_min,sigma_kernel,lifting_constant,cochain_constant,harmonic_dim,max_residual\n";
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : rows) {
    csv << x.family << "," << x.level << "," << x.k << "," << x.r << "," << x.h << "," << x.rho << "," << x.n_cells << ","
        << x.dofs << "," << x.spectral << "," << x.gap << "," << x.kernel_sigma << "," << x.lifting << "," << x.cochain << "," << x.harmonic << ","
        << x.max_residual << "\n";
    j.push_back({{"family", x.family}, {"level", x.level}, {"k", x.k}, {"r", x.r}, {"h", x.h}, {"rho", x.rho},
                 {"cells", x.n_cells}, {"dofs", x.dofs}, {"spectral_constant", x.spectral},
                 {"sigma_min", x.gap}, {"sigma_kernel", x.kernel_sigma}, {"seed", seed},
                 {"lifting_constant", x.lifting}, {"cochain_constant", x.cochain}, {"harmonic_dim", x.harmonic},
                 {"max_residual", x.max_residual}, {"seconds", x.seconds}});
  }
  std::string jpath = out;
  auto dot = jpath.rfind('.');
  jpath = (dot == std::string::npos ? jpath : jpath.substr(0, dot)) + ".json";
  std::ofstream(jpath) << j.dump(2) << "\n";
  std::cout << "wrote " << out << " and " << jpath << "\n";
  double worst = 0.0;
  for (const auto& x : rows) worst = std::max(worst, x.max_residual);
  return worst <= 1e-9 ? 0 : 1;
}

int cmd_scalings(const std::string& shape, int levels, int r, int j)
{
  Mesh m = single_cell_mesh(shape);
  const int d = m.dim(), cell = 0;
  std::vector<double> scales;
  for (int l = 0; l < levels; ++l) scales.push_back(std::ldexp(1.0, -l));
  auto rows = appendix_scalings(m, d, cell, r, j, scales);
  std::cout << "quantity,expected_exponent,measured_exponent";
  for (double s : scales) std::cout << ",s=" << s;
  std::cout << "\n";
  for (const auto& row : rows) {
    std::cout << row.quantity << "," << row.expected << "," << row.measured;
    for (double v : row.values) std::cout << "," << v;
    std::cout << "\n";
  }
  return 0;
}

const char* csv_schemas = R"(CSV output:
  topology betti     complex,k,betti
  lift check         k,cochain_map_defect,collapse_map_defect,collapse_lift_defect,
                     max_poincare_residual,poincare_constant
  ddr check          k,dofs,dd,stokes,potential,commutation
  poincare sweep     family,level,k,r,h,rho,cells,dofs,spectral_constant,sigma_min,
                     sigma_kernel,lifting_constant,cochain_constant,harmonic_dim,max_residual
                     (plus a .json file with the same rows, the seed and timings)
  appendix-scalings  quantity,expected_exponent,measured_exponent,s=<scale>...
Checks exit 1 when a residual exceeds 1e-9. FORMDECK_SEED sets the default seed (42).)";

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Discrete de Rham complexes on polytopal meshes"};
  app.footer(csv_schemas);
  app.require_subcommand(1);
  std::uint64_t seed = default_seed();

  std::string family = "square", out, mesh_path;
  std::string shape = "triangle";
  int level = 1, r = 1, k = 0, levels = 3, first = 1, samples = 20, j = 1, gen_levels = 0;

  auto* gen = app.add_subcommand("gen", "generate a mesh of a family");
  gen->add_option("--family", family)->check(CLI::IsMember(family_names()));
  auto* lvl = gen->add_option("--level", level)->check(CLI::PositiveNumber);
  gen->add_option("--levels", gen_levels, "write levels 1..L as <out>_l<level>.json")
      ->check(CLI::PositiveNumber)
      ->excludes(lvl);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out);

  auto* val = app.add_subcommand("validate", "check a mesh file");
  val->add_option("mesh", mesh_path)->required();

  auto* topo = app.add_subcommand("topology", "topological queries");
  topo->require_subcommand(1);
  auto* betti = topo->add_subcommand("betti", "Betti numbers of both complexes");
  betti->add_option("mesh", mesh_path)->required();

  auto* lift = app.add_subcommand("lift", "cochain lifting");
  lift->require_subcommand(1);
  auto* lcheck = lift->add_subcommand("check", "cochain map and Poincare checks");
  lcheck->add_option("mesh", mesh_path)->required();

  auto* ddr = app.add_subcommand("ddr", "discrete de Rham complex");
  ddr->require_subcommand(1);
  auto* dcheck = ddr->add_subcommand("check", "consistency checks");
  dcheck->add_option("mesh", mesh_path)->required();
  dcheck->add_option("--r", r)->check(CLI::NonNegativeNumber);

  auto* poin = app.add_subcommand("poincare", "Poincare constants");
  poin->require_subcommand(1);
  auto* sweep = poin->add_subcommand("sweep", "constants over refinement levels");
  sweep->add_option("--family", family)->check(CLI::IsMember(family_names()));
  sweep->add_option("--levels", levels)->check(CLI::PositiveNumber);
  sweep->add_option("--first", first)->check(CLI::PositiveNumber);
  sweep->add_option("--k", k)->check(CLI::NonNegativeNumber);
  sweep->add_option("--r", r)->check(CLI::NonNegativeNumber);
  sweep->add_option("--samples", samples)->check(CLI::NonNegativeNumber);
  sweep->add_option("--seed", seed);
  sweep->add_option("--out", out)->required();

  auto* scal = app.add_subcommand("appendix-scalings", "scaling of local operator constants");
  int scal_r = 2;
  scal->add_option("--shape", shape)->check(CLI::IsMember(shape_names()));
  scal->add_option("--levels", levels, "number of dilations by 1/2")->check(CLI::Range(2, 30));
  scal->add_option("--r", scal_r)->check(CLI::NonNegativeNumber);
  scal->add_option("--j", j)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*gen) return cmd_gen(family, level, gen_levels, seed, out);
    if (*val) return cmd_validate(mesh_path);
    if (*betti) return cmd_betti(mesh_path);
    if (*lcheck) return cmd_lift_check(mesh_path, seed);
    if (*dcheck) return cmd_ddr_check(mesh_path, r, seed);
    if (*sweep) return cmd_sweep(family, first, levels, k, r, samples, seed, out);
    if (*scal) return cmd_scalings(shape, levels, scal_r, j);
  } catch (const MeshError& e) {
    std::cerr << "error (" << to_string(e.kind) << "): " << e.what() << "\n";
    return e.kind == MeshErrorKind::Parse ? exit_parse : exit_invalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_usage;
}

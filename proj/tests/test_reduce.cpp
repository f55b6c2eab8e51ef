#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gramor/gramians.hpp"
#include "gramor/linalg.hpp"
#include "gramor/reduce.hpp"
#include "gramor/rng.hpp"
#include "gramor/sim.hpp"

using namespace gramor;

namespace {

Matrix diag_of(std::initializer_list<double> vals) {
  Matrix a(vals.size(), vals.size());
  std::size_t i = 0;
  for (double v : vals) a(i, i) = v, ++i;
  return a;
}

double ortho_defect(const Matrix& u) {
  return fro_norm(sub(gemm(u, u, true, false), identity(u.cols)));
}

// Full gramian set of a square system on the grid, embedding under J = I.
GramianSet full_set(const LtiSystem& sys, const SimGrid& grid) {
  GramianSet gs;
  gs.wc = GramianEntry{wc_empirical(sys, grid), GramianMethod::empirical};
  gs.wo = GramianEntry{wo_empirical(sys, grid), GramianMethod::empirical};
  gs.wx = GramianEntry{wx_empirical(sys, grid), GramianMethod::empirical};
  gs.wx_embed = GramianEntry{wx_embedding(sys, identity(sys.n), grid),
                             GramianMethod::empirical};
  gs.wz = GramianEntry{wz_nonsymmetric(sys, grid, WzPath::averaged_fast_path),
                       GramianMethod::averaged_fast_path};
  gs.grid = grid;
  return gs;
}

const std::vector<RomMethod> kAllMethods = {
    RomMethod::balanced_truncation, RomMethod::cross_gramian,
    RomMethod::nonsym_cross_gramian, RomMethod::embedding_cross_gramian};

}  // namespace

TEST_CASE("galerkin projection from the identity gramian is orthonormal") {
  Projection p = galerkin_from_gramian(identity(4), 4);
  CHECK(p.order == 4);
  CHECK(p.kind == ProjectionKind::galerkin);
  CHECK(ortho_defect(p.u1) <= 1e-10);
  CHECK(fro_norm(sub(gemm(p.v1, p.u1), identity(4))) <= 1e-10);
  CHECK(max_abs(sub(p.v1, transpose(p.u1))) == 0.0);
}

TEST_CASE("galerkin projection of a diagonal gramian keeps the leading axes") {
  Projection p = galerkin_from_gramian(diag_of({3.0, 2.0, 1.0}), 2);
  Matrix projector = gemm(p.u1, p.u1, false, true);
  CHECK(fro_norm(sub(projector, diag_of({1.0, 1.0, 0.0}))) <= 1e-10);
}

TEST_CASE("galerkin projection of a rank-1 gramian recovers the direction") {
  Matrix u = random_matrix(5, 1, 3, 0, -1.0, 1.0);
  Matrix w = gemm(u, u, false, true);
  Projection p = galerkin_from_gramian(w, 1);
  const double along = gemm(p.u1, u, true, false)(0, 0) / fro_norm(u);
  CHECK(std::abs(std::abs(along) - 1.0) <= 1e-10);
}

TEST_CASE("projection order is validated") {
  CHECK_THROWS_AS(galerkin_from_gramian(identity(3), 0), std::invalid_argument);
  CHECK_THROWS_AS(galerkin_from_gramian(identity(3), 4), std::invalid_argument);
  CHECK_THROWS_AS(balanced_truncation(identity(3), identity(3), 5), std::invalid_argument);
}

TEST_CASE("balanced truncation of identity gramians is bi-orthogonal") {
  Projection p = balanced_truncation(identity(5), identity(5), 5);
  CHECK(p.kind == ProjectionKind::petrov_galerkin);
  CHECK(fro_norm(sub(gemm(p.v1, p.u1), identity(5))) <= 1e-8);
}

TEST_CASE("balanced truncation diagonalizes both gramians") {
  LtiSystem sys = lehmer_system(10, 2, 41);
  SimGrid grid = make_grid(0.01, 10.0);
  Matrix wc = wc_empirical(sys, grid);
  Matrix wo = wo_empirical(sys, grid);
  std::vector<double> sigma = hankel_values(wc, wo);

  const std::size_t order = 4;
  Projection p = balanced_truncation(wc, wo, order);
  CHECK(fro_norm(sub(gemm(p.v1, p.u1), identity(order))) <= 1e-8);

  Matrix leading(order, order);
  for (std::size_t i = 0; i < order; ++i) leading(i, i) = sigma[i];
  Matrix pc = gemm(gemm(p.v1, wc), p.v1, false, true);
  Matrix po = gemm(gemm(p.u1, wo, true, false), p.u1);
  CHECK(fro_norm(sub(pc, leading)) <= 1e-6 * sigma[0]);
  CHECK(fro_norm(sub(po, leading)) <= 1e-6 * sigma[0]);
}

TEST_CASE("balanced truncation refuses orders past the numerical Hankel rank") {
  Matrix w = diag_of({1.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_WITH_AS(balanced_truncation(w, w, 3),
                       "requested order exceeds numerical Hankel rank", std::runtime_error);
}

TEST_CASE("identity projection reproduces the system") {
  LtiSystem sys = random_system(6, 2, 3, 5, AMode::stable_random);
  Projection p = galerkin_from_gramian(identity(6), 6);
  LtiSystem rom = apply_projection(sys, p);
  CHECK(max_abs(sub(rom.a, sys.a)) <= 1e-12);
  CHECK(max_abs(sub(rom.b, sys.b)) <= 1e-12);
  CHECK(max_abs(sub(rom.c, sys.c)) <= 1e-12);
}

TEST_CASE("coordinate projection selects the scalar subsystem") {
  LtiSystem sys = make_system(diag_of({-1.0, -10.0}), random_matrix(2, 2, 7, 0, 0.0, 1.0),
                              random_matrix(3, 2, 7, 1, 0.0, 1.0));
  Projection p;
  p.u1 = Matrix(2, 1);
  p.u1(0, 0) = 1.0;
  p.v1 = transpose(p.u1);
  p.order = 1;
  LtiSystem rom = apply_projection(sys, p);
  CHECK(rom.a(0, 0) == -1.0);
  CHECK(max_abs(sub(rom.b, row_of(sys.b, 0))) == 0.0);
  CHECK(max_abs(sub(rom.c, col_of(sys.c, 0))) == 0.0);
}

TEST_CASE("galerkin projection preserves state-space symmetry") {
  LtiSystem sys = lehmer_system(8, 3, 15);
  SimGrid grid = make_grid(0.01, 10.0);
  Projection p = galerkin_from_gramian(wx_empirical(sys, grid), 3);
  LtiSystem rom = apply_projection(sys, p);
  CHECK(fro_norm(sub(rom.a, transpose(rom.a))) <= 1e-12 * fro_norm(rom.a));
  CHECK(max_abs(sub(rom.b, transpose(rom.c))) <= 1e-12);
}

TEST_CASE("projection dimension mismatch is rejected") {
  LtiSystem sys = random_system(6, 2, 2, 5, AMode::stable_random);
  Projection p = galerkin_from_gramian(identity(4), 2);
  CHECK_THROWS_AS(apply_projection(sys, p), std::invalid_argument);
}

TEST_CASE("error sweep reproduces the system at full order") {
  LtiSystem sys = lehmer_system(8, 2, 23);
  SimGrid grid = make_grid(0.01, 10.0);
  RomReport report = error_sweep(sys, grid, full_set(sys, grid), {8}, kAllMethods);
  REQUIRE(report.curves.size() == 4);
  for (const RomCurve& curve : report.curves) {
    REQUIRE(curve.valid[0]);
    CHECK(curve.errors[0] <= 1e-6);
    CHECK(curve.stable[0]);
  }
}

TEST_CASE("order-1 balanced truncation captures a dominant Hankel direction") {
  Matrix b(2, 1);
  b(0, 0) = 1.0;
  b(1, 0) = 0.01;
  LtiSystem sys = make_system(diag_of({-1.0, -10.0}), b, transpose(b));
  SimGrid grid = make_grid(1e-3, 20.0);
  RomReport report =
      error_sweep(sys, grid, full_set(sys, grid), {1}, {RomMethod::balanced_truncation});
  REQUIRE(report.curves[0].valid[0]);
  CHECK(report.curves[0].errors[0] <= 1e-2);
}

TEST_CASE("balanced and cross-gramian reductions agree on symmetric systems") {
  // State-space symmetric case: the two projections span the same dominant
  // subspace, so the reduced responses track each other at every order both
  // methods can build.
  LtiSystem sys = lehmer_system(12, 3, 37);
  SimGrid grid = make_grid(0.01, 10.0);
  Matrix wc = wc_empirical(sys, grid);
  Matrix wo = wo_empirical(sys, grid);
  Matrix wx = wx_empirical(sys, grid);
  for (std::size_t order = 1; order <= 12; ++order) {
    Projection bt;
    try {
      bt = balanced_truncation(wc, wo, order);
    } catch (const std::runtime_error&) {
      break;  // past the numerical Hankel rank
    }
    Projection gal = galerkin_from_gramian(wx, order);
    std::vector<Matrix> h_bt = impulse_response(apply_projection(sys, bt), grid);
    std::vector<Matrix> h_gal = impulse_response(apply_projection(sys, gal), grid);
    CHECK(l2_rel_error(h_bt, h_gal, grid) <= 1e-4);
  }
}

TEST_CASE("balanced truncation error trend is monotone up to slack") {
  LtiSystem sys = lehmer_system(12, 3, 51);
  SimGrid grid = make_grid(0.01, 10.0);
  std::vector<std::size_t> orders;
  for (std::size_t n = 1; n <= 12; ++n) orders.push_back(n);
  RomReport report =
      error_sweep(sys, grid, full_set(sys, grid), orders, {RomMethod::balanced_truncation});
  const RomCurve& curve = report.curves[0];
  for (std::size_t k = 0; k + 4 < orders.size(); ++k) {
    if (!curve.valid[k] || !curve.valid[k + 4]) continue;
    CHECK(curve.errors[k + 4] <= 1.05 * curve.errors[k]);
  }
}

TEST_CASE("error sweep records unavailable methods and continues") {
  LtiSystem sys = random_system(8, 2, 4, 61, AMode::lehmer);
  SimGrid grid = make_grid(0.01, 10.0);
  GramianSet gs;
  gs.wc = GramianEntry{wc_empirical(sys, grid), GramianMethod::empirical};
  gs.wo = GramianEntry{wo_empirical(sys, grid), GramianMethod::empirical};
  gs.wz = GramianEntry{wz_nonsymmetric(sys, grid, WzPath::averaged_fast_path),
                       GramianMethod::averaged_fast_path};
  gs.grid = grid;

  RomReport report = error_sweep(sys, grid, gs, {2, 8},
                                 {RomMethod::cross_gramian, RomMethod::nonsym_cross_gramian,
                                  RomMethod::embedding_cross_gramian});
  REQUIRE(report.curves.size() == 3);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK_FALSE(report.curves[0].valid[k]);
    CHECK_FALSE(report.curves[0].notes[k].empty());
    CHECK(report.curves[1].valid[k]);
    CHECK_FALSE(report.curves[2].valid[k]);
  }
  CHECK(report.curves[1].errors[1] <= 1e-6);  // full order still exact
}

TEST_CASE("error sweep validates orders") {
  LtiSystem sys = lehmer_system(6, 2, 3);
  SimGrid grid = make_grid(0.01, 10.0);
  GramianSet gs = full_set(sys, grid);
  CHECK_THROWS_AS(error_sweep(sys, grid, gs, {0}, kAllMethods), std::invalid_argument);
  CHECK_THROWS_AS(error_sweep(sys, grid, gs, {7}, kAllMethods), std::invalid_argument);
}

TEST_CASE("rom report serializes to deterministic CSV") {
  LtiSystem sys = lehmer_system(6, 2, 19);
  SimGrid grid = make_grid(0.01, 10.0);
  GramianSet gs = full_set(sys, grid);
  RomReport report = error_sweep(sys, grid, gs, {2, 4, 6},
                                 {RomMethod::balanced_truncation, RomMethod::cross_gramian});
  std::string csv = rom_report_csv(report);
  CHECK(csv.rfind("order,method,rel_l2_error,stable\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + 3 * 2);
  CHECK(csv.find("2,balanced_truncation,") != std::string::npos);
  CHECK(csv.find("4,cross_gramian,") != std::string::npos);

  RomReport again = error_sweep(sys, grid, gs, {2, 4, 6},
                                {RomMethod::balanced_truncation, RomMethod::cross_gramian});
  CHECK(rom_report_csv(again) == csv);
}

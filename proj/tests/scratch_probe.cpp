// scratch: probe the default model's forward values (not a test)
#include <chrono>
#include <cstdio>

#include "tapersim/calibration.hpp"
#include "tapersim/coupling.hpp"
#include "tapersim/inscription.hpp"
#include "tapersim/mode_solver.hpp"

using namespace tapersim;
using clk = std::chrono::steady_clock;

static double ms_since(clk::time_point t0) {
  return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 224;
  const Grid2D grid = make_grid(80.0, 80.0, n, n);
  MaterialModel m;
  InscriptionParams p;
  p.reps = 16;
  FiberSpec fiber;

  if (argc > 2) m.dn_max = std::atof(argv[2]);
  if (argc > 3) m.wx0_um = std::atof(argv[3]);
  if (argc > 4) m.wy0_um = std::atof(argv[4]);
  if (argc > 5) m.contrast_rise = std::atof(argv[5]);

  std::printf("grid %dx%d dx=%.4f | dn_max=%g wx0=%g wy0=%g rise=%g\n", n, n,
              grid.dx, m.dn_max, m.wx0_um, m.wy0_um, m.contrast_rise);

  SolverConfig sc;
  auto t0 = clk::now();
  const IndexProfile reg = single_pass_profile(p.p0, m, grid);
  try {
    const GuidedMode mr = solve_fundamental(reg, 800.0, sc);
    const CouplingReport rr = coupling_report(mr.field, fiber);
    std::printf("regular: n_eff-n_clad=%.3e res=%.2e MFD %.2f x %.2f  eta=%.4f "
                " ratioH=%.2f  [%.0f ms]\n",
                mr.n_eff - m.n_clad, mr.residual, rr.mfd.mfd_h_um,
                rr.mfd.mfd_v_um, rr.eta, rr.mfd.mfd_h_um / 5.5, ms_since(t0));
  } catch (const std::exception& e) {
    std::printf("regular: FAILED: %s\n", e.what());
  }

  t0 = clk::now();
  const TaperIndexMap map(p, m, grid, p.taper_length_mm);
  const IndexProfile facet = taper_profile_at(map, map.z_extent_mm());
  std::printf("facet peak dn = %.3e (regular peak %.3e)\n", facet.max_dn(),
              reg.max_dn());
  try {
    const GuidedMode mt = solve_fundamental(facet, 800.0, sc);
    const CouplingReport rt = coupling_report(mt.field, fiber);
    std::printf("taper:   n_eff-n_clad=%.3e res=%.2e MFD %.2f x %.2f  eta=%.4f "
                " [%.0f ms]\n",
                mt.n_eff - m.n_clad, mt.residual, rt.mfd.mfd_h_um,
                rt.mfd.mfd_v_um, rt.eta, ms_since(t0));
  } catch (const std::exception& e) {
    std::printf("taper:   FAILED: %s\n", e.what());
  }
  return 0;
}

// scratch: sweep trends of the default model (not a test)
#include <cstdio>

#include "tapersim/coupling.hpp"
#include "tapersim/inscription.hpp"
#include "tapersim/mode_solver.hpp"

using namespace tapersim;

static GuidedMode facet_mode(const MaterialModel& m, InscriptionParams p,
                             const Grid2D& grid, double wl) {
  const TaperIndexMap map(p, m, grid, p.taper_length_mm);
  return solve_fundamental(taper_profile_at(map, map.z_extent_mm()), wl, {});
}

int main() {
  const Grid2D grid = make_grid(80.0, 80.0, 224, 224);
  MaterialModel m;
  InscriptionParams p;
  p.reps = 16;
  FiberSpec fiber;

  const IndexProfile reg = single_pass_profile(p.p0, m, grid);

  std::printf("== N sweep (pa=0.667, 800nm) ==\n");
  for (int n : {0, 1, 2, 4, 8, 16}) {
    InscriptionParams pn = p;
    pn.reps = n;
    const GuidedMode mode =
        n == 0 ? solve_fundamental(reg, 800.0, {})
               : facet_mode(m, pn, grid, 800.0);
    const CouplingReport r = coupling_report(mode.field, fiber);
    std::printf("N=%2d  MFD %.2f x %.2f  eta=%.4f\n", n, r.mfd.mfd_h_um,
                r.mfd.mfd_v_um, r.eta);
  }

  std::printf("== Pa sweep (N=16, 800nm) ==\n");
  for (double pa : {0.667, 0.75, 0.85, 1.0}) {
    InscriptionParams pp = p;
    pp.pa_over_p0 = pa;
    const GuidedMode mode = facet_mode(m, pp, grid, 800.0);
    const CouplingReport r = coupling_report(mode.field, fiber);
    std::printf("Pa/P0=%.3f  MFD %.2f x %.2f  eta=%.4f\n", pa, r.mfd.mfd_h_um,
                r.mfd.mfd_v_um, r.eta);
  }

  std::printf("== wavelength sweep (N=16, pa=0.667) ==\n");
  for (double wl : {632.0, 700.0, 800.0, 880.0, 950.0}) {
    try {
      const GuidedMode mr = solve_fundamental(reg, wl, {});
      const CouplingReport rr = coupling_report(mr.field, fiber);
      const GuidedMode mt = facet_mode(m, p, grid, wl);
      const CouplingReport rt = coupling_report(mt.field, fiber);
      std::printf("wl=%4.0f  reg %.2f x %.2f | tap %.2f x %.2f | area ratio "
                  "%.3f | eta %.3f -> %.3f\n",
                  wl, rr.mfd.mfd_h_um, rr.mfd.mfd_v_um, rt.mfd.mfd_h_um,
                  rt.mfd.mfd_v_um, rt.mfd.area_um2 / rr.mfd.area_um2, rr.eta,
                  rt.eta);
    } catch (const std::exception& e) {
      std::printf("wl=%4.0f  FAILED: %s\n", wl, e.what());
    }
  }
  return 0;
}

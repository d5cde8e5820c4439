// scratch: BPM sanity (not a test)
#include <chrono>
#include <cstdio>

#include "tapersim/coupling.hpp"
#include "tapersim/propagation.hpp"

using namespace tapersim;
using clk = std::chrono::steady_clock;

int main() {
  const Grid2D grid = make_grid(80.0, 80.0, 224, 224);
  MaterialModel m;
  InscriptionParams p;
  p.reps = 16;
  PropagationConfig pc;
  pc.n_ref = m.n_clad;

  // free-space diffraction vs analytic beam expansion
  {
    const double w0 = 5.0, wl_nm = 800.0;
    const double zr_um = M_PI * w0 * w0 * pc.n_ref / 0.8;
    const ScalarField in = gaussian_field(grid, w0, w0, {0, 0}, wl_nm);
    PropagationConfig fc = pc;
    fc.absorber_strength = 0.0;
    auto zero = [&](double) {
      return IndexProfile(grid, std::vector<double>(grid.size(), 0.0),
                          pc.n_ref);
    };
    for (double zfrac : {0.5, 1.0, 2.0}) {
      const double z_um = zfrac * zr_um;
      const ScalarField out =
          propagate_field(zero, grid, in, z_um * 1e-3, fc);
      const double w_num = mfd_1e2(intensity_of(out), Axis::H) / 2.0;
      const double w_ref = w0 * std::sqrt(1.0 + (z_um / zr_um) * (z_um / zr_um));
      std::printf("free space z=%.0f um: w=%.4f vs analytic %.4f (%.3f%%), "
                  "power %.8f\n",
                  z_um, w_num, w_ref, 100.0 * (w_num / w_ref - 1.0),
                  power(out));
    }
  }

  // eigenmode self-transmission, reps = 0, 3 mm
  {
    InscriptionParams p0 = p;
    p0.reps = 0;
    const TaperIndexMap map(p0, m, grid, 3.0);
    const GuidedMode mode =
        solve_fundamental(taper_profile_at(map, 0.0), 800.0, {});
    auto t0 = clk::now();
    const PropagationResult r = propagate(map, mode, pc);
    std::printf("self-transmission (3mm, reps=0): %.6f  [%.0f ms]\n",
                r.transmission,
                std::chrono::duration<double, std::milli>(clk::now() - t0)
                    .count());
  }

  // taper transmission, N=16, 3 mm
  {
    const TaperIndexMap map(p, m, grid, 3.0);
    const GuidedMode mode =
        solve_fundamental(taper_profile_at(map, 0.0), 800.0, {});
    auto t0 = clk::now();
    const PropagationResult r = propagate(map, mode, pc);
    std::printf("taper transmission (3mm, N=16): %.6f  [%.0f ms]\n",
                r.transmission,
                std::chrono::duration<double, std::milli>(clk::now() - t0)
                    .count());
  }

  // adiabatic scan
  {
    auto t0 = clk::now();
    const auto scan =
        adiabatic_scan(p, m, {0.25, 0.5, 1.0, 2.0, 3.0}, grid, 800.0, pc);
    for (const auto& [len, tr] : scan)
      std::printf("scan L=%.2f mm: T=%.6f\n", len, tr);
    std::printf("  [%.0f ms]\n",
                std::chrono::duration<double, std::milli>(clk::now() - t0)
                    .count());
  }
  return 0;
}

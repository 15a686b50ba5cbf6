// Temporary development probe; not part of the deliverable build.
#include <cstdio>

#include "ckl/catalog.hpp"
#include "ckl/kasteleyn.hpp"
#include "ckl/mahler.hpp"
#include "ckl/spanning_tree.hpp"

using namespace ckl;


#include "ckl/isoradial.hpp"
void isoradial_probe() {
  using namespace ckl;
  for (const char* name : {"square", "triangular"}) {
    const PeriodicGraph lift = temperley_lift(catalog::lattice_by_name(name));
    const IsoradialEmbedding e = check_isoradial(lift);
    std::printf("iso %-12s r=%.8f thetas:", name, e.radius);
    for (double t : e.theta) std::printf(" %.6f", t);
    std::printf("\n  M_crit=%.12f dual_vol=%.12f\n", isoradial_mahler(e), dual_polyhedron_volume(e));
  }
  std::printf("targets: weave M=%.12f dual=%.12f | triaxial M=%.12f dual=%.12f\n",
              v_oct()/kPi + std::log(2.0), v_oct(), 5.0/kPi*v_tet() + std::log(3.0), 5.0*v_tet());
  std::printf("pi/4=%.6f pi/3=%.6f pi/6=%.6f\n", kPi/4, kPi/3, kPi/6);
}


#include "ckl/verify.hpp"
void verify_probe() {
  using namespace ckl;
  for (const std::string& name : catalog::example_names()) {
    const auto ex = catalog::example_record(name);
    const auto t0 = std::chrono::steady_clock::now();
    const CklReport r = verify_ckl(ex);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-20s 2piM=%.9f vol=%s margin=%s spread=%.2e agree=%d quoted=%d pass=%d [%.2fs] %s\n",
                name.c_str(), r.two_pi_m,
                r.vol_bipyramid ? std::to_string(*r.vol_bipyramid).c_str() : "-",
                r.margin ? std::to_string(*r.margin).c_str() : "-",
                r.agreement_spread, int(r.methods_agree), int(r.matches_quoted), int(r.pass), dt,
                r.notes.c_str());
  }
  const AppendixReport ap = appendix_identity_check(1e-9);
  std::printf("appendix pass=%d CS=%.12f DL=%.12f\n", int(ap.pass), ap.chang_shrock, ap.dilog_form);
  for (const auto& c : ap.checks) std::printf("  %-40s res=%.2e pass=%d\n", c.name.c_str(), c.residual, int(c.pass));
}

int main() {
  verify_probe();
  isoradial_probe();
  // 1. spectral vs exact counts
  for (const char* name : {"square", "triangular", "kagome", "three-twelve-twelve", "nine",
                           "four-eight-eight", "kite"}) {
    const PeriodicGraph g = catalog::lattice_by_name(name);
    std::printf("%-20s Nv=%zu E=%zu", name, g.vertices.size(), g.edges.size());
    for (int n = 1; n <= 4; ++n) {
      const auto exact = count_spanning_trees(quotient(g, n).as_finite());
      const double lg = spectral_log_tree_count(g, n);
      const double lex = std::log(exact.count.convert_to<double>());
      std::printf("  n%d drel=%.2e", n, std::abs(lg - lex) / std::max(1.0, lex));
    }
    std::printf("\n");
  }
  // 2. entropies with different schedules
  const double targets[7] = {1.1662436, 1.6153297, 3.4070892, 4.3233799, 3.0016241,
                             4 * 0.786684275378832, 6.7302560};
  const char* names[7] = {"square", "triangular", "kagome", "three-twelve-twelve", "nine",
                          "four-eight-eight", "kite"};
  for (int i = 0; i < 7; ++i) {
    const PeriodicGraph g = catalog::lattice_by_name(names[i]);
    for (std::vector<int> sched :
         {std::vector<int>{16, 32, 64, 128}, std::vector<int>{16, 24, 32, 48, 64, 96, 128},
          std::vector<int>{32, 48, 64, 96, 128}}) {
      const TreeEntropy t = tree_entropy_fd(g, sched);
      std::printf("%-20s sched[%d..%d,%zu] per_fd=%.12f err_est=%.1e dev=%.2e\n", names[i],
                  sched.front(), sched.back(), sched.size(), t.per_fd, t.error_estimate,
                  std::abs(t.per_fd - targets[i]));
    }
  }
  // 3. lift structure
  for (int i = 0; i < 7; ++i) {
    const PeriodicGraph g = catalog::lattice_by_name(names[i]);
    const PeriodicGraph lift = temperley_lift(g);
    const auto faces = trace_faces(lift);
    int deg4 = 0;
    for (const auto& f : faces) deg4 += (f.degree() == 4);
    std::printf("lift %-18s V=%zu E=%zu F=%zu all4=%d\n", names[i], lift.vertices.size(),
                lift.edges.size(), faces.size(), int(faces.size()) == deg4);
  }
  // 4. lift Mahler vs entropy for square, triangular
  for (const char* name : {"square", "triangular", "kagome", "four-eight-eight"}) {
    const PeriodicGraph g = catalog::lattice_by_name(name);
    const PeriodicGraph lift = temperley_lift(g);
    const auto a = assign_kasteleyn_signs(lift);
    const LaurentPoly2 p = char_poly(lift, a);
    const MahlerResult mj = mahler_jensen(p);
    const TreeEntropy t = tree_entropy_fd(g, {32, 48, 64, 96, 128});
    std::printf("identity %-18s M=%.10f z_fd=%.10f diff=%.2e (poly %dx%d terms=%d)\n", name,
                mj.value, t.per_fd, std::abs(mj.value - t.per_fd), p.ni, p.nj, p.term_count(1e-9));
  }
  return 0;
}

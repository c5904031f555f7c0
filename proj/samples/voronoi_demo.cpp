// Checks one twisted sum against its dual Bessel expansion and prints both sides.
//
//   sample_voronoi [q] [m]

#include <cstdio>
#include <cstdlib>

#include "hecke/suites.hpp"

int main(int argc, char** argv) {
  using namespace hecke;
  const i64 q = argc > 1 ? std::atoll(argv[1]) : 3;
  const i64 m = argc > 2 ? std::atoll(argv[2]) : 1;

  // K = Q(i), conductor above 13, weight 2; the class sum runs over the ideal above 5.
  const VoronoiCase vc{{1, 13, 2, 2}, 5, q, m, 40.0};
  try {
    const VoronoiInstance inst = make_instance(vc);
    const auto rep = verify(inst);
    std::printf("direct sum   %.12f %+.12fi\n", direct_sum(inst).real(), direct_sum(inst).imag());
    std::printf("class sum    %.12f %+.12fi\n", rep.lhs.real(), rep.lhs.imag());
    std::printf("dual sum     %.12f %+.12fi\n", rep.rhs.real(), rep.rhs.imag());
    std::printf("terms %ld, tail estimate %.2e, relative error %.2e\n", rep.terms_used, rep.truncation_tail_estimate,
                rep.rel_err.value_or(rep.abs_err));
    return voronoi_passes(rep, 1e-4) ? 0 : 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

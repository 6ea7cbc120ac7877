// Minimal library walk-through: optimal irreversible TMSV telecloning of a
// coherent state, then the same network with a photon-subtracted resource.

#include "teleclone/measures.hpp"
#include "teleclone/optimize.hpp"
#include "teleclone/protocols.hpp"
#include "teleclone/states.hpp"

#include <cstdio>

int main() {
  using namespace teleclone;
  const InputSpec input = InputSpec::coherent_state({0.5, -0.25});
  const ProtocolSpec protocol = ProtocolSpec::irreversible();

  const auto tmsv_fidelity = [&](double r) { return fidelity_gaussian(tmsv(r), input, protocol).clones[0].fidelity; };
  const OptimumResult best = maximize(tmsv_fidelity, 0.0, 1.5);
  std::printf("TMSV: F_max = %.6f at r = %.4f\n", best.value, best.location);

  const CloneReport rep = fidelity_gaussian(tmsv(best.location), input, protocol);
  for (std::size_t k = 0; k < rep.clones.size(); ++k)
    std::printf("  clone %zu: F = %.6f, q = %.4f, 1/(2 - q) = %.6f\n", k + 1, rep.clones[k].fidelity,
                rep.clones[k].q, prop1_bound(rep.clones[k].q));

  const DegaussifiedResource ps = degaussify(ResourceSpec::ps(1, 1), 0.45);
  const CloneReport ng = teleclone_wigner(ps.state, input, protocol);
  std::printf("PS-1,1 at r = 0.45: F = %.6f (herald weight %.4f)\n", ng.clones[0].fidelity, ps.herald_weight);
  return 0;
}

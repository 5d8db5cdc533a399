"""Reaching states that two-level system control alone cannot touch.

For a system with a harmonic ladder spectrum there is a reachable state
that no sequence of two-level operations on the system alone can approach:
its first entry vanishes at a critical inverse temperature, and just above
it the state sits on the boundary of a different beta-order chamber.
Extending the system with a thermal memory removes the obstruction: the
truncated protocol converges to the target at better than 1/(2 sqrt(N)).
"""

import numpy as np

from memtp.experiments import critical_beta, inaccessible_convergence
from memtp.export import rows_to_csv

sizes = [2 ** k for k in range(3, 9)]
all_rows = []
for d in (3, 4, 5, 6):
    energies = np.arange(d, dtype=float)
    res = inaccessible_convergence(energies, 1.1, sizes,
                                   beta=1.1 * np.log(2))
    print(f"d={d}: critical beta {res.beta_crit:.4f}, "
          f"running at beta {res.beta:.4f}")
    for r in res.rows:
        print(f"   N={r['N']:>4}  delta={r['delta']:.5f}  "
              f"bound={r['bound']:.5f}  below={r['delta'] <= r['bound']}")
    assert res.monotone and res.n0 == sizes[0]
    all_rows.extend(dict(r, d=d) for r in res.rows)

print(f"\nd=3 ladder check: critical beta = {critical_beta([0, 1, 2]):.6f} "
      f"(the golden-ratio logarithm)")
with open("inaccessible_states.csv", "w") as fh:
    fh.write(rows_to_csv(all_rows, {"beta": 1.1 * np.log(2), "dims": [3, 4, 5, 6]}))
print("wrote inaccessible_states.csv")

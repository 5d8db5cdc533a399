"""Future thermal cone of a three-level state.

A three-level system with an equidistant spectrum, prepared out of
equilibrium, can reach a polytope of states under Gibbs-preserving maps.
This script enumerates the polytope's vertices (one candidate per
beta-order), checks that each is dominated by the source, and writes them
to JSON for plotting.
"""

import json

import numpy as np

from memtp import gibbs_state, thermomajorizes
from memtp.experiments import cone_export

p = np.array([0.7, 0.2, 0.1])
energies = [0.0, 1.0, 2.0]
beta = 0.3
gamma = gibbs_state(energies, beta)

payload = cone_export(p, gamma)
print(f"state {p} at beta={beta}, thermal state {np.round(gamma, 4)}")
print(f"{len(payload['vertices'])} vertices of the reachable polytope:")
for v in payload["vertices"]:
    state = np.array(v["state"])
    assert thermomajorizes(p, state, gamma)
    print(f"  order {v['order']}: {np.round(state, 6)}")

with open("cone_vertices.json", "w") as fh:
    json.dump(payload, fh, indent=2)
print("wrote cone_vertices.json")

# at infinite temperature the vertices are just the permutations of p
flat = cone_export(p, np.ones(3) / 3)
print(f"\nbeta=0 vertex count: {len(flat['vertices'])} (= 3! permutations)")

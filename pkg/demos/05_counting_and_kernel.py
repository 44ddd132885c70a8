#!/usr/bin/env python3
"""Lattice-point counting in hyperbolic balls and the kernel identity.

G_l(4) is the set of integer matrices of determinant l whose lower-left
entry is divisible by 4.  The number of its elements with u(gamma z, z) <=
delta controls the geometric side of the amplified bound; the enumerator is
validated against an exhaustive box search, and the reproducing-kernel
identity ties the group sum over G_1(4) (with the theta multiplier) to the
spectral sum over an orthonormal basis of the full cusp space.
"""

import numpy as np

from plusforms.lfunctions import petersson_gram
from plusforms.qexp import space_basis
from plusforms.supnorm import (
    FormEvaluator,
    bergman_partial,
    bergman_spectral,
    count_matrices,
    enumerate_box,
    enumerate_gl,
)

print("count classes at z = i (columns: total, generic, upper, trace^2 = 4l):")
print(f"{'l':>4} {'delta':>6} {'M':>6} {'M*':>6} {'Mu':>5} {'Mp':>5}")
for l in (1, 9, 25, 81):
    for delta in (0.1, 1.0, 10.0):
        rec = count_matrices(1j, l, delta, keep_witnesses=False)
        print(f"{l:>4} {delta:>6} {rec.M:>6} {rec.M_star:>6} {rec.M_u:>5} {rec.M_p:>5}")

print()
print("fast enumerator vs exhaustive box search:")
for l, z, delta in ((1, 1j, 1.0), (9, 5j, 10.0), (25, 0.3 + 2j, 3.0)):
    fast = enumerate_gl(l, z, delta)
    brute = enumerate_box(l, z, delta)
    print(f"  l={l}, z={z}, delta={delta}: {len(fast)} matrices, oracle agrees: {fast == brute}")

print()
print("kernel identity at k = 13/2 (spectral vs truncated group sum):")
basis = space_basis("13/2", 400, "full S")
evs = [FormEvaluator.from_basis_element(basis, i, 400) for i in range(basis.dimension)]
gram, _ = petersson_gram(evs)
rng = np.random.default_rng(3)
for _ in range(3):
    z = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.5, 1.2))
    w = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.5, 1.2))
    geo, _err = bergman_partial(z, w, "13/2", tol=1e-5)
    spec = bergman_spectral(z, w, evs, gram.tolist())
    print(f"  z={z:.3f}, w={w:.3f}: rel. difference {abs(geo - spec)/abs(spec):.2e}")

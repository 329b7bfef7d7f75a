from __future__ import annotations

import numpy as np

from quopitsim import Gate, make_circuit

# one seed shared by the tests that must agree on "the same corpus"
CORPUS_SEED = 20240817


def random_circuit(rng, p, n, n_gates):
    """Uniform mix of the three gate kinds on n registers."""
    gates = []
    for _ in range(n_gates):
        kind = int(rng.integers(0, 3))
        if kind == 2 and n == 1:
            kind = int(rng.integers(0, 2))
        if kind == 0:
            gates.append(Gate.fourier(int(rng.integers(0, n))))
        elif kind == 1:
            gates.append(Gate.phase(int(rng.integers(0, n))))
        else:
            ctl, tgt = rng.choice(n, size=2, replace=False)
            gates.append(Gate.sum(int(ctl), int(tgt)))
    return make_circuit(p, n, gates)


def standard_corpus():
    """The 200-circuit random corpus shared by several acceptance criteria:
    p in {3, 5, 7}, n <= 3, up to 25 gates."""
    rng = np.random.default_rng(CORPUS_SEED)
    out = []
    for _ in range(200):
        p = int(rng.choice([3, 5, 7]))
        n = int(rng.integers(1, 4))
        n_gates = int(rng.integers(0, 26))
        out.append(random_circuit(rng, p, n, n_gates))
    return out

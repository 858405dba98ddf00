"""Random desk-scale instances for cross-checking against the oracle."""

from __future__ import annotations

import random

from dualgmi.reformulate import DualFormMIP


def random_instance(rng: random.Random, m: int, max_columns: int = 8, entry_range: int = 3,
                    unit_cost_range: tuple[int, int] = (0, 3)) -> DualFormMIP:
    """Instance with all 2m columns +-e_k (so the relaxation is bounded) plus random ones.

    The unit columns have costs in ``unit_cost_range`` which keeps ``y = 0``
    feasible for them; random columns may still cut it off.  ``b`` is zero
    outside the integer set so the optimal value is integral.
    """
    lo, hi = -entry_range, entry_range
    cols, costs = [], []
    for k in range(m):
        for sign in (1, -1):
            cols.append([sign if i == k else 0 for i in range(m)])
            costs.append(rng.randint(*unit_cost_range))
    for _ in range(rng.randint(1, max(1, max_columns - 2 * m))):
        col = [rng.randint(lo, hi) for _ in range(m)]
        if not any(col):
            col[rng.randrange(m)] = rng.choice((-1, 1))
        cols.append(col)
        costs.append(rng.randint(lo, hi))
    order = list(range(len(cols)))
    rng.shuffle(order)
    A = [[cols[j][i] for j in order] for i in range(m)]
    c = [costs[j] for j in order]
    int_set = {i for i in range(m) if rng.random() < 0.6} or {rng.randrange(m)}
    b = [rng.randint(lo, hi) if i in int_set else 0 for i in range(m)]
    return DualFormMIP.create(A, b, c, int_set)


def generate_suite(count: int = 200, seed: int = 20261016, max_columns: int = 8) -> list[DualFormMIP]:
    rng = random.Random(seed)
    return [random_instance(rng, rng.choice((2, 3)), max_columns) for _ in range(count)]

"""Shared test machinery: capturing derivation states and sampling points."""

import random

from dualgmi import driver, gmicol
from dualgmi import exactnum as xn
from dualgmi import lexsimplex as lx
from dualgmi.reformulate import to_lex


def run_capturing(inst, **kwargs):
    """Solve and also return every (state, i) a cut was derived from."""
    captured = []

    def choose(state, i):
        captured.append((state, i))
        return gmicol.minimal_r(state.h_col(i))

    report = driver.cut_loop(to_lex(inst), choose_r=choose, **kwargs)
    return report, captured


def relaxation_points(state, rng: random.Random, count: int, vertices: int = 6):
    """Random points of {y : y'a_j <= c_j for every column of the state's LP}.

    Vertices come from maximizing random objectives with a positive first
    weight (the region is unbounded only towards y0 -> -inf); the points are
    random convex combinations of them.
    """
    m = state.m
    verts = []
    for _ in range(vertices):
        g = [rng.randint(1, 3)] + [rng.randint(-3, 3) for _ in range(m - 1)]
        res = lx.dual_maximize(state.lp.columns, state.lp.costs, g)
        assert res.status == "optimal", res.status
        verts.append(res.y)
    points = list(verts)
    while len(points) < count:
        k = rng.randint(2, len(verts))
        chosen = rng.sample(verts, k)
        weights = [rng.randint(1, 9) for _ in chosen]
        total = sum(weights)
        p = xn.zeros(m)
        for w, v in zip(weights, chosen):
            p = xn.add(p, xn.scale(xn.Fraction(w, total), v))
        points.append(p)
    return points[:count]

"""Curves on a regulus and their transversal traces.

A t-space meeting every element of a regulus in one point cuts out a point
set Phi; projecting Phi onto one element along the transversal lines gives
the trace S(Phi, Xi).  This module builds such configurations (explicit ones
for q = t, random ones and parametrized ones for q > t) and measures the
orders of Phi and of its traces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .nrc import (NrcReport, is_nrc, moment_vector, nrc_from_parametrization, nrc_projectivity_witness,
                  parameters)
from .projective import Projectivity, Subspace, field_for_order, meet, random_subspace
from .segre import SegreVariety, TraceResult, regulus, transversal_trace


@dataclass
class TraceAnalysis:
    span_dim: int
    meet_ranks: tuple[int, ...]
    section_is_phi: bool  # <Phi> cap (point set) == Phi
    phi: NrcReport
    traces: list[NrcReport]  # one per target element, in element order
    results: list[TraceResult]

    @property
    def hypotheses_hold(self) -> bool:
        return all(r == 1 for r in self.meet_ranks) and self.section_is_phi

    def trace_orders(self) -> list[int]:
        return [r.order for r in self.traces]


def analyze(R: SegreVariety, phi, targets=None) -> TraceAnalysis:
    """Span, section and traces of a one-point-per-element set Phi."""
    K = R.K
    targets = R.s_points if targets is None else targets
    St = Subspace(K, np.array(phi, dtype=np.int64), R.ambient_dim)
    ranks = tuple(meet(St, E).rank for E in R.first_family)
    P = St.points()
    on = P[R.contains_rows(P)]
    section = set(la.encode(K, on).tolist()) == set(la.encode(K, np.array(phi)).tolist())
    results = [transversal_trace(R, phi, s) for s in targets]
    return TraceAnalysis(St.dim, ranks, section, is_nrc(phi, K),
                         [is_nrc(r.points, K) for r in results], results)


def equal_order_example(q: int, case: str) -> tuple[SegreVariety, list[tuple[int, ...]]]:
    """Phi = {r_i (x) s_i} in S_{t,1,q}, t = q, with the r_i in PG(t, q) either
    a frame of the hyperplane X_t = 0 (case "a") or t + 1 independent points
    (case "b"); the s_i run over PG(1, q)."""
    t = q
    n = t + 1
    K = field_for_order(q)
    R = regulus(K, n)
    if case == "a":
        r = [tuple(int(i == j) for i in range(n)) for j in range(t)] + [(1,) * t + (0,)]
    elif case == "b":
        r = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    else:
        raise ValueError("case must be 'a' or 'b'")
    phi = [R.point(s, ri) for s, ri in zip(R.s_points, r)]
    return R, phi


def expected_trace_order(q: int, t: int, case: str | None = None) -> int | None:
    if q > t:
        return t - 1
    if q == t and case in ("a", "b"):
        return t - 1 if case == "a" else t
    return None


def random_transversal_space(K, t: int, rng, max_tries: int = 1000):
    """A random t-space of PG(2t-1, q) meeting each regulus element in one
    point and spanned by those points."""
    R = regulus(K, t)
    for _ in range(max_tries):
        St = random_subspace(K, 2 * t - 1, t, rng)
        meets = [meet(St, E) for E in R.first_family]
        if any(m.rank != 1 for m in meets):
            continue
        phi = [m.as_point() for m in meets]
        if la.rank(K, np.array(phi)) == t + 1:
            return R, phi
    raise RuntimeError("no transversal t-space found")


def parametrized_example(K, t: int) -> tuple[SegreVariety, dict, dict]:
    """Phi(y) = y (x) M_{t-1}(y) in S_{t-1,1,q} and its trace onto the
    element indexed by (1, 0), both labelled by the parameter y."""
    R = regulus(K, t)
    pars = parameters(K)
    phi = {y: R.point(y, moment_vector(K, t - 1, y)) for y in pars}
    z = R.s_points[-1]
    trace = {y: R.point(z, moment_vector(K, t - 1, y)) for y in pars}
    return R, phi, trace


def pairing_projectivity(K, t: int) -> tuple[Projectivity, NrcReport, NrcReport]:
    """Parameter-line map induced by the transversal pairing of the
    parametrized example; it is the identity."""
    R, phi, trace = parametrized_example(K, t)
    src = nrc_from_parametrization(K, phi)
    dst = nrc_from_parametrization(K, trace)
    z = R.s_points[-1]
    res = transversal_trace(R, list(phi.values()), z)
    return nrc_projectivity_witness(src, dst, res.pairing, K), src, dst


def trace_order_report(q: int, t: int, case: str | None = None, samples: int = 5, rng=None) -> dict:
    """Orders of Phi and of its traces, with the expected trace order."""
    if case is not None:
        if q != t:
            raise ValueError("the explicit cases need q = t")
        R, phi = equal_order_example(q, case)
        an = analyze(R, phi, [R.s_points[0]])
        want = expected_trace_order(q, t, case)
        got = an.trace_orders()
        ok = an.hypotheses_hold and an.span_dim == t and an.phi.is_nrc and all(
            r.is_nrc and r.order == want for r in an.traces)
        return {"verified": ok, "phi_order": an.phi.order, "trace_orders": got, "expected": want,
                "hypotheses": an.hypotheses_hold, "configurations": 1}
    if q <= t:
        raise ValueError("random samples need q > t (use a case for q = t)")
    rng = rng if rng is not None else np.random.default_rng(0)
    K = field_for_order(q)
    want = t - 1
    configs = []
    R, phi, _ = parametrized_example(K, t)
    configs.append((R, list(phi.values())))
    for _ in range(samples):
        configs.append(random_transversal_space(K, t, rng))
    seen, ok = set(), True
    phi_orders = set()
    for R, phi in configs:
        an = analyze(R, phi)
        phi_orders.add(an.phi.order)
        ok &= an.hypotheses_hold and an.phi.is_nrc and an.phi.order == t
        for r in an.traces:
            seen.add(r.order)
            ok &= r.is_nrc and r.order == want
    return {"verified": bool(ok), "phi_order": sorted(phi_orders), "trace_orders": sorted(seen),
            "expected": want, "configurations": len(configs)}

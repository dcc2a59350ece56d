"""Self-check suites: exact symbolic identities and determinant sanity values.

Each suite returns a list of ``Check`` rows; ``run_suite("all")`` runs them
in a fixed order.  Random inputs come from a seeded generator so every run
sees the same braids.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable
from dataclasses import dataclass

from .braid import BraidWord, act_on_x, longpaton, parse_braid, permutation
from .burau import burau, burau_by_generators, reduced_burau, theta
from .fkdet import fk_det_series, fk_det_truncation
from .freegroup import GroupRingElt, reduce
from .groups import (
    FreeAbelianGroup,
    FreeGroup,
    GammaMap,
    TorusKnotGroup,
    abelianization_gamma,
    exponent_sum_gamma,
    identity_gamma,
)
from .operators import (
    OperatorMatrix,
    compose,
    l2_burau,
    l2_burau_g,
    precompose_gamma,
    reduced_l2_burau,
)
from .torsion import closure_presentation, fox_torsion_from_presentation, torsion_determinant

__all__ = ["Check", "SUITES", "run_suite", "random_braid", "shift_operator",
           "trefoil_gamma", "format_table"]

SEED = 20240611
SHIFT_GRID = (0.25, 0.5, 2.0, 4.0)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def random_braid(rng: random.Random, n: int, max_len: int) -> BraidWord:
    length = rng.randint(0, max_len)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


def shift_operator(oracle, generator: int = 1) -> OperatorMatrix:
    """1x1 operator Id - R_g; evaluated at t it becomes Id - t^psi(g) R_g."""
    g = reduce([generator])
    return OperatorMatrix.build([[GroupRingElt({reduce([]): 1, g: -1}, oracle)]], oracle)


def trefoil_gamma() -> GammaMap:
    """B_2 -> <a, b | a^2 = b^3>, killing the relators of the closure of s1^3."""
    group = TorusKnotGroup(2, 3)
    return GammaMap(group, (group.parse("b^-1 a"), group.parse("a^-1 b^2")), "torus-knot")


def _rel(value: float, target: float) -> float:
    return abs(value - target) / abs(target)


def _timed(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as err:  # a crash is a failed check, not a crashed suite
        passed, detail = False, f"{type(err).__name__}: {err}"
    return Check(suite, name, passed, detail, time.perf_counter() - t0)


def suite_longpaton() -> list[Check]:
    beta = longpaton()
    out = [
        _timed("longpaton", "burau is identity", lambda: (
            burau(beta).is_identity() and burau_by_generators(beta).is_identity(),
            f"{beta.n} strands, {len(beta)} letters")),
        _timed("longpaton", "permutation is trivial", lambda: (
            permutation(beta) == tuple(range(1, beta.n + 1)), str(permutation(beta)))),
        _timed("longpaton", "h(x1) != x1", lambda: (
            act_on_x(beta, 1) != reduce([1]), f"|h(x1)| = {len(act_on_x(beta, 1))}")),
    ]

    def l2_not_identity():
        m = l2_burau(beta, identity_gamma(beta.n))
        return (not m.is_identity()) and theta(m).is_identity(), \
            f"max support {m.max_support()} terms; theta gives identity"

    out.append(_timed("longpaton", "L2 matrix (gamma = id) is not identity", l2_not_identity))
    return out


def suite_cocycle(cases: int = 100) -> list[Check]:
    rng = random.Random(SEED)

    def run(reduced: bool):
        bad = 0
        for _ in range(cases):
            n = rng.randint(3, 5)
            a, b = random_braid(rng, n, 8), random_braid(rng, n, 8)
            if reduced:
                g = identity_gamma(n, "g")
                lhs = reduced_l2_burau(a * b, g)
                rhs = compose(reduced_l2_burau(b, g), reduced_l2_burau(a, precompose_gamma(g, b)))
            else:
                g = identity_gamma(n)
                lhs = l2_burau(a * b, g)
                rhs = compose(l2_burau(b, g), l2_burau(a, precompose_gamma(g, b)))
            bad += lhs != rhs
        return bad == 0, f"{cases - bad}/{cases} pairs"

    return [_timed("cocycle", "full map", lambda: run(False)),
            _timed("cocycle", "reduced map", lambda: run(True))]


def suite_theta(cases: int = 100) -> list[Check]:
    rng = random.Random(SEED + 1)

    def run(kind: str):
        bad = 0
        for _ in range(cases):
            n = rng.randint(2, 5)
            beta = random_braid(rng, n, 10)
            if kind == "reduced":
                ok = theta(reduced_l2_burau(beta, identity_gamma(n, "g"))) == reduced_burau(beta)
            elif kind == "block":
                m = l2_burau_g(beta, identity_gamma(n, "g"))
                one, zero = GroupRingElt.one(m.oracle), GroupRingElt.zero(m.oracle)
                ok = all(m[i, n - 1] == (one if i == n - 1 else zero) for i in range(n))
            else:
                gamma = identity_gamma(n) if kind == "id" else abelianization_gamma(n)
                ok = theta(l2_burau(beta, gamma)) == burau(beta)
            bad += not ok
        return bad == 0, f"{cases - bad}/{cases} braids"

    return [_timed("theta", "recovers burau (gamma = id)", lambda: run("id")),
            _timed("theta", "recovers burau (abelianization)", lambda: run("ab")),
            _timed("theta", "recovers reduced burau", lambda: run("reduced")),
            _timed("theta", "g-basis last column is standard", lambda: run("block"))]


def _increments_shrink(estimates: list[float]) -> bool:
    inc = [abs(b - a) for a, b in zip(estimates, estimates[1:])]
    return all(y <= x + 1e-12 for x, y in zip(inc, inc[1:]))


def suite_shift() -> list[Check]:
    out = []
    for label, oracle, tol in (("Z", FreeAbelianGroup(1), 0.02), ("F2", FreeGroup(2), 0.05)):
        m = shift_operator(oracle)
        for t in SHIFT_GRID:
            def run(m=m, t=t, tol=tol, label=label):
                target = max(1.0, t)
                tr = fk_det_truncation(m, t)
                se = fk_det_series(m, t)
                ok = _rel(tr.value, target) <= tol and _rel(se.value, target) <= tol
                if label == "Z":
                    ok = ok and _increments_shrink(tr.diagnostics["estimates"])
                return ok, f"truncation {tr.value:.6g}, series {se.value:.6g}, want {target:g}"
            out.append(_timed("shift", f"Id - t R_g over {label}, t={t:g}", run))
    return out


def suite_unknot() -> list[Check]:
    beta = parse_braid("1", 2)
    gamma = exponent_sum_gamma(2)
    out = []
    for t in (0.5, 2.0):
        def run(t=t):
            rec = torsion_determinant(beta, gamma, [t]).records[0]
            fox = fox_torsion_from_presentation(closure_presentation(beta), gamma, t).value
            want = max(1.0, t)
            ok = (_rel(rec.det, want) <= 0.05 and _rel(rec.torsion, 1 / want) <= 0.05
                  and _rel(fox, rec.torsion) <= 0.05)
            dev = rec.diagnostics.get("cross_deviation")
            ok = ok and dev is not None and dev <= 0.05
            return ok, f"det {rec.det:.6g}, torsion {rec.torsion:.6g}, fox route {fox:.6g}"
        out.append(_timed("unknot", f"sigma1 in B_2, t={t:g}", run))
    return out


def suite_unlink() -> list[Check]:
    beta = BraidWord(2, ())

    def run():
        rep = torsion_determinant(beta, exponent_sum_gamma(2), [0.5, 2.0])
        fox = fox_torsion_from_presentation(closure_presentation(beta), exponent_sum_gamma(2), 2.0)
        dets = [r.det for r in rep.records]
        return all(d == 0 for d in dets) and fox.value == 0, f"dets {dets}"

    return [_timed("unlink", "trivial braid in B_2 gives det 0", run)]


def suite_trefoil() -> list[Check]:
    beta = parse_braid("1 1 1", 2)
    gamma = trefoil_gamma()
    out = []
    for t in (0.5, 2.0):
        def run(t=t):
            rec = torsion_determinant(beta, gamma, [t]).records[0]
            fox = fox_torsion_from_presentation(closure_presentation(beta), gamma, t)
            want = max(1.0, t) ** 3
            series = rec.diagnostics.get("series_value")
            dev = rec.diagnostics.get("cross_deviation")
            ok = (_rel(rec.det, want) <= 0.15 and dev is not None and dev <= 0.10
                  and _rel(fox.value, rec.torsion) <= 0.10)
            return ok, (f"det {rec.det:.6g} (series {series:.6g}), want {want:g}; "
                        f"torsion {rec.torsion:.6g}, fox route {fox.value:.6g}")
        out.append(_timed("trefoil", f"sigma1^3 over <a,b|a^2=b^3>, t={t:g}", run))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "longpaton": suite_longpaton,
    "cocycle": suite_cocycle,
    "theta": suite_theta,
    "shift": suite_shift,
    "unknot": suite_unknot,
    "unlink": suite_unlink,
    "trefoil": suite_trefoil,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return SUITES[name]()


def format_table(checks: list[Check]) -> str:
    width = max((len(c.suite) + len(c.name) for c in checks), default=10) + 3
    lines = []
    for c in checks:
        label = f"{c.suite}: {c.name}"
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {label:<{width}} {c.seconds:7.2f}s  {c.detail}")
    return "\n".join(lines)


"""L2-Alexander torsion of braid closures.

The closure of a braid beta in B_n has the deficiency-one presentation

    < g_1, ..., g_n | h_beta(g_j) g_j^-1, j = 1..n-1 >

and its torsion at t is, up to a factor t^k, the regular determinant of
(reduced L2-Burau matrix - Id) divided by max(1, t)^n.  Two routes are
provided: through the reduced matrix, and through Fox calculus on the
relators directly.  They agree exactly at the symbolic level, so the
numeric values must agree to estimator noise.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .braid import BraidWord, action_g
from .fkdet import RTOL, SERIES_ORDER, DetEstimate, fk_det
from .freegroup import IDENTITY, Word, fox_gradient, g_images, rewrite_alphabet
from .groups import GammaMap, verify_gamma
from .operators import OperatorMatrix, _push, reduced_l2_burau

__all__ = [
    "ClosurePresentation",
    "TorsionRecord",
    "TorsionReport",
    "GammaVerificationError",
    "closure_presentation",
    "fox_matrix",
    "torsion_determinant",
    "fox_torsion_from_presentation",
]


class GammaVerificationError(ValueError):
    """gamma does not kill the relators of the closure."""


@dataclass(frozen=True)
class ClosurePresentation:
    """Relators h_beta(g_j) g_j^-1 (j < n) as words in the g-alphabet."""

    beta: BraidWord
    relators: tuple[Word, ...]

    @property
    def n(self) -> int:
        return self.beta.n

    def relators_in_x(self) -> list[Word]:
        """The same relators with g_i spelled out as x_1 ... x_i."""
        images = g_images(self.n)
        return [rewrite_alphabet(r, images) for r in self.relators]

    def times_last_generator(self, k: int) -> ClosurePresentation:
        """Right-multiply every relator by g_n^k."""
        gn = IDENTITY.extend([self.n if k > 0 else -self.n] * abs(k))
        return ClosurePresentation(self.beta, tuple(r * gn for r in self.relators))


def closure_presentation(beta: BraidWord) -> ClosurePresentation:
    n = beta.n
    images = action_g(beta)
    relators = []
    for j, h in enumerate(images, start=1):
        r = h * IDENTITY.append(-j)
        if j == n:
            if not r.is_identity():
                raise RuntimeError(f"h_beta(g_n) != g_n for {beta}: braid action is broken")
            continue
        relators.append(r)
    return ClosurePresentation(beta, tuple(relators))


def _require_gamma(p: ClosurePresentation, gamma: GammaMap) -> None:
    if gamma.n != p.n:
        raise ValueError(f"gamma is defined on F_{gamma.n}, braid has {p.n} strands")
    if not verify_gamma(gamma, p.relators_in_x()):
        raise GammaVerificationError("gamma does not factor through the closure's group")


def fox_matrix(p: ClosurePresentation, gamma: GammaMap) -> OperatorMatrix:
    """(n-1) x (n-1) matrix with entry (i, j) = gamma(d r_j / d g_i)."""
    n = p.n
    images = gamma.g_images()
    grads = [fox_gradient(r, n) for r in p.relators]
    rows = [[_push(grads[j][i], images, gamma.target) for j in range(n - 1)]
            for i in range(n - 1)]
    return OperatorMatrix.build(rows, gamma.target, "reduced")


@dataclass
class TorsionRecord:
    t: float
    det: float
    torsion: float
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"t": self.t, "det": self.det, "det_tolerance_diag": self.diagnostics,
                "torsion": self.torsion}

    @classmethod
    def from_json(cls, data: dict) -> TorsionRecord:
        return cls(data["t"], data["det"], data["torsion"], data.get("det_tolerance_diag", {}))


@dataclass
class TorsionReport:
    """Raw determinants per t, and the torsion they imply.

    Torsion values are only defined up to a factor t^k; the determinant is
    the primary output.
    """

    braid: BraidWord
    gamma: GammaMap
    records: list[TorsionRecord]

    @property
    def t_grid(self) -> list[float]:
        return [r.t for r in self.records]

    def to_json(self) -> dict:
        return {
            "braid": str(self.braid),
            "strands": self.braid.n,
            "oracle": self.gamma.target.describe(),
            "gamma": self.gamma.describe()["images"],
            "note": "torsion = det / max(1,t)^n, defined up to multiplication by t^k",
            "records": [r.to_json() for r in self.records],
        }


def _max1(t) -> float:
    return max(1.0, float(t))


def torsion_determinant(beta: BraidWord, gamma: GammaMap, t_grid: Sequence[float],
                        radius: int | None = None, order: int = SERIES_ORDER,
                        rtol: float = RTOL) -> TorsionReport:
    """det^r(reduced L2-Burau - Id) at each t, with implied torsion."""
    p = closure_presentation(beta)
    _require_gamma(p, gamma)
    m = reduced_l2_burau(beta, gamma).minus_identity()
    records = []
    for t in t_grid:
        est = fk_det(m, t, radius=radius, order=order, rtol=rtol)
        records.append(TorsionRecord(float(t), est.value, est.value / _max1(t) ** beta.n,
                                     est.diagnostics))
    return TorsionReport(beta, gamma, records)


def fox_torsion_from_presentation(p: ClosurePresentation, gamma: GammaMap, t,
                                  radius: int | None = None, order: int = SERIES_ORDER,
                                  rtol: float = RTOL) -> DetEstimate:
    """Torsion straight from the Fox matrix of the presentation."""
    _require_gamma(p, gamma)
    est = fk_det(fox_matrix(p, gamma), t, radius=radius, order=order, rtol=rtol)
    diag = dict(est.diagnostics)
    diag["det"] = est.value
    return DetEstimate(est.value / _max1(t) ** p.n, "fox-presentation", diag)

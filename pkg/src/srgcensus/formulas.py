"""Closed-form counts of Hamiltonian 7-vertex subgraphs and chordless cycles in srg(n, k, 1, 2).

Everything here is exact rational arithmetic. The 19 Hamiltonian class counts
are linear in two free quantities, ``n3`` (a 6-vertex subgraph count) and
``h11`` (one of the 7-vertex class counts); index 0 is the 7-cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

NUM_H = 19


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int = 1
    mu: int = 2

    def __post_init__(self) -> None:
        if not self.n > self.k >= 1:
            raise ValueError(f"need n > k >= 1, got n={self.n}, k={self.k}")
        if self.k * (self.k - self.lam - 1) != self.mu * (self.n - self.k - 1):
            raise ValueError(
                f"({self.n}, {self.k}, {self.lam}, {self.mu}) violates k(k-lambda-1) = mu(n-k-1)"
            )

    @property
    def in_family(self) -> bool:
        return self.lam == 1 and self.mu == 2

    def as_dict(self) -> dict[str, int]:
        return {"n": self.n, "k": self.k, "lambda": self.lam, "mu": self.mu}


@dataclass(frozen=True)
class FreeVars:
    n3: int
    h11: int


@dataclass(frozen=True)
class FormulaTable:
    h: tuple[Fraction, ...]
    p3: Fraction
    p4: Fraction
    p5: Fraction
    p6_lower: Fraction
    p7_upper: Fraction
    negative: tuple[int, ...] = ()
    non_integral: tuple[int, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.negative and not self.non_integral


@dataclass(frozen=True)
class Violation:
    formula: str
    value: Fraction

    def __str__(self) -> str:
        return f"{self.formula} = {self.value}"


@dataclass(frozen=True)
class FitResult:
    n3: int | None
    h11: int | None
    matched: bool
    matching: dict[int, int] = field(default_factory=dict)
    candidates: tuple[FreeVars, ...] = ()
    predicted: tuple[Fraction, ...] = ()
    measured: tuple[int, ...] = ()
    residual: Fraction | int | None = None

    def per_index(self) -> list[dict]:
        """Predicted and measured value for each formula index under ``matching``."""
        by_index = {idx: cid for cid, idx in self.matching.items()}
        rows = []
        for i, pred in enumerate(self.predicted):
            cid = by_index.get(i)
            rows.append(
                {
                    "index": i,
                    "predicted": _jsonable(pred),
                    "catalog_id": cid,
                    "measured": None if cid is None else self.measured[cid],
                }
            )
        return rows


def _jsonable(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else str(x)


def _require_family(params: SrgParams) -> None:
    if not params.in_family:
        raise ValueError(f"formulas apply to srg(n, k, 1, 2), got lambda={params.lam}, mu={params.mu}")


# --------------------------------------------------------------------------
# parameters


def n_of_k(k: int) -> int:
    """Vertex count of srg(n, k, 1, 2): n = 1 + k + k(k-2)/2."""
    if k < 3:
        raise ValueError("k must be >= 3")
    if (k * (k - 2)) % 2:
        raise ValueError(f"k(k-2) = {k * (k - 2)} is odd; no integer n for k = {k}")
    return 1 + k + k * (k - 2) // 2


def multiplicities(n: int, k: int, s: int) -> tuple[Fraction, Fraction]:
    """Eigenvalue multiplicities 1/2[(n-1) -+ ((n-1) - 2k)/s] for sqrt(4k-7) = s."""
    base = Fraction(n - 1)
    delta = Fraction((n - 1) - 2 * k, s)
    return (base - delta) / 2, (base + delta) / 2


def feasible_params(k_max: int) -> list[SrgParams]:
    """Degrees k <= k_max admitting integral eigenvalues and multiplicities."""
    out = []
    for k in range(3, k_max + 1):
        if k % 2:
            continue
        s = math.isqrt(4 * k - 7)
        if s * s != 4 * k - 7:
            continue
        n = n_of_k(k)
        f, g = multiplicities(n, k, s)
        if all(m.denominator == 1 and m >= 0 for m in (f, g)):
            out.append(SrgParams(n, k))
    return out


# --------------------------------------------------------------------------
# formula table


def h_values(n: int, k: int, n3, h11) -> tuple[Fraction, ...]:
    n3 = Fraction(n3)
    h11 = Fraction(h11)
    F = Fraction
    base2 = F(n * k * (k - 2))  # n k (k-2)
    base3 = base2 * (k - 4)  # n k (k-2)(k-4)
    return (
        F(1, 14) * base3 * (2 * k * k - 30 * k + 133) - 10 * n3 - h11,
        F(1, 2) * base2 * (2 * k * k - 25 * k + 68) + 16 * n3 + F(3, 2) * h11,
        base3 * (k - 8) + 12 * n3 + F(5, 2) * h11,
        base3 - 2 * n3 - h11 / 2,
        base3 - 4 * n3,
        F(1, 2) * base3 - h11 / 2,
        base3 - 8 * n3,
        F(1, 2) * base3 - F(3, 2) * h11,
        2 * base3 - 8 * n3 - 2 * h11,
        base3 - 2 * n3 - F(3, 2) * h11,
        2 * n3,
        h11,
        F(1, 4) * base2 - n3 + h11 / 4,
        h11 / 2,
        4 * n3,
        2 * n3,
        h11 - 2 * n3,
        F(1, 4) * base2 - n3,
        n3 - h11 / 4,
    )


def p_values(n: int, k: int) -> tuple[Fraction, Fraction, Fraction, Fraction, Fraction]:
    """(p3, p4, p5, lower bound for p6, upper bound for p7)."""
    F = Fraction
    return (
        F(n * k, 6),
        F(n * k * (k - 2), 8),
        F(n * k * (k - 2) * (k - 4), 5),
        F(n * k * (k - 2) * (2 * k * k - 21 * k + 53), 12),
        F(n * k * (k - 2) * (k - 4) * (2 * k * k - 30 * k + 133), 14),
    )


def evaluate_h(params: SrgParams, fv: FreeVars) -> FormulaTable:
    """Evaluate every class count and polygon expression; flag negative or fractional values."""
    _require_family(params)
    h = h_values(params.n, params.k, fv.n3, fv.h11)
    p3, p4, p5, p6, p7 = p_values(params.n, params.k)
    return FormulaTable(
        h=h,
        p3=p3,
        p4=p4,
        p5=p5,
        p6_lower=p6,
        p7_upper=p7,
        negative=tuple(i for i, v in enumerate(h) if v < 0),
        non_integral=tuple(i for i, v in enumerate(h) if v.denominator != 1),
    )


def evaluate_p(params: SrgParams) -> dict[str, Fraction]:
    _require_family(params)
    keys = ("p3", "p4", "p5", "p6_lower", "p7_upper")
    return dict(zip(keys, p_values(params.n, params.k)))


def check_bounds(fv: FreeVars) -> bool:
    return 2 * fv.n3 <= fv.h11 <= 4 * fv.n3


def check_integrality(params: SrgParams, fv: FreeVars) -> list[Violation]:
    table = evaluate_h(params, fv)
    out = [Violation(f"h_{i}", v) for i, v in enumerate(table.h) if v.denominator != 1]
    for name in ("p3", "p4", "p5"):
        v = getattr(table, name)
        if v.denominator != 1:
            out.append(Violation(name, v))
    return out


# --------------------------------------------------------------------------
# fitting measured counts


def _pair_sorted(measured, predicted, cycle_id: int) -> dict[int, int]:
    # Pair non-cycle catalog ids with formula indices 1..18 by rank of value.
    ids = sorted((c for c in range(len(measured)) if c != cycle_id), key=lambda c: (measured[c], c))
    idx = sorted(range(1, len(predicted)), key=lambda i: (predicted[i], i))
    matching = {cycle_id: 0}
    matching.update(zip(ids, idx))
    return matching


def _distance(measured, predicted, cycle_id: int) -> Fraction:
    a = sorted(Fraction(c) for c in measured)
    b = sorted(predicted)
    return sum((abs(x - y) for x, y in zip(a, b)), Fraction(0)) + abs(
        Fraction(measured[cycle_id]) - predicted[0]
    )


def fit_and_verify(measured, params: SrgParams, cycle_id: int = 0) -> FitResult:
    """Search (n3, h11) among values suggested by the measured counts and test the whole table.

    ``measured`` is a :class:`~srgcensus.census.CountVector` over the order-7
    Hamiltonian catalog; ``cycle_id`` is the catalog id of the 7-cycle. A
    candidate matches when the 19 predicted values equal the measured counts
    as multisets and the 7-cycle count equals the first formula.
    """
    _require_family(params)
    counts = tuple(int(c) for c in measured.counts)
    if len(counts) != NUM_H:
        raise ValueError(f"expected {NUM_H} class counts, got {len(counts)}")
    if measured.n != params.n or measured.k != params.k:
        raise ValueError(
            f"host (n={measured.n}, k={measured.k}) inconsistent with params (n={params.n}, k={params.k})"
        )
    pool = {FreeVars(0, 0)}
    for c in counts:
        if c % 2 == 0:
            for h in counts:
                pool.add(FreeVars(c // 2, h))
    cands = sorted(
        (fv for fv in pool if check_bounds(fv) and not check_integrality(params, fv)),
        key=lambda fv: (fv.n3, fv.h11),
    )
    target = sorted(counts)
    matches = []
    best = None
    for fv in cands:
        pred = h_values(params.n, params.k, fv.n3, fv.h11)
        if sorted(pred) == target and pred[0] == counts[cycle_id]:
            matches.append((fv, pred))
        dist = _distance(counts, pred, cycle_id)
        if best is None or dist < best[0]:
            best = (dist, fv, pred)

    if matches:
        fv, pred = matches[0]
        return FitResult(
            n3=fv.n3,
            h11=fv.h11,
            matched=True,
            matching=_pair_sorted(counts, pred, cycle_id),
            candidates=tuple(m[0] for m in matches),
            predicted=pred,
            measured=counts,
            residual=0,
        )
    if best is None:
        return FitResult(None, None, False, measured=counts)
    dist, fv, pred = best
    return FitResult(
        n3=fv.n3,
        h11=fv.h11,
        matched=False,
        matching=_pair_sorted(counts, pred, cycle_id),
        predicted=pred,
        measured=counts,
        residual=dist,
    )

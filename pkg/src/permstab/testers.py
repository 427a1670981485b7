"""The randomized testers: exact rejection probabilities and Monte Carlo runs.

Exact local defects are always computed by full enumeration; sampling exists
to model the testers as stated and for profiling.  Sampled runs are driven by
a counter-based generator (numpy Philox) with per-chunk derived seeds, so a
run is bit-identical for any worker count.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cochains import Cochain1, cochain_norm, path_value
from .complexes import (PolygonalComplex, Presentation, WeightingSystem,
                        uniform_distribution)
from .graphs import Covering, origin, terminus
from .perm import Permutation, evaluate_word

GENERATOR_ID = "numpy-philox4x64/seedseq-chunk4096"
_CHUNK = 4096


@dataclass(frozen=True)
class DefectReport:
    kind: str            # hom | cocycle | cover | cover_dm | matrix
    value: Fraction
    weighted: bool
    distribution: str

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 1:
            raise ValueError("defect must lie in [0, 1]")


@dataclass(frozen=True)
class TestOutcome:
    trials: int
    rejections: int
    empirical_rate: Fraction
    seed: int
    generator: str
    exact_rate: Fraction


def _check_mu(mu: Sequence[Fraction] | None, size: int, what: str) -> tuple[Fraction, ...]:
    if mu is None:
        return uniform_distribution(size)
    vec = tuple(Fraction(v) for v in mu)
    if len(vec) != size:
        raise ValueError(f"{what} must have length {size}")
    if any(v < 0 for v in vec) or sum(vec) != 1:
        raise ValueError(f"{what} must be a probability vector")
    if any(v == 0 for v in vec):
        warnings.warn(f"{what} is not fully supported; the tester loses completeness",
                      stacklevel=3)
    return vec


# ---------------------------------------------------------------------------
# exact local defects


def hom_local_defect(p: Presentation, images: Sequence[Permutation],
                     mu: Sequence[Fraction] | None = None) -> DefectReport:
    """Expected distance of relator images from the identity.

    This is the exact rejection probability of sampling a relator (uniformly
    or by mu) and a point, and accepting when the relator image fixes it.
    """
    if len(images) != p.generator_count:
        raise ValueError("need one image per generator")
    if not p.relators:
        warnings.warn("presentation has no relators; defect is trivially 0", stacklevel=2)
        return DefectReport("hom", Fraction(0), mu is not None, "uniform" if mu is None else "mu_R")
    mu_r = _check_mu(mu, len(p.relators), "mu_R")
    n = images[0].degree
    total = Fraction(0)
    for weight, r in zip(mu_r, p.relators):
        if weight == 0:
            continue
        val = evaluate_word(r, images)
        total += weight * Fraction(n - val.fixed_points(), n)
    return DefectReport("hom", total, mu is not None, "uniform" if mu is None else "mu_R")


def cocycle_local_defect(a: Cochain1, weights: WeightingSystem | None = None) -> DefectReport:
    """Tester-facing name for the coboundary norm of a 1-cochain."""
    return DefectReport("cocycle", cochain_norm(a, weights), weights is not None,
                        "uniform" if weights is None else "mu2")


def _lift_tables(c: Covering) -> dict[int, dict[int, int]]:
    """out[v][base signed edge] = covering signed edge leaving v with that label."""
    out: dict[int, dict[int, int]] = {v: {} for v in range(1, c.graph.vertex_count + 1)}
    lab = c.labeled.labeling
    for k in range(1, len(c.graph.edges) + 1):
        lbl = lab.map_edge(k)
        out[origin(c.graph, k)][lbl] = k
        out[terminus(c.graph, k)][-lbl] = -k
    return out


def lift_path(c: Covering, path: Sequence[int], start: int,
              tables: dict[int, dict[int, int]] | None = None) -> int:
    """End vertex of the unique lift of a base path starting at a cover vertex."""
    if tables is None:
        tables = _lift_tables(c)
    v = start
    for s in path:
        v = terminus(c.graph, tables[v][s])
    return v


def _cover_checks(c: Covering, x: PolygonalComplex) -> None:
    if c.base != x.skeleton:
        raise ValueError("covering does not cover the skeleton of the complex")
    if not x.polygons:
        raise ValueError("complex has no polygons")


def cover_local_defect(c: Covering, x: PolygonalComplex,
                       weights: WeightingSystem | None = None) -> DefectReport:
    """Probability that the lift of a random polygon at a random fiber point is open.

    Enumerates every polygon class and fiber point; the open count per class
    is the same for every orientation, so one representative suffices.
    """
    _cover_checks(c, x)
    from .cochains import _mu2

    mu2 = _mu2(x, weights)
    tables = _lift_tables(c)
    total = Fraction(0)
    for weight, pc in zip(mu2, x.polygons):
        if weight == 0:
            continue
        x0 = origin(x.skeleton, pc.canonical[0])
        open_count = 0
        for start in c.fiber_labels[x0 - 1]:
            if lift_path(c, pc.canonical, start, tables) != start:
                open_count += 1
        total += weight * Fraction(open_count, c.degree)
    return DefectReport("cover", total, weights is not None,
                        "uniform" if weights is None else "mu2")


def dm_cover_local_defect(c: Covering, x: PolygonalComplex) -> DefectReport:
    """Discrete-metric variant: fraction of polygon classes with any open lift."""
    _cover_checks(c, x)
    tables = _lift_tables(c)
    bad = 0
    for pc in x.polygons:
        x0 = origin(x.skeleton, pc.canonical[0])
        if any(lift_path(c, pc.canonical, start, tables) != start
               for start in c.fiber_labels[x0 - 1]):
            bad += 1
    return DefectReport("cover_dm", Fraction(bad, len(x.polygons)), False, "uniform")


# ---------------------------------------------------------------------------
# the matrix tester (parity checks over F2)


def matrix_to_presentation(rows: Sequence[Sequence[int]]) -> Presentation:
    """One generator per column, and per row the index-ordered product of the
    generators carrying a 1."""
    m = [[int(v) for v in row] for row in rows]
    if not m or not m[0]:
        raise ValueError("matrix must be nonempty")
    width = len(m[0])
    for row in m:
        if len(row) != width:
            raise ValueError("rows have inconsistent lengths")
        if any(v not in (0, 1) for v in row):
            raise ValueError("matrix entries must be 0 or 1")
    relators = tuple(tuple(j + 1 for j, v in enumerate(row) if v) for row in m)
    return Presentation(width, relators)


def vector_to_images(v: Sequence[int]) -> tuple[Permutation, ...]:
    flip = Permutation([2, 1])
    ident = Permutation.identity(2)
    out = []
    for bit in v:
        if int(bit) not in (0, 1):
            raise ValueError("vector entries must be 0 or 1")
        out.append(flip if int(bit) else ident)
    return tuple(out)


def matrix_tester(rows: Sequence[Sequence[int]], v: Sequence[int],
                  mu: Sequence[Fraction] | None = None) -> DefectReport:
    """Exact rejection probability of the parity-check tester on the vector v.

    Also evaluates the induced presentation over Sym(2) with the same row
    distribution and insists the two rejection probabilities agree.
    """
    m = [[int(x) for x in row] for row in rows]
    if any(len(row) != len(v) for row in m):
        raise ValueError(f"rows must have length {len(v)}")
    p = matrix_to_presentation(m)
    mu_rows = _check_mu(mu, len(m), "mu")
    vec = [int(x) for x in v]
    value = sum((w for w, row in zip(mu_rows, m)
                 if sum(r * x for r, x in zip(row, vec)) % 2), Fraction(0))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        hom = hom_local_defect(p, vector_to_images(vec), mu)
    if hom.value != value:
        raise RuntimeError(
            f"matrix tester disagrees with the induced presentation: {value} != {hom.value}")
    return DefectReport("matrix", value, mu is not None, "uniform" if mu is None else "mu")


# ---------------------------------------------------------------------------
# Monte Carlo


def _orientation_lists(x: PolygonalComplex) -> list[list[tuple[int, ...]]]:
    return [sorted(pc.orientations) for pc in x.polygons]


def _reject_tables(kind: str, obj, weights) -> tuple[np.ndarray, list[np.ndarray], Fraction]:
    """Per-constraint rejection tables of shape (orientations, points),
    constraint probabilities, and the exact rejection rate.

    ``weights`` is a WeightingSystem for cocycle/cover kinds and a plain
    distribution over relators/rows for hom/matrix.
    """
    if kind == "hom":
        p, images = obj
        n = images[0].degree
        mu = np.array([float(w) for w in _check_mu(weights, len(p.relators), "mu_R")])
        tables = []
        for r in p.relators:
            val = evaluate_word(r, images)
            tables.append(np.array([[val(i) != i for i in range(1, n + 1)]]))
        exact = hom_local_defect(p, images, weights).value
        return mu, tables, exact
    if kind == "cocycle":
        a = obj
        x = a.space
        mu = np.array([float(w) for w in
                       (weights.mu2 if weights is not None else uniform_distribution(len(x.polygons)))])
        tables = []
        for orients in _orientation_lists(x):
            per_orient = []
            for o in orients:
                val = path_value(a, o)
                per_orient.append([val(i) != i for i in range(1, a.degree + 1)])
            tables.append(np.array(per_orient))
        exact = cocycle_local_defect(a, weights).value
        return mu, tables, exact
    if kind in ("cover", "cover_dm"):
        c, x = obj
        lift = _lift_tables(c)
        mu = np.array([float(w) for w in
                       (weights.mu2 if weights is not None and kind == "cover"
                        else uniform_distribution(len(x.polygons)))])
        tables = []
        for orients in _orientation_lists(x):
            per_orient = []
            for o in orients:
                x0 = origin(x.skeleton, o[0])
                fiber = c.fiber_labels[x0 - 1]
                per_orient.append([lift_path(c, o, start, lift) != start for start in fiber])
            tables.append(np.array(per_orient))
        if kind == "cover":
            exact = cover_local_defect(c, x, weights).value
        else:
            tables = [t.any(axis=1, keepdims=True) for t in tables]
            exact = dm_cover_local_defect(c, x).value
        return mu, tables, exact
    if kind == "matrix":
        rows, v = obj
        vec = [int(x) for x in v]
        mu = np.array([float(w) for w in _check_mu(weights, len(rows), "mu")])
        tables = [np.array([[bool(sum(r * x for r, x in zip(row, vec)) % 2)]]) for row in rows]
        exact = matrix_tester(rows, v, weights).value
        return mu, tables, exact
    raise ValueError(f"unknown tester kind {kind!r}")


def _linf_exact(mu: np.ndarray, tables: list) -> Fraction:
    rate = Fraction(1)
    for t in tables:
        flat = t.reshape(-1)
        rate *= 1 - Fraction(int(flat.sum()), flat.size)
    return 1 - rate


def run_sampled(kind: str, obj, trials: int, seed: int, linf: bool = False,
                workers: int = 1, weights=None) -> TestOutcome:
    """Seeded Monte Carlo run of a tester.

    Each 4096-trial chunk draws from Philox keyed by SeedSequence(seed,
    spawn_key=(chunk,)); chunk results are summed in order, so the outcome is
    a pure function of (seed, trials) no matter how many workers execute the
    chunks.  With ``linf`` every constraint is sampled once per trial and a
    single open check rejects; the exact rate is then 1 - prod(1 - p_c).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if linf and kind in ("matrix", "cover_dm"):
        raise ValueError(f"no L-infinity variant for kind {kind!r}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        mu, tables, exact = _reject_tables(kind, obj, weights)
    exact_rate = _linf_exact(mu, tables) if linf else exact
    n_constraints = len(tables)
    mu = mu / mu.sum()
    orient_counts = np.array([t.shape[0] for t in tables])
    point_counts = np.array([t.shape[1] for t in tables])
    flat = np.concatenate([t.reshape(-1) for t in tables])
    offsets = np.concatenate(([0], np.cumsum(orient_counts * point_counts)[:-1]))

    def run_chunk(chunk_index: int, size: int) -> int:
        rng = np.random.Generator(np.random.Philox(
            np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))))
        if linf:
            u_orient = rng.random((size, n_constraints))
            u_point = rng.random((size, n_constraints))
            o = (u_orient * orient_counts).astype(np.int64)
            i = (u_point * point_counts).astype(np.int64)
            rej = flat[offsets + o * point_counts + i].any(axis=1)
            return int(rej.sum())
        cons = rng.choice(n_constraints, size=size, p=mu)
        o = (rng.random(size) * orient_counts[cons]).astype(np.int64)
        i = (rng.random(size) * point_counts[cons]).astype(np.int64)
        rej = flat[offsets[cons] + o * point_counts[cons] + i]
        return int(rej.sum())

    chunks = [(idx, min(_CHUNK, trials - idx * _CHUNK))
              for idx in range((trials + _CHUNK - 1) // _CHUNK)]
    if workers <= 1:
        rejections = sum(run_chunk(idx, size) for idx, size in chunks)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rejections = sum(pool.map(lambda c: run_chunk(*c), chunks))
    return TestOutcome(trials, rejections, Fraction(rejections, trials),
                       seed, GENERATOR_ID, exact_rate)

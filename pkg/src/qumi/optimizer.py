"""Deterministic global search over one or two measurement directions.

A coarse scan of an upper-hemisphere (theta, phi) grid is followed by
Nelder-Mead refinement. Refinement works in a tangent-plane chart centred on
the current best point, n(u, v) = normalise(n0 + u t1 + v t2), which keeps
the pole regular. Ties on the grid go to the lowest linear index.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import minimize

from .states import Direction

TIE_TOL = 1e-14
ANTIPODAL_TOL = 1e-9
_CHUNK = 1 << 18
ALTERNATING_ROUNDS = 4


@dataclass(frozen=True)
class SearchConfig:
    grid_polar: int = 32
    grid_azimuthal: int = 64
    refine_iterations: int = 200
    refine_tolerance: float = 1e-10
    bloch_zero_threshold: float = 1e-9

    def __post_init__(self):
        if self.grid_polar < 4 or self.grid_azimuthal < 4:
            raise ValueError("grid counts must be at least 4")
        if self.refine_iterations < 0:
            raise ValueError("refine_iterations must be non-negative")
        if not (self.refine_tolerance > 0 and self.bloch_zero_threshold > 0):
            raise ValueError("tolerances must be positive")


QUICK = SearchConfig(grid_polar=16, grid_azimuthal=32)


class SearchResult(NamedTuple):
    direction: Direction
    value: float


class PairSearchResult(NamedTuple):
    directions: tuple[Direction, Direction]
    value: float


def hemisphere_grid(cfg: SearchConfig) -> np.ndarray:
    """Unit vectors, theta in [0, pi/2] (outer) by phi in [0, 2 pi) (inner)."""
    theta = np.linspace(0.0, np.pi / 2, cfg.grid_polar)
    phi = np.arange(cfg.grid_azimuthal) * (2 * np.pi / cfg.grid_azimuthal)
    t, p = np.meshgrid(theta, phi, indexing="ij")
    pts = np.stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)], axis=-1)
    return pts.reshape(-1, 3)


def _sign(mode: str) -> float:
    if mode == "max":
        return 1.0
    if mode == "min":
        return -1.0
    raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")


def _best_index(scores: np.ndarray) -> int:
    """Lowest index whose score is within TIE_TOL of the best (scores are maximised)."""
    top = scores.max()
    return int(np.flatnonzero(scores >= top - TIE_TOL)[0])


def _tangent_basis(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    t1 = np.cross(n, helper)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(n, t1)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _refine(score: Callable[[np.ndarray], float], n0: np.ndarray, f0: float,
            step: float, cfg: SearchConfig) -> tuple[np.ndarray, float]:
    """Maximise ``score`` near ``n0``; keep ``n0`` unless strictly improved."""
    if cfg.refine_iterations == 0:
        return n0, f0
    t1, t2 = _tangent_basis(n0)

    def point(x):
        return _unit(n0 + x[0] * t1 + x[1] * t2)

    res = minimize(
        lambda x: -score(point(x)),
        np.zeros(2),
        method="Nelder-Mead",
        options={
            "initial_simplex": np.array([[0.0, 0.0], [step, 0.0], [0.0, step]]),
            "xatol": 1e-10,
            "fatol": cfg.refine_tolerance,
            "maxiter": cfg.refine_iterations,
            "maxfev": 4 * cfg.refine_iterations,
        },
    )
    n1 = point(res.x)
    f1 = score(n1)
    if f1 > f0 + TIE_TOL:
        return n1, f1
    return n0, f0


def _refine_pair(score, a0: np.ndarray, b0: np.ndarray, f0: float, step: float,
                 cfg: SearchConfig) -> tuple[np.ndarray, np.ndarray, float]:
    if cfg.refine_iterations == 0:
        return a0, b0, f0
    ta, tb = _tangent_basis(a0), _tangent_basis(b0)

    def points(x):
        return (_unit(a0 + x[0] * ta[0] + x[1] * ta[1]),
                _unit(b0 + x[2] * tb[0] + x[3] * tb[1]))

    simplex = np.vstack([np.zeros(4), step * np.eye(4)])
    res = minimize(
        lambda x: -score(*points(x)),
        np.zeros(4),
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": 1e-10,
            "fatol": cfg.refine_tolerance,
            "maxiter": 2 * cfg.refine_iterations,
            "maxfev": 8 * cfg.refine_iterations,
        },
    )
    a1, b1 = points(res.x)
    f1 = score(a1, b1)
    if f1 > f0 + TIE_TOL:
        return a1, b1, f1
    return a0, b0, f0


def _half_cell(cfg: SearchConfig) -> float:
    return 0.5 * (np.pi / 2) / (cfg.grid_polar - 1)


def _scalar(objective, vectorized: bool):
    if vectorized:
        return lambda n: float(objective(n[None, :])[0])
    return lambda n: float(objective(Direction.from_vector(n)))


def extremize_one_direction(objective, mode: str = "max", cfg: SearchConfig | None = None, *,
                            vectorized: bool = False, check_antipodal: bool = False,
                            history: list | None = None) -> SearchResult:
    """Global extremum of a direction-dependent objective.

    Parameters
    ----------
    objective : callable
        ``Direction -> float``; with ``vectorized=True`` instead
        ``ndarray (N, 3) -> ndarray (N,)``.
    mode : {'max', 'min'}
    cfg : SearchConfig, optional
    check_antipodal : bool
        Spot-check that the objective takes the same value at the optimum's
        antipode, which justifies scanning only one hemisphere.
    history : list, optional
        Receives the best objective value after each stage.
    """
    cfg = cfg or SearchConfig()
    sign = _sign(mode)
    grid = hemisphere_grid(cfg)
    if vectorized:
        values = np.asarray(objective(grid), dtype=float)
    else:
        values = np.array([objective(Direction.from_vector(n)) for n in grid], dtype=float)
    scores = sign * values
    k = _best_index(scores)
    f = _scalar(objective, vectorized)
    score = lambda n: sign * f(n)  # noqa: E731
    n, s = grid[k], float(scores[k])
    if history is not None:
        history.append(sign * s)
    n, s = _refine(score, n, s, _half_cell(cfg), cfg)
    if history is not None:
        history.append(sign * s)
    if check_antipodal:
        _check_antipodal(lambda m: f(m), n)
    return SearchResult(Direction.from_vector(n), sign * s)


def _check_antipodal(f, n):
    a, b = f(n), f(-n)
    if abs(a - b) > ANTIPODAL_TOL:
        raise ValueError(f"objective is not antipodally symmetric: f(n)={a!r}, f(-n)={b!r}")


def extremize_two_directions(objective, mode: str = "max", cfg: SearchConfig | None = None, *,
                             vectorized: bool = False, check_antipodal: bool = False,
                             history: list | None = None) -> PairSearchResult:
    """Global extremum of an objective of two directions.

    A product-grid scan over hemisphere x hemisphere is followed by
    a few rounds of alternating single-direction refinement, then joint
    refinement of both directions, restarted until the objective changes by
    less than ``cfg.refine_tolerance``.

    ``objective`` is ``(Direction, Direction) -> float`` or, vectorised,
    ``(ndarray (N, 3), ndarray (N, 3)) -> ndarray (N,)`` over pairs.
    """
    cfg = cfg or SearchConfig()
    sign = _sign(mode)
    grid = hemisphere_grid(cfg)
    n = len(grid)
    values = np.empty(n * n)
    if vectorized:
        rows = max(1, _CHUNK // n)
        for i0 in range(0, n, rows):
            i1 = min(n, i0 + rows)
            a = np.repeat(grid[i0:i1], n, axis=0)
            b = np.tile(grid, (i1 - i0, 1))
            values[i0 * n:i1 * n] = objective(a, b)
    else:
        dirs = [Direction.from_vector(g) for g in grid]
        values[:] = [objective(da, db) for da in dirs for db in dirs]
    scores = sign * values
    k = _best_index(scores)
    a, b = grid[k // n], grid[k % n]
    s = float(scores[k])
    if history is not None:
        history.append(sign * s)

    if vectorized:
        def f(x, y):
            return float(objective(x[None, :], y[None, :])[0])
    else:
        def f(x, y):
            return float(objective(Direction.from_vector(x), Direction.from_vector(y)))

    step = _half_cell(cfg)
    for _ in range(min(cfg.refine_iterations, ALTERNATING_ROUNDS)):
        before = s
        a, s = _refine(lambda x: sign * f(x, b), a, s, step, cfg)
        b, s = _refine(lambda y: sign * f(a, y), b, s, step, cfg)
        if history is not None:
            history.append(sign * s)
        if s - before < cfg.refine_tolerance:
            break
    # alternating steps crawl along ridges where the optimal a and b are
    # coupled, so only a few rounds; joint restarts in both charts finish
    for _ in range(cfg.refine_iterations):
        before = s
        a, b, s = _refine_pair(lambda x, y: sign * f(x, y), a, b, s, step, cfg)
        if history is not None:
            history.append(sign * s)
        if s - before < cfg.refine_tolerance:
            break
    if check_antipodal:
        _check_antipodal(lambda m: f(m, b), a)
        _check_antipodal(lambda m: f(a, m), b)
    return PairSearchResult((Direction.from_vector(a), Direction.from_vector(b)), sign * s)

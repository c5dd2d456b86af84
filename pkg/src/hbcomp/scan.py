"""Numeric Carleson evidence for W_{u,phi} on H^2.

    I(w) = (1 - |w|^2) * mean over T of |u|^2 / |1 - conj(w) phi|^2

is bounded over the disk iff W_{u,phi} is bounded, and tends to 0 as
|w| -> 1 iff it is compact. The scan tabulates I on a polar grid, along
radial traces, and the Carleson window ratios mu(S(eta, r)) / r of the
pulled-back measure mu(E) = integral of |u|^2 over phi^{-1}(E) on T.
None of this decides a verdict; it is attached as evidence.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import pi

import numpy as np

from . import kernels
from .quadrature import graded_rule

SCAN_RTOL = 1e-6  # order-16 vs order-32 agreement required per grid point
UNIFORM_DIRECTIONS = 32
GENERIC_TRACES = 8


@dataclass(frozen=True)
class GridSpec:
    depth: int = 12  # radii 1 - 2^-q, q = 1..depth; also contact refinement depth
    directions: int = UNIFORM_DIRECTIONS
    order: int = 16


@dataclass(frozen=True)
class ScanData:
    carleson_sup: float
    carleson_grid: tuple  # ((w, I), ...)
    boundary_trace: tuple  # ((r, alpha, I, kind), ...)
    window_ratios: tuple  # ((eta, r, ratio), ...)
    flagged: tuple = ()  # grid points whose quadrature did not settle
    threads: int = 1
    nodes: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def traces(self, kind=None):
        """{alpha: [(r, I), ...]} for one trace kind (contact / target / generic)."""
        out = {}
        for r, alpha, val, k in self.boundary_trace:
            if kind is None or k == kind:
                out.setdefault(alpha, []).append((r, val))
        return {a: sorted(v) for a, v in out.items()}

    def to_json(self):
        return {
            "carleson_sup": self.carleson_sup,
            "carleson_grid": [[complex(w).real, complex(w).imag, v] for w, v in self.carleson_grid],
            "boundary_trace": [
                {"r": r, "alpha": a, "I": v, "kind": k} for r, a, v, k in self.boundary_trace
            ],
            "window_ratios": [
                {"eta": [complex(e).real, complex(e).imag], "r": r, "ratio": v} for e, r, v in self.window_ratios
            ],
            "flagged": [[complex(w).real, complex(w).imag] for w in self.flagged],
            "threads": self.threads,
            "nodes": self.nodes,
        }

    def to_csv(self):
        lines = ["re_w,im_w,I_w"]
        for w, v in self.carleson_grid:
            w = complex(w)
            lines.append(f"{w.real:.17g},{w.imag:.17g},{v:.17g}")
        return "\n".join(lines) + "\n"


def scan_threads():
    cap = os.environ.get("HBCOMP_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            pass
    return n


def _angle(z):
    return float(np.mod(np.angle(z), 2 * pi))


def measure_nodes(u, phi, marks, depth, order):
    """Quadrature nodes of the measure |u|^2 dm pushed forward by phi."""
    theta, w = graded_rule(marks, depth=depth, order=order)
    z = np.exp(1j * theta)
    return np.ascontiguousarray(phi(z)), np.ascontiguousarray(w * np.abs(u(z)) ** 2)


def _evaluate(points, phi_a, wt_a, phi_b, wt_b, threads):
    points = np.ascontiguousarray(points, dtype=np.complex128)
    chunks = np.array_split(np.arange(len(points)), max(1, min(threads * 4, len(points))))

    def work(idx):
        w = np.ascontiguousarray(points[idx])
        return idx, kernels.carleson_sums(w, phi_a, wt_a), kernels.carleson_sums(w, phi_b, wt_b)

    lo = np.empty(len(points))
    hi = np.empty(len(points))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(work, chunks))
    else:
        results = [work(c) for c in chunks]
    for idx, a, b in results:
        lo[idx], hi[idx] = a, b
    return lo, hi


def carleson_scan(u, phi, contact=(), grid=None, threads=None):
    """Tabulate I(w) on the polar grid and along radial traces.

    contact: contact points zeta (|phi(zeta)| = 1); quadrature panels are
    graded towards them and their images give extra grid directions.
    """
    grid = grid or GridSpec()
    threads = threads or scan_threads()
    zetas = [complex(z) for z in contact]
    targets = [complex(phi(z)) for z in zetas]
    marks = [_angle(z) for z in zetas]

    phi_a, wt_a = measure_nodes(u, phi, marks, grid.depth, grid.order)
    phi_b, wt_b = measure_nodes(u, phi, marks, grid.depth, 2 * grid.order)

    radii = 1.0 - 2.0 ** -np.arange(1, grid.depth + 1)
    uniform = list(2 * pi * np.arange(grid.directions) / grid.directions)
    special = [(a, "contact") for a in marks] + [(_angle(t), "target") for t in targets]
    generic = []
    for k in range(GENERIC_TRACES):
        a = 2 * pi * (k + 0.5) / GENERIC_TRACES
        if all(abs(np.angle(np.exp(1j * (a - s)))) > 1e-3 for s, _ in special):
            generic.append((a, "generic"))
    directions = []
    seen = set()
    for a, kind in [(a, "grid") for a in uniform] + special + generic:
        key = (round(a, 12), kind)
        if key not in seen:
            seen.add(key)
            directions.append((a, kind))

    points = np.array([r * np.exp(1j * a) for a, _ in directions for r in radii])
    lo, hi = _evaluate(points, phi_a, wt_a, phi_b, wt_b, threads)

    grid_rows, trace_rows, flagged = [], [], []
    idx = 0
    for a, kind in directions:
        for r in radii:
            w = points[idx]
            val = float(hi[idx])
            if abs(hi[idx] - lo[idx]) > SCAN_RTOL * max(abs(hi[idx]), 1e-300):
                flagged.append(complex(w))
            if kind in ("grid", "contact", "target"):
                grid_rows.append((complex(w), val))
            if kind != "grid":
                trace_rows.append((float(r), float(a), val, kind))
            idx += 1

    # windows centred at the contact images (or generic points when none)
    etas = targets if targets else [np.exp(1j * a) for a, _ in generic]
    windows = []
    for eta in etas:
        d = np.abs(phi_b - eta)
        for q in range(1, grid.depth + 1):
            r = 2.0**-q
            windows.append((complex(eta), r, float(np.sum(wt_b[d < r]) / r)))

    sup = max((v for _, v in grid_rows), default=0.0)
    return ScanData(
        carleson_sup=float(sup),
        carleson_grid=tuple(grid_rows),
        boundary_trace=tuple(trace_rows),
        window_ratios=tuple(windows),
        flagged=tuple(flagged),
        threads=int(threads),
        nodes=int(len(phi_b)),
        meta={"backend": kernels.BACKEND, "depth": grid.depth},
    )

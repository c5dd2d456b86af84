"""Numerical tolerances shared by every module.

Tolerances live in a context variable so that a CLI run (or a test) can
override them locally without touching global state::

    with use_tolerances(quad_tol=1e-4):
        run_gallery()
"""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import asdict, dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    coeff_tol: float = 1e-12  # trailing-coefficient trimming, relative to max |c|
    cluster_tol: float = 1e-7  # root merging / matching
    circle_tol: float = 1e-9  # "on the unit circle"
    quad_tol: float = 1e-10  # relative, trapezoid doubling
    quad_max_level: int = 20  # cap on log2(number of nodes)
    sup_samples: int = 4096  # circle samples for sup-norm checks
    norm_one_tol: float = 1e-6  # ||b||_inf within this of 1 counts as 1
    selfmap_tol: float = 1e-9  # ||phi||_inf allowed excess over 1
    hermite_residual: float = 1e-6
    ambiguity_radius: float = 1e-4

    def as_dict(self):
        return asdict(self)


_current = ContextVar("hbcomp_tolerances", default=Tolerances())


def tolerances():
    return _current.get()


def parse_overrides(items):
    """Turn ``["quad_tol=1e-4", ...]`` into a dict of typed overrides."""
    known = {f.name: f.type for f in fields(Tolerances)}
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in known:
            raise ValueError(f"unknown tolerance override {item!r}; known: {sorted(known)}")
        out[name] = int(value) if known[name] in (int, "int") else float(value)
    return out


@contextmanager
def use_tolerances(**overrides):
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)

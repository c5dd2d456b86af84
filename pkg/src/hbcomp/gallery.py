"""Regression gallery: known example data with stored expectations."""

import time
from dataclasses import dataclass, field

import numpy as np

from .config import tolerances
from .polyrat import RatFunc
from .verdict import HsDivergent, HsFinite, Tri, analyze

C_CUBIC = 3.0 * np.sqrt(3.0) / 16.0
A_CUBIC = [-C_CUBIC, -C_CUBIC, C_CUBIC, C_CUBIC]  # c (z - 1)(z + 1)^2
R = 0.5


@dataclass(frozen=True)
class Case:
    name: str
    tags: tuple
    problem: dict  # {"b" | "a": coeffs or {"num", "den"}, "phi": ...}
    bounded: str
    compact: str
    hs: str
    rules: tuple = ()  # rule ids that must fire
    u: tuple | None = None  # (num, den) ascending coefficients, up to a common scalar
    hs_value: float | None = None
    divergent_order: int | None = None


CASES = (
    Case("cubic_affine", ("cubic", "bounded"), {"a": A_CUBIC, "phi": [0.5, 0.5]},
         "Yes", "No", "No", ("R4",), u=([9 / 32, 6 / 32, 1 / 32], [1.0])),
    Case("cubic_mobius", ("cubic", "bounded", "compact"), {"a": A_CUBIC, "phi": {"num": [-R, 1.0], "den": [1.0, -R]}},
         "Yes", "No", "No", ("R4", "C2"),
         u=([(1 - R * R) * (1 - R)], [1.0, -3 * R, 3 * R * R, -R**3])),
    Case("cubic_square", ("cubic", "bounded"), {"a": A_CUBIC, "phi": [0.0, 0.0, 1.0]},
         "No", "No", "No", ("R2", "R3"), u=([1.0, 0.0, 2.0, 0.0, 1.0], [1.0, 1.0])),
    Case("cubic_reflect", ("hs", "compact"), {"a": A_CUBIC, "phi": [-0.5, -0.5]},
         "Yes", "Yes", "Yes", ("R4", "C1"), u=([3 / 32, -2 / 32, -1 / 32], [1.0]), hs_value=0.0390625),
    Case("hs_half", ("hs", "compact"), {"b": [0.5, 0.5], "phi": [0.5, -0.5]},
         "Yes", "Yes", "Yes", ("C1",), hs_value=0.25),
    Case("hs_div", ("hs",), {"b": [0.5, 0.0, -0.5], "phi": [0.5, 0.0, 0.5]},
         "Yes", "No", "No", ("R4", "H3"), divergent_order=-2),
    Case("compact_final", ("compact",), {"b": [0.5, 0.0, 0.5], "phi": [0.5, 0.0, -0.5]},
         "Yes", "Yes", "Yes", ("C3",)),
    Case("sarason_silva", ("bounded", "compact"), {"b": [0.5, 0.5], "phi": {"num": [-R, 1.0], "den": [1.0, -R]}},
         "Yes", "No", "No", ("R4", "C2")),
    Case("strict", ("hs", "compact"), {"b": [0.5, 0.5], "phi": [0.0, 0.5]},
         "Yes", "Yes", "Yes", ("H1", "C3"), hs_value=5.0 / 12.0),
    Case("identity", ("bounded", "compact"), {"b": [0.5, 0.5], "phi": [0.0, 1.0]},
         "Yes", "No", "No", ("R4",), u=([1.0], [1.0])),
)


@dataclass
class CaseResult:
    name: str
    passed: bool
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    verdict: tuple = ()


def _rat(data):
    from .report import parse_ratfunc

    return parse_ratfunc(data)


def _same_rat(f, num, den, tol=1e-9):
    """f == num/den coefficientwise after normalizing both denominators."""
    g = RatFunc(np.asarray(num, dtype=complex), np.asarray(den, dtype=complex))
    fn, fd = f.num.coeffs, f.den.coeffs
    gn, gd = g.num.coeffs, g.den.coeffs
    if len(fn) != len(gn) or len(fd) != len(gd):
        return False
    s = fd[-1] / gd[-1]
    return bool(np.max(np.abs(fn - s * gn)) <= tol * max(1.0, np.max(np.abs(fn))) and
                np.max(np.abs(fd - s * gd)) <= tol * max(1.0, np.max(np.abs(fd))))


def run_case(case):
    t0 = time.perf_counter()
    fails = []
    p = case.problem
    kw = {"b": _rat(p["b"])} if "b" in p else {"a": _rat(p["a"])}
    res = analyze(_rat(p["phi"]), **kw)
    v = res.verdict
    got = (v.bounded.value, v.compact.value, v.hilbert_schmidt.value)
    want = (case.bounded, case.compact, case.hs)
    if got != want:
        fails.append(f"verdict {got} != {want}")
    missing = [r for r in case.rules if r not in v.rules()]
    if missing:
        fails.append(f"rules {missing} did not fire (fired {v.rules()})")
    if case.u is not None and not _same_rat(res.upack.u, *case.u):
        fails.append(f"u = {res.upack.u} differs from expected")
    if case.hs_value is not None:
        tol = max(1e-8, 100 * tolerances().quad_tol)
        if not isinstance(v.hs, HsFinite) or abs(v.hs.value - case.hs_value) > tol:
            fails.append(f"HS integral {v.hs} != {case.hs_value}")
    if case.divergent_order is not None:
        if not isinstance(v.hs, HsDivergent) or any(o != case.divergent_order for _, o in v.hs.points):
            fails.append(f"HS divergence {v.hs} != order {case.divergent_order}")
    return CaseResult(case.name, not fails, fails, time.perf_counter() - t0, got)


def gallery(tags=None):
    """Run every case (or those carrying one of `tags`); returns a list of CaseResult."""
    if isinstance(tags, str):
        tags = [tags]
    chosen = [c for c in CASES if not tags or set(tags) & set(c.tags)]
    out = []
    for c in chosen:
        try:
            out.append(run_case(c))
        except Exception as exc:  # reported in the table, never raised
            out.append(CaseResult(c.name, False, [f"{type(exc).__name__}: {exc}"]))
    return out


def format_table(results):
    lines = [f"{'case':<16}{'bounded':<9}{'compact':<9}{'hs':<9}{'time':>8}  status"]
    for r in results:
        b, c, h = r.verdict or ("-", "-", "-")
        lines.append(f"{r.name:<16}{b:<9}{c:<9}{h:<9}{r.seconds:>7.3f}s  {'PASS' if r.passed else 'FAIL'}")
        for f in r.failures:
            lines.append(f"    {f}")
    ok = sum(r.passed for r in results)
    lines.append(f"{ok}/{len(results)} passed")
    return "\n".join(lines)

"""Problem files in, reports out.

Problem JSON::

    {"b": <rat>, "phi": <rat>, "grid": {"depth": 12}, "trunc": 64,
     "tol": {"quad_tol": 1e-10}}

with exactly one of "b" or "a". A <rat> is either a coefficient list or
{"num": [...], "den": [...]}; coefficients are numbers or [re, im] pairs,
ascending degree. Reports are written with every float at 17 significant
digits and a fixed key order, so equal inputs give byte-identical output.
"""

import json
import math
from dataclasses import dataclass, field
from numbers import Number

import numpy as np

from . import __version__
from .config import parse_overrides, tolerances
from .errors import SchemaError
from .polyrat import CPoly, RatFunc
from .scan import GridSpec

# ---------------------------------------------------------------------------
# deterministic JSON


def _num(x):
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    if x == 0.0:
        return "0.0"
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode([obj.real, obj.imag], indent, level)
    if isinstance(obj, (Number, np.floating)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):  # enums
        return json.dumps(obj.value)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (Number, np.number)) and not isinstance(v, (complex, np.complexfloating)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json(), indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    return _encode(obj, indent, 0) + "\n"


# ---------------------------------------------------------------------------
# problem parsing


@dataclass
class ProblemSpec:
    phi: RatFunc | None
    b: RatFunc | None = None
    a: RatFunc | None = None
    f: RatFunc | None = None
    grid: GridSpec = field(default_factory=GridSpec)
    trunc: int = 64
    tol: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict, repr=False)


def _coeff(item, where):
    if isinstance(item, bool):
        raise SchemaError(f"{where}: booleans are not coefficients")
    if isinstance(item, Number):
        return complex(item)
    if isinstance(item, (list, tuple)) and len(item) == 2 and all(isinstance(v, Number) for v in item):
        return complex(item[0], item[1])
    raise SchemaError(f"{where}: coefficient must be a number or an [re, im] pair, got {item!r}")


def _poly(data, where):
    if not isinstance(data, list) or not data:
        raise SchemaError(f"{where}: expected a nonempty list of coefficients")
    return CPoly([_coeff(c, f"{where}[{i}]") for i, c in enumerate(data)])


def parse_ratfunc(data, where="rat"):
    if isinstance(data, dict):
        extra = set(data) - {"num", "den"}
        if "num" not in data or extra:
            raise SchemaError(f"{where}: expected keys num (and optional den), got {sorted(data)}")
        num = _poly(data["num"], f"{where}.num")
        den = _poly(data["den"], f"{where}.den") if "den" in data else CPoly.one()
        if den.is_zero:
            raise SchemaError(f"{where}.den: denominator is the zero polynomial")
        return RatFunc(num, den)
    return RatFunc(_poly(data, where))


def load_problem(data, need_phi=True, need_f=False):
    if not isinstance(data, dict):
        raise SchemaError("problem file must hold a JSON object")
    known = {"b", "a", "phi", "f", "grid", "trunc", "tol"}
    extra = set(data) - known
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}; allowed: {sorted(known)}")
    if ("b" in data) == ("a" in data):
        raise SchemaError('exactly one of "b" or "a" is required')
    spec = ProblemSpec(phi=None, raw=data)
    if "b" in data:
        spec.b = parse_ratfunc(data["b"], "b")
    else:
        spec.a = parse_ratfunc(data["a"], "a")
    if need_phi:
        if "phi" not in data:
            raise SchemaError('"phi" is required')
        spec.phi = parse_ratfunc(data["phi"], "phi")
    elif "phi" in data:
        spec.phi = parse_ratfunc(data["phi"], "phi")
    if need_f:
        if "f" not in data:
            raise SchemaError('"f" is required')
        spec.f = parse_ratfunc(data["f"], "f")
    grid = data.get("grid", {})
    if not isinstance(grid, dict) or set(grid) - {"depth", "directions"}:
        raise SchemaError('"grid" must be an object with optional keys depth, directions')
    try:
        spec.grid = GridSpec(depth=int(grid.get("depth", 12)), directions=int(grid.get("directions", 32)))
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"grid: {exc}") from None
    if spec.grid.depth < 1 or spec.grid.directions < 1:
        raise SchemaError("grid depth and directions must be positive")
    trunc = data.get("trunc", 64)
    if not isinstance(trunc, int) or isinstance(trunc, bool) or not 1 <= trunc <= 512:
        raise SchemaError('"trunc" must be an integer in [1, 512]')
    spec.trunc = trunc
    tol = data.get("tol", {})
    if not isinstance(tol, dict):
        raise SchemaError('"tol" must be an object of name: value')
    try:
        spec.tol = parse_overrides([f"{k}={v}" for k, v in tol.items()])
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return spec


# ---------------------------------------------------------------------------
# report assembly


def toolkit_info():
    return {"name": "hbcomp", "version": __version__}


def build_report(spec, analysis, matrix=None):
    data = {"toolkit": toolkit_info(), "tolerances": tolerances().as_dict()}
    data["input"] = {"b" if spec.b is not None else "a": (spec.b or spec.a).to_json(), "phi": spec.phi.to_json()}
    data["mate"] = analysis.mate.to_json()
    data["profile"] = analysis.profile.to_json() if analysis.profile is not None else None
    data["u"] = analysis.upack.to_json() if analysis.upack is not None else None
    data["verdict"] = analysis.verdict.to_json()
    if matrix is not None:
        data["matrix"] = matrix
    return data


def run(spec, scan=False, trunc=None, threads=None):
    """Full pipeline for a parsed ProblemSpec; returns the report dict."""
    from .opmatrix import truncate_weighted
    from .verdict import Tri, analyze

    res = analyze(spec.phi, b=spec.b, a=spec.a, scan=scan, grid=spec.grid, threads=threads)
    matrix = None
    if trunc and res.upack is not None and res.upack.u_in_H2 and res.verdict.bounded is Tri.YES:
        matrix = truncate_weighted(res.upack.u, spec.phi, trunc).summary()
        matrix["operator"] = "W_{u,phi} on H^2"
    return build_report(spec, res, matrix)

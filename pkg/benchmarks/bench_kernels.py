"""Compare the compiled and numpy backends on the scan's hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from hbcomp.kernels import backends


def _time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, default=600)
    ap.add_argument("--nodes", type=int, default=20000)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    w = np.sqrt(rng.uniform(0, 1, args.points)) * np.exp(2j * np.pi * rng.uniform(0, 1, args.points))
    theta = 2 * np.pi * np.arange(args.nodes) / args.nodes
    phi = 0.5 - 0.5 * np.exp(1j * theta)
    wt = np.full(args.nodes, 1.0 / args.nodes)
    coeffs = rng.normal(size=24) + 1j * rng.normal(size=24)
    z = np.exp(1j * theta)

    mods = backends()
    ref = {}
    print(f"{'kernel':<16}{'backend':<10}{'seconds':>12}{'speedup':>10}")
    for name, call in (
        ("carleson_sums", lambda m: m.carleson_sums(w, phi, wt)),
        ("horner", lambda m: m.horner(coeffs, z)),
    ):
        base = None
        for tag, mod in mods.items():
            out = call(mod)
            if name in ref:
                assert np.allclose(out, ref[name], rtol=1e-12, atol=1e-14), f"{tag} disagrees on {name}"
            ref.setdefault(name, out)
            t = _time(lambda: call(mod), args.repeat)
            base = base or t
            print(f"{name:<16}{tag:<10}{t:>12.5f}{base / t:>9.1f}x")
    if "cython" not in mods:
        print("compiled backend not built; only the numpy backend was timed")


if __name__ == "__main__":
    main()

"""Timing comparison of the compiled and plain-Python kernel backends.

Run as a script:

    python benchmarks/bench_backends.py [--repeat 5]

Each benchmark exercises one hot kernel through both backends in the
same process and reports the best-of-N wall time per call plus the
speedup of the active backend over the interpreted one.  When the
compiled extension is absent both columns time the same module and the
ratio prints as 1.0x.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from besselsum.backend import BACKEND, kernels, load_pure_kernels


def _sweep_args(mod):
    us = np.geomspace(40.0, 0.6, 160)
    gx, gw = np.polynomial.legendre.leggauss(32)
    out = np.empty_like(us)
    # opening value of I(u) = int_u^inf J_0 Y_0 / t^2 dt at the largest u;
    # the benchmark only needs a consistent number, not a certified one
    from besselsum.oscillatory_quadrature import integral_j0y0_tail

    i_start = integral_j0y0_tail(float(us[0])).value
    return us, i_start, gx, gw, out


BENCHES = [
    (
        "jy01 sweep (200 pts)",
        lambda mod: lambda: [mod.jy01(x) for x in np.linspace(0.05, 60.0, 200)],
    ),
    (
        "j_array(x=30, n=80)",
        lambda mod: (lambda buf=np.empty(81): (lambda: mod.j_array(30.0, 80, buf)))(),
    ),
    (
        "k0 sweep (200 pts)",
        lambda mod: lambda: [mod.k0(x) for x in np.geomspace(0.01, 30.0, 200)],
    ),
    (
        "cdigamma (200 pts)",
        lambda mod: lambda: [
            mod.cdigamma(-0.75, t) for t in np.linspace(0.1, 120.0, 200)
        ],
    ),
    (
        "panel_j0y0_t2 (60 panels)",
        lambda mod: (
            lambda gxw=np.polynomial.legendre.leggauss(32): (
                lambda: [
                    mod.panel_j0y0_t2(a, a + 1.5, gxw[0], gxw[1])
                    for a in np.linspace(0.5, 90.0, 60)
                ]
            )
        )(),
    ),
]


def run(repeat: int) -> None:
    pure = load_pure_kernels()
    active = kernels
    print(f"active backend: {BACKEND}")
    if active is pure:
        print("active backend is the interpreted source; both columns time "
              "the same module")
    header = f"{'benchmark':<28} {'active':>12} {'pure':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))

    us, i_start, gx, gw, out = _sweep_args(active)

    def sweep_call(mod):
        return lambda: mod.sweep_q(us, i_start, gx, gw, 2.0, out)

    cases = [(name, make(active), make(pure)) for name, make in BENCHES]
    cases.append(("sweep_q (160 pts)", sweep_call(active), sweep_call(pure)))

    rows = []
    for name, fn_active, fn_pure in cases:
        t_active = min(timeit.repeat(fn_active, number=1, repeat=repeat))
        t_pure = min(timeit.repeat(fn_pure, number=1, repeat=repeat))
        rows.append((name, t_active, t_pure))
        print(f"{name:<28} {t_active * 1e3:>10.3f}ms {t_pure * 1e3:>10.3f}ms "
              f"{t_pure / t_active:>8.1f}x")

    total_a = sum(r[1] for r in rows)
    total_p = sum(r[2] for r in rows)
    print("-" * len(header))
    print(f"{'total':<28} {total_a * 1e3:>10.3f}ms {total_p * 1e3:>10.3f}ms "
          f"{total_p / total_a:>8.1f}x")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions, best is kept")
    run(parser.parse_args().repeat)

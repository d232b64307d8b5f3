#!/usr/bin/env python3
"""Build the bvosc_py extension, import it, and exercise the main surface.

Usage: python3 python/smoke_test.py [--release]
"""

import math
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]


def build(release: bool) -> pathlib.Path:
    args = ["cargo", "build", "-p", "bvosc-python"]
    profile = "debug"
    if release:
        args.append("--release")
        profile = "release"
    subprocess.run(args, cwd=ROOT, check=True)
    lib = ROOT / "target" / profile / "libbvosc_py.so"
    if not lib.exists():  # macOS fallback
        lib = ROOT / "target" / profile / "libbvosc_py.dylib"
    if not lib.exists():
        sys.exit(f"extension library not found under target/{profile}")
    return lib


def approx(a, b, tol=1e-12):
    assert abs(a - b) <= tol, f"{a} != {b} (+-{tol})"


def main() -> None:
    release = "--release" in sys.argv[1:]
    lib = build(release)
    staging = pathlib.Path(tempfile.mkdtemp(prefix="bvosc_py_"))
    shutil.copy2(lib, staging / "bvosc_py.so")
    sys.path.insert(0, str(staging))

    import bvosc_py as bv

    # affine: quotient exactly 1/4 on every window
    f = bv.Signal.affine(2.0, 1.0, 0.0, 1.0)
    approx(f.eval(0.5), 2.0)
    approx(f.quotient(0.1, 0.9), 0.25)
    stats = f.stats(0.0, 1.0)
    approx(stats.mean, 2.0)
    approx(stats.osc, 0.5)
    approx(stats.tv, 2.0)
    assert stats.quotient is not None

    # centered jump attains the sharp constant 1/2
    j = bv.Signal.jump(0.5, 0.0, 1.0, 0.0, 1.0)
    approx(j.quotient(0.0, 1.0), 0.5)
    approx(j.level_balance(0.25, 0.75), 0.0)

    # constant windows have no quotient
    c = bv.Signal.affine(0.0, 3.0, 0.0, 1.0)
    assert c.quotient(0.2, 0.8) is None

    # x^2: frozen oracle values
    x2 = bv.Signal.polynomial(0.0, [0.0, 0.0, 1.0], -1.0, 1.0)
    approx(x2.mean(-1.0, 1.0), 1.0 / 3.0, 1e-13)
    approx(x2.oscillation(-1.0, 1.0), 4.0 / (9.0 * math.sqrt(3.0)), 1e-12)
    approx(x2.total_variation(-1.0, 1.0), 2.0, 1e-12)
    approx(x2.measure_extension_defect(-1.0, 1.0, 0.0), 4.0 / (9.0 * math.sqrt(3.0)), 1e-12)

    # power-law quotient: s=1 gives 1/4, s=5/2 does not
    approx(bv.power_quotient(1.0), 0.25)
    approx(bv.power_quotient(2.5), 0.2472900816141482, 1e-12)
    assert bv.phi(2.5, 0.0, 1.0) > 2e-3
    roots = bv.exponent_roots(0.5, 4.0)
    assert any(abs(r - 1.0) < 1e-10 for r in roots), roots
    assert all(abs(r - 2.5) > 0.05 for r in roots), roots
    assert abs(bv.exponent_residual(2.5)) > 0.01
    approx(bv.ode_residual(1.0, 0.0, 0.5, 2.0), 0.0, 1e-10)

    # Taylor machinery: x^{5/2} coefficients at x0 = 1
    p52 = bv.Signal.power(2.5, 0.1, 2.0)
    a1, a2, a3, a4, residual = p52.fit_taylor(1.0, 0.05)
    approx(a1, 2.5, 1e-10)
    approx(a2, 15.0 / 8.0, 1e-10)
    approx(a3, 5.0 / 16.0, 1e-10)
    approx(a4, -5.0 / 128.0, 1e-10)
    assert residual == 0.0
    assert abs(p52.rigidity_defect(1.0, 0.05)) < 1e-10

    # classification: ramp | jump | plateau
    n = 2400
    grid = [3.0 * k / n for k in range(n + 1)]
    values = [2.0 * x if x < 1.5 else 5.0 for x in grid]
    comp = bv.Signal.from_samples(grid, values, mode="pc")
    segments = comp.classify([0.3, 0.15, 0.075], 0.0375, tol=0.01)
    classes = [s.class_name for s in segments]
    assert classes == ["affine", "jump", "constant"], segments
    assert abs(segments[0].end - 1.5) <= 0.075 + 1e-9

    # conjugation invariance of the quotient
    g = f.conjugate(2.0, -1.0, 0.5, 0.25)
    lo, hi = g.domain()
    q = g.quotient(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo))
    approx(q, 0.25, 1e-12)

    # seeded families are deterministic
    fam1 = bv.Signal.family("random_monotone_polynomial", 7)
    fam2 = bv.Signal.family("random_monotone_polynomial", 7)
    for k in range(11):
        x = 0.05 + 0.09 * k
        approx(fam1.eval(x), fam2.eval(x), 0.0)

    # multiscale map rows carry the window geometry
    entries = f.quotient_map([0.25, 0.5], 0.125)
    assert entries and all(abs(e.quotient - 0.25) < 1e-12 for e in entries)

    print("bvosc_py smoke test passed:", bv.__version__)


if __name__ == "__main__":
    main()

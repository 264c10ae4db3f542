"""Build the extension module and exercise a few bindings."""

import math
import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def build():
    subprocess.run(
        ["cargo", "build", "-p", "remezkit-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = os.path.join(ROOT, "target", "debug", "libremezkit_py.so")
    out = tempfile.mkdtemp()
    shutil.copy(lib, os.path.join(out, "remezkit.so"))
    sys.path.insert(0, out)


def main():
    build()
    import remezkit as rk

    w = rk.omega_d(rk.SetDescriptor.grid(11), 3)
    assert abs(w.lo - 1.6) < 1e-12, w
    assert w.exact

    b = rk.general_bound(2.0, 3.0, 1.0, 5)
    assert b.bound == 5.0 and b.chosen_degree == 0, b

    pair = rk.SetDescriptor.points([[-1.0], [1.0]])
    assert math.isinf(rk.remez_constant_exact(pair, 2, 101).value)

    r = rk.remez_constant_exact(rk.SetDescriptor.points([[0.0], [0.01], [0.02]]), 1)
    assert abs(r.value - 101.0) < 1e-6, r

    assert rk.chebyshev_t(3, 2.0) == 26.0
    assert rk.sublevel_intervals([0.0, 0.0, 1.0], 0.25) == [(-0.5, 0.5)]

    try:
        rk.SetDescriptor.grid(0)
    except ValueError:
        pass
    else:
        raise AssertionError("grid(0) accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()

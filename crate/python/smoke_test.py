"""Smoke test for the rydinfo extension module.

Build and stage the module first:

    cargo build --release -p rydinfo-py
    cp target/release/librydinfo.so python/rydinfo.so
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import rydinfo  # noqa: E402


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    g = rydinfo.QuantumState(1, 0, 0)
    assert (g.n, g.l, g.m, g.Z) == (1, 0, 0, 1.0)

    close(rydinfo.rho(g, 0.0, 0.3), 1.0 / math.pi, 1e-14)
    close(rydinfo.normalization(g, "momentum"), 1.0, 1e-9)
    close(rydinfo.moment(g, 1.0)[0], 1.5, 1e-10)

    s_pos, _ = rydinfo.shannon(g, "position")
    s_mom, _ = rydinfo.shannon(g, "momentum")
    close(s_pos, 3.0 + math.log(math.pi), 1e-9)
    assert s_pos + s_mom >= rydinfo.entropic_bound()

    assert rydinfo.fisher_information(rydinfo.QuantumState(2, 1, 1), "position") == 0.5
    close(rydinfo.disequilibrium(g, "position")[0], 1.0 / (8.0 * math.pi), 1e-10)
    assert rydinfo.complexities(g, "position")["cramer_rao"]["value"] == 12.0

    rep = rydinfo.compute_report(g, "r_moment:-4,fisher")
    assert rep["entries"]["r_moment:-4"]["method"] == "error:divergent"
    assert rep["entries"]["fisher"]["value"] == 4.0

    rows = rydinfo.audit(g, "formula-vs-quadrature")
    bad = [r for r in rows if r["relation"].endswith("circ-shannon-momentum")]
    assert bad and not bad[0]["pass"]
    close(bad[0]["margin"], -8.0 / 3.0, 1e-6)

    table = rydinfo.converge("fisher-momentum", [10, 20, 40])
    assert all(abs(r["ratio"] - 1.0) < 0.02 for r in table["rows"])

    close(rydinfo.quasicircular_shannon_position(2), rydinfo.shannon(rydinfo.QuantumState(2, 0, 0), "position")[0], 1e-8)

    try:
        rydinfo.QuantumState(2, 2, 0)
    except rydinfo.RydinfoError as e:
        assert "invalid_state" in str(e)
    else:
        raise AssertionError("invalid state accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()

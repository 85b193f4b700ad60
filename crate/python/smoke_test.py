"""Smoke test for the frontpair_py extension module.

Build and run from the repository root:

    cargo build -p frontpair-python --release --features extension-module
    cp target/release/libfrontpair_py.so python/frontpair_py.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import frontpair_py as fp


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    cfg = fp.BoundaryConfig(0.9, 1.1, 1.5, 1.5, 1.1)
    close(cfg.gamma, 1.0 / math.sqrt(1.0 - 0.81), 1e-12)

    c = fp.bogoliubov_coefficients(0.5, cfg)
    close(c.z, 0.90024628516681254901, 1e-12)
    close(c.a_coef**2 - c.b_coef**2, 1.0, 1e-10)
    close(fp.mean_pair_number_closed_form(0.5, cfg), 4.2754684490495586047, 1e-9)

    inc = fp.WaveMode.incident(1.0, 0.5, 1.1)
    t, r, a = fp.scatter(inc, cfg)
    assert (t.branch, r.branch, a.branch) == ("transmitted", "reflected", "anti_incident")

    close(fp.log_negativity(fp.ThermalContext(0.0), 0.5), math.log(3.0), 1e-12)
    close(fp.critical_occupancy(0.5), 1.0, 1e-12)
    assert fp.sample_pair_counts(0.5, 20240601, 10) == [0, 1, 0, 0, 0, 2, 0, 0, 0, 0]

    fast = fp.BoundaryConfig(0.99, 1.1, 1.5, 1.5, 1.1)
    report = fp.resonance_angles(fast, 1e-13)
    assert report["regime"] == "double_resonance", report
    root = [r for r in report["resonances"] if r["branch"] == "incident"][0]["theta_i"]
    close(root, math.acos(1.0 / 1.089), 1e-9)

    grid = fp.uniform_grid(200, 0.0, math.pi, False)
    points = fp.angular_spectrum(fast, grid, fp.ThermalContext(0.0), 1e6)
    assert len(points) == 200
    assert {p.status for p in points} >= {"ok", "between_resonances"}

    try:
        fp.bogoliubov_coefficients(root, fast)
    except fp.ResonantDivergenceError:
        pass
    else:
        raise AssertionError("expected ResonantDivergenceError")

    try:
        fp.run_spectrum('{"beta": 1.5, "n_i": 1.1, "n_t": 1.5, "n_r": 1.5, "n_a": 1.1}')
    except fp.ConfigError as e:
        assert issubclass(fp.ConfigError, fp.FrontpairError)
        assert "beta" in str(e)
    else:
        raise AssertionError("expected ConfigError")

    print("frontpair_py smoke test passed")


if __name__ == "__main__":
    main()

"""Timing comparison of the two grid-evaluation backends.

Runs the same cascade workloads once per backend by re-executing itself
with LIMITWAVE_BACKEND set, since the backend is chosen at import time.

    python3 benchmarks/bench_kernels.py
"""
import json
import os
import subprocess
import sys
import time


WORKLOADS = [
    # (preset, depth, box, step)
    ("haar", 20, 64.0, 1 / 256),
    ("d4", 20, 48.0, 1 / 64),
    ("quincunx", 40, 8.0, 1 / 16),
]
REPEATS = 3


def run_workloads() -> list[dict]:
    from limitwave import _kernels, presets, scaling_function

    rows = []
    for name, depth, box, step in WORKLOADS:
        bank = presets.preset(name)
        m, spec = bank.low_pass(), bank.spec
        # one throwaway call so jit compilation stays out of the timing
        scaling_function(m, spec, depth=2, box=2.0, step=0.5)
        best = float("inf")
        for _ in range(REPEATS):
            t0 = time.perf_counter()
            phi = scaling_function(m, spec, depth=depth, box=box, step=step)
            best = min(best, time.perf_counter() - t0)
        points = int(phi.values.size)
        rows.append({
            "backend": _kernels.backend(),
            "workload": name,
            "points": points,
            "depth": depth,
            "seconds": best,
            "points_per_s": points / best,
        })
    return rows


def main() -> int:
    if os.environ.get("_BENCH_CHILD"):
        json.dump(run_workloads(), sys.stdout)
        return 0

    results = []
    for backend in ("numpy", "numba"):
        env = dict(os.environ, LIMITWAVE_BACKEND=backend, _BENCH_CHILD="1")
        out = subprocess.run([sys.executable, os.path.abspath(__file__)],
                             env=env, capture_output=True, text=True)
        if out.returncode != 0:
            sys.stderr.write(out.stderr)
            return out.returncode
        results.extend(json.loads(out.stdout))

    print(f"{'workload':10s} {'backend':7s} {'points':>9s} {'depth':>5s} "
          f"{'seconds':>9s} {'Mpts/s':>8s}")
    for r in results:
        print(f"{r['workload']:10s} {r['backend']:7s} {r['points']:9d} "
              f"{r['depth']:5d} {r['seconds']:9.4f} "
              f"{r['points_per_s'] / 1e6:8.2f}")
    by_key = {}
    for r in results:
        by_key.setdefault(r["workload"], {})[r["backend"]] = r["seconds"]
    print()
    for name, t in sorted(by_key.items()):
        if "numpy" in t and "numba" in t:
            print(f"{name}: numba is {t['numpy'] / t['numba']:.1f}x "
                  f"the numpy throughput")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Compare the compiled and pure-Python kernels on full-size workloads.

Run with ``python3 benchmarks/bench_kernels.py [--m 30 40] [--repeat 3]``.
"""

import argparse
import time

from d3torus import _kernels
from d3torus.decomposer import construct
from d3torus.route_e import closed_form_R, lane_frame
from d3torus.torus import COLORS


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(m):
    _, assign = construct(m)
    steps = [assign.step_table(c) for c in COLORS]
    section = closed_form_R(1, m) if m % 2 == 0 and m >= 6 else None
    framed = None
    if section is not None:
        f = lane_frame(1)
        framed = section.conjugate(f.forward(m).as_section_map(), f.inverse(m).as_section_map()).table
    jobs = {
        "cycle scan (3 colors)": lambda: [_kernels.scan_permutation(s) for s in steps],
        "orbit from origin (3 colors)": lambda: [_kernels.orbit(s, 0, s.size + 1) for s in steps],
    }
    if framed is not None:
        jobs["lane returns (color 1)"] = lambda: _kernels.lane_returns(framed, m, m * m)
    return jobs


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m", type=int, nargs="+", default=[20, 40])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    try:
        from d3torus import _ckernels  # noqa: F401
    except ImportError:
        print("compiled kernels are not built; only the Python backend is available")
        backends = ["python"]
    else:
        backends = ["cython", "python"]

    print(f"{'m':>4}  {'workload':<30} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for m in args.m:
        for name, job in workloads(m).items():
            times = []
            for b in backends:
                previous = _kernels.use_backend(b)
                try:
                    times.append(_best(job, args.repeat))
                finally:
                    _kernels.use_backend(previous)
            speed = f"{times[1] / times[0]:8.1f}x" if len(times) == 2 else ""
            print(f"{m:>4}  {name:<30} " + " ".join(f"{t:>9.4f}s" for t in times) + f"  {speed}")


if __name__ == "__main__":
    main()

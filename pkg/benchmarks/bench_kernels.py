"""Timing comparison of the jitted and pure-numpy kernel lanes.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

Each kernel is warmed once per backend (compilation and cache load stay
out of the numbers), then timed as the best of five runs.  Figures from
one container run of this script (they move with the host):

    kernel                            numba        numpy      speedup
    witness_square_table n=6        0.0003 s     0.0005 s        2.0x
    witness_square_table n=7        0.0007 s     0.0012 s        1.8x
    witness_square_table n=8        0.0017 s     0.0028 s        1.7x
    case_table n=8                  0.0014 s     0.0042 s        3.0x
    case_table n=10                 0.0050 s     0.0170 s        3.4x
    accept_table cube, len<=8       0.0003 s     0.0220 s       65.9x
    square_accept_table len<=10     0.0020 s     0.0102 s        5.2x
"""

import time

from sqrtnfa import RandomSpec, random_nfa, sqrt_nfa
from sqrtnfa.kernels import (
    NUMBA_AVAILABLE,
    accept_table,
    case_table,
    square_accept_table,
    witness_square_table,
)


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    auto = random_nfa(RandomSpec(seed=7, max_states=4, alphabet_size=3))
    cube = sqrt_nfa(auto)
    cases = [
        ("witness_square_table n=6", lambda b: witness_square_table(6, backend=b)),
        ("witness_square_table n=7", lambda b: witness_square_table(7, backend=b)),
        ("witness_square_table n=8", lambda b: witness_square_table(8, backend=b)),
        ("case_table n=8", lambda b: case_table(8, backend=b)),
        ("case_table n=10", lambda b: case_table(10, backend=b)),
        ("accept_table cube, len<=8", lambda b: accept_table(cube, 8, backend=b)),
        ("square_accept_table len<=10", lambda b: square_accept_table(auto, 10, backend=b)),
    ]
    backends = ["numba", "numpy"] if NUMBA_AVAILABLE else ["numpy"]
    if not NUMBA_AVAILABLE:
        print("numba is not importable here; timing the numpy lane only")

    print(f"{'kernel':<30} {'numba':>12} {'numpy':>12} {'speedup':>12}")
    for label, make in cases:
        timed = {}
        for backend in backends:
            make(backend)  # warm: compile or load from cache
            timed[backend] = best_of(lambda: make(backend))
        if "numba" in timed:
            ratio = timed["numpy"] / timed["numba"]
            print(
                f"{label:<30} {timed['numba']:>10.4f} s {timed['numpy']:>10.4f} s"
                f" {ratio:>11.1f}x"
            )
        else:
            print(f"{label:<30} {'-':>12} {timed['numpy']:>10.4f} s {'-':>12}")


if __name__ == "__main__":
    main()

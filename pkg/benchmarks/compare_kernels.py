"""Compare the pure-Python and Cython kernels on the same workloads.

Run from the repository root:

    python3 benchmarks/compare_kernels.py [--length 2000000]

Reports wall time for the machine runner on three machines and for the LZ78
dictionary, using the same seeded input for both implementations.
"""

import argparse
import time

from pdlz import _pyrun, kernels, random_word, zoo

try:
    from pdlz import _speedups
except ImportError:
    _speedups = None


def time_run(fn, *args, repeat=3):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--length", type=int, default=2_000_000)
    args = ap.parse_args()

    word = random_word(99, args.length)
    zeros = "0" * args.length

    print("kernel selected at import: {}".format(kernels.IMPL))
    print("input length: {}\n".format(args.length))
    header = "{:<24} {:>10} {:>10} {:>8}".format("workload", "pure s",
                                                 "cython s", "speedup")
    print(header)
    print("-" * len(header))

    jobs = [
        ("run stack-walk", zoo.get_builtin("stack-walk"), word, False),
        ("run zone-4-4-16", zoo.get_builtin("zone-4-4-16"), word, False),
        ("run squeeze2 (zeros)", zoo.get_builtin("squeeze2"), zeros, True),
    ]
    for label, spec, text, endmark in jobs:
        cm = kernels.compile_machine(spec)
        ids = cm.to_ids(text)
        t_pure = time_run(_pyrun.run_machine, cm, ids, endmark)
        if _speedups is not None:
            t_cy = time_run(_speedups.run_machine, cm, ids, endmark)
            print("{:<24} {:>10.3f} {:>10.3f} {:>7.1f}x".format(
                label, t_pure, t_cy, t_pure / t_cy))
        else:
            print("{:<24} {:>10.3f} {:>10} {:>8}".format(
                label, t_pure, "n/a", "n/a"))

    ids = [int(c) for c in word]

    def lz_pure():
        s = _pyrun.LzStream(2)
        s.feed(ids)
        return s.bits_now()

    t_pure = time_run(lz_pure)
    if _speedups is not None:
        def lz_cy():
            s = _speedups.LzStream(2)
            s.feed(ids)
            return s.bits_now()

        t_cy = time_run(lz_cy)
        assert lz_pure() == lz_cy()
        print("{:<24} {:>10.3f} {:>10.3f} {:>7.1f}x".format(
            "lz78 parse", t_pure, t_cy, t_pure / t_cy))
    else:
        print("{:<24} {:>10.3f} {:>10} {:>8}".format("lz78 parse", t_pure,
                                                     "n/a", "n/a"))


if __name__ == "__main__":
    main()

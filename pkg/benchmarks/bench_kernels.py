"""Compiled versus pure-Python reduction kernels.

    python3 benchmarks/bench_kernels.py [--words 20000] [--length 12] [--seed 0]

Each kernel reduces the same batch of random raw words; outputs are compared
before timings are reported.
"""

import argparse
import gc
import random
import sys
import time
from pathlib import Path

from freecons import _kernels_py
from freecons.config import load

try:
    from freecons import _kernels
except ImportError:
    _kernels = None

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def amalgam_batch(P, rng, count, length):
    letters = [(s, x) for s, F in enumerate(P.factors) for x in range(F.n) if x != F.identity]
    return [[rng.choice(letters) for _ in range(rng.randint(1, length))] for _ in range(count)]


def bs_batch(rng, count, length):
    out = []
    for _ in range(count):
        word = []
        for _ in range(rng.randint(1, length)):
            word.append((0, rng.randint(-9, 9)) if rng.random() < 0.5 else (1, rng.choice((1, -1))))
        out.append(word)
    return out


def run(kernel, batch, start):
    gc.collect()
    gc.disable()
    try:
        t0 = time.perf_counter()
        out = [kernel.left_mul(w, start, ()) for w in batch]
        return time.perf_counter() - t0, out
    finally:
        gc.enable()


def twin(kernel, module):
    cls, args = kernel.__reduce__()
    return getattr(module, cls.__name__)(*args)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=20000)
    ap.add_argument("--length", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(args.seed)
    cases = []
    for name in ("z2_z3", "s3_c2_s3"):
        P = load(CONFIGS / f"{name}.yaml", use_kernel=True).group
        cases.append((name, P._kernel, amalgam_batch(P, rng, args.words, args.length), 0))
    B = load(CONFIGS / "bs23.yaml", use_kernel=True).group
    cases.append(("bs23", B._kernel, bs_batch(rng, args.words, args.length), 0))

    print(f"{'case':<10} {'cython ms':>10} {'python ms':>10} {'speedup':>8}")
    for name, kernel, batch, start in cases:
        fast, slow = twin(kernel, _kernels), twin(kernel, _kernels_py)
        tf, out_f = run(fast, batch, start)
        ts, out_s = run(slow, batch, start)
        if out_f != out_s:
            print(f"{name}: kernels disagree", file=sys.stderr)
            return 1
        print(f"{name:<10} {tf * 1e3:>10.1f} {ts * 1e3:>10.1f} {ts / tf:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Compare the compiled and pure-Python word kernels.

    python3 benchmarks/bench_kernels.py [--words 300] [--length 60] [--repeat 5]

Each row times one kernel over the same batch of random reduced words and
reports the best of ``--repeat`` runs.
"""

from __future__ import annotations

import argparse
import random
import timeit

from concordance import _kernels
from concordance.words import commutator, conjugate, generator


def _batch(rng: random.Random, count: int, length: int, rank: int):
    py = _kernels.python_backend
    out = []
    for _ in range(count):
        raw = [(rng.randint(1, rank), rng.choice((-1, 1))) for _ in range(length)]
        out.append(py.reduce_syllables(raw))
    return out


def _deep_commutator(rank: int):
    x = [generator(i, rank) for i in range(1, rank + 1)]
    c = commutator(commutator(x[0], x[1]), commutator(x[2], x[3]))
    return commutator(c, conjugate(c, x[3])).syllables


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=300)
    ap.add_argument("--length", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--rank", type=int, default=4)
    args = ap.parse_args(argv)

    backends = {"python": _kernels.python_backend}
    if _kernels.compiled_backend is not None:
        backends["cython"] = _kernels.compiled_backend
    else:
        print("compiled extension not built; timing the Python backend only")

    rng = random.Random(0)
    words = _batch(rng, args.words, args.length, args.rank)
    pairs = list(zip(words, reversed(words)))
    deep = _deep_commutator(args.rank)
    rank = args.rank

    cases = {
        "multiply": lambda k: [k.multiply(a, b) for a, b in pairs],
        "invert": lambda k: [k.invert(a) for a in words],
        "fox_terms": lambda k: [k.fox_terms(a, i) for a in words for i in range(1, rank + 1)],
        "fox_abelian": lambda k: [k.fox_abelian(a, i, rank) for a in words for i in range(1, rank + 1)],
        "fox_terms(deep)": lambda k: [k.fox_terms(deep, i) for i in range(1, rank + 1)],
    }

    print(f"{'kernel':<18}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, fn in cases.items():
        times = {}
        for name, mod in backends.items():
            times[name] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        row = f"{label:<18}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in backends)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()

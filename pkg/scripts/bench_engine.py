#!/usr/bin/env python3
"""Timing of the normal-ordering engine and the two gradient paths
against total degree."""

import random
import time

from qmink import algebra as al
from qmink import derivatives as dv


def random_word(rng, degree):
    return al.from_surface_word(
        tuple(rng.choice(al.SURFACE_GENS) for _ in range(degree)))


def main():
    rng = random.Random(99)
    print(f"{'deg':>4} {'mul (ms)':>10} {'oracle (ms)':>12} "
          f"{'closed (ms)':>12}")
    for degree in range(2, 9):
        words = [random_word(rng, degree) for _ in range(6)]
        t0 = time.time()
        for w in words:
            _ = w * words[0]
        t_mul = (time.time() - t0) / len(words) * 1e3

        t0 = time.time()
        for w in words:
            dv.grad_oracle(w)
        t_oracle = (time.time() - t0) / len(words) * 1e3

        t0 = time.time()
        for w in words:
            dv.grad_closed(w)
        t_closed = (time.time() - t0) / len(words) * 1e3
        print(f"{degree:>4} {t_mul:>10.2f} {t_oracle:>12.2f} "
              f"{t_closed:>12.2f}")


if __name__ == "__main__":
    main()

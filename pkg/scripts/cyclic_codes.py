"""Cyclic prime-construction codes: size, measured minimum distance, perfection.

    python scripts/cyclic_codes.py --primes 5 7
"""

import argparse
from math import factorial

from permkit.codes import cyclic_prime_code, distance_distribution, min_distance, verify_perfect
from permkit.metric import ball_size


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7])
    args = ap.parse_args()
    for p in args.primes:
        code = cyclic_prime_code(p)
        md = min_distance(code)
        radius = (md - 1) // 2
        rep = verify_perfect(code, radius)
        print(
            f"n={p}: size {len(code)}, min cyclic distance {md}, "
            f"radius-{radius} balls of size {ball_size(p, radius, 'cyclic')} cover "
            f"{rep.space_size - rep.uncovered}/{factorial(p)} ({rep.verdict})"
        )
        print(f"   distance distribution: {distance_distribution(code)}")


if __name__ == "__main__":
    main()

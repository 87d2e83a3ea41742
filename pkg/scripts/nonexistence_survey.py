"""Which method settles "no perfect 1-code in S_n (Kendall)" for each n?

Runs divisibility, the basic system, pattern systems for several r, and the
exact-cover search, each under a budget, and prints one row per attempt.

    python scripts/nonexistence_survey.py --max-n 8 --budget 120
"""

import argparse
import time
from math import factorial, perm

from permkit import certificate as cert
from permkit.codes import exact_cover_perfect_search
from permkit.metric import CapacityError
from permkit.nonexistence import MAX_CLASSES, basic_nonexistence_check, pattern_nonexistence_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--budget", type=float, default=60.0, help="exact-cover seconds per n")
    ap.add_argument("--max-classes", type=int, default=400)
    args = ap.parse_args()

    print(f"{'n':>3} {'method':<18} {'r':>2} {'verdict':<18} {'detail'}")
    for n in range(args.min_n, args.max_n + 1):
        settled = False
        t0 = time.perf_counter()
        c = basic_nonexistence_check(n)
        print(f"{n:>3} {'basic':<18} {1:>2} {c.verdict:<18} x_i={c.evidence['uniform_value']}")
        settled |= c.verdict == cert.NONEXISTENCE
        for r in range(2, n):
            if settled or perm(n, r) > min(args.max_classes, MAX_CLASSES):
                break
            c = pattern_nonexistence_check(n, r)
            print(f"{n:>3} {'pattern':<18} {r:>2} {c.verdict:<18} kernel={c.kernel_dim} {c.evidence.get('reason')}")
            settled |= c.verdict == cert.NONEXISTENCE
        if not settled:
            try:
                c = exact_cover_perfect_search(n, 1, "kendall", time_budget=args.budget)
                print(f"{n:>3} {'exact_cover':<18} {'':>2} {c.verdict:<18} nodes={c.stats.get('nodes')}")
            except CapacityError as exc:
                print(f"{n:>3} {'exact_cover':<18} {'':>2} {'skipped':<18} {exc}")
        print(f"    ({time.perf_counter() - t0:.1f}s, |S_n|={factorial(n)})")


if __name__ == "__main__":
    main()

"""Optimal anticode sizes versus balls and the union construction, small n.

    python scripts/anticode_survey.py --max-n 5
"""

import argparse
from math import comb

from permkit.anticode import optimal_anticode_search, union_anticode
from permkit.metric import kendall_ball_size


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--budget", type=float, default=120.0)
    args = ap.parse_args()
    print(f"{'n':>2} {'D':>3} {'optimum':>8} {'ball':>6} {'union':>6} {'exact':>6}")
    for n in range(3, args.max_n + 1):
        for D in range(1, comb(n, 2)):
            r = optimal_anticode_search(n, D, time_budget=args.budget)
            b = kendall_ball_size(n, D // 2)
            u = len(union_anticode(n, D // 2)) if D % 2 else "-"
            print(f"{n:>2} {D:>3} {r.max_size:>8} {b:>6} {u:>6} {str(r.exhausted):>6}")


if __name__ == "__main__":
    main()

"""Exit criteria, one test per criterion, each with its time limit.

Run directly (``python tests/test_acceptance.py``) for a PASS/FAIL line per
criterion, or through pytest, where the summary lists the same lines.
"""

import json
import os
import sys
import time
from fractions import Fraction
from itertools import product
from math import comb, factorial

sys.path.insert(0, os.path.dirname(__file__))

from oracles import bfs_distance, brute_mahonian, sym_group  # noqa: E402
from permkit import certificate as cert  # noqa: E402
from permkit.anticode import (  # noqa: E402
    code_anticode_bound,
    construct_diameter3_anticode,
    diameter,
    distance_regularity_probe,
    half_space_anticode,
    optimal_anticode_search,
    verify_diameter_perfect,
)
from permkit.codes import (  # noqa: E402
    CodeBook,
    exact_cover_perfect_search,
    min_distance,
    paper_s5_cyclic_code,
    reverse_pair_code,
    verify_perfect,
)
from permkit.metric import cyclic_kendall_distance, distance_table, mahonian_row  # noqa: E402
from permkit.nonexistence import (  # noqa: E402
    basic_nonexistence_check,
    build_basic_system,
    build_pattern_system,
    pattern_nonexistence_check,
    recheck,
    verify_regularity,
)
from permkit.perm import compose, identity  # noqa: E402


class within:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.3f}s, limit {self.seconds}s"


def test_criterion_01_cyclic_distance_example():
    distance_table(4, "cyclic")
    with within(1e-3):
        d = cyclic_kendall_distance((1, 2, 3, 4), (4, 3, 2, 1))
    assert d == 2


def test_criterion_02_paper_s5_code_is_perfect():
    with within(0.1):
        code = paper_s5_cyclic_code()
        md = min_distance(code)
        rep = verify_perfect(code, 1)
    assert len(code) == 20 and md == 3
    assert rep.perfect and rep.ball_size == 6
    assert rep.code_size * rep.ball_size == 120 == factorial(5)
    assert rep.defect_count == 0


def test_criterion_03_basic_nonexistence_certificates():
    with within(1.0):
        for n in (4, 5, 7, 11):
            s = build_basic_system(n)
            expected = [[0] * n for _ in range(n)]
            for i in range(n):
                expected[i][i] = n - 1 if i in (0, n - 1) else n - 2
                if i:
                    expected[i][i - 1] = expected[i - 1][i] = 1
            assert s.matrix == expected
            c = basic_nonexistence_check(n)
            value = Fraction(factorial(n - 1), n)
            assert value.denominator != 1
            assert c.kernel_dim == 0 and c.solution == [str(value)] * n
            assert c.verdict == cert.NONEXISTENCE
            assert c.method == "unique_rational_solution_non_integral"


def test_criterion_04_exact_cover_confirmation():
    with within(60):
        assert exact_cover_perfect_search(4, 1, "kendall").verdict == cert.NONEXISTENCE
        assert exact_cover_perfect_search(5, 1, "kendall").verdict == cert.NONEXISTENCE
        c5 = exact_cover_perfect_search(5, 1, "cyclic")
        c3 = exact_cover_perfect_search(3, 1, "kendall")
    assert c5.verdict == cert.EXISTENCE and c5.evidence["code_size"] == 20
    assert c3.verdict == cert.EXISTENCE and c3.evidence["code"] == ["1 2 3", "3 2 1"]
    for c, metric in ((c5, "cyclic"), (c3, "kendall")):
        words = [tuple(map(int, w.split())) for w in c.evidence["code"]]
        assert verify_perfect(CodeBook.of(words, metric), 1).perfect


def test_criterion_05_mahonian():
    with within(5):
        assert mahonian_row(4) == (1, 3, 5, 6, 5, 3, 1) and sum(mahonian_row(4)) == 24
        for n in range(1, 7):
            assert list(mahonian_row(n)) == brute_mahonian(n)


def test_criterion_06_anticode_optima():
    with within(120):
        r42 = optimal_anticode_search(4, 2, enumerate_optima=True)
        r52 = optimal_anticode_search(5, 2, enumerate_optima=True)
        r44 = optimal_anticode_search(4, 4)
    witness = {(1, 2, 3, 4), (2, 1, 3, 4), (1, 2, 4, 3), (2, 1, 4, 3)}
    assert r42.exhausted and r42.max_size == 4
    assert any(set(a.members) == witness for a in r42.non_ball_optima)
    assert diameter(witness) == 2
    assert r52.exhausted and r52.max_size == 5 and r52.all_optima_are_balls is True
    assert r44.exhausted and r44.max_size == 9


def test_criterion_07_diameter3_anticode_and_bound():
    with within(10):
        for n in range(4, 9):
            a = construct_diameter3_anticode(n)
            assert len(a) == 2 * (n - 1) and diameter(a.members) == 3
            assert code_anticode_bound(n, 4).bound_value == factorial(n) // (2 * (n - 1))
    assert code_anticode_bound(5, 4).bound_value == 15


def test_criterion_08_distance_regularity_probe():
    with within(1):
        for n in (5, 6):
            r = distance_regularity_probe(n)
            assert r.distance_sigma_pi == r.distance_sigma_rho == 2
            assert (len(r.midpoints_pi), len(r.midpoints_rho)) == (1, 2)


def test_criterion_09_isometry_and_metric_axioms_s4():
    with within(30):
        group = sym_group(4)
        for metric in ("kendall", "cyclic"):
            t = distance_table(4, metric)
            d = {(a, b): t.distance(a, b) for a, b in product(group, repeat=2)}
            for (a, b), v in d.items():
                assert v == bfs_distance(a, b, metric == "cyclic")
                assert v == d[b, a] and (v == 0) == (a == b)
            for a, b, c in product(group, repeat=3):
                assert d[a, c] <= d[a, b] + d[b, c]
                assert d[compose(a, c), compose(b, c)] == d[a, b]


def test_criterion_10_pattern_system_framework():
    with within(60):
        for n in range(3, 11):
            s = build_pattern_system(n, 1)
            assert s.matrix == build_basic_system(n).matrix and s.rhs == build_basic_system(n).rhs
            assert s.column_sums() == [n] * n
        for n in (3, 4, 5):
            for r in (1, 2):
                s = build_pattern_system(n, r)  # exhaustive invariance check for n <= 5
                assert s.column_sums() == [n] * s.size
        for n, r in ((6, 2), (7, 2)):
            assert build_pattern_system(n, r).column_sums() == [n] * (n * (n - 1))


def test_criterion_11_substituted_nonexistence_and_regularity():
    with within(600):
        c = pattern_nonexistence_check(6, 2)
        assert c.verdict in (cert.NONEXISTENCE, cert.INCONCLUSIVE)
        replay = recheck(cert.Certificate.from_dict(json.loads(c.to_json())))
        assert replay.verdict == c.verdict and replay.matrix_hash == c.matrix_hash
        for n in (4, 5):
            full = CodeBook.of(sym_group(n))
            for r in (1, 2):
                rep = verify_regularity(full, r)
                assert rep.uniform and set(rep.counts.values()) == {factorial(n - r)}
        code = paper_s5_cyclic_code()
        rep = verify_regularity(code, 1)
        assert rep.uniform and set(rep.counts.values()) == {4}
        for (pos, val), k in rep.counts.items():
            assert k == sum(1 for w in code.words if w[pos[0] - 1] == val[0])


def test_criterion_12_reverse_pair_diameter_perfect():
    with within(30):
        for n in (4, 5):
            h = half_space_anticode(n)
            assert len(h) == factorial(n) // 2
            assert diameter(h.members) == comb(n, 2) - 1
            code = reverse_pair_code(identity(n))
            assert min_distance(code) == comb(n, 2)
            assert len(code) * len(h) == factorial(n)
            assert verify_diameter_perfect(code, h)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        t0 = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except AssertionError as exc:
            status, failed = f"FAIL ({exc})", failed + 1
        print(f"{status:<6} {name}  [{time.perf_counter() - t0:.2f}s]")
    sys.exit(1 if failed else 0)

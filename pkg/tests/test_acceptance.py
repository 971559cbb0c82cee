"""Acceptance criteria, one test per criterion.

Each test prints a single ``[criterion N] PASS|FAIL ...`` line.  The two full
sweeps (p in {2,3,5} and p = 7, n <= 10) are shared across criteria.
Run with ``pytest tests/test_acceptance.py -v``; add ``--n11`` for the n = 11 sweep.
"""

from fractions import Fraction
from math import factorial

import pytest

from symdim.bounds import (
    C,
    ExactBound,
    double_factorial,
    lineq_margin,
    mullineux_k,
    theorem_A_bound,
    theorem_B_bound,
)
from symdim.crystal import e_tilde, epsilon, is_js
from symdim.harness import VerifyConfig, report_to_csv, report_to_json, run_verify
from symdim.mullineux import mullineux
from symdim.partitions import Partition, PrimeChar, attach, regular_partitions, regular_partitions_upto
from symdim.specht import dim_irreducible, minimal_a


@pytest.fixture(scope="session")
def sweep():
    return run_verify(VerifyConfig())


@pytest.fixture(scope="session")
def sweep7():
    return run_verify(VerifyConfig(primes=(7,)))


@pytest.fixture
def verdict(capsys):
    def emit(criterion, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {criterion}] {'PASS' if ok else 'FAIL'}: {detail}")

    return emit


def test_criterion_01_full_sweep(sweep, verdict):
    s = sweep["summary"]
    ok = s["bound_violations"] == 0 and s["records"] + s["out_of_range"] == s["expected_total"]
    verdict(1, ok, f"{s['records']} records, {s['bound_checks']} bound checks, {s['bound_violations']} violations, {s['out_of_range']} out of range")
    assert s["records"] + s["out_of_range"] == s["expected_total"]
    assert s["bound_violations"] == 0, [f for f in sweep["failures"] if f["kind"] == "bound"]


@pytest.mark.n11
def test_criterion_01_full_sweep_n11(verdict):
    s = run_verify(VerifyConfig(max_n=11))["summary"]
    verdict("1 (n=11)", s["bound_violations"] == 0, f"{s['records']} records, {s['bound_violations']} violations")
    assert s["bound_violations"] == 0


def test_criterion_02_dimension_balance(sweep, verdict):
    s = sweep["summary"]
    bad = [f for f in sweep["failures"] if f["kind"] == "balance"]
    example = f"; first: p={bad[0]['p']} lambda=({bad[0]['lambda']}) sum={bad[0]['sum']} dim={bad[0]['dim']}" if bad else ""
    ok = not bad and s["balance_skipped"] == 0
    verdict(2, ok, f"{len(bad)} of {s['records']} records violate sum(c * dim) == dim{example}")
    assert s["balance_skipped"] == 0
    assert not bad, f"{len(bad)} balance violations, e.g. {bad[:3]}"


def test_criterion_02_multiplicities_by_traces(sweep, verdict):
    # normal-node multiplicities certified mod p by decomposing restricted traces
    s = sweep["summary"]
    ok = s["multiplicity_failures"] == 0 and s["multiplicity_skipped"] == 0
    verdict("2 (trace decomposition)", ok, f"{s['records']} records, {s['multiplicity_failures']} multiplicity failures")
    assert ok, [f for f in sweep["failures"] if f["kind"] == "multiplicity"]


def test_criterion_03_small_cases_of_the_large_n_bound(verdict):
    expected = {9: Fraction(35, 8), 10: Fraction(16)}
    rows = []
    for n, value in expected.items():
        assert C(4, 2, n) == value
        for mu in regular_partitions(4, 2):
            lam = attach(n, mu)
            bound = theorem_A_bound(lam, 2)
            dim = dim_irreducible(lam, 2)
            rows.append((str(lam), dim, bound, bound is not None and dim >= bound))
    ok = all(r[3] for r in rows)
    verdict(3, ok, ", ".join(f"({lam}) dim {d} >= {b}" for lam, d, b, _ in rows))
    assert [r[0] for r in rows] == ["5,3,1", "5,4", "6,3,1", "6,4"]
    assert ok


def test_criterion_04_basic_spin(verdict):
    dims = {m: dim_irreducible((m + 1, m), 2) for m in range(2, 6)}
    identity = all(Fraction(double_factorial(2 * m), factorial(m)) == 2**m for m in range(0, 21))
    ok = identity and all(d == 2**m for m, d in dims.items())
    verdict(4, ok, f"dims {dims}; double-factorial identity for m <= 20: {identity}")
    assert identity
    assert dims == {m: 2**m for m in range(2, 6)}


def test_criterion_05_hook_at_multiples(verdict):
    cases, notes = [], []
    for p in (3, 5):
        for n in range(p, 11, p):
            lam = Partition((n - 1, 1))
            dim = dim_irreducible(lam, p)
            if mullineux(lam, p).first == n:
                # (p-1,1) labels the sign module when p = 3, outside the claim's hypotheses
                notes.append(f"({lam}) p={p} is one-dimensional, excluded")
                cases.append((p, n, dim == n - 2))
                continue
            a = minimal_a(lam, p)
            gap = n - mullineux_k(lam, p)
            bound = theorem_B_bound(n, mullineux_k(lam, p), a)
            cases.append((p, n, dim == n - 2 and a == 2 and gap == 1 and bound == ExactBound.three_pow(2) and bound.holds(dim)))
    ok = all(c[2] for c in cases)
    verdict(5, ok, f"cases {[(p, n) for p, n, _ in cases]}; " + "; ".join(notes))
    assert ok, cases


def test_criterion_06_js(sweep, verdict):
    js = is_js((8, 5), 3)
    bad = [f for f in sweep["failures"] if f["kind"] == "js"]
    verdict(6, not js and not bad, f"is_js((8,5), 3) = {js}; {len(bad)} JS characterization failures")
    assert not js
    assert not bad


def test_criterion_07_identity_suites(verdict):
    failures = []
    for p in (2, 3, 5, 7):
        delta = PrimeChar(p).delta
        for m in range(1, 9):
            for n in range(-10, 61):
                if C(m, p, n) != C(m, p, n - p) + p * C(m - 1, p, n - p):
                    failures.append(("step identity", p, m, n))
            for n in range(p * (delta + m - 1), 200):
                if C(m, p, n) > C(m, p, n - 1) + C(m - 1, p, n - 1):
                    failures.append(("unit step", p, m, n))
            for n in range(p * (delta + m - 2), p * (delta + m - 1) + 1):
                if C(m, p, n) > 0:
                    failures.append(("vacuity window", p, m, n))
    for q in (1, Fraction(3, 2), 2, 3, 10):
        for k in range(7):
            for a in (k, k + Fraction(1, 2), k + 1, k + 5):
                if lineq_margin(q, k, a) < 0:
                    failures.append(("lineq", q, k, a))
    for m in range(1, 21):
        if 2**m < Fraction(double_factorial(2 * m - 1), factorial(m)):
            failures.append(("spin inequality", m))
    for m in range(2, 21):
        if 2 * Fraction(double_factorial(2 * m - 3), factorial(m - 1)) <= Fraction(double_factorial(2 * m - 1), factorial(m)):
            failures.append(("three-row inequality", m))
    verdict(7, not failures, f"{len(failures)} violations")
    assert not failures


def test_criterion_08_mullineux(sweep, sweep7, verdict):
    combinatorial = 0
    for p in (2, 3, 5, 7):
        for lam in regular_partitions_upto(14, p):
            image = mullineux(lam, p)
            ok = image.n == lam.n and mullineux(image, p) == lam and (p != 2 or image == lam)
            for i in range(p):
                ok = ok and epsilon(lam, i, p) == epsilon(image, (-i) % p, p)
                if epsilon(lam, i, p):
                    ok = ok and mullineux(e_tilde(lam, i, p), p) == e_tilde(image, (-i) % p, p)
            combinatorial += not ok
    checked = [r for rep in (sweep, sweep7) for r in rep["records"]]
    twisted_bad = [r for r in checked if r["mullineux_check"] == "FAIL"]
    skipped = [r for r in checked if r["mullineux_check"] == "skipped"]
    ok = combinatorial == 0 and not twisted_bad
    verdict(
        8,
        ok,
        f"{combinatorial} combinatorial failures up to size 14; {len(checked) - len(skipped)} oracle twists checked, "
        f"{len(twisted_bad)} failures, {len(skipped)} skipped (partner out of range)",
    )
    assert combinatorial == 0
    assert not twisted_bad


def test_criterion_09_depth_consistency(sweep, verdict):
    s = sweep["summary"]
    verdict(9, s["a_violations"] == 0, f"{s['a_violations']} violations, {len(s['a_gaps'])} strict gaps reported in the summary")
    assert s["a_violations"] == 0
    assert all(g["a_oracle"] < g["a_crystal"] for g in s["a_gaps"])


def test_criterion_10_determinism(verdict):
    cfg = VerifyConfig(max_n=7)
    first, second = report_to_json(run_verify(cfg)), report_to_json(run_verify(cfg))
    parallel = report_to_json(run_verify(VerifyConfig(max_n=7, parallelism=2)))
    csv_same = report_to_csv(run_verify(cfg)) == report_to_csv(run_verify(VerifyConfig(max_n=7, parallelism=2)))
    ok = first == second == parallel and csv_same
    verdict(10, ok, f"serial runs identical: {first == second}; parallel identical: {first == parallel}; csv identical: {csv_same}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))

"""Acceptance criteria 1 to 11, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` or directly with
``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest
from sympy import factorint

sys.path.insert(0, str(Path(__file__).parent))

from conftest import make  # noqa: E402
from test_predicates import _conic_brute  # noqa: E402

from ellipdiv.cli import main  # noqa: E402
from ellipdiv.curve import mul, parse_curve, parse_point  # noqa: E402
from ellipdiv.dirichlet import enumerate_characters, eval_char, parse_character  # noqa: E402
from ellipdiv.eds import beta, beta_mod, gcd_check, verzobio_identity_check  # noqa: E402
from ellipdiv.experiments import (ExperimentConfig, character_census,  # noqa: E402
                                  chebotarev_density, count_predicate)
from ellipdiv.padic import vp_point  # noqa: E402
from ellipdiv.periodicity import minimal_period_mod, simple_bound  # noqa: E402
from ellipdiv.predicates import (conic_solvable, conic_fiber_check,  # noqa: E402
                                 find_star2_witness, hilbert_symbol)
from ellipdiv.real_signs import (equidistribution_stats, fit_sign_data,  # noqa: E402
                                 verify_sign_law)
from ellipdiv.numtheory import primes_upto  # noqa: E402

SEQ37 = [0, 1, 1, -1, 1, 2, -1, -3, -5, 7, -4, -23, 29, 59, 129, -314, -65, 1529, -3689]
SEQSPLIT = [0, 1, 4, -65, -504, 242369, -58888180, -66048490369, 60955459632144]


def _emit(line):
    print(line, flush=True)


@contextmanager
def criterion(number, title, capsys=None):
    """Print PASS or FAIL for one criterion; failures still propagate."""
    ctx = capsys.disabled() if capsys is not None else _null()
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        with ctx:
            _emit(f"\nCRITERION {number:2d} FAIL  {title}: {exc}")
        raise
    with ctx:
        _emit(f"\nCRITERION {number:2d} PASS  {title} ({time.perf_counter() - start:.1f}s)")


@contextmanager
def _null():
    yield


def _elapsed_below(start, limit):
    took = time.perf_counter() - start
    assert took < limit, f"took {took:.1f}s, limit {limit}s"


# -- the criteria ------------------------------------------------------------------------

def check_1():
    start = time.perf_counter()
    s37, ssplit = make("37a"), make("split")
    assert s37.values(18) == SEQ37
    assert ssplit.values(8) == SEQSPLIT
    assert beta(ssplit, 8) == 60955459632144
    _elapsed_below(start, 1)


def check_2():
    start = time.perf_counter()
    s37, ssplit = make("37a"), make("split")
    assert minimal_period_mod(s37, 4).minimal_period == 10
    assert minimal_period_mod(ssplit, 4).minimal_period == 4
    assert minimal_period_mod(s37, 7).minimal_period == 54
    bound = simple_bound(s37, 2, 2)
    assert bound == 2**3 * 5 and bound % 10 == 0
    _elapsed_below(start, 1)


def check_3():
    c, P = parse_curve("1,0,0,4,1"), parse_point("15/4,-83/8")
    assert vp_point(c, P, 2) == 1
    assert vp_point(c, mul(c, 2, P), 2) == 4


def check_4():
    s37, ssplit = make("37a"), make("split")
    k4 = parse_character("kronecker:-4")
    w = find_star2_witness(s37, k4)
    assert (w.alpha, w.branch) == (7, 1)
    chi = next(c for c in enumerate_characters(7) if c.order == 3 and not eval_char(c, 2).is_one)
    assert find_star2_witness(s37, chi).alpha == 5
    assert find_star2_witness(ssplit, k4, alpha_max=1000) is None


def check_5():
    start = time.perf_counter()
    ssplit = make("split")
    failing = [n for n in range(-20, 21, 2) if n and not conic_fiber_check(ssplit, n)]
    assert failing == [], f"fibres without a point: {failing}"
    _elapsed_below(start, 60)


def check_6():
    names = ["37a", "split", "wild", "389a", "53a", "43a", "5077a", "mordell", "m2"]
    seqs = {n: make(n) for n in names}
    for name in names[:5]:
        bad = [(m, n) for m in range(1, 61) for n in range(1, 61)
               if not gcd_check(seqs[name], m, n)]
        assert bad == [], f"gcd law fails on {name} at {bad[:3]}"

    triples = 0
    for name in ("37a", "split", "wild", "389a"):
        for n in range(0, 9):
            for m in range(0, 9):
                for r in range(0, 9):
                    assert verzobio_identity_check(seqs[name], n, m, r), (name, n, m, r)
                    triples += 1
    assert triples >= 200

    rng = random.Random(1)
    for _ in range(1000):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        prod = 1
        for v in ["real"] + sorted(factorint(2 * abs(a * b))):
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1, (a, b)

    rng = random.Random(2)
    solvable_seen = 0
    for _ in range(150):
        a, b, c = (rng.choice([-1, 1]) * rng.randint(1, 30) for _ in range(3))
        if _conic_brute(a, b, c):
            solvable_seen += 1
            assert conic_solvable(a, b, c), (a, b, c)
    assert solvable_seen > 0

    for name in ("37a", "split"):
        seq = seqs[name]
        assert verify_sign_law(seq, fit_sign_data(seq), 500) is None, name

    for name in ("37a", "split", "m2", "wild"):
        seq = seqs[name]
        exact = seq.values(200)
        for N in (2, 3, 4, 7, 12, 37, 101):
            assert all(beta_mod(seq, n, N) == exact[n] % N for n in range(201)), (name, N)


def check_7():
    start = time.perf_counter()
    rep = chebotarev_density(ExperimentConfig().override({"X": "20000", "ells": "3"}))
    row = dict(zip(rep.columns, rep.rows[0]))
    prop = row["card_proportion"]
    _elapsed_below(start, 300)
    assert 0.325 <= prop <= 0.425, f"proportion {prop:.4f} outside [0.325, 0.425]"


def check_8():
    start = time.perf_counter()
    sd = fit_sign_data(make("37a"))
    count, _ = equidistribution_stats(sd, 10**5, 1, 1, 0, Fraction(1, 2))
    prop = count / len(primes_upto(10**5))
    assert 0.45 <= prop <= 0.55, f"proportion {prop:.4f}"
    _elapsed_below(start, 60)


def check_9():
    rep = count_predicate(ExperimentConfig().override({"B_list": "25,50,100"}))
    rows = [dict(zip(rep.columns, r)) for r in rep.rows]
    for prev, cur in zip(rows, rows[1:]):
        slack = 1 / cur["range_size"]
        assert cur["ratio"] <= prev["ratio"] + slack, (prev, cur)
    for r in rows:
        assert r["unknown"] / r["range_size"] < 0.2, r


def check_10():
    rep = character_census(ExperimentConfig().override({"D": "50", "alpha_max": "2000"}))
    prop = rep.rows[-1][rep.columns.index("cumulative_proportion")]
    assert prop >= 0.8, f"cumulative proportion {prop}"


def check_11(tmp_dir: Path):
    outs = []
    for i in (1, 2):
        path = tmp_dir / f"run{i}.csv"
        code = main(["reproduce", "--seed", "7", "--csv", str(path)])
        assert code == 0, f"reproduce exited {code}"
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


CRITERIA = {
    1: "EDS exactness",
    2: "periodicity",
    3: "local valuations",
    4: "witness search",
    5: "fibre check for even n",
    6: "property suites",
    7: "Chebotarev density for l = 3",
    8: "equidistribution",
    9: "density decay",
    10: "census trend",
    11: "determinism",
}


# -- pytest entry points -------------------------------------------------------------------

def test_criterion_01(capsys):
    with criterion(1, CRITERIA[1], capsys):
        check_1()


def test_criterion_02(capsys):
    with criterion(2, CRITERIA[2], capsys):
        check_2()


def test_criterion_03(capsys):
    with criterion(3, CRITERIA[3], capsys):
        check_3()


def test_criterion_04(capsys):
    with criterion(4, CRITERIA[4], capsys):
        check_4()


def test_criterion_05(capsys):
    with criterion(5, CRITERIA[5], capsys):
        check_5()


def test_criterion_06(capsys):
    with criterion(6, CRITERIA[6], capsys):
        check_6()


@pytest.mark.xfail(strict=True, reason=(
    "the share of primes with 3 | #E(F_q) tends to 7/16, the share of GL2(F_3) "
    "with eigenvalue 1; 3/8 bounds the rarer event 3 | ord(P mod q)"))
def test_criterion_07(capsys):
    with criterion(7, CRITERIA[7], capsys):
        check_7()


def test_criterion_08(capsys):
    with criterion(8, CRITERIA[8], capsys):
        check_8()


def test_criterion_09(capsys):
    with criterion(9, CRITERIA[9], capsys):
        check_9()


def test_criterion_10(capsys):
    with criterion(10, CRITERIA[10], capsys):
        check_10()


def test_criterion_11(capsys, tmp_path):
    with criterion(11, CRITERIA[11], capsys):
        check_11(tmp_path)


def test_chebotarev_measurements_are_sound():
    """What criterion 7 measures, compared with the right limits."""
    rep = chebotarev_density(ExperimentConfig().override({"X": "20000", "ells": "3,5"}))
    for row in rep.rows:
        r = dict(zip(rep.columns, row))
        assert abs(r["card_proportion"] - r["gl2_reference"]) < 0.05, r
        assert r["ord_proportion"] <= r["lemma_reference"] + 0.05, r


if __name__ == "__main__":
    import tempfile
    failed = 0
    for number, title in CRITERIA.items():
        fn = globals()[f"check_{number}"]
        try:
            with criterion(number, title):
                if number == 11:
                    with tempfile.TemporaryDirectory() as d:
                        fn(Path(d))
                else:
                    fn()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)

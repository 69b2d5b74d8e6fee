"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings. Numeric tolerances are pinned here exactly as stated;
derived expected values (minimal primes, gap formulas) are recomputed by
independent in-test oracles before being asserted.
"""

import json
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import entroscope as E
from entroscope.catalog import CANONICAL_ORDER, catalog
from entroscope.cli import main as cli_main
from entroscope.exprlang import parse, print_canonical
from entroscope.limits import box_for_target, verify_certificate
from entroscope.quadruple import primes
from entroscope.shannon import elemental_inequalities, is_shannon_type, verify_verdict

from conftest import crossover_pair, random_distribution, random_expression

ORDER = CANONICAL_ORDER


@contextmanager
def criterion(number, description):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[criterion {number}] FAIL  {description}")
        raise
    else:
        elapsed = time.perf_counter() - start
        print(f"[criterion {number}] PASS  {description}  ({elapsed:.2f}s)")


def _cli_json(capsys, *args):
    code = cli_main(list(args))
    out = capsys.readouterr().out
    return code, (json.loads(out) if code == 0 else None)


def test_criterion_1_closed_forms_match_brute_force():
    with criterion(1, "closed forms and structural zeros, q in {3,5,7,11,13}"):
        lq = math.log2
        for q in (3, 5, 7, 11, 13):
            report = E.verify_quadruple(q, tol=1e-9)
            qs = report.quantities
            assert abs(qs["I(c;d)"].measured - (q - 1) / q) <= 1e-9, q
            assert abs(qs["I(a;b)"].measured - lq(q) / q) <= 1e-9, q
            assert abs(qs["H(c|a,b)"].measured - lq(q) / q) <= 1e-9, q
            # the three zero constraints certified exactly, not numerically
            assert report.structural_zeros == {
                "I(c;d|a)": True, "I(c;d|b)": True, "I(a;b|c)": True}, q
            assert report.all_pass, q


def test_criterion_2_extension_gap_mechanism():
    with criterion(2, "minimal refuting prime and gap values for ext1"):
        assert E.minimal_refuting_prime(1, 1, "ext1") == 7
        gap7 = E.extension_gap(7, 1, 1, "ext1")
        assert abs(gap7 - (6 / 7 - 2 * math.log2(7) / 7)) <= 1e-6
        assert gap7 > 0
        assert E.extension_gap(5, 1, 1, "ext1") < 0
        # independent oracle: linear scan of the closed form over primes
        scan = next(q for q in primes()
                    if (q - 1) / q - 2 * math.log2(q) / q > 0)
        assert scan == 7


def test_criterion_3_ae_certificates(capsys):
    with criterion(3, "violation certificates: cond1 at q=19, cond3 at scan prime"):
        code, doc = _cli_json(capsys, "ae-cert", "--target", "cond1")
        assert code == 0
        assert doc["q"] == 19
        assert abs(doc["gap"] - (19 - 1 - 4 * math.log2(19)) / 19) <= 1e-6

        # independent scan oracle for the three-term body: mass 14 atoms
        # plus the I(a;b) center term gives q - 1 > 15 log2(q)
        oracle_q3 = next(q for q in primes() if q - 1 > 15 * math.log2(q))
        assert oracle_q3 == 101
        code, doc3 = _cli_json(capsys, "ae-cert", "--target", "cond3")
        assert code == 0
        assert doc3["q"] == oracle_q3
        assert abs(doc3["gap"] - (101 - 1 - 15 * math.log2(101)) / 101) <= 1e-6

        # each certificate re-verifies independently against its box
        cat = catalog()
        for target, got in (("cond1", doc), ("cond3", doc3)):
            q, cert = E.minimal_certifying_prime(target)
            assert q == got["q"] and abs(cert.gap - got["gap"]) <= 1e-12
            box = box_for_target(target, q)
            assert verify_certificate(cert, box, cat.conditional[target])

        # too-small prime refused with a deficit
        code, _ = _cli_json(capsys, "ae-cert", "--target", "cond1", "--q", "17")
        assert code == 6


def test_criterion_4_combined_certificate(capsys):
    with criterion(4, "one limit point excludes both conditional inequalities"):
        code, doc = _cli_json(capsys, "ae-cert", "--target", "both")
        assert code == 0
        q = doc["q"]
        assert abs(doc["half_width"] - 2 * math.log2(q) / q) <= 1e-9
        assert set(doc["zero_set"]) == {"I(a;b|c)", "I(a;b)", "H(c|a,b)"}
        assert set(doc["certificates"]) == {"cond1", "cond3"}
        for part in doc["certificates"].values():
            assert part["gap"] > 0
        # scan oracle: both bodies clear their mass at half-width 2 log2(q)/q
        oracle = next(p for p in primes()
                      if p - 1 > 29 * math.log2(p) and p - 1 > 22 * math.log2(p))
        assert q == oracle == 229


def test_criterion_5_shannon_type_classification():
    with criterion(5, "28 elemental singletons; zy98 witness polymatroid"):
        for e in elemental_inequalities(4):
            verdict = is_shannon_type(e)
            assert verdict.is_shannon_type
            assert list(verdict.dual_weights.values()) == [Fraction(1)]
            assert verify_verdict(verdict)
        zy = catalog().unconditional["zy98"]
        verdict = is_shannon_type(zy)
        assert verdict.decision == "not-shannon-type"
        assert verdict.witness_value < 0
        # exact substitution of the witness into the expression and into
        # every elemental inequality (independent of the LP path)
        from entroscope.profile import subset_key

        key_to_mask = {subset_key(ORDER, m): m for m in range(1, 16)}
        h = {key_to_mask[k]: v for k, v in verdict.witness.items()}
        value = sum(c * h.get(m, Fraction(0)) for m, c in zy.terms.items())
        assert value == verdict.witness_value < 0
        for g in elemental_inequalities(4):
            assert sum(c * h.get(m, Fraction(0))
                       for m, c in g.terms.items()) >= 0


def test_criterion_6_entropic_validity_suite(quadruple_profiles):
    with criterion(6, "zy98 and the parametric family on 1000 random + 3 quadruple profiles"):
        cat = catalog()
        zy = cat.unconditional["zy98"]
        stars = [cat.matus_star(k) for k in range(1, 11)]
        profiles = [quadruple_profiles(q) for q in (3, 5, 7)]
        rng = random.Random(20260808)
        for _ in range(1000):
            d = random_distribution(rng, n_vars=4, max_alphabet=4)
            p = E.profile_of(d)
            renamed = E.EntropyProfile(ORDER, p.coords)
            profiles.append(renamed)
        for p in profiles:
            assert zy.evaluate(p) >= -1e-9
            for star in stars:
                assert star.evaluate(p) >= -1e-9


def test_criterion_7_binning_trend():
    with criterion(7, "H(X|X',Y)/N drops by 0.05 from N=2 to N=8 (20 seeds)"):
        pair = crossover_pair(Fraction(1, 4))
        means = E.mean_residual_by_n(pair, [2, 4, 6, 8], 0.1, range(20))
        assert means[8] <= means[2] - 0.05
        # exact functional dependence in every run
        from entroscope.binning import sw_report

        for seed in range(20):
            for row in sw_report(pair, [2, 8], 0.1, seed):
                assert row.hash_is_function_of_x


def test_criterion_8_core_property_suites():
    with criterion(8, "iid additivity, polymatroid validity, parse/print fixpoint"):
        rng = random.Random(8)
        profiles = []
        for _ in range(50):
            d = random_distribution(rng, n_vars=rng.randint(1, 3), max_alphabet=3)
            n_copies = rng.randint(1, 3)
            base = E.profile_of(d)
            powered = E.profile_of(E.iid_power(d, n_copies))
            profiles.extend((base, powered))
            for i in range(len(base.coords)):
                assert abs(powered.coords[i] - n_copies * base.coords[i]) \
                    <= 1e-9 * n_copies
        for p in profiles:
            assert E.is_polymatroid(p, 1e-9)

        cat = catalog()
        exprs = list(cat.unconditional.values()) + list(cat.basic)
        for ineq in cat.conditional.values():
            exprs.append(ineq.body)
            exprs.extend(ineq.constraints)
        exprs.extend(cat.matus_star(k) for k in range(1, 11))
        rng2 = random.Random(88)
        exprs.extend(random_expression(rng2) for _ in range(200))
        for e in exprs:
            text = print_canonical(e)
            back = parse(text, e.order)
            assert back == e
            assert print_canonical(back) == text

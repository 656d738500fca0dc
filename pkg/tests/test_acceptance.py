"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
Sizes, seeds, time limits and tolerances are pinned below.
"""

import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from polyconj import cli
from polyconj.descartes import pair_orbit
from polyconj.expsum import max_zero_search, search_findings
from polyconj.fields import ChargeConfig, field_eval, find_equilibria, psi_census, square_config
from polyconj.jensen import (
    conjwplus_check,
    criterion1,
    criterion2,
    finding_for,
    hawaiian_check,
    jensen_literal,
    phi_expand,
    random_simple_real_poly,
)
from polyconj.ledger import VIOLATION_CANDIDATE, Ledger, canonical_json, replay, replay_finding, trial_rng
from polyconj.polycore import RatPoly, complex_roots_numeric, sturm_count
from polyconj.rolle import enumerate_sequences, flat_count
from polyconj.sos import bounds_table, grid_sos, verify_isolated
from polyconj.tropical import run_check

SEED = 20240601

ENUM_TIME_LIMIT_S = 10.0
SURVEY_BUDGET = 10**5
SURVEY_TIME_LIMIT_S = 300.0
BRIDGE_POLYS = 10**3
BRIDGE_DEGREES = (2, 8)
HAW_POLYS = 10**4
HAW_DEGREES = (2, 6)
HAW_TIME_LIMIT_S = 600.0
TROP_POLYS = 10**4
TROP_DEGREES = (2, 10)
TROP_L = 6
AXIS_POINTS = 100
AXIS_FIELD_TOL = 1e-10
PSI_CONFIGS = 10**3
EXPSUM_TRIALS = 10**3
SOS_K, SOS_L = 4, 3
ORACLE_POLYS = 10**4
ORACLE_MAX_DEGREE = 10

RESULTS: list[str] = []


def report(n: int, ok: bool, text: str) -> None:
    line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}: {text}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_01_symbolic_sequence_counts():
    t0 = time.perf_counter()
    counts = {n: len(enumerate_sequences(n)) for n in (3, 4, 5)}
    dt = time.perf_counter() - t0
    ok = counts == {3: 2, 4: 12, 5: 286} and all(counts[n] == flat_count(n) for n in counts) and dt < ENUM_TIME_LIMIT_S
    report(1, ok, f"sequence counts {counts} match flat_count, {dt:.2f}s < {ENUM_TIME_LIMIT_S}s")


def test_02_degree4_descartes_exception(tmp_path):
    out = tmp_path / "survey.json"
    t0 = time.perf_counter()
    code = cli.main(["descartes", "survey", "--degree", "4", "--budget", str(SURVEY_BUDGET), "--seed", str(SEED),
                     "--expand", "--out", str(out), "--ledger", str(tmp_path / "l.jsonl")])
    dt = time.perf_counter() - t0
    rows = json.loads(out.read_text())["result"]["rows"]
    open_set = {(r["pattern"], tuple(r["pair"])) for r in rows if r["status"] == "OPEN"}
    expected = {(str(q), tuple(pp)) for q, pp in pair_orbit("++-++", (2, 0))}
    ok = code == 0 and open_set == expected and dt < SURVEY_TIME_LIMIT_S
    report(2, ok, f"degree-4 survey OPEN = {sorted(open_set)} (expected orbit {sorted(expected)}), "
                  f"{len(rows)} combinations, {dt:.1f}s < {SURVEY_TIME_LIMIT_S}s")


def test_03_jensen_exactness_bridge():
    mismatches = 0
    lo, hi = BRIDGE_DEGREES
    for t in range(BRIDGE_POLYS):
        p = random_simple_real_poly(trial_rng(SEED, 3, t), hi, lo)
        Ps = phi_expand(p)
        mismatches += sum(jensen_literal(p, i) != Ps[i] for i in range(p.degree + 1))
    report(3, mismatches == 0, f"derivative form vs expansion on {BRIDGE_POLYS} polys of degree {lo}-{hi}: "
                               f"{mismatches} mismatches")


_corpus: list = []


def _hawaiian_corpus():
    if not _corpus:
        lo, hi = HAW_DEGREES
        _corpus.extend(random_simple_real_poly(trial_rng(SEED, 4, t), hi, lo) for t in range(HAW_POLYS))
    return _corpus


def test_04_hawaiian_regression():
    t0 = time.perf_counter()
    fails = sum(not hawaiian_check(p).holds for p in _hawaiian_corpus())
    dt = time.perf_counter() - t0
    report(4, fails == 0 and dt < HAW_TIME_LIMIT_S,
           f"Hawaiian inequality on {HAW_POLYS} polys (degree {HAW_DEGREES[0]}-{HAW_DEGREES[1]}, simple real zeros): "
           f"{fails} violations, {dt:.1f}s < {HAW_TIME_LIMIT_S}s")


def test_05_criteria_agreement():
    corpus = _hawaiian_corpus()
    d1 = sum(not criterion1(p).agree for p in corpus)
    d2 = sum(not criterion2(p).agree for p in corpus)
    report(5, d1 == 0 and d2 == 0, f"positivity criteria vs real-rootedness on the same {len(corpus)} polys: "
                                   f"{d1} + {d2} disagreements")


def test_06_tropical_bounds():
    res = run_check(TROP_POLYS, SEED, TROP_DEGREES, TROP_L, multiplicity=True)
    ok = res["violations"] == {"conj12": 0, "conj13": 0, "conj14": 0}
    report(6, ok, f"three real-zero bounds on {TROP_POLYS} positive-coefficient polys, degree "
                  f"{TROP_DEGREES[0]}-{TROP_DEGREES[1]}, magnitudes 10^+-{TROP_L}: violations {res['violations']}")


def test_07_maxwell_square():
    cfg = square_config()
    rng = np.random.default_rng(SEED)
    zs = rng.uniform(-10, 10, size=AXIS_POINTS)
    worst = max(float(np.linalg.norm(field_eval(cfg, [0, 0, z]))) for z in zs)
    eq = find_equilibria(cfg)
    two = find_equilibria(ChargeConfig([[1, 0, 0], [-1, 0, 0]], [1, 1]))
    ok = worst < AXIS_FIELD_TOL and eq.suspected_curve and two.count == 1
    report(7, ok, f"square: max |E| on {AXIS_POINTS} axis points = {worst:.2e} < {AXIS_FIELD_TOL}, "
                  f"suspected_curve={eq.suspected_curve} ({eq.count} points); two equal charges: {two.count} equilibrium")


def test_08_psi_maxima():
    res = psi_census(3, PSI_CONFIGS, SEED, alpha=1, unit=True)
    replays = [replay_finding(f) for f in res["findings"]]
    ok = res["max_count"] <= 3 and all(r == "CONFIRMED" for r in replays)
    report(8, ok, f"Psi local maxima over {PSI_CONFIGS} three-charge configs: max {res['max_count']} <= 3, "
                  f"{len(res['findings'])} candidates, histogram {res['histogram']}")


def test_09_exponential_sums():
    k2 = max_zero_search(2, EXPSUM_TRIALS, SEED)
    k3 = max_zero_search(3, EXPSUM_TRIALS, SEED)
    fs = search_findings(k3)
    replayed = [replay_finding(f) for f in fs]
    ok = k2.max_count == 1 and k3.witness is not None and replayed == ["CONFIRMED"]
    report(9, ok, f"k=2 max zeros {k2.max_count} over {EXPSUM_TRIALS} trials; k=3 max {k3.max_count} "
                  f"with witness trial {k3.witness and k3.witness['trial']} replay {replayed}")


def test_10_sos_grids():
    bad = [(k, l) for k in range(1, SOS_K + 1) for l in range(1, SOS_L + 1)
           if not (verify_isolated(grid_sos(k, l)).ok and verify_isolated(grid_sos(k, l)).zero_count == k**l)]
    table_ok = all(bounds_table(k, 2).sos_known == k * k and bounds_table(k, 2).upper == min((2 * k - 1) ** 2, 3 * k * (k - 1) // 2 + 1)
                   for k in range(1, 11))
    ok = not bad and table_ok and (bounds_table(2, 2).upper, bounds_table(3, 2).upper) == (4, 10)
    report(10, ok, f"isolated grid zeros for k<={SOS_K}, l<={SOS_L}: failures {bad}; l=2 bounds table consistent={table_ok}")


def test_11_root_counter_oracle():
    disagreements = skipped = 0
    for t in range(ORACLE_POLYS):
        rng = trial_rng(SEED, 11, t)
        d = int(rng.integers(1, ORACLE_MAX_DEGREE + 1))
        lead = int(rng.choice([-1, 1])) * int(rng.integers(1, 21))
        p = RatPoly([int(v) for v in rng.integers(-20, 21, size=d)] + [lead])
        roots = complex_roots_numeric(p)
        # disjoint inclusion disks each hold exactly one root; a disk centred
        # on the axis then holds a real root.  Overlapping disks are ambiguous.
        if any(abs(a.value - b.value) <= a.radius + b.radius for i, a in enumerate(roots) for b in roots[i + 1:]):
            skipped += 1
            continue
        numeric = sum(1 for r in roots if r.value.imag == 0)
        disagreements += numeric != sturm_count(p)
    report(11, disagreements == 0, f"Sturm count vs numeric oracle on {ORACLE_POLYS} polys of degree <= "
                                   f"{ORACLE_MAX_DEGREE}: {disagreements} disagreements, {skipped} skipped (overlapping disks)")


def test_12_wplus_degree2_probe(tmp_path):
    p = RatPoly.parse("x^2 + 1")
    rec = conjwplus_check(p)
    f = finding_for("wplus", p, rec)
    led = Ledger(tmp_path / "ledger.jsonl")
    fid = led.append(f)
    stored = led.path.read_bytes()
    again = finding_for("wplus", p, conjwplus_check(p))
    status = replay(fid, led)
    ok = (f.severity == VIOLATION_CANDIDATE and rec.lhs == 0 and status == "CONFIRMED"
          and again.observation == f.observation and again.finding_id == fid
          and canonical_json(led.get(fid).to_json()).encode() + b"\n" == stored
          and led.path.read_bytes() == stored)
    report(12, ok, f"wplus(x^2+1): {f.severity}, lhs={rec.lhs}, id {fid}, replay {status}, ledger bytes unchanged")


if __name__ == "__main__":
    sys.exit(pytest.main([str(Path(__file__)), "-q", "-s"]))

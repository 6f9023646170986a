"""Repetition decompositions: the finder, the verifiers, serialization."""

import io

import pytest

from pdlz import (default_dmin, family_constants, find_pumpable,
                  fit_and_verify_endmarked, preset_families, random_word,
                  read_decompositions, verify_pump_plain,
                  write_decompositions)
from pdlz.pumping import FamilyConstants, column_stats
from pdlz.zoo import get_builtin


def test_family_constants_presets():
    fams = preset_families()
    assert family_constants(fams["unit"].machines).period == 1
    assert family_constants(fams["pair"].machines).period == 2
    c = family_constants(fams["trio"].machines)
    assert c.period == 4
    assert c.size == 3
    assert c.push_max == 2


def test_default_dmin_examples():
    c = FamilyConstants(period=4, push_max=2, size=1)
    assert default_dmin(c, 3125) == 2
    fams = preset_families()
    assert default_dmin(family_constants(fams["trio"].machines), 2048) == 0
    assert default_dmin(family_constants(fams["pair"].machines), 2048) == 3
    assert default_dmin(family_constants(fams["unit"].machines), 2048) == 45


def test_find_on_identity():
    fam = preset_families()["unit"]
    w = "01" * 64
    dec = find_pumpable(fam.machines, w, dmin=5)
    assert dec is not None
    assert dec.c == 0 and dec.cprime == 5
    assert dec.head == "" and dec.loop == w[:5]


def test_find_respects_dmin_gap():
    fam = preset_families()["pair"]
    w = random_word(21, 4096)
    dec = find_pumpable(fam.machines, w, dmin=37)
    assert dec is not None
    assert dec.cprime - dec.c >= 37


def test_find_none_when_word_too_short():
    fam = preset_families()["unit"]
    assert find_pumpable(fam.machines, "01", dmin=45) is None


def test_find_matches_brute_force():
    # the monotone-stack dip bounds must agree with a direct scan
    fam = preset_families()["pair"]
    for seed in range(8):
        w = random_word(seed + 300, 160)
        stats = column_stats(fam.machines, w)
        n = len(w)
        gap = 3
        brute = None
        for c in range(0, n):
            for cp in range(c + gap, n + 1):
                if stats.sigs[c] != stats.sigs[cp]:
                    continue
                if any(min(mh[c + 1:cp + 1]) < hs[c]
                       for hs, mh in zip(stats.heights, stats.minhs)):
                    continue
                brute = (c, cp)
                break
            if brute:
                break
        dec = find_pumpable(fam.machines, w, dmin=gap)
        got = (dec.c, dec.cprime) if dec else None
        assert got == brute, (seed, got, brute)


def test_verify_plain_presets():
    fams = preset_families()
    for name in ("unit", "pair", "trio"):
        fam = fams[name]
        w = random_word(hash(name) % 1000, 2048)
        dec = find_pumpable(fam.machines, w)
        assert dec is not None, name
        ok, detail = verify_pump_plain(fam.machines, w, dec.c, dec.cprime,
                                       n_max=12)
        assert ok, (name, detail)


def test_verify_rejects_bad_cut():
    # a cut straddling a zone of the zone compressor breaks the x y^n shape
    from pdlz import build_S
    machines = [get_builtin("zone-2-1-2")]
    stream = build_S(2, 1, 6)
    ok, detail = verify_pump_plain(machines, stream.text[:40], 30, 36,
                                   n_max=4)
    assert not ok
    assert detail


def test_verify_rejects_empty_loop():
    fam = preset_families()["unit"]
    ok, detail = verify_pump_plain(fam.machines, "0101", 2, 2)
    assert not ok


def test_endmark_fits():
    fams = preset_families()
    for name, per_rep in (("squeeze2", 1), ("squeeze3", 1), ("tally2", 1)):
        fam = fams[name]
        fit = fit_and_verify_endmarked(fam.machines[0], fam.head, fam.loop,
                                       n_max=16)
        assert fit is not None, name
        assert len(fit.y) + len(fit.y2) == per_rep, name


def test_endmark_fit_matches_direct_runs():
    from pdlz import run_endmarked
    fam = preset_families()["squeeze3"]
    fit = fit_and_verify_endmarked(fam.machines[0], fam.head, fam.loop,
                                   n_max=20)
    for n in range(fit.c, 20):
        got = run_endmarked(fam.machines[0], fam.head + fam.loop * n).output
        want = (fit.x + fit.y * n + fit.z + fit.y2 * n + fit.x2)
        assert got == want, n


def test_serialization_round_trip():
    fam = preset_families()["trio"]
    decs = []
    for seed in (1, 2):
        w = random_word(seed, 256)
        dec = find_pumpable(fam.machines, w, family="trio")
        assert dec is not None
        decs.append(dec)
    buf = io.StringIO()
    write_decompositions(decs, buf)
    back = read_decompositions(buf.getvalue())
    assert len(back) == 2
    for a, b in zip(decs, back):
        assert (a.family, a.word, a.c, a.cprime) == (b.family, b.word, b.c,
                                                     b.cprime)


def test_read_decompositions_errors():
    with pytest.raises(ValueError, match="line"):
        read_decompositions("family trio\nword 01\ncut 5 1\n")
    with pytest.raises(ValueError, match="line"):
        read_decompositions("family trio\ncut 0 1\n")
    with pytest.raises(ValueError, match="line"):
        read_decompositions("what 1 2\n")


def test_column_stats_requires_clean_run():
    from pdlz import parse_pdc
    partial = parse_pdc(
        "pdc partial\nalphabet 01\nstack z\nstart s z\n"
        "rule s 0 z -> s z out 0\n")
    with pytest.raises(RuntimeError):
        column_stats([partial], "01")

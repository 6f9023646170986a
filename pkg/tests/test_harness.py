"""Ratio series, CSV output, and the experiment presets."""

import io

import pytest

from pdlz import (CheckpointedStream, build_S, compress, lz_bits, lz_series,
                  pdc_series, random_word, run_preset, tail_estimates,
                  write_csv)
from pdlz.harness import RatioRow, floor_scan, thin_checkpoints
from pdlz.zoo import get_builtin


def _stream(text, step):
    cps = [(i, "at{}".format(i)) for i in range(step, len(text) + 1, step)]
    return CheckpointedStream(name="t", text=text, checkpoints=cps)


def test_lz_series_matches_direct_bits():
    text = random_word(31, 600)
    stream = _stream(text, 101)
    rows = lz_series(stream)
    assert [r.n for r in rows] == [101, 202, 303, 404, 505]
    for row in rows:
        assert row.bits == lz_bits(text[:row.n])
        assert row.ratio == row.bits / row.n


def test_pdc_series_plain_matches_direct_runs():
    stream = build_S(2, 1, 6)
    spec = get_builtin("zone-2-1-2")
    rows = pdc_series(spec, stream)
    assert len(rows) == len(stream.checkpoints)
    for row in rows[:6]:
        assert row.bits == len(compress(spec, stream.text[:row.n]))


def test_pdc_series_endmark_thinned():
    text = "0" * 500
    stream = _stream(text, 5)  # 100 checkpoints
    spec = get_builtin("squeeze2")
    rows = pdc_series(spec, stream)
    assert len(rows) <= 64
    assert rows[-1].n == 500  # the last checkpoint always survives
    for row in rows:
        assert row.bits == len(compress(spec, text[:row.n]))


def test_pdc_series_labels():
    stream = build_S(2, 1, 6)
    rows = pdc_series(get_builtin("zone-2-1-2"), stream, label="z")
    assert rows[0].label.startswith("z:")
    assert rows[0].label.split(":", 1)[1] == stream.checkpoints[0][1]


def test_thin_checkpoints():
    cps = [(i, str(i)) for i in range(200)]
    out = thin_checkpoints(cps, limit=64)
    assert len(out) <= 64
    assert out[0] == cps[0] or out[0][0] <= cps[1][0]
    assert out[-1] == cps[-1]
    short = [(1, "a"), (2, "b")]
    assert thin_checkpoints(short, limit=64) == short


def test_tail_estimates():
    rows = [RatioRow(n=n, bits=n, ratio=r, label="x")
            for n, r in ((10, 0.9), (50, 0.5), (80, 0.4), (100, 0.45))]
    tail = tail_estimates(rows, burn=0.5)
    assert tail.lo == 0.4
    assert tail.hi == 0.5
    assert tail.start == 50
    with pytest.raises(ValueError):
        tail_estimates([])


def test_write_csv_golden():
    rows = [RatioRow(n=4, bits=2, ratio=0.5, label="a:b"),
            RatioRow(n=8, bits=3, ratio=0.375, label="a:c")]
    buf = io.StringIO()
    write_csv(rows, buf)
    assert buf.getvalue() == ("n,bits,ratio,label\n"
                              "4,2,0.500000,a:b\n"
                              "8,3,0.375000,a:c\n")


def test_floor_scan_identity():
    rows = floor_scan(get_builtin("identity"), 1, 6)
    assert [r.n for r in rows] == [1, 2, 3, 4, 5, 6]
    assert all(r.ratio == 1.0 for r in rows)


def test_floor_scan_tally():
    rows = floor_scan(get_builtin("tally2"), 5, 8)
    # the cheapest words are all-zero blocks
    for row in rows:
        zeros = len(compress(get_builtin("tally2"), "0" * row.n))
        assert row.bits == zeros


def test_run_preset_unknown():
    with pytest.raises(KeyError, match="unknown preset"):
        run_preset("nope")


def test_preset_pd_beats_lz_small():
    ok, series, lines = run_preset("pd-beats-lz", n_max=11)
    assert ok
    assert "lz78" in series
    assert any("zone" in name for name in series)
    assert any("->" in line for line in lines)


def test_zone_section_maxima_at_flag_checkpoints():
    # within every complete section after the first, the hardest checkpoint
    # for the zone machine is the flag after an X zone
    ok, series, _lines = run_preset("pd-beats-lz", n_max=11)
    assert ok
    zone_rows = next(v for k, v in series.items() if k.startswith("zone"))
    sections = {}
    for row in zone_rows:
        tag = row.label.split(":", 1)[1]
        if tag.startswith("S"):
            sections.setdefault(tag.split(":")[0], []).append(row)
    names = sorted(sections, key=lambda s: int(s[1:]))
    for name in names[1:]:
        rows = sections[name]
        top = max(rows, key=lambda r: r.ratio)
        assert ":flagX" in top.label, (name, top.label)

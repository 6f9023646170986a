"""The builtin machines: exact outputs against frozen values."""

import hashlib

import pytest

from pdlz import (build_S, compress, il_check, run, run_endmarked,
                  validate_spec)
from pdlz.zoo import (builtin_machines, get_builtin, make_block_counter,
                      make_unary_squeezer, make_zone_compressor,
                      zone_early_count)


def test_every_builtin_validates():
    for name, spec in builtin_machines().items():
        report = validate_spec(spec)
        assert report.ok, (name, report.errors)


def test_builtin_shapes():
    machines = builtin_machines()
    assert len(machines["identity"].states) == 1
    assert len(machines["stack-walk"].states) == 1
    assert len(machines["run-parity"].states) == 2
    for k in (2, 3, 4):
        assert len(machines["squeeze{}".format(k)].states) == 4 * k + 2
    for k in (2, 3):
        assert len(machines["tally{}".format(k)].states) == k + 3
    assert len(machines["zone-2-1-2"].states) == 18
    assert len(machines["zone-4-4-16"].states) == 162


def test_get_builtin_unknown():
    with pytest.raises(KeyError, match="identity"):
        get_builtin("never-heard-of-it")


def test_squeezer_zeros_frozen(expected):
    for k in (2, 3, 4):
        spec = make_unary_squeezer(k)
        zeros = expected["squeezer"][str(k)]["zeros"]
        for n, want in enumerate(zeros):
            res = run_endmarked(spec, "0" * n)
            assert res.ok
            assert res.output == want, (k, n)


def test_squeezer_zero_lens_frozen(expected):
    for k in (2, 3, 4):
        spec = make_unary_squeezer(k)
        for n_str, want in expected["squeezer"][str(k)]["zero_lens"].items():
            res = run_endmarked(spec, "0" * int(n_str))
            assert len(res.output) == want, (k, n_str)


def test_squeezer_words_frozen(expected):
    for k in (2, 3, 4):
        spec = make_unary_squeezer(k)
        for word, want in expected["squeezer"][str(k)]["words"].items():
            assert compress(spec, word) == want, (k, word)


def test_squeezer_final_state_disambiguates():
    # k=3: five and seven zeros compress to the same string; the final
    # state keeps the pair apart
    spec = make_unary_squeezer(3)
    r5 = run_endmarked(spec, "0" * 5)
    r7 = run_endmarked(spec, "0" * 7)
    assert r5.output == r7.output
    assert r5.state != r7.state


def test_counter_frozen(expected):
    for k in (2, 3):
        spec = make_block_counter(k)
        zeros = expected["counter"][str(k)]["zeros"]
        for n, want in enumerate(zeros):
            assert compress(spec, "0" * n) == want, (k, n)
        for word, want in expected["counter"][str(k)]["words"].items():
            assert compress(spec, word) == want, (k, word)


def test_counter_bracket_collision_resolved_by_state():
    # k=3: '0001' and '0000' compress to the same string in different states
    spec = make_block_counter(3)
    r_impure = run_endmarked(spec, "0001")
    r_pure = run_endmarked(spec, "0000")
    assert r_impure.output == r_pure.output == "011"
    assert r_impure.state != r_pure.state


def test_zone_early_counts(expected):
    for k_str, want in expected["early_counts"].items():
        assert zone_early_count(int(k_str)) == want


def test_zone_outputs_on_matched_streams(expected):
    for skey, mk in (("k2v1n6", (2, 1, 2)), ("k4v4n9", (4, 4, 16))):
        meta = expected["streams"][skey]
        stream = build_S(meta["k"], meta["v"], meta["n_max"])
        assert hashlib.sha256(stream.text.encode()).hexdigest() == meta["sha256"]
        spec = make_zone_compressor(*mk)
        for pos_str, want in meta["out_lens"].items():
            res = run(spec, stream.text[:int(pos_str)])
            assert res.ok
            assert len(res.output) == want, (skey, pos_str)


def test_zone_suppression_literal_prefix(expected):
    # through the first Y zone of the small stream, the output is the
    # input with the suppressed positions removed
    stream = build_S(2, 1, 6)
    spec = make_zone_compressor(2, 1, 2)
    res = run(spec, stream.text[:36])
    assert res.ok
    assert res.output == stream.text[:32] + "00"


def test_zone_corruption_lands_in_error_copy_state():
    # flip a bit inside the first Y zone: the comparison fails, the machine
    # diverts to its copy-forever state and stays information lossless from
    # there on
    stream = build_S(2, 1, 6)
    spec = make_zone_compressor(2, 1, 2)
    text = stream.text[:36]
    flip = 33  # inside the first Y zone
    corrupted = text[:flip] + ("1" if text[flip] == "0" else "0") + text[flip + 1:]
    res = run(spec, corrupted)
    assert res.ok
    assert res.state == "err"
    # once in err, every further symbol is copied through verbatim
    tail = "0110"
    res2 = run(spec, corrupted + tail)
    assert res2.ok
    assert res2.output == res.output + tail


def test_zone_compressor_total_on_binary_words():
    spec = make_zone_compressor(2, 1, 2)
    report = il_check(spec, 7)
    assert report.ok
    assert not report.errors


def test_squeezer_il_small():
    for k in (2, 3):
        report = il_check(make_unary_squeezer(k), 6)
        assert report.ok, k


def test_tally_il_small():
    for k in (2, 3):
        report = il_check(make_block_counter(k), 6)
        assert report.ok, k

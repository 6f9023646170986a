"""End-to-end acceptance run.

Each test exercises one headline claim at desk scale and prints a single
[PASS]/[FAIL] line with the measured numbers (run pytest with -rA to see
the lines for passing tests too).
"""

import math
import time
from itertools import product

from pdlz import (build_S, choose_repetition_counts, compress, lz_decode,
                  lz_encode, lz_phrase_count, run, run_preset)
from pdlz.harness import floor_scan
from pdlz.machine import il_check
from pdlz.pumping import (default_dmin, family_constants,
                          fit_and_verify_endmarked, find_pumpable,
                          preset_families, verify_pump_plain)
from pdlz.sequences import random_word
from pdlz.zoo import builtin_machines, get_builtin


def _report(num, ok, detail):
    print("[{}] criterion {}: {}".format("PASS" if ok else "FAIL",
                                         num, detail))
    assert ok, "criterion {}: {}".format(num, detail)


def _geometric_ns(lo, hi, points):
    step = (hi / lo) ** (1.0 / (points - 1))
    return sorted({int(round(lo * step ** i)) for i in range(points)})


def test_c01_squeezer_ratio_limit():
    t0 = time.perf_counter()
    n = 100000
    parts = []
    ok = True
    for k in (2, 3):
        ratio = len(compress(get_builtin("squeeze%d" % k), "0" * n)) / n
        target = 1.0 / (k * k)
        ok = ok and abs(ratio - target) <= 0.02 * target
        parts.append("k={} ratio {:.5f} vs {:.5f}".format(k, ratio, target))
    dt = time.perf_counter() - t0
    ok = ok and dt < 5.0
    _report(1, ok, "zero-run ratio at n={}: {} ({:.1f}s)".format(
        n, "; ".join(parts), dt))


def test_c02_exhaustive_output_floor():
    t0 = time.perf_counter()
    ok = True
    parts = []
    max_len = 14
    for name, spec in sorted(builtin_machines().items()):
        nq = len(spec.states)
        if nq > max_len:
            continue
        rows = floor_scan(spec, nq, max_len)
        worst = min(r.ratio for r in rows)
        floor = 1.0 / (2 * nq)
        ok = ok and worst >= floor
        parts.append("{} {:.3f}>={:.3f}".format(name, worst, floor))
    dt = time.perf_counter() - t0
    ok = ok and dt < 60.0
    _report(2, ok, "per-machine output floor over all words up to {} "
            "symbols: {} ({:.1f}s)".format(max_len, ", ".join(parts), dt))


def test_c03_squeezer_closed_form():
    t0 = time.perf_counter()
    bad = None
    for k in (2, 3, 4):
        spec = get_builtin("squeeze%d" % k)
        for n in range(10001):
            i = n % k
            rem = (n - i) // k
            j = rem % k
            m = rem // k
            want = "0" + "1" * i + "0" * m + "1" * j
            if compress(spec, "0" * n) != want:
                bad = (k, n)
                break
        if bad:
            break
    dt = time.perf_counter() - t0
    _report(3, bad is None,
            "closed-form zero-run output for k=2,3,4 at every n<=10^4"
            "{} ({:.1f}s)".format("" if bad is None else
                                  " FAILED at k={} n={}".format(*bad), dt))


def test_c04_lz_phrase_bound_on_repetitions():
    t0 = time.perf_counter()
    worst = 0.0
    for s in range(1, 201):
        t = random_word(3 * s + 1, s % 65)
        u = random_word(5 * s + 2, 1 + s % 32)
        reps = 1 + (s * s) % 400
        w = t + u * reps
        bound = math.sqrt(2 * (1 + len(t) + len(u)) * len(w))
        worst = max(worst, lz_phrase_count(w) / bound)
    dt = time.perf_counter() - t0
    _report(4, worst <= 1.0,
            "phrase count within sqrt bound on 200 seeded repetitions, "
            "worst fraction {:.3f} ({:.1f}s)".format(worst, dt))


def test_c05_nested_repetitions_compress():
    t0 = time.perf_counter()
    recipe = choose_repetition_counts(4)
    first, last = recipe.ratios[0], recipe.ratios[-1]
    ok = last <= 0.8 * first and last <= 0.8
    dt = time.perf_counter() - t0
    ok = ok and dt < 60.0
    _report(5, ok, "depth-4 nested repetitions: LZ78 ratio {:.4f} -> "
            "{:.4f} over {} symbols ({:.1f}s)".format(
                first, last, len(recipe.stream.text), dt))


def test_c06_information_losslessness():
    t0 = time.perf_counter()
    ok = True
    for name, spec in sorted(builtin_machines().items()):
        rep = il_check(spec, 8)
        ok = ok and rep.ok and rep.checked == 511 and not rep.collisions
    zoo_n = len(builtin_machines())
    count = 0
    for n in range(13):
        for bits in product("01", repeat=n):
            w = "".join(bits)
            ok = ok and lz_decode(lz_encode(w)) == w
            count += 1
    for seed in range(1, 10001):
        w = random_word(seed, 512)
        ok = ok and lz_decode(lz_encode(w)) == w
    dt = time.perf_counter() - t0
    _report(6, ok, "{} machines injective on all {} words up to length 8; "
            "LZ78 round-trip on {} short words and 10^4 seeded 512-symbol "
            "words ({:.1f}s)".format(zoo_n, 511, count, dt))


def test_c07_pumpable_decompositions():
    t0 = time.perf_counter()
    ok = True
    parts = []
    fams = preset_families()
    for name in ("unit", "pair", "trio"):
        fam = fams[name]
        dmin = default_dmin(family_constants(fam.machines), 2048)
        for seed in range(1, 101):
            w = random_word(seed * 7 + 1, 2048)
            dec = find_pumpable(fam.machines, w, family=name)
            if dec is None:
                ok = False
                break
            good, detail = verify_pump_plain(fam.machines, w, dec.c,
                                             dec.cprime, n_max=50)
            if not good:
                ok = False
                break
        parts.append("{} 100/100 at dmin {}".format(name, dmin))
    for name in ("squeeze2", "squeeze3", "tally2"):
        fam = fams[name]
        fit = fit_and_verify_endmarked(fam.machines[0], fam.head, fam.loop,
                                       n_max=40)
        if fit is None:
            ok = False
            parts.append("{} NO FIT".format(name))
        else:
            parts.append("{} step {}".format(name, len(fit.y) + len(fit.y2)))
    dt = time.perf_counter() - t0
    ok = ok and dt < 120.0
    _report(7, ok, "{} ({:.1f}s)".format("; ".join(parts), dt))


def test_c08_zone_stream_beats_lz():
    t0 = time.perf_counter()
    ok, series, lines = run_preset("pd-beats-lz")
    stream = build_S(4, 4, 16)
    spec = get_builtin("zone-4-4-16")
    pos = {label: p for p, label in stream.checkpoints}
    first = min((label for label in pos if ":flagX1" in label),
                key=lambda l: pos[l]).split(":")[0]
    start = pos[first + ":flagX1"]    # first mirrored zone of the stream
    end = pos[first + ":Y1"]
    text = stream.text[:end]
    flip = "1" if text[start] == "0" else "0"
    corrupted = text[:start] + flip + text[start + 1:end]
    res = run(spec, corrupted)
    tail = "0110"
    res2 = run(spec, corrupted + tail)
    corrupt_ok = (res.state == "err" and res2.state == "err"
                  and res2.output == res.output + tail)
    dt = time.perf_counter() - t0
    ok = ok and corrupt_ok and dt < 120.0
    _report(8, ok, "{}; corrupted mirror zone -> copying error state: {} "
            "({:.1f}s)".format("; ".join(lines), corrupt_ok, dt))


def test_c09_endmark_outputs_keep_growing():
    t0 = time.perf_counter()
    ns = _geometric_ns(100, 100000, 12)
    ok = True
    parts = []
    for name in ("squeeze2", "squeeze3", "squeeze4", "tally2", "tally3"):
        spec = get_builtin(name)
        lens = [len(compress(spec, "0" * n)) for n in ns]
        nbar = sum(ns) / len(ns)
        lbar = sum(lens) / len(lens)
        num = sum((n - nbar) * (l - lbar) for n, l in zip(ns, lens))
        den = sum((n - nbar) ** 2 for n in ns)
        slope = num / den
        ok = ok and slope > 0
        parts.append("{} {:.2e}".format(name, slope))
    dt = time.perf_counter() - t0
    _report(9, ok, "least-squares growth of zero-run output over n in "
            "[10^2,10^5]: {} ({:.1f}s)".format(", ".join(parts), dt))


def test_c10_suffix_increment_floor():
    t0 = time.perf_counter()
    ok = True
    worst = 2.0
    for name, fam in sorted(preset_families().items()):
        for mach in fam.machines:
            for seed in range(1, 21):
                ulen = 64 + seed
                w = random_word(seed * 13 + 5, 256 + 3 * seed)
                t, u = w[:-ulen], w[-ulen:]
                inc = (len(compress(mach, w)) - len(compress(mach, t))) / ulen
                worst = min(worst, inc)
                ok = ok and inc >= 0.75
    dt = time.perf_counter() - t0
    _report(10, ok, "per-symbol output increment over suffixes >=64 symbols "
            "across all preset families, worst {:.3f} ({:.1f}s)".format(
                worst, dt))

"""Ratio measurement: compression curves over checkpointed streams.

A series is a list of RatioRow(n, bits, ratio, label) sampled at the
checkpoints of a stream.  For LZ78 the bits column is the encoded length in
bits; for a machine it is the number of output symbols (input and output
share an alphabet, so the per-symbol log factors cancel and the ratio is
output length over input length either way).

Plain machines are measured with a single traced run; endmark machines are
re-run per checkpoint prefix (thinned to at most 64 checkpoints) because
their output is only defined with the endmarker.  CSV output is
deterministic: fixed 6-decimal ratios and no timestamps.
"""

import math
from dataclasses import dataclass

from . import sequences, zoo
from .kernels import ERR_OK, make_lz_stream, run_compiled
from .lz import lz_ratio
from .machine import _as_compiled, PdcRunError, RunResult, run_endmarked


@dataclass
class RatioRow:
    n: int
    bits: int
    ratio: float
    label: str


@dataclass
class TailEstimate:
    lo: float
    hi: float
    start: int      # first prefix length included


def _as_checkpointed(stream):
    if isinstance(stream, sequences.CheckpointedStream):
        return stream
    text = stream
    step = max(1, len(text) // 64)
    cps = [(i, "at{}".format(i)) for i in range(step, len(text) + 1, step)]
    if not cps or cps[-1][0] != len(text):
        cps.append((len(text), "at{}".format(len(text))))
    return sequences.CheckpointedStream(name="word", text=text,
                                        checkpoints=cps)


def lz_series(stream, alphabet="01", label="lz78"):
    stream = _as_checkpointed(stream)
    index = {c: i for i, c in enumerate(alphabet)}
    counter = make_lz_stream(len(alphabet))
    log_sigma = math.log2(len(alphabet))
    rows = []
    prev = 0
    for pos, cplabel in stream.checkpoints:
        counter.feed([index[c] for c in stream.text[prev:pos]])
        prev = pos
        bits = counter.bits_now()
        rows.append(RatioRow(n=pos, bits=bits,
                             ratio=bits / (pos * log_sigma) if pos else 0.0,
                             label="{}:{}".format(label, cplabel)))
    return rows


def thin_checkpoints(checkpoints, limit=64):
    """At most limit checkpoints, evenly spaced, always keeping the last."""
    if len(checkpoints) <= limit:
        return list(checkpoints)
    last = len(checkpoints) - 1
    picks = sorted({round(i * last / (limit - 1)) for i in range(limit)})
    return [checkpoints[i] for i in picks]


def pdc_series(machine, stream, label=None):
    stream = _as_checkpointed(stream)
    cm = _as_compiled(machine)
    label = label or cm.name
    rows = []
    if cm.mode == "plain":
        err, consumed, q, stack, out, cols = run_compiled(
            cm, cm.to_ids(stream.text), trace=1)
        if err != ERR_OK:
            raise PdcRunError(RunResult(False, "run failed", consumed,
                                        cm.states[q], "", ""))
        outlens = cols[3]
        for pos, cplabel in stream.checkpoints:
            bits = outlens[pos]
            rows.append(RatioRow(n=pos, bits=bits,
                                 ratio=bits / pos if pos else 0.0,
                                 label="{}:{}".format(label, cplabel)))
    else:
        for pos, cplabel in thin_checkpoints(stream.checkpoints):
            res = run_endmarked(cm, stream.text[:pos])
            if not res.ok:
                raise PdcRunError(res)
            bits = len(res.output)
            rows.append(RatioRow(n=pos, bits=bits,
                                 ratio=bits / pos if pos else 0.0,
                                 label="{}:{}".format(label, cplabel)))
    return rows


def tail_estimates(rows, burn=0.5):
    """Min and max ratio over the rows past burn * final prefix length."""
    if not rows:
        raise ValueError("no rows")
    cutoff = burn * rows[-1].n
    tail = [r for r in rows if r.n >= cutoff and r.n > 0]
    if not tail:
        tail = rows[-1:]
    return TailEstimate(lo=min(r.ratio for r in tail),
                        hi=max(r.ratio for r in tail),
                        start=tail[0].n)


def write_csv(rows, fh):
    fh.write("n,bits,ratio,label\n")
    for r in rows:
        fh.write("{},{},{:.6f},{}\n".format(r.n, r.bits, r.ratio, r.label))


def floor_scan(machine, min_len, max_len):
    """Per length, the cheapest output over all words: the compression floor."""
    cm = _as_compiled(machine)
    endmark = cm.mode == "endmark"
    rows = []
    for n in range(min_len, max_len + 1):
        best = None
        words = [[]]
        for _ in range(n):
            words = [w + [a] for w in words for a in range(cm.ns)]
        for ids in words:
            err, _c, _q, _s, out, _t = run_compiled(cm, ids, endmark=endmark)
            if err != ERR_OK:
                continue
            if best is None or len(out) < best:
                best = len(out)
        if best is None:
            raise RuntimeError("{} runs no word of length {}".format(cm.name, n))
        rows.append(RatioRow(n=n, bits=best, ratio=best / n,
                             label="{}:floor".format(cm.name)))
    return rows


# ------------------------------------------------------------------ presets

def preset_lemma1_floor(max_len=12):
    """No builtin machine compresses any word below 1/(2 |Q|)."""
    lines = []
    series = {}
    ok = True
    for name, spec in sorted(zoo.builtin_machines().items()):
        nq = len(spec.states)
        if nq > max_len:
            lines.append("{}: skipped ({} states > max length {})".format(
                name, nq, max_len))
            continue
        rows = floor_scan(spec, nq, max_len)
        series[name] = rows
        floor = 1.0 / (2 * nq)
        worst = min(r.ratio for r in rows)
        good = worst >= floor
        ok = ok and good
        lines.append("{}: min ratio {:.4f} over lengths {}..{}, floor "
                     "1/(2*{}) = {:.4f} -> {}".format(
                         name, worst, nq, max_len, nq, floor,
                         "ok" if good else "BELOW FLOOR"))
    return ok, series, lines


def preset_lemma2_limit(n_max=100000, points=12, tolerance=0.02):
    """The squeezers approach ratio 1/k^2 on all-zero input."""
    lines = []
    series = {}
    ok = True
    for k in (2, 3):
        spec = zoo.make_unary_squeezer(k)
        cm = _as_compiled(spec)
        ns = sorted({max(1, int(round(100 * (n_max / 100) ** (i / (points - 1)))))
                     for i in range(points)})
        rows = []
        for n in ns:
            res = run_endmarked(cm, "0" * n)
            rows.append(RatioRow(n=n, bits=len(res.output),
                                 ratio=len(res.output) / n,
                                 label="squeeze{}:zeros".format(k)))
        series["squeeze{}".format(k)] = rows
        final = rows[-1]
        target = 1.0 / (k * k)
        good = abs(final.ratio - target) <= tolerance * target
        ok = ok and good
        lines.append("squeeze{}: ratio {:.5f} at n={}, target 1/{} = {:.5f} "
                     "-> {}".format(k, final.ratio, final.n, k * k, target,
                                    "ok" if good else "OFF TARGET"))
        lz_r = lz_ratio("0" * final.n)
        lines.append("  (LZ78 on the same word: {:.5f})".format(lz_r))
    return ok, series, lines


def preset_lz_beats_pd(depth=4, seed=11, rep_floor=512):
    """Pump-derived repetition drives LZ78 far below the copier family."""
    from . import pumping
    family = pumping.preset_families()["trio"]
    blocks, stream = sequences.pd_hard_blocks(family.machines, depth,
                                              seed=seed, rep_floor=rep_floor)
    lz_rows = lz_series(stream)
    series = {"lz78": lz_rows}
    lines = []
    worst_machine = None
    for m in family.machines:
        rows = pdc_series(m, stream)
        series[m.name] = rows
        final = rows[-1].ratio
        if worst_machine is None or final < worst_machine:
            worst_machine = final
    lz_final = lz_rows[-1].ratio
    ok = lz_final <= 0.5 * worst_machine
    lines.append("blocks: " + ", ".join(
        "|t|={} |u|={} reps={}".format(len(b.head), len(b.loop), b.reps)
        for b in blocks))
    lines.append("LZ78 final ratio {:.4f}; machine family floor {:.4f} -> {}"
                 .format(lz_final, worst_machine,
                         "ok" if ok else "NO SEPARATION"))
    return ok, series, lines


def preset_pd_beats_lz(k=4, v=4, vprime=16, n_max=16):
    """The zone compressor beats LZ78 on its matched sectioned stream."""
    stream = sequences.build_S(k, v, n_max)
    spec = zoo.make_zone_compressor(k, v, vprime)
    zone_rows = pdc_series(spec, stream)
    lz_rows = lz_series(stream)
    series = {spec.name: zone_rows, "lz78": lz_rows}
    flag_rows = [r for r in zone_rows if ":flagX" in r.label.split(":", 1)[1]]
    last_flag = flag_rows[-1]
    lz_at = {r.n: r.ratio for r in lz_rows}
    lz_there = lz_at[last_flag.n]
    ok = last_flag.ratio <= 0.70 and lz_there >= last_flag.ratio + 0.15
    lines = [
        "stream {}: {} symbols, {} checkpoints".format(
            stream.name, len(stream.text), len(stream.checkpoints)),
        "zone ratio {:.4f} at n={} ({}), LZ78 {:.4f} there -> {}".format(
            last_flag.ratio, last_flag.n,
            last_flag.label.split(":", 1)[1], lz_there,
            "ok" if ok else "NO SEPARATION"),
    ]
    return ok, series, lines


PRESETS = {
    "lemma1-floor": preset_lemma1_floor,
    "lemma2-limit": preset_lemma2_limit,
    "lz-beats-pd": preset_lz_beats_pd,
    "pd-beats-lz": preset_pd_beats_lz,
}


def run_preset(name, **kwargs):
    if name not in PRESETS:
        raise KeyError("unknown preset {!r}; have: {}".format(
            name, ", ".join(sorted(PRESETS))))
    return PRESETS[name](**kwargs)

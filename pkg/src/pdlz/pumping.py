"""Pumping decompositions for plain machines and endmark output fitting.

A pump for a family of plain machines on a word w is a pair of positions
c < c' where every machine is in the same state with the same stack top at
both positions and, between them, never reaches below its stack height at c.
Repeating w[c:c'] then repeats each machine's behaviour verbatim: only stack
cells at or above the height at c are read on the segment, the cell at that
height holds the shared top at both ends, and everything deeper is never
touched, so C(t u^n) = x y^n exactly, with t = w[:c], u = w[c:c'], x = C(t),
y the output produced on the segment.  verify_pump_plain confirms that
equality by running; find_pumpable searches for the lexicographically first
(c, c') with c' - c at least a requested distance.

Endmark machines fold the stack into the output after the endmarker, so
their pumped outputs take the two-sided form x y^n z y2^n x2;
fit_and_verify_endmarked recovers such a split from sample outputs and
verifies it over a range of n.

default_dmin gives a distance floor that still guarantees a pump exists for
every long enough word: with p the product of |Q|*|stack alphabet| over the
family, heights move by less than k_push per step, and among any
|w|^(1/(p+1)) consecutive positions of minimal height some two must repeat
the (state, top) signature once the word is longer than roughly
(p * k_push * |F|)^(p+1).
"""

import bisect
from dataclasses import dataclass

from .kernels import ERR_OK, run_compiled
from .machine import compress, _as_compiled


@dataclass
class FamilyConstants:
    period: int     # product of |Q| * |stack alphabet| over the family
    push_max: int   # longest push string in any rule
    size: int       # number of machines


@dataclass
class PumpDecomposition:
    family: str
    word: str
    c: int
    cprime: int

    @property
    def head(self):
        return self.word[:self.c]

    @property
    def loop(self):
        return self.word[self.c:self.cprime]


@dataclass
class EndmarkFit:
    c: int
    x: str
    y: str
    z: str
    y2: str
    x2: str


@dataclass
class ColumnStats:
    n: int
    sigs: list      # per position: tuple of (state, top) over the family
    heights: list   # per machine: array of per-position stack heights
    minhs: list     # per machine: array of per-segment minimum heights


def family_constants(machines):
    cms = [_as_compiled(m) for m in machines]
    period = 1
    push_max = 1
    for cm in cms:
        period *= cm.nq * cm.ng
        if cm.max_push > push_max:
            push_max = cm.max_push
    return FamilyConstants(period=period, push_max=push_max, size=len(cms))


def default_dmin(constants, word_len):
    """Distance floor |w|^(1/(p+1)) / (k_push * |F|), rounded down."""
    p = constants.period
    root = word_len ** (1.0 / (p + 1))
    return int(root / (constants.push_max * constants.size))


def column_stats(machines, word):
    """Run every machine over the word with a lean trace; raises on failure."""
    cms = [_as_compiled(m) for m in machines]
    heights = []
    minhs = []
    per_machine_cols = []
    for cm in cms:
        if cm.mode != "plain":
            raise ValueError("column stats need plain machines, {} is {}"
                             .format(cm.name, cm.mode))
        err, consumed, _q, _s, _o, cols = run_compiled(
            cm, cm.to_ids(word), trace=1)
        if err != ERR_OK:
            raise RuntimeError("{} failed after {} symbols".format(
                cm.name, consumed))
        states, tops, hs, _outs, mins, _stacks = cols
        per_machine_cols.append((states, tops))
        heights.append(hs)
        minhs.append(mins)
    n = len(word)
    sigs = []
    for i in range(n + 1):
        sigs.append(tuple((st[i], tp[i]) for st, tp in per_machine_cols))
    return ColumnStats(n=n, sigs=sigs, heights=heights, minhs=minhs)


def _dip_bounds(heights, minhs, n):
    """For each position c, the first later position whose segment dips below
    the height at c (n+1 when none does)."""
    bound = [n + 1] * (n + 1)
    stack = [0]
    for x in range(1, n + 1):
        m = minhs[x]
        while stack and heights[stack[-1]] > m:
            bound[stack.pop()] = x
        stack.append(x)
    return bound


def find_pumpable(machines, word, dmin=None, family=""):
    """Lexicographically first (c, c') pump with c' - c >= max(1, dmin).

    dmin defaults to default_dmin over the family.  Returns None when no pair
    qualifies.
    """
    machines = list(machines)
    stats = column_stats(machines, word)
    n = stats.n
    if dmin is None:
        dmin = default_dmin(family_constants(machines), n)
    gap = max(1, dmin)

    buckets = {}
    for i, sig in enumerate(stats.sigs):
        buckets.setdefault(sig, []).append(i)

    bounds = [_dip_bounds(stats.heights[m], stats.minhs[m], n)
              for m in range(len(machines))]

    for c in range(0, n):
        hi = min(b[c] for b in bounds) - 1
        lo = c + gap
        if lo > hi:
            continue
        bucket = buckets[stats.sigs[c]]
        j = bisect.bisect_left(bucket, lo)
        if j < len(bucket) and bucket[j] <= hi:
            return PumpDecomposition(family=family, word=word,
                                     c=c, cprime=bucket[j])
    return None


def verify_pump_plain(machines, word, c, cprime, n_max=50):
    """Check C(t u^n) == x y^n for every machine and n in 0..n_max."""
    t = word[:c]
    u = word[c:cprime]
    if not u:
        return False, "empty loop"
    for m in machines:
        cm = _as_compiled(m)
        x = compress(cm, t)
        xy = compress(cm, word[:cprime])
        if not xy.startswith(x):
            return False, "{}: output on t u does not extend output on t".format(
                cm.name)
        y = xy[len(x):]
        for n in range(0, n_max + 1):
            if compress(cm, t + u * n) != x + y * n:
                return False, "{}: mismatch at n={}".format(cm.name, n)
    return True, None


def fit_and_verify_endmarked(machine, t, u, c_max=8, fit_span=4, n_max=40):
    """Fit C((t u^n)$) to x y^n z y2^n x2 and verify it for n in c..n_max.

    Searches the smallest c <= c_max where output lengths grow affinely over
    n in c..c+fit_span-1, brute-forces a consistent split of the sample
    outputs, and then checks every n up to n_max.  Returns an EndmarkFit or
    None.
    """
    cm = _as_compiled(machine)
    if cm.mode != "endmark":
        raise ValueError("machine {} is not an endmark machine".format(cm.name))
    if not u:
        raise ValueError("empty loop")
    outs = [compress(cm, t + u * n) for n in range(n_max + 1)]
    lens = [len(o) for o in outs]

    for c in range(0, c_max + 1):
        if c + fit_span > n_max + 1:
            break
        step = lens[c + 1] - lens[c]
        if step < 0:
            continue
        if any(lens[c + i + 1] - lens[c + i] != step
               for i in range(1, fit_span - 1)):
            continue
        const = lens[c] - c * step
        if const < 0:
            continue
        fit = _split_outputs(outs, c, step, const)
        if fit is None:
            continue
        x, y, z, y2, x2 = fit
        ok = all(outs[n] == x + y * n + z + y2 * n + x2
                 for n in range(c, n_max + 1))
        if ok:
            return EndmarkFit(c=c, x=x, y=y, z=z, y2=y2, x2=x2)
    return None


def _split_outputs(outs, c, step, const):
    """First (x, y, z, y2, x2) with |y|+|y2| = step, |x|+|z|+|x2| = const
    matching the samples at n = c and n = c+1."""
    a = outs[c]
    b = outs[c + 1]
    for ly in range(step + 1):
        ly2 = step - ly
        for lx in range(const + 1):
            x = b[:lx]
            if a[:lx] != x:
                continue
            y = b[lx:lx + ly]
            for lz in range(const - lx + 1):
                lx2 = const - lx - lz
                z = b[lx + (c + 1) * ly:lx + (c + 1) * ly + lz]
                y2 = b[lx + (c + 1) * ly + lz:
                       lx + (c + 1) * ly + lz + (c + 1) * ly2]
                x2 = b[len(b) - lx2:] if lx2 else ""
                cand_a = x + y * c + z + y2 * c + x2
                cand_b = x + y * (c + 1) + z + y2 * (c + 1) + x2
                if cand_a == a and cand_b == b:
                    return x, y, z, y2, x2
    return None


# ------------------------------------------------------------ preset families

@dataclass
class PresetFamily:
    name: str
    kind: str           # "plain" or "endmark"
    machines: list
    head: str = ""      # t for endmark fitting
    loop: str = ""      # u for endmark fitting


def preset_families():
    from . import zoo
    identity = zoo.make_identity()
    walk = zoo.make_stack_walk()
    parity = zoo.make_run_parity()
    presets = [
        PresetFamily("unit", "plain", [identity]),
        PresetFamily("pair", "plain", [identity, walk]),
        PresetFamily("trio", "plain", [identity, walk, parity]),
        PresetFamily("squeeze2", "endmark", [zoo.make_unary_squeezer(2)],
                     head="", loop="0" * 4),
        PresetFamily("squeeze3", "endmark", [zoo.make_unary_squeezer(3)],
                     head="", loop="0" * 9),
        PresetFamily("tally2", "endmark", [zoo.make_block_counter(2)],
                     head="", loop="00"),
    ]
    return {p.name: p for p in presets}


# -------------------------------------------------------------- serialization

def write_decompositions(decomps, fh):
    for d in decomps:
        fh.write("family {}\n".format(d.family or "-"))
        fh.write("word {}\n".format(d.word))
        fh.write("cut {} {}\n".format(d.c, d.cprime))
        fh.write("\n")


def read_decompositions(text):
    decomps = []
    family = word = None
    cut = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "family" and len(toks) == 2:
            family = toks[1] if toks[1] != "-" else ""
        elif toks[0] == "word" and len(toks) == 2:
            word = toks[1]
        elif toks[0] == "cut" and len(toks) == 3:
            cut = (int(toks[1]), int(toks[2]))
            if word is None:
                raise ValueError("line {}: cut before word".format(lineno))
            if not (0 <= cut[0] < cut[1] <= len(word)):
                raise ValueError("line {}: cut out of range".format(lineno))
            decomps.append(PumpDecomposition(family=family or "", word=word,
                                             c=cut[0], cprime=cut[1]))
            family = word = None
            cut = None
        else:
            raise ValueError("line {}: bad record line {!r}".format(lineno, line))
    if word is not None:
        raise ValueError("trailing incomplete record")
    return decomps

"""Word families and adversarial streams.

* enumerate_T / restricted_T: binary words with no run of k ones, the raw
  material of the zone streams.
* zone_split / build_S: the sectioned stream matched to the zone compressor.
  Section n lists the palindromes of the restricted universe, then v X zones
  and their reversed Y zones with strictly growing all-ones flags between
  them; LZ78 must spell every member twice while the zone machine pops each
  Y zone off its stack.
* choose_repetition_counts: a self-similar stream (each block doubles the
  prefix) whose LZ78 ratio is driven below 4/(i+1)-style targets per block.
* pd_hard_blocks: blocks t u^m built from pump decompositions of a machine
  family, with repetition counts that keep each block dominant over
  everything before it.
* random_word: deterministic words from a splitmix64 generator.
"""

from dataclasses import dataclass, field

from .kernels import make_lz_stream
from . import pumping


# ----------------------------------------------------------- run-constrained

def enumerate_T(n, k):
    """All length-n binary words with no run of k ones, in lexicographic order."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    word = []

    def rec(run):
        if len(word) == n:
            out.append("".join(word))
            return
        word.append("0")
        rec(0)
        word.pop()
        if run + 1 < k:
            word.append("1")
            rec(run + 1)
            word.pop()

    rec(0)
    return out


def restricted_T(n, k):
    """Members of enumerate_T(n, k) that start and end with 0."""
    if n < 1:
        raise ValueError("n must be positive")
    return [w for w in enumerate_T(n, k) if w[0] == "0" and w[-1] == "0"]


@dataclass
class ZonePlan:
    n: int
    k: int
    v: int
    palindromes: list
    x_zones: list   # v lists of words, each word used left to right
    y_zones: list   # matching reversed zones, in emission order


def zone_split(n, k, v):
    """Split the restricted universe into palindromes and v reverse-pair zones.

    Non-palindromic members pair up with their reversals; the lexicographically
    smaller member of each pair goes to an X zone and the reversal of the X
    text forms the Y zone.  Raises ValueError when there are fewer pairs than
    zones ("too-small-n").
    """
    uni = restricted_T(n, k)
    pals = [w for w in uni if w == w[::-1]]
    pairs = sorted({(min(w, w[::-1]), max(w, w[::-1]))
                    for w in uni if w != w[::-1]})
    if len(pairs) < v:
        raise ValueError(
            "too-small-n: {} reverse pairs at n={}, k={} but {} zones".format(
                len(pairs), n, k, v))
    t = len(pairs) // v
    zones = [pairs[i * t:(i + 1) * t] for i in range(v - 1)]
    zones.append(pairs[(v - 1) * t:])
    x_zones = [[p[0] for p in z] for z in zones]
    y_zones = [[p[0][::-1] for p in reversed(z)] for z in zones]
    return ZonePlan(n=n, k=k, v=v, palindromes=pals,
                    x_zones=x_zones, y_zones=y_zones)


def flag_len(n, k, v):
    """Length of the all-ones flag opening section n: 2k, growing by v+1."""
    return 2 * k + (n - k) * (v + 1)


@dataclass
class CheckpointedStream:
    name: str
    text: str
    checkpoints: list           # (position, label), position = prefix length
    meta: dict = field(default_factory=dict)


def build_S(k, v, n_max):
    """The sectioned stream for the zone compressor.

    Early phase: every binary word of each length below k in lexicographic
    order, then flags 1^k .. 1^(2k-1).  Then one section per n from k to
    n_max that has at least v reverse pairs: palindromes, flag, and
    alternating X zones and Y zones with flags of lengths flag_len(n,k,v)+i
    after each X.  Checkpoints mark every zone end and flag end.
    """
    parts = []
    checkpoints = []
    pos = 0

    def emit(s, label):
        nonlocal pos
        parts.append(s)
        pos += len(s)
        checkpoints.append((pos, label))

    for n in range(1, k):
        emit("".join(format(i, "0{}b".format(n)) for i in range(2 ** n)),
             "early:S{}".format(n))
    for j in range(k, 2 * k):
        emit("1" * j, "early:flag{}".format(j))
    early_len = pos

    sections = []
    for n in range(k, n_max + 1):
        try:
            plan = zone_split(n, k, v)
        except ValueError:
            continue
        sections.append(n)
        f = flag_len(n, k, v)
        emit("".join(plan.palindromes), "S{}:A".format(n))
        emit("1" * f, "S{}:flagA".format(n))
        for i in range(1, v + 1):
            emit("".join(plan.x_zones[i - 1]), "S{}:X{}".format(n, i))
            emit("1" * (f + i), "S{}:flagX{}".format(n, i))
            emit("".join(plan.y_zones[i - 1]), "S{}:Y{}".format(n, i))

    return CheckpointedStream(
        name="S-k{}-v{}-n{}".format(k, v, n_max),
        text="".join(parts),
        checkpoints=checkpoints,
        meta={"k": k, "v": v, "n_max": n_max, "early_len": early_len,
              "sections": sections},
    )


# ------------------------------------------------------------- random words

_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB
_MASK64 = 0xFFFFFFFFFFFFFFFF


def splitmix64(seed):
    """Endless generator of 64-bit values (splitmix64 update and finalizer)."""
    x = seed & _MASK64
    while True:
        x = (x + _SM_GAMMA) & _MASK64
        z = x
        z = ((z ^ (z >> 30)) * _SM_MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _SM_MIX2) & _MASK64
        yield z ^ (z >> 31)


def random_word(seed, length, alphabet="01"):
    """Deterministic pseudo-random word; same (seed, length, alphabet), same word."""
    nsym = len(alphabet)
    gen = splitmix64(seed)
    if nsym == 2:
        out = []
        need = length
        while need > 0:
            bits = next(gen)
            take = min(need, 64)
            for _ in range(take):
                out.append("01"[bits & 1])
                bits >>= 1
            need -= take
        return "".join(out)
    return "".join(alphabet[next(gen) % nsym] for _ in range(length))


# ------------------------------------------------- LZ78-friendly repetition

@dataclass
class RepetitionRecipe:
    base: str
    counts: list        # doublings applied per later block
    ratios: list        # LZ78 ratio at each block end
    stream: CheckpointedStream


def choose_repetition_counts(depth, seed=7, base_len=2048, budget=1 << 22):
    """Build a stream whose LZ78 ratio falls below scale*4/(i+1) at block i.

    Block 1 is a pseudo-random word; every later block doubles the current
    prefix until the target for its index is met, where scale caps the
    targets at the block-1 ratio.  Raises RuntimeError when the budget would
    be exceeded or an intermediate ratio exceeds twice its block target.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    base = random_word(seed, base_len)
    stream = make_lz_stream(2)
    ids = [int(c) for c in base]
    stream.feed(ids)
    text = ids
    checkpoints = [(len(text), "block1")]
    r1 = stream.bits_now() / len(text)
    ratios = [r1]
    scale = min(1.0, r1)
    counts = []
    for i in range(2, depth + 1):
        target = scale * 4 / (i + 1)
        doublings = 0
        while stream.bits_now() / len(text) > target:
            if 2 * len(text) > budget:
                raise RuntimeError(
                    "repetition budget exhausted at block {}".format(i))
            stream.feed(text)
            text = text + text
            doublings += 1
            ratio = stream.bits_now() / len(text)
            if ratio > 2 * target:
                raise RuntimeError(
                    "intermediate ratio {:.3f} above bound at block {}".format(
                        ratio, i))
        counts.append(doublings)
        checkpoints.append((len(text), "block{}".format(i)))
        ratios.append(stream.bits_now() / len(text))
    word = "".join("01"[b] for b in text)
    return RepetitionRecipe(
        base=base, counts=counts, ratios=ratios,
        stream=CheckpointedStream(
            name="repeat-d{}".format(depth), text=word,
            checkpoints=checkpoints,
            meta={"depth": depth, "seed": seed, "base_len": base_len}),
    )


# ------------------------------------------------- pump-derived blocks

@dataclass
class HardBlock:
    head: str       # t
    loop: str       # u
    reps: int       # n, the chosen repetition count
    min_reps: int   # n', the stage threshold


def pd_hard_blocks(machines, depth, seed=11, word_len=512, rep_floor=512,
                   dmin=None):
    """Blocks t_s u_s^{n_s} from pump decompositions of one machine family.

    Stage s in 1..depth pumps a fresh pseudo-random word.  The stage
    threshold n'_s is the least n with (1-1/s)|u^n| > (1-2/s)|t u^n|.  The
    chosen counts then satisfy, for every stage: n_s >= max(n'_s, rep_floor),
    the block is longer than all previous blocks combined, and it is more
    than s times longer than the next stage's threshold block t u^{n'}.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    decomps = []
    for s in range(1, depth + 1):
        word = random_word(seed + s, word_len)
        found = pumping.find_pumpable(machines, word, dmin=dmin)
        if found is None:
            raise RuntimeError("no pump decomposition at stage {}".format(s))
        t = word[:found.c]
        u = word[found.c:found.cprime]
        if s <= 2:
            n_min = 1
        else:
            n_min = (s - 2) * len(t) // len(u) + 1
        decomps.append((t, u, max(1, n_min)))

    blocks = []
    total = 0
    parts = []
    checkpoints = []
    for s in range(1, depth + 1):
        t, u, n_min = decomps[s - 1]
        need = max(n_min, rep_floor)
        # longer than everything before it
        if len(t) + need * len(u) <= total:
            need = (total - len(t)) // len(u) + 1
        # dominate the next stage's threshold block
        if s < depth:
            t2, u2, n2_min = decomps[s]
            bound = s * (len(t2) + n2_min * len(u2))
            if len(t) + need * len(u) <= bound:
                need = (bound - len(t)) // len(u) + 1
        block = t + u * need
        blocks.append(HardBlock(head=t, loop=u, reps=need, min_reps=n_min))
        parts.append(block)
        total += len(block)
        checkpoints.append((total, "block{}".format(s)))

    stream = CheckpointedStream(
        name="pdhard-d{}".format(depth),
        text="".join(parts),
        checkpoints=checkpoints,
        meta={"depth": depth, "seed": seed, "word_len": word_len,
              "rep_floor": rep_floor},
    )
    return blocks, stream

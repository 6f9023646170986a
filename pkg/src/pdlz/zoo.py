"""Built-in machines: copiers, two shrinking endmark compressors, and the
zone compressor that beats LZ78 on its matched stream family.

All machines use the binary input alphabet.  Push strings are written
top-at-left, as in the text format.

* identity / stack-walk / run-parity: information-lossless copiers whose
  output equals the input; they differ in how they exercise the stack and the
  state set, which makes them useful as pump-search families.
* unary squeezer (modulus k): on 0^n followed by the endmarker it emits
  0 1^i 0^m 1^j where n = k*k*m + k*j + i and i,j < k, about n/k^2 symbols;
  any word containing a 1 is passed through behind a 1 marker.  The final
  state carries j, which keeps (output, state) injective.
* block counter (modulus k): stackless; emits one 0 per k leading zeros, a
  1 0^i 1 bracket when the first 1 arrives in count state i, then copies.
  On all-zero input the endmarker rule emits 1^(i+1) instead.
* zone compressor (k, v, vprime): tuned to the sectioned stream built by
  sequences.build_S(k, v, n_max).  It copies everything except Y zones.  An
  X zone is pushed bit by bit; the following all-ones flag is detected at a
  run of k ones (the k-1 ones pushed meanwhile are unwound by lambda rules);
  the Y zone, the X zone reversed, is then popped bit against bit, emitting
  one 0 per vprime matched bits.  A mismatched bit diverts to an error state
  that copies the rest of the input verbatim.
"""

from .machine import ENDMARK, LAMBDA, PdcSpec


def _spec(name, alphabet, stack_alphabet, states, start_state, start_stack,
          mode, rules):
    return PdcSpec(name=name, alphabet=alphabet, stack_alphabet=stack_alphabet,
                   states=tuple(states), start_state=start_state,
                   start_stack=start_stack, mode=mode, rules=rules)


def make_identity(alphabet="01"):
    rules = {("q", x, "z"): ("q", "z", x) for x in alphabet}
    return _spec("identity", alphabet, "z", ["q"], "q", "z", "plain", rules)


def make_stack_walk():
    """Copies its input while pushing a marker per 0 and popping one per 1."""
    rules = {
        ("s", "0", "z"): ("s", "Az", "0"),
        ("s", "0", "A"): ("s", "AA", "0"),
        ("s", "1", "A"): ("s", "", "1"),
        ("s", "1", "z"): ("s", "z", "1"),
    }
    return _spec("stack-walk", "01", "zA", ["s"], "s", "z", "plain", rules)


def make_run_parity():
    """Copies its input while tracking the parity of the number of 1s seen."""
    rules = {
        ("even", "0", "z"): ("even", "z", "0"),
        ("even", "1", "z"): ("odd", "z", "1"),
        ("odd", "0", "z"): ("odd", "z", "0"),
        ("odd", "1", "z"): ("even", "z", "1"),
    }
    return _spec("run-parity", "01", "z", ["even", "odd"], "even", "z",
                 "plain", rules)


def make_unary_squeezer(k):
    """Endmark machine compressing 0^n to about n/k^2 symbols."""
    if k < 2:
        raise ValueError("k must be at least 2")
    counts = ["cnt{}".format(i) for i in range(k)]
    flushes = ["fl{}".format(i) for i in range(k)]
    pops = ["pop{}".format(i) for i in range(k)]
    dones = ["done{}".format(i) for i in range(k)]
    states = counts + flushes + pops + dones + ["copy", "copyend"]
    rules = {}
    for i in range(k):
        for z in "zA":
            if i < k - 1:
                rules[(counts[i], "0", z)] = (counts[i + 1], z, "")
            else:
                rules[(counts[i], "0", z)] = (counts[0], "A" + z, "")
            rules[(counts[i], "1", z)] = (flushes[i], z, "1")
            rules[(counts[i], ENDMARK, z)] = (pops[0], z, "0" + "1" * i)
        rules[(flushes[i], LAMBDA, "A")] = (flushes[i], "", "0" * k)
        rules[(flushes[i], LAMBDA, "z")] = ("copy", "z", "0" * i + "1")
        rules[(pops[i], LAMBDA, "A")] = (pops[(i + 1) % k], "",
                                         "0" if i == k - 1 else "")
        rules[(pops[i], LAMBDA, "z")] = (dones[i], "z", "1" * i)
    for x in "01":
        rules[("copy", x, "z")] = ("copy", "z", x)
    rules[("copy", ENDMARK, "z")] = ("copyend", "z", "")
    return _spec("squeeze{}".format(k), "01", "zA", states, counts[0], "z",
                 "endmark", rules)


def make_block_counter(k):
    """Endmark machine compressing 0^n to n/k + O(1) symbols, stack untouched."""
    if k < 2:
        raise ValueError("k must be at least 2")
    cs = ["c{}".format(i) for i in range(k)]
    states = cs + ["copy", "copyend", "done"]
    rules = {}
    for i in range(k):
        if i < k - 1:
            rules[(cs[i], "0", "z")] = (cs[i + 1], "z", "")
        else:
            rules[(cs[i], "0", "z")] = (cs[0], "z", "0")
        rules[(cs[i], "1", "z")] = ("copy", "z", "1" + "0" * i + "1")
        rules[(cs[i], ENDMARK, "z")] = ("done", "z", "1" * (i + 1))
    for x in "01":
        rules[("copy", x, "z")] = ("copy", "z", x)
    rules[("copy", ENDMARK, "z")] = ("copyend", "z", "")
    return _spec("tally{}".format(k), "01", "z", states, cs[0], "z",
                 "endmark", rules)


def zone_early_count(k):
    """Length of the fixed early phase of the matched stream: all binary
    words of each length below k, then flags 1^k .. 1^(2k-1)."""
    return sum(n * 2 ** n for n in range(1, k)) + sum(range(k, 2 * k))


def make_zone_compressor(k, v, vprime):
    """Plain-mode compressor matched to sequences.build_S(k, v, n_max)."""
    if k < 2 or v < 1 or vprime < 1:
        raise ValueError("need k >= 2, v >= 1, vprime >= 1")
    w = zone_early_count(k)
    states = []
    rules = {}

    early = ["e{}".format(t) for t in range(w)]
    states += early
    a_states = ["a{}".format(i) for i in range(k)]
    states += a_states
    states.append("fA")
    x_states = {(j, i): "x{}_{}".format(j, i)
                for j in range(1, v + 1) for i in range(k)}
    r_states = {(j, t): "r{}_{}".format(j, t)
                for j in range(1, v + 1) for t in range(k)}
    g_states = {j: "g{}".format(j) for j in range(1, v + 1)}
    y_states = {(j, c): "y{}_{}".format(j, c)
                for j in range(1, v + 1) for c in range(1, vprime + 1)}
    for j in range(1, v + 1):
        states += [x_states[(j, i)] for i in range(k)]
        states += [r_states[(j, t)] for t in range(k)]
        states.append(g_states[j])
        states += [y_states[(j, c)] for c in range(1, vprime + 1)]
    states.append("err")

    # early phase: copy w symbols blindly
    for t in range(w):
        nxt = early[t + 1] if t + 1 < w else "a0"
        for x in "01":
            rules[(early[t], x, "z")] = (nxt, "z", x)

    # A zones: copy, counting the current run of ones; a run of k ones is the
    # start of the flag after A
    for i in range(k):
        rules[(a_states[i], "0", "z")] = ("a0", "z", "0")
        nxt = a_states[i + 1] if i < k - 1 else "fA"
        rules[(a_states[i], "1", "z")] = (nxt, "z", "1")
    rules[("fA", "1", "z")] = ("fA", "z", "1")
    rules[("fA", "0", "z")] = (x_states[(1, 0)], "0z", "0")

    for j in range(1, v + 1):
        # X zone: push every bit; k consecutive ones mean the flag started
        for i in range(k):
            xi = x_states[(j, i)]
            for z in "01z":
                push0 = "0" + z
                rules[(xi, "0", z)] = (x_states[(j, 0)], push0, "0")
                if i < k - 1:
                    rules[(xi, "1", z)] = (x_states[(j, i + 1)], "1" + z, "1")
                else:
                    rules[(xi, "1", z)] = (r_states[(j, 0)], z, "1")
        # correction: unwind the k-1 flag ones that were pushed as content
        for t in range(k):
            rt = r_states[(j, t)]
            if t < k - 1:
                rules[(rt, LAMBDA, "1")] = (r_states[(j, t + 1)], "", "")
                rules[(rt, LAMBDA, "0")] = ("err", "0", "")
            else:
                rules[(rt, LAMBDA, "1")] = ("err", "1", "")
                rules[(rt, LAMBDA, "0")] = (g_states[j], "0", "")
            rules[(rt, LAMBDA, "z")] = ("err", "z", "")
        # cruise the rest of the flag; its first 0 is the first Y bit, which
        # pops the matching top without a compare
        gj = g_states[j]
        for z in "01z":
            rules[(gj, "1", z)] = (gj, z, "1")
        rules[(gj, "0", "0")] = (y_states[(j, 1)], "", "0")
        rules[(gj, "0", "1")] = ("err", "1", "0")
        rules[(gj, "0", "z")] = ("err", "z", "0")
        # Y zone: pop and compare, emitting one 0 per vprime matches;
        # at the bottom the zone is spent and the consumed bit already
        # belongs to the next zone (X, or A when j == v)
        for c in range(1, vprime + 1):
            yc = y_states[(j, c)]
            nxt = y_states[(j, c + 1)] if c < vprime else y_states[(j, 1)]
            emit = "0" if c == vprime else ""
            for b in "01":
                other = "1" if b == "0" else "0"
                rules[(yc, b, b)] = (nxt, "", emit)
                rules[(yc, b, other)] = ("err", other, b)
                if j < v:
                    tgt = x_states[(j + 1, 1 if b == "1" else 0)]
                    rules[(yc, b, "z")] = (tgt, b + "z", b)
                else:
                    tgt = a_states[1] if b == "1" else "a0"
                    rules[(yc, b, "z")] = (tgt, "z", b)

    for x in "01":
        for z in "01z":
            rules[("err", x, z)] = ("err", z, x)

    name = "zone-{}-{}-{}".format(k, v, vprime)
    return _spec(name, "01", "z01", states, early[0] if w else "a0", "z",
                 "plain", rules)


def builtin_machines():
    """Name -> spec for every machine shipped with the package."""
    ms = [
        make_identity(),
        make_stack_walk(),
        make_run_parity(),
        make_unary_squeezer(2),
        make_unary_squeezer(3),
        make_unary_squeezer(4),
        make_block_counter(2),
        make_block_counter(3),
        make_zone_compressor(2, 1, 2),
        make_zone_compressor(4, 4, 16),
    ]
    return {m.name: m for m in ms}


def get_builtin(name):
    machines = builtin_machines()
    if name not in machines:
        raise KeyError("no builtin machine named {!r}; have: {}".format(
            name, ", ".join(sorted(machines))))
    return machines[name]

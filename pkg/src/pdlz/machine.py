"""Pushdown compressor model: spec objects, a text format, validation, runs.

A machine is a deterministic pushdown transducer: finitely many states, an
input alphabet, a stack alphabet with a distinguished bottom symbol, and
partial transition/output maps keyed by (state, input, stack-top).  The input
slot of a rule is a real symbol, "-" for a lambda rule (fires without reading
input) or "$" for an endmarker rule (fires once, after the last symbol, in
machines with mode "endmark").  A rule pops the stack top, pushes a string
written top-at-left, moves to a state and appends an output string.

Running a word: apply lambda rules until none fires, then for each symbol
apply its rule followed by lambda rules again.  Machines must be deterministic
(a lambda rule at (q, Z) excludes symbol and endmarker rules there), must keep
the bottom symbol at the bottom and nowhere else, and must not be able to
fire lambda rules forever: from any configuration of stack height h at most
h*|Q| + |Q| lambda applications are allowed before the run is aborted.

The compressor's value on a word is the accumulated output, and a machine is
information-lossless when the pair (output, final state) determines the word;
il_check verifies that exhaustively up to a length bound.
"""

from dataclasses import dataclass, field

from . import kernels
from .kernels import (ERR_LAMBDA_BUDGET, ERR_OK, ERR_STACK_EXHAUSTED,
                      ERR_UNDEFINED, CompiledPdc, compile_machine,
                      run_compiled)

LAMBDA = "-"
ENDMARK = "$"
RESERVED_CHARS = "-$#'"
MODES = ("plain", "endmark")

_ERROR_NAMES = {
    ERR_UNDEFINED: "undefined-transition",
    ERR_LAMBDA_BUDGET: "lambda-budget",
    ERR_STACK_EXHAUSTED: "stack-exhausted",
}


class PdcFormatError(ValueError):
    pass


class PdcRunError(RuntimeError):
    def __init__(self, result):
        super().__init__("run failed: {} after {} symbols".format(
            result.error, result.consumed))
        self.result = result


@dataclass(frozen=True)
class PdcSpec:
    """A machine description.  Treat instances as immutable.

    rules maps (state, insym, stacksym) to (next_state, push, out); push is
    written top-at-left and out is over the input alphabet.
    """
    name: str
    alphabet: str
    stack_alphabet: str
    states: tuple
    start_state: str
    start_stack: str
    mode: str
    rules: dict = field(compare=False)


@dataclass
class ValidationReport:
    errors: list
    warnings: list

    @property
    def ok(self):
        return not self.errors


@dataclass
class RunResult:
    ok: bool
    error: object   # None or one of the _ERROR_NAMES values
    consumed: int
    state: str
    stack: str      # bottom first
    output: str


@dataclass
class Column:
    pos: int
    state: str
    top: str
    height: int
    outlen: int
    minh: int
    stack: object = None   # bottom-first string when traced with full=True


@dataclass
class Diagram:
    word: str
    endmark: bool
    ok: bool
    error: object
    columns: list


@dataclass
class IlReport:
    ok: bool
    checked: int
    collisions: list    # (word_a, word_b) pairs with equal (output, state)
    errors: list        # words whose run failed


# --------------------------------------------------------------- validation

def _check_symbol_set(kind, syms, errors):
    if not syms:
        errors.append("{} is empty".format(kind))
    seen = set()
    for c in syms:
        if c in RESERVED_CHARS or c.isspace():
            errors.append("{} contains reserved character {!r}".format(kind, c))
        if c in seen:
            errors.append("{} repeats {!r}".format(kind, c))
        seen.add(c)


def validate_spec(spec):
    """Check a spec against the machine contract; see the module docstring."""
    errors = []
    warnings = []

    if not spec.name or any(c.isspace() for c in spec.name):
        errors.append("machine name must be a single non-empty token")
    _check_symbol_set("alphabet", spec.alphabet, errors)
    _check_symbol_set("stack alphabet", spec.stack_alphabet, errors)
    if not spec.states:
        errors.append("no states")
    seen = set()
    for s in spec.states:
        if not s or any(c.isspace() for c in s) or "'" in s:
            errors.append("bad state name {!r}".format(s))
        if s in seen:
            errors.append("state {!r} repeated".format(s))
        seen.add(s)
    if spec.start_state not in seen:
        errors.append("start state {!r} not a state".format(spec.start_state))
    if spec.start_stack not in set(spec.stack_alphabet):
        errors.append("start stack symbol {!r} not in stack alphabet".format(
            spec.start_stack))
    if spec.mode not in MODES:
        errors.append("mode must be one of {}".format("/".join(MODES)))
    if errors:
        return ValidationReport(errors, warnings)

    alpha = set(spec.alphabet)
    gamma = set(spec.stack_alphabet)
    states = set(spec.states)
    z0 = spec.start_stack

    lambda_slots = set()
    for (q, a, z), (q2, push, out) in spec.rules.items():
        where = "rule ({}, {}, {})".format(q, a, z)
        if q not in states or q2 not in states:
            errors.append("{}: unknown state".format(where))
            continue
        if z not in gamma:
            errors.append("{}: unknown stack symbol".format(where))
            continue
        if a == ENDMARK:
            if spec.mode != "endmark":
                errors.append("{}: endmarker rule in plain machine".format(where))
        elif a != LAMBDA and a not in alpha:
            errors.append("{}: unknown input symbol".format(where))
            continue
        if a == LAMBDA:
            lambda_slots.add((q, z))
        bad = [c for c in push if c not in gamma]
        if bad:
            errors.append("{}: push uses {!r}".format(where, bad[0]))
        bad = [c for c in out if c not in alpha]
        if bad:
            errors.append("{}: output uses {!r}".format(where, bad[0]))
        if z == z0:
            if not push or push[-1] != z0:
                errors.append("{}: pops the bottom symbol for good "
                              "(push must end with {!r})".format(where, z0))
            if z0 in push[:-1]:
                errors.append("{}: pushes an extra bottom symbol".format(where))
        elif z0 in push:
            errors.append("{}: pushes the bottom symbol above the bottom".format(where))

    for (q, a, z) in spec.rules:
        if a != LAMBDA and (q, z) in lambda_slots:
            errors.append("nondeterministic: lambda rule and ({}, {}, {}) both "
                          "fire at ({}, {})".format(q, a, z, q, z))
    if errors:
        return ValidationReport(errors, warnings)

    # lambda budget: a closure seeded from a single stack symbol must halt
    # within 2|Q| applications (the height-1 case of the runtime budget).
    nq = len(spec.states)
    for q in spec.states:
        for z in spec.stack_alphabet:
            state, stack, fires = q, [z], 0
            while stack:
                rule = spec.rules.get((state, LAMBDA, stack[-1]))
                if rule is None:
                    break
                fires += 1
                if fires > 2 * nq:
                    errors.append("lambda rules can loop from ({}, {})".format(q, z))
                    break
                state = rule[0]
                stack.pop()
                stack.extend(reversed(rule[1]))

    if spec.mode == "endmark":
        # After the endmarker only lambda rules run; everything reachable
        # there must leave the stack no taller, so the run always halts.
        targets = set()
        for (q, a, z), (q2, push, out) in spec.rules.items():
            if a == ENDMARK:
                targets.add(q2)
                if len(push) > 1 or (push and push != z):
                    errors.append("endmarker rule at ({}, {}) grows the stack"
                                  .format(q, z))
        grew = True
        while grew:
            grew = False
            for (q, a, z), (q2, push, out) in spec.rules.items():
                if a == LAMBDA and q in targets and q2 not in targets:
                    targets.add(q2)
                    grew = True
        for (q, a, z), (q2, push, out) in spec.rules.items():
            if a == LAMBDA and q in targets and (len(push) > 1 or
                                                 (push and push != z)):
                errors.append("lambda rule at ({}, {}) can grow the stack "
                              "after the endmarker".format(q, z))
        if not targets:
            warnings.append("endmark machine has no endmarker rules")

    reached = {spec.start_state}
    frontier = [spec.start_state]
    targets_of = {}
    for (q, a, z), (q2, push, out) in spec.rules.items():
        targets_of.setdefault(q, []).append(q2)
    while frontier:
        q = frontier.pop()
        for q2 in targets_of.get(q, ()):
            if q2 not in reached:
                reached.add(q2)
                frontier.append(q2)
    for s in spec.states:
        if s not in reached:
            warnings.append("state {!r} unreachable".format(s))

    return ValidationReport(errors, warnings)


# -------------------------------------------------------------- text format

def parse_pdc(text):
    """Parse the machine text format; returns a PdcSpec (not yet validated)."""
    name = None
    alphabet = None
    stack_alphabet = None
    start = None
    mode = None
    states = []
    state_seen = set()
    rules = {}

    def unquote(tok):
        if len(tok) >= 2 and tok[0] == "'" and tok[-1] == "'":
            return tok[1:-1]
        return tok

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]

        def fail(msg):
            raise PdcFormatError("line {}: {}".format(lineno, msg))

        if head == "pdc":
            if name is not None:
                fail("duplicate pdc line")
            if len(toks) != 2:
                fail("usage: pdc <name>")
            name = toks[1]
        elif head == "alphabet":
            if alphabet is not None:
                fail("duplicate alphabet line")
            if len(toks) != 2:
                fail("usage: alphabet <symbols>")
            alphabet = toks[1]
        elif head == "stack":
            if stack_alphabet is not None:
                fail("duplicate stack line")
            if len(toks) != 2:
                fail("usage: stack <symbols>")
            stack_alphabet = toks[1]
        elif head == "start":
            if start is not None:
                fail("duplicate start line")
            if len(toks) != 3:
                fail("usage: start <state> <stacksym>")
            start = (toks[1], toks[2])
        elif head == "mode":
            if mode is not None:
                fail("duplicate mode line")
            if len(toks) != 2 or toks[1] not in MODES:
                fail("usage: mode plain|endmark")
            mode = toks[1]
        elif head == "rule":
            if len(toks) != 9 or toks[4] != "->" or toks[7] != "out":
                fail("usage: rule <state> <sym|-|$> <stacksym> -> "
                     "<state> <push|''> out <out|''>")
            q, a, z = toks[1], toks[2], toks[3]
            q2, push, out = toks[5], unquote(toks[6]), unquote(toks[8])
            if len(a) != 1 or len(z) != 1:
                fail("input and stack symbols are single characters")
            key = (q, a, z)
            if key in rules:
                fail("duplicate rule ({}, {}, {})".format(q, a, z))
            rules[key] = (q2, push, out)
            for s in (q, q2):
                if s not in state_seen:
                    state_seen.add(s)
                    states.append(s)
        else:
            fail("unknown directive {!r}".format(head))

    if name is None:
        raise PdcFormatError("missing pdc line")
    if alphabet is None:
        raise PdcFormatError("missing alphabet line")
    if stack_alphabet is None:
        raise PdcFormatError("missing stack line")
    if start is None:
        raise PdcFormatError("missing start line")
    if start[0] not in state_seen:
        state_seen.add(start[0])
        states.insert(0, start[0])
    return PdcSpec(
        name=name,
        alphabet=alphabet,
        stack_alphabet=stack_alphabet,
        states=tuple(states),
        start_state=start[0],
        start_stack=start[1],
        mode=mode or "plain",
        rules=rules,
    )


def format_pdc(spec):
    """Render a spec in the text format with canonical rule order."""
    lines = [
        "pdc {}".format(spec.name),
        "alphabet {}".format(spec.alphabet),
        "stack {}".format(spec.stack_alphabet),
        "start {} {}".format(spec.start_state, spec.start_stack),
        "mode {}".format(spec.mode),
    ]
    state_pos = {s: i for i, s in enumerate(spec.states)}
    in_pos = {c: i for i, c in enumerate(spec.alphabet)}
    in_pos[LAMBDA] = len(in_pos)
    in_pos[ENDMARK] = len(in_pos)
    stk_pos = {c: i for i, c in enumerate(spec.stack_alphabet)}

    def tok(s):
        return s if s else "''"

    for (q, a, z) in sorted(spec.rules,
                            key=lambda k: (state_pos.get(k[0], 0),
                                           in_pos.get(k[1], 0),
                                           stk_pos.get(k[2], 0))):
        q2, push, out = spec.rules[(q, a, z)]
        lines.append("rule {} {} {} -> {} {} out {}".format(
            q, a, z, q2, tok(push), tok(out)))
    return "\n".join(lines) + "\n"


def load_pdc(text):
    """parse_pdc + validate_spec; raises PdcFormatError on any error."""
    spec = parse_pdc(text)
    report = validate_spec(spec)
    if not report.ok:
        raise PdcFormatError("; ".join(report.errors))
    return spec


# ---------------------------------------------------------------- execution

def _as_compiled(m):
    if isinstance(m, CompiledPdc):
        return m
    return compile_machine(m)


def _result(cm, word, err, consumed, q, stack, out):
    return RunResult(
        ok=err == ERR_OK,
        error=_ERROR_NAMES.get(err),
        consumed=consumed,
        state=cm.states[q],
        stack="".join(cm.stack_alphabet[i] for i in stack),
        output=cm.to_word(out),
    )


def run(m, word):
    """Run a word with no endmarker; m is a PdcSpec or CompiledPdc."""
    cm = _as_compiled(m)
    err, consumed, q, stack, out, _ = run_compiled(cm, cm.to_ids(word))
    return _result(cm, word, err, consumed, q, stack, out)


def run_endmarked(m, word):
    """Run a word followed by the endmarker; the machine must have mode endmark."""
    cm = _as_compiled(m)
    if cm.mode != "endmark":
        raise ValueError("machine {} is not an endmark machine".format(cm.name))
    err, consumed, q, stack, out, _ = run_compiled(cm, cm.to_ids(word),
                                                   endmark=True)
    return _result(cm, word, err, consumed, q, stack, out)


def compress(m, word):
    """The compressor's output on a word, honoring the machine's mode."""
    cm = _as_compiled(m)
    res = run_endmarked(cm, word) if cm.mode == "endmark" else run(cm, word)
    if not res.ok:
        raise PdcRunError(res)
    return res.output


def ratio_at(m, word):
    """Output symbols per input symbol on one word."""
    if not word:
        raise ValueError("empty word")
    return len(compress(m, word)) / len(word)


def run_traced(m, word, endmark=False, full=False):
    """Run with a per-position trace; column 0 is before the first symbol."""
    cm = _as_compiled(m)
    trace = 2 if full else 1
    err, consumed, q, stack, out, cols = run_compiled(
        cm, cm.to_ids(word), endmark=endmark, trace=trace)
    states, tops, heights, outlens, minhs, stacks = cols
    columns = []
    for i in range(len(states)):
        columns.append(Column(
            pos=i,
            state=cm.states[states[i]],
            top=cm.stack_alphabet[tops[i]],
            height=heights[i],
            outlen=outlens[i],
            minh=minhs[i],
            stack=("".join(cm.stack_alphabet[s] for s in stacks[i])
                   if stacks is not None else None),
        ))
    return Diagram(word=word, endmark=endmark, ok=err == ERR_OK,
                   error=_ERROR_NAMES.get(err), columns=columns)


def il_check(m, maxlen, limit=20):
    """Exhaustively test (output, final state) injectivity for |w| <= maxlen."""
    cm = _as_compiled(m)
    endmark = cm.mode == "endmark"
    seen = {}
    collisions = []
    errors = []
    checked = 0
    words = [""]
    for _ in range(maxlen + 1):
        next_words = []
        for w in words:
            checked += 1
            err, _c, q, _s, out, _t = run_compiled(cm, cm.to_ids(w),
                                                   endmark=endmark)
            if err != ERR_OK:
                if len(errors) < limit:
                    errors.append(w)
            else:
                key = (cm.to_word(out), q)
                other = seen.get(key)
                if other is None:
                    seen[key] = w
                elif len(collisions) < limit:
                    collisions.append((other, w))
            if len(w) < maxlen:
                for c in cm.alphabet:
                    next_words.append(w + c)
        words = next_words
        if not words:
            break
    return IlReport(ok=not collisions and not errors, checked=checked,
                    collisions=collisions, errors=errors)

"""Compilation of machine specs to integer tables, and kernel selection.

compile_machine() lowers a PdcSpec to a CompiledPdc: states, input symbols and
stack symbols become dense integer ids and every rule becomes a row in flat
arrays (for the Cython kernel) plus an entry in a dict keyed by
(state*nsx + insym)*ng + stacksym (for the pure kernel).  Input ids nsym and
nsym+1 are reserved for the lambda pseudo-symbol and the endmarker.

The executing kernel is the Cython extension when it importable, otherwise the
pure-Python twin; set PDLZ_PURE=1 to force the fallback.  Full stack tracing
(trace=2) always runs on the pure kernel, which is fine because it is only
used on short words.
"""

import os
from array import array

from . import _pyrun

ERR_OK = _pyrun.ERR_OK
ERR_UNDEFINED = _pyrun.ERR_UNDEFINED
ERR_LAMBDA_BUDGET = _pyrun.ERR_LAMBDA_BUDGET
ERR_STACK_EXHAUSTED = _pyrun.ERR_STACK_EXHAUSTED

if os.environ.get("PDLZ_PURE") == "1":
    _impl = _pyrun
    IMPL = "pure"
else:
    try:
        from . import _speedups as _impl
        IMPL = "cython"
    except ImportError:
        _impl = _pyrun
        IMPL = "pure"


class CompiledPdc:
    """Integer-table form of a machine, ready for the kernels.

    Arrays, indexed by rule slot (state*nsx + insym)*ng + stacksym:
      r_def        1 if the slot holds a rule
      r_q2         target state id
      r_push_off/len, push_pool   push segment, stored bottom-first
      r_out_off/len, out_pool     output segment
    rules_map holds the same rules as a dict for the pure kernel, with push
    segments as tuples ready for list.extend().
    """

    __slots__ = ("name", "mode", "alphabet", "stack_alphabet", "states",
                 "nq", "ns", "nsx", "ng", "lam", "end", "q0", "z0",
                 "sym_id", "stk_id", "state_id", "rules_map",
                 "r_def", "r_q2", "r_push_off", "r_push_len",
                 "r_out_off", "r_out_len", "push_pool", "out_pool",
                 "max_push")

    def __init__(self, spec):
        self.name = spec.name
        self.mode = spec.mode
        self.alphabet = spec.alphabet
        self.stack_alphabet = spec.stack_alphabet
        self.states = tuple(spec.states)
        self.nq = len(self.states)
        self.ns = len(spec.alphabet)
        self.nsx = self.ns + 2
        self.ng = len(spec.stack_alphabet)
        self.lam = self.ns
        self.end = self.ns + 1
        self.sym_id = {c: i for i, c in enumerate(spec.alphabet)}
        self.stk_id = {c: i for i, c in enumerate(spec.stack_alphabet)}
        self.state_id = {s: i for i, s in enumerate(self.states)}
        self.q0 = self.state_id[spec.start_state]
        self.z0 = self.stk_id[spec.start_stack]

        nslots = self.nq * self.nsx * self.ng
        self.r_def = bytearray(nslots)
        self.r_q2 = array("i", bytes(4 * nslots))
        self.r_push_off = array("i", bytes(4 * nslots))
        self.r_push_len = array("i", bytes(4 * nslots))
        self.r_out_off = array("i", bytes(4 * nslots))
        self.r_out_len = array("i", bytes(4 * nslots))
        push_pool = array("i")
        out_pool = array("i")
        self.rules_map = {}
        self.max_push = 0

        from .machine import LAMBDA, ENDMARK
        for (q, a, z), (q2, push, out) in spec.rules.items():
            if a == LAMBDA:
                aid = self.lam
            elif a == ENDMARK:
                aid = self.end
            else:
                aid = self.sym_id[a]
            slot = (self.state_id[q] * self.nsx + aid) * self.ng + self.stk_id[z]
            push_ids = tuple(self.stk_id[c] for c in reversed(push))
            out_ids = tuple(self.sym_id[c] for c in out)
            self.r_def[slot] = 1
            self.r_q2[slot] = self.state_id[q2]
            self.r_push_off[slot] = len(push_pool)
            self.r_push_len[slot] = len(push_ids)
            push_pool.extend(push_ids)
            self.r_out_off[slot] = len(out_pool)
            self.r_out_len[slot] = len(out_ids)
            out_pool.extend(out_ids)
            self.rules_map[slot] = (self.state_id[q2], push_ids, out_ids)
            if len(push_ids) > self.max_push:
                self.max_push = len(push_ids)
        # memoryview of an empty array('i') is invalid in some builds
        if not push_pool:
            push_pool.append(0)
        if not out_pool:
            out_pool.append(0)
        self.push_pool = push_pool
        self.out_pool = out_pool

    def to_ids(self, word):
        sym_id = self.sym_id
        try:
            return array("i", map(sym_id.__getitem__, word))
        except KeyError:
            for c in word:
                if c not in sym_id:
                    raise ValueError(
                        "symbol {!r} not in alphabet of {}".format(c, self.name)
                    ) from None
            raise

    def to_word(self, ids):
        alpha = self.alphabet
        return "".join(alpha[i] for i in ids)


def compile_machine(spec):
    return CompiledPdc(spec)


def run_compiled(cm, ids, endmark=False, trace=0):
    """Run ids through a CompiledPdc; see _pyrun.run_machine for the contract."""
    if trace >= 2:
        return _pyrun.run_machine(cm, ids, endmark, trace)
    return _impl.run_machine(cm, ids, endmark, trace)


def make_lz_stream(nsym, seeds=None, record=False):
    if record:
        return _pyrun.LzStream(nsym, seeds, record=True)
    return _impl.LzStream(nsym, seeds)


PureLzStream = _pyrun.LzStream

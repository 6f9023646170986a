"""Pure-Python execution kernels.

This module is the reference implementation of the two hot loops in the
package: running a compiled pushdown machine over a symbol stream, and the
incremental LZ78 dictionary.  A Cython twin (_speedups) implements the same
contracts; kernels.py picks whichever is available.  Keep the two in lockstep —
tests/test_kernels_parity.py compares them on the machine zoo.

Conventions shared by both twins:

* symbols, states and stack symbols are small integer ids (see kernels.py)
* the stack is a list of ids, bottom first; index -1 is the top
* a rule application pops the top symbol and then extends the stack with the
  stored push segment, which is already bottom-first
* error codes: 0 ok, 1 undefined transition, 2 lambda budget exceeded,
  3 stack exhausted
"""

from array import array

ERR_OK = 0
ERR_UNDEFINED = 1
ERR_LAMBDA_BUDGET = 2
ERR_STACK_EXHAUSTED = 3

_BIG = 1 << 60


def run_machine(cm, ids, endmark=False, trace=0):
    """Run a compiled machine over a sequence of symbol ids.

    Returns (err, consumed, state, stack, out, tracecols) where stack and out
    are arrays of ids and tracecols is None or a tuple of per-column arrays
    (states, tops, heights, outlens, minhs, stacks).  Column 0 is the
    configuration after the initial lambda closure; column i the one after
    consuming symbol i (and its closure).  minhs[i] is the minimum stack
    height seen after any rule application while producing column i, so a
    range minimum over minhs[c+1..cp] bounds every touch of the stack on the
    half-open segment (c, cp].

    With endmark=True one endmarker step plus its closure runs after the last
    symbol and contributes one extra column.
    """
    rules = cm.rules_map
    nsx = cm.nsx
    ng = cm.ng
    nq = cm.nq
    lam_base = cm.lam * ng
    end_base = cm.end * ng
    span = nsx * ng

    q = cm.q0
    stack = [cm.z0]
    out = array("i")
    err = ERR_OK
    i = 0
    n = len(ids)

    if trace:
        t_state = array("i")
        t_top = array("i")
        t_h = array("i")
        t_out = array("i")
        t_min = array("i")
        t_stacks = [] if trace >= 2 else None

    # --- initial closure (column 0) ---
    seg_min = 1
    fires = 0
    budget = nq + nq
    while True:
        r = rules.get(q * span + lam_base + stack[-1])
        if r is None:
            break
        if fires >= budget:
            err = ERR_LAMBDA_BUDGET
            break
        fires += 1
        q, push, o = r
        stack.pop()
        if push:
            stack.extend(push)
        elif not stack:
            err = ERR_STACK_EXHAUSTED
            break
        if o:
            out.extend(o)
        h = len(stack)
        if h < seg_min:
            seg_min = h
    if trace and not err:
        t_state.append(q)
        t_top.append(stack[-1])
        t_h.append(len(stack))
        t_out.append(len(out))
        t_min.append(seg_min)
        if t_stacks is not None:
            t_stacks.append(list(stack))

    # --- per-symbol loop ---
    while i < n and not err:
        a = ids[i]
        r = rules.get(q * span + a * ng + stack[-1])
        if r is None:
            err = ERR_UNDEFINED
            break
        q, push, o = r
        stack.pop()
        if push:
            stack.extend(push)
        elif not stack:
            err = ERR_STACK_EXHAUSTED
            break
        if o:
            out.extend(o)
        seg_min = len(stack)
        i += 1
        # closure
        fires = 0
        budget = len(stack) * nq + nq
        while True:
            r = rules.get(q * span + lam_base + stack[-1])
            if r is None:
                break
            if fires >= budget:
                err = ERR_LAMBDA_BUDGET
                break
            fires += 1
            q, push, o = r
            stack.pop()
            if push:
                stack.extend(push)
            elif not stack:
                err = ERR_STACK_EXHAUSTED
                break
            if o:
                out.extend(o)
            h = len(stack)
            if h < seg_min:
                seg_min = h
        if trace and not err:
            t_state.append(q)
            t_top.append(stack[-1])
            t_h.append(len(stack))
            t_out.append(len(out))
            t_min.append(seg_min)
            if t_stacks is not None:
                t_stacks.append(list(stack))

    # --- endmarker step ---
    if endmark and not err:
        r = rules.get(q * span + end_base + stack[-1])
        if r is None:
            err = ERR_UNDEFINED
        else:
            q, push, o = r
            stack.pop()
            if push:
                stack.extend(push)
            if not stack:
                err = ERR_STACK_EXHAUSTED
            else:
                if o:
                    out.extend(o)
                seg_min = len(stack)
                fires = 0
                budget = len(stack) * nq + nq
                while True:
                    r = rules.get(q * span + lam_base + stack[-1])
                    if r is None:
                        break
                    if fires >= budget:
                        err = ERR_LAMBDA_BUDGET
                        break
                    fires += 1
                    q, push, o = r
                    stack.pop()
                    if push:
                        stack.extend(push)
                    elif not stack:
                        err = ERR_STACK_EXHAUSTED
                        break
                    if o:
                        out.extend(o)
                    h = len(stack)
                    if h < seg_min:
                        seg_min = h
                if trace and not err:
                    t_state.append(q)
                    t_top.append(stack[-1])
                    t_h.append(len(stack))
                    t_out.append(len(out))
                    t_min.append(seg_min)
                    if t_stacks is not None:
                        t_stacks.append(list(stack))

    cols = None
    if trace:
        cols = (t_state, t_top, t_h, t_out, t_min, t_stacks)
    return err, i, q, stack, out, cols


class LzStream:
    """Incremental LZ78 parser with running bit accounting.

    Symbols are integer ids in [0, nsym).  Dictionary nodes are numbered in
    creation order, so a node id equals the index of the phrase it ends;
    0 is the root (the empty phrase).  Preloaded phrases take indices
    1..len(seeds) and must be given in prefix-closed order, i.e. as a parse.

    bits_now() prices the symbols fed so far as a complete word: phrase with
    global index g costs ceil(log2 g) back-reference bits plus ceil(log2 nsym)
    literal bits, and the final phrase is preceded by one flag bit (and drops
    the literal when it is an incomplete repeat).
    """

    __slots__ = ("nsym", "litbits", "trie", "next_id", "cur", "pend",
                 "nphr", "bits_done", "base", "record", "refs", "lits")

    def __init__(self, nsym, seeds=None, record=False):
        if nsym < 2:
            raise ValueError("alphabet must have at least 2 symbols")
        self.nsym = nsym
        self.litbits = (nsym - 1).bit_length()
        self.trie = {}
        self.next_id = 1
        self.cur = 0
        self.pend = 0
        self.nphr = 0
        self.bits_done = 0
        self.record = record
        self.refs = [] if record else None
        self.lits = [] if record else None
        if seeds:
            for phrase in seeds:
                self._preload(phrase)
        self.base = self.next_id - 1

    def _preload(self, phrase):
        if not phrase:
            raise ValueError("empty seed phrase")
        node = 0
        for sym in phrase[:-1]:
            node = self.trie.get(node * self.nsym + sym)
            if node is None:
                raise ValueError("seed phrases must be prefix-closed")
        key = node * self.nsym + phrase[-1]
        if key in self.trie:
            raise ValueError("duplicate seed phrase")
        self.trie[key] = self.next_id
        self.next_id += 1

    def feed(self, ids):
        trie = self.trie
        nsym = self.nsym
        litbits = self.litbits
        cur = self.cur
        pend = self.pend
        for a in ids:
            key = cur * nsym + a
            nxt = trie.get(key)
            if nxt is not None:
                cur = nxt
                pend += 1
                continue
            g = self.next_id
            trie[key] = g
            self.next_id = g + 1
            self.nphr += 1
            self.bits_done += (g - 1).bit_length() + litbits
            if self.record:
                self.refs.append(cur)
                self.lits.append(a)
            cur = 0
            pend = 0
        self.cur = cur
        self.pend = pend

    def phrase_count(self):
        """Completed phrases plus the pending one, excluding seeds."""
        return self.nphr + (1 if self.pend else 0)

    def pending_len(self):
        return self.pend

    def pending_ref(self):
        return self.cur

    def bits_now(self):
        if self.pend:
            return self.bits_done + 1 + (self.next_id - 1).bit_length()
        if self.nphr:
            return self.bits_done + 1
        return 0

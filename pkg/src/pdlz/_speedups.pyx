# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Cython twins of the _pyrun kernels.

Same contracts as _pyrun.run_machine and _pyrun.LzStream; kernels.py picks
this module when it imported successfully.  The machine runner works on the
flat rule tables of CompiledPdc instead of rules_map, with a growable C
stack; the LZ78 dictionary is a C++ unordered_map.  Record-mode parsing and
full stack traces stay in the pure module (kernels.py routes them there).
"""

from cpython cimport array
from cython.operator cimport dereference
from libc.stdlib cimport free, malloc, realloc
from libcpp.unordered_map cimport unordered_map

from array import array as _pyarray

ERR_OK = 0
ERR_UNDEFINED = 1
ERR_LAMBDA_BUDGET = 2
ERR_STACK_EXHAUSTED = 3

cdef int C_OK = 0
cdef int C_UNDEFINED = 1
cdef int C_LAMBDA = 2
cdef int C_EXHAUSTED = 3
cdef int C_NOMEM = -1

cdef array.array _INT_TEMPLATE = _pyarray("i")


cdef inline int _bit_length(long long x) nogil:
    cdef int n = 0
    while x > 0:
        x >>= 1
        n += 1
    return n


def run_machine(cm, ids, endmark=False, trace=0):
    """Run a compiled machine over symbol ids; see _pyrun.run_machine."""
    cdef array.array ids_arr
    if isinstance(ids, _pyarray):
        ids_arr = ids
    else:
        ids_arr = _pyarray("i", ids)

    cdef const int[:] xs = ids_arr
    cdef Py_ssize_t n = len(ids_arr)

    cdef const unsigned char[:] r_def = cm.r_def
    cdef const int[:] r_q2 = cm.r_q2
    cdef const int[:] r_push_off = cm.r_push_off
    cdef const int[:] r_push_len = cm.r_push_len
    cdef const int[:] r_out_off = cm.r_out_off
    cdef const int[:] r_out_len = cm.r_out_len
    cdef const int[:] push_pool = cm.push_pool
    cdef const int[:] out_pool = cm.out_pool

    cdef int nq = cm.nq
    cdef int ng = cm.ng
    cdef int lam_base = cm.lam * ng
    cdef int end_base = cm.end * ng
    cdef int span = cm.nsx * ng
    cdef bint want_end = bool(endmark)
    cdef bint want_trace = trace > 0

    cdef int q = cm.q0
    cdef int err = C_OK
    cdef Py_ssize_t i = 0

    cdef Py_ssize_t scap = 64
    cdef Py_ssize_t sh = 0
    cdef Py_ssize_t ocap = 4 * n + 64
    cdef Py_ssize_t on = 0
    cdef Py_ssize_t ncols = 0
    cdef Py_ssize_t seg_min = 0, fires = 0, budget = 0, j = 0
    cdef long long slot = 0
    cdef int a = 0, poff = 0, plen = 0, ooff = 0, olen = 0
    cdef int *stk = NULL
    cdef int *outbuf = NULL
    cdef int *tmp = NULL

    cdef array.array t_state = None, t_top = None, t_h = None
    cdef array.array t_out = None, t_min = None
    cdef int[:] v_state = None, v_top = None, v_h = None
    cdef int[:] v_out = None, v_min = None
    cdef int[:] v_outarr = None
    if want_trace:
        t_state = array.clone(_INT_TEMPLATE, n + 2, zero=False)
        t_top = array.clone(_INT_TEMPLATE, n + 2, zero=False)
        t_h = array.clone(_INT_TEMPLATE, n + 2, zero=False)
        t_out = array.clone(_INT_TEMPLATE, n + 2, zero=False)
        t_min = array.clone(_INT_TEMPLATE, n + 2, zero=False)
        v_state = t_state
        v_top = t_top
        v_h = t_h
        v_out = t_out
        v_min = t_min

    stk = <int *> malloc(scap * sizeof(int))
    if stk == NULL:
        raise MemoryError()
    stk[0] = cm.z0
    sh = 1
    outbuf = <int *> malloc(ocap * sizeof(int))
    if outbuf == NULL:
        free(stk)
        raise MemoryError()

    try:
        with nogil:
            # --- initial closure (column 0) ---
            seg_min = 1
            fires = 0
            budget = nq + nq
            while True:
                slot = q * span + lam_base + stk[sh - 1]
                if r_def[slot] == 0:
                    break
                if fires >= budget:
                    err = C_LAMBDA
                    break
                fires += 1
                q = r_q2[slot]
                sh -= 1
                plen = r_push_len[slot]
                if plen > 0:
                    if sh + plen > scap:
                        while sh + plen > scap:
                            scap += scap
                        tmp = <int *> realloc(stk, scap * sizeof(int))
                        if tmp == NULL:
                            err = C_NOMEM
                            break
                        stk = tmp
                    poff = r_push_off[slot]
                    for j in range(plen):
                        stk[sh + j] = push_pool[poff + j]
                    sh += plen
                elif sh == 0:
                    err = C_EXHAUSTED
                    break
                olen = r_out_len[slot]
                if olen > 0:
                    if on + olen > ocap:
                        while on + olen > ocap:
                            ocap += ocap
                        tmp = <int *> realloc(outbuf, ocap * sizeof(int))
                        if tmp == NULL:
                            err = C_NOMEM
                            break
                        outbuf = tmp
                    ooff = r_out_off[slot]
                    for j in range(olen):
                        outbuf[on + j] = out_pool[ooff + j]
                    on += olen
                if sh < seg_min:
                    seg_min = sh
            if want_trace and err == C_OK:
                v_state[ncols] = q
                v_top[ncols] = stk[sh - 1]
                v_h[ncols] = <int> sh
                v_out[ncols] = <int> on
                v_min[ncols] = <int> seg_min
                ncols += 1

            # --- per-symbol loop ---
            while i < n and err == C_OK:
                a = xs[i]
                slot = q * span + a * ng + stk[sh - 1]
                if r_def[slot] == 0:
                    err = C_UNDEFINED
                    break
                q = r_q2[slot]
                sh -= 1
                plen = r_push_len[slot]
                if plen > 0:
                    if sh + plen > scap:
                        while sh + plen > scap:
                            scap += scap
                        tmp = <int *> realloc(stk, scap * sizeof(int))
                        if tmp == NULL:
                            err = C_NOMEM
                            break
                        stk = tmp
                    poff = r_push_off[slot]
                    for j in range(plen):
                        stk[sh + j] = push_pool[poff + j]
                    sh += plen
                elif sh == 0:
                    err = C_EXHAUSTED
                    break
                olen = r_out_len[slot]
                if olen > 0:
                    if on + olen > ocap:
                        while on + olen > ocap:
                            ocap += ocap
                        tmp = <int *> realloc(outbuf, ocap * sizeof(int))
                        if tmp == NULL:
                            err = C_NOMEM
                            break
                        outbuf = tmp
                    ooff = r_out_off[slot]
                    for j in range(olen):
                        outbuf[on + j] = out_pool[ooff + j]
                    on += olen
                seg_min = sh
                i += 1
                # closure
                fires = 0
                budget = sh * nq + nq
                while True:
                    slot = q * span + lam_base + stk[sh - 1]
                    if r_def[slot] == 0:
                        break
                    if fires >= budget:
                        err = C_LAMBDA
                        break
                    fires += 1
                    q = r_q2[slot]
                    sh -= 1
                    plen = r_push_len[slot]
                    if plen > 0:
                        if sh + plen > scap:
                            while sh + plen > scap:
                                scap += scap
                            tmp = <int *> realloc(stk, scap * sizeof(int))
                            if tmp == NULL:
                                err = C_NOMEM
                                break
                            stk = tmp
                        poff = r_push_off[slot]
                        for j in range(plen):
                            stk[sh + j] = push_pool[poff + j]
                        sh += plen
                    elif sh == 0:
                        err = C_EXHAUSTED
                        break
                    olen = r_out_len[slot]
                    if olen > 0:
                        if on + olen > ocap:
                            while on + olen > ocap:
                                ocap += ocap
                            tmp = <int *> realloc(outbuf, ocap * sizeof(int))
                            if tmp == NULL:
                                err = C_NOMEM
                                break
                            outbuf = tmp
                        ooff = r_out_off[slot]
                        for j in range(olen):
                            outbuf[on + j] = out_pool[ooff + j]
                        on += olen
                    if sh < seg_min:
                        seg_min = sh
                if want_trace and err == C_OK:
                    v_state[ncols] = q
                    v_top[ncols] = stk[sh - 1]
                    v_h[ncols] = <int> sh
                    v_out[ncols] = <int> on
                    v_min[ncols] = <int> seg_min
                    ncols += 1

            # --- endmarker step ---
            if want_end and err == C_OK:
                slot = q * span + end_base + stk[sh - 1]
                if r_def[slot] == 0:
                    err = C_UNDEFINED
                else:
                    q = r_q2[slot]
                    sh -= 1
                    plen = r_push_len[slot]
                    if plen > 0:
                        if sh + plen > scap:
                            while sh + plen > scap:
                                scap += scap
                            tmp = <int *> realloc(stk, scap * sizeof(int))
                            if tmp == NULL:
                                err = C_NOMEM
                            else:
                                stk = tmp
                        if err == C_OK:
                            poff = r_push_off[slot]
                            for j in range(plen):
                                stk[sh + j] = push_pool[poff + j]
                            sh += plen
                    if err == C_OK and sh == 0:
                        err = C_EXHAUSTED
                    if err == C_OK:
                        olen = r_out_len[slot]
                        if olen > 0:
                            if on + olen > ocap:
                                while on + olen > ocap:
                                    ocap += ocap
                                tmp = <int *> realloc(outbuf,
                                                      ocap * sizeof(int))
                                if tmp == NULL:
                                    err = C_NOMEM
                                else:
                                    outbuf = tmp
                            if err == C_OK:
                                ooff = r_out_off[slot]
                                for j in range(olen):
                                    outbuf[on + j] = out_pool[ooff + j]
                                on += olen
                    if err == C_OK:
                        seg_min = sh
                        fires = 0
                        budget = sh * nq + nq
                        while True:
                            slot = q * span + lam_base + stk[sh - 1]
                            if r_def[slot] == 0:
                                break
                            if fires >= budget:
                                err = C_LAMBDA
                                break
                            fires += 1
                            q = r_q2[slot]
                            sh -= 1
                            plen = r_push_len[slot]
                            if plen > 0:
                                if sh + plen > scap:
                                    while sh + plen > scap:
                                        scap += scap
                                    tmp = <int *> realloc(
                                        stk, scap * sizeof(int))
                                    if tmp == NULL:
                                        err = C_NOMEM
                                        break
                                    stk = tmp
                                poff = r_push_off[slot]
                                for j in range(plen):
                                    stk[sh + j] = push_pool[poff + j]
                                sh += plen
                            elif sh == 0:
                                err = C_EXHAUSTED
                                break
                            olen = r_out_len[slot]
                            if olen > 0:
                                if on + olen > ocap:
                                    while on + olen > ocap:
                                        ocap += ocap
                                    tmp = <int *> realloc(
                                        outbuf, ocap * sizeof(int))
                                    if tmp == NULL:
                                        err = C_NOMEM
                                        break
                                    outbuf = tmp
                                ooff = r_out_off[slot]
                                for j in range(olen):
                                    outbuf[on + j] = out_pool[ooff + j]
                                on += olen
                            if sh < seg_min:
                                seg_min = sh
                        if want_trace and err == C_OK:
                            v_state[ncols] = q
                            v_top[ncols] = stk[sh - 1]
                            v_h[ncols] = <int> sh
                            v_out[ncols] = <int> on
                            v_min[ncols] = <int> seg_min
                            ncols += 1

        if err == C_NOMEM:
            raise MemoryError()

        out_arr = array.clone(_INT_TEMPLATE, on, zero=False)
        if on > 0:
            v_outarr = out_arr
            for j in range(on):
                v_outarr[j] = outbuf[j]
        stack_list = [stk[j] for j in range(sh)]
    finally:
        free(stk)
        free(outbuf)

    cols = None
    if want_trace:
        array.resize(t_state, ncols)
        array.resize(t_top, ncols)
        array.resize(t_h, ncols)
        array.resize(t_out, ncols)
        array.resize(t_min, ncols)
        cols = (t_state, t_top, t_h, t_out, t_min, None)
    return err, i, q, stack_list, out_arr, cols


cdef class LzStream:
    """Incremental LZ78 parser; see _pyrun.LzStream for the contract.

    No record mode here — kernels.make_lz_stream routes record=True to the
    pure twin.
    """

    cdef unordered_map[long long, long long] trie
    cdef public int nsym, litbits
    cdef public long long next_id, cur, pend, nphr, bits_done, base

    def __init__(self, nsym, seeds=None, record=False):
        if nsym < 2:
            raise ValueError("alphabet must have at least 2 symbols")
        if record:
            raise ValueError("record mode is pure-Python only")
        self.nsym = nsym
        self.litbits = _bit_length(nsym - 1)
        self.next_id = 1
        self.cur = 0
        self.pend = 0
        self.nphr = 0
        self.bits_done = 0
        if seeds:
            for phrase in seeds:
                self._preload(phrase)
        self.base = self.next_id - 1

    def _preload(self, phrase):
        cdef long long node = 0, key
        cdef Py_ssize_t last = len(phrase) - 1
        cdef unordered_map[long long, long long].iterator it
        if not phrase:
            raise ValueError("empty seed phrase")
        for sym in phrase[:last]:
            key = node * self.nsym + <long long> sym
            it = self.trie.find(key)
            if it == self.trie.end():
                raise ValueError("seed phrases must be prefix-closed")
            node = dereference(it).second
        key = node * self.nsym + <long long> phrase[last]
        if self.trie.find(key) != self.trie.end():
            raise ValueError("duplicate seed phrase")
        self.trie[key] = self.next_id
        self.next_id += 1

    def feed(self, ids):
        cdef array.array ids_arr
        if isinstance(ids, _pyarray):
            ids_arr = ids
        else:
            ids_arr = _pyarray("i", ids)
        cdef const int[:] xs = ids_arr
        cdef Py_ssize_t n = len(ids_arr), i
        cdef unordered_map[long long, long long].iterator it
        cdef long long cur = self.cur, pend = self.pend, key, g
        cdef long long nsym = self.nsym
        cdef long long next_id = self.next_id, nphr = self.nphr
        cdef long long bits_done = self.bits_done
        cdef int litbits = self.litbits
        with nogil:
            for i in range(n):
                key = cur * nsym + xs[i]
                it = self.trie.find(key)
                if it != self.trie.end():
                    cur = dereference(it).second
                    pend += 1
                    continue
                g = next_id
                self.trie[key] = g
                next_id = g + 1
                nphr += 1
                bits_done += _bit_length(g - 1) + litbits
                cur = 0
                pend = 0
        self.cur = cur
        self.pend = pend
        self.next_id = next_id
        self.nphr = nphr
        self.bits_done = bits_done

    def phrase_count(self):
        """Completed phrases plus the pending one, excluding seeds."""
        return self.nphr + (1 if self.pend else 0)

    def pending_len(self):
        return self.pend

    def pending_ref(self):
        return self.cur

    def bits_now(self):
        if self.pend:
            return self.bits_done + 1 + _bit_length(self.next_id - 1)
        if self.nphr:
            return self.bits_done + 1
        return 0

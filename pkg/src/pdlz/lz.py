"""LZ78: greedy dictionary parse, bit pricing, encoder and decoder.

The parse splits a word into phrases, each a previously seen phrase extended
by one fresh symbol; the final phrase may instead be a bare repeat of a
dictionary phrase (incomplete).  With d preloaded phrases, the phrase with
global index g = d + j is encoded as ceil(log2 g) back-reference bits (the
index of its prefix phrase, big-endian) followed by ceil(log2 |alphabet|)
literal bits; one flag bit precedes the final phrase's fields: 0 when it is
complete (reference + literal follow), 1 when incomplete (reference only).

Decoding needs no length header: at a phrase boundary with R bits left and a
next reference width of c bits, R == 1 + c can only start the final
incomplete phrase and R == 1 + c + litbits the final complete one, because a
regular phrase would leave a remainder too short for any further phrase.
"""

import math
from dataclasses import dataclass

from .kernels import make_lz_stream


@dataclass
class LzParse:
    """Phrases as (reference, literal, complete) triples; literal is None for
    an incomplete final phrase.  References are global dictionary indices
    (0 = empty phrase, 1..d = seeds)."""
    word: str
    alphabet: str
    seeds: tuple
    phrases: list


def _ids(word, alphabet):
    index = {c: i for i, c in enumerate(alphabet)}
    try:
        return [index[c] for c in word]
    except KeyError:
        bad = next(c for c in word if c not in index)
        raise ValueError("symbol {!r} not in alphabet {!r}".format(bad, alphabet))


def _seed_ids(seeds, alphabet):
    return [_ids(s, alphabet) for s in seeds]


def lz_parse(word, alphabet="01", seeds=()):
    stream = make_lz_stream(len(alphabet), _seed_ids(seeds, alphabet),
                            record=True)
    stream.feed(_ids(word, alphabet))
    phrases = [(r, alphabet[lit], True)
               for r, lit in zip(stream.refs, stream.lits)]
    if stream.pending_len():
        phrases.append((stream.pending_ref(), None, False))
    return LzParse(word=word, alphabet=alphabet, seeds=tuple(seeds),
                   phrases=phrases)


def lz_bits(word, alphabet="01", seeds=()):
    """Encoded length in bits."""
    stream = make_lz_stream(len(alphabet), _seed_ids(seeds, alphabet))
    stream.feed(_ids(word, alphabet))
    return stream.bits_now()


def lz_phrase_count(word, alphabet="01", seeds=()):
    stream = make_lz_stream(len(alphabet), _seed_ids(seeds, alphabet))
    stream.feed(_ids(word, alphabet))
    return stream.phrase_count()


def lz_ratio(word, alphabet="01", seeds=()):
    """Encoded bits per input bit (input priced at log2 |alphabet| per symbol)."""
    if not word:
        raise ValueError("empty word")
    return lz_bits(word, alphabet, seeds) / (len(word) * math.log2(len(alphabet)))


def lz_encode(word, alphabet="01", seeds=()):
    parse = lz_parse(word, alphabet, seeds)
    sym_index = {c: i for i, c in enumerate(alphabet)}
    litbits = (len(alphabet) - 1).bit_length()
    d = len(parse.seeds)
    bits = []
    last = len(parse.phrases)
    for j, (ref, lit, complete) in enumerate(parse.phrases, start=1):
        g = d + j
        c = (g - 1).bit_length()
        if j == last:
            bits.append("0" if complete else "1")
        if c:
            bits.append(format(ref, "0{}b".format(c)))
        if lit is not None:
            bits.append(format(sym_index[lit], "0{}b".format(litbits)))
    return "".join(bits)


def lz_decode(bits, alphabet="01", seeds=()):
    if any(b not in "01" for b in bits):
        raise ValueError("encoding must be a bit string")
    litbits = (len(alphabet) - 1).bit_length()
    phrases = [""]
    for s in seeds:
        phrases.append(s)
    out = []
    n = len(bits)
    i = 0
    done = n == 0
    while i < n:
        g = len(phrases)
        c = (g - 1).bit_length()
        remaining = n - i
        if remaining == 1 + c:
            if bits[i] != "1":
                raise ValueError("corrupt encoding: bad final flag")
            ref = int(bits[i + 1:i + 1 + c] or "0", 2)
            if ref == 0 or ref >= g:
                raise ValueError("corrupt encoding: bad final reference")
            out.append(phrases[ref])
            i = n
            done = True
        elif remaining == 1 + c + litbits:
            if bits[i] != "0":
                raise ValueError("corrupt encoding: bad final flag")
            ref = int(bits[i + 1:i + 1 + c] or "0", 2)
            lit = int(bits[i + 1 + c:n], 2)
            if ref >= g or lit >= len(alphabet):
                raise ValueError("corrupt encoding: bad final phrase")
            out.append(phrases[ref] + alphabet[lit])
            i = n
            done = True
        else:
            if remaining < c + litbits:
                raise ValueError("corrupt encoding: truncated phrase")
            ref = int(bits[i:i + c] or "0", 2)
            lit = int(bits[i + c:i + c + litbits], 2)
            if ref >= g or lit >= len(alphabet):
                raise ValueError("corrupt encoding: bad phrase")
            phrase = phrases[ref] + alphabet[lit]
            phrases.append(phrase)
            out.append(phrase)
            i += c + litbits
    if not done:
        raise ValueError("corrupt encoding: missing final phrase")
    return "".join(out)


class LzCounter:
    """Incremental bit accounting over a growing word (thin kernel wrapper)."""

    def __init__(self, alphabet="01", seeds=()):
        self.alphabet = alphabet
        self._index = {c: i for i, c in enumerate(alphabet)}
        self._stream = make_lz_stream(len(alphabet),
                                      _seed_ids(seeds, alphabet))
        self._fed = 0

    def feed(self, text):
        idx = self._index
        self._stream.feed([idx[c] for c in text])
        self._fed += len(text)

    def feed_ids(self, ids):
        self._stream.feed(ids)
        self._fed += len(ids)

    @property
    def length(self):
        return self._fed

    def bits(self):
        return self._stream.bits_now()

    def phrases(self):
        return self._stream.phrase_count()

    def ratio(self):
        if not self._fed:
            raise ValueError("nothing fed")
        return self._stream.bits_now() / (self._fed *
                                          math.log2(len(self.alphabet)))

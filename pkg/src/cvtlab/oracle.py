"""Reference evaluation of the carry and modular-sum transforms on plain ints.

Deliberately shares no code with :mod:`cvtlab.transforms` or
:mod:`cvtlab.digitvec`: columns are peeled off with ``divmod`` and results
are accumulated with powers of the base. Used to replay counterexamples and
as the independent side of the tests.
"""


def _columns(xs, base):
    xs = list(xs)
    while any(xs):
        col = 0
        nxt = []
        for x in xs:
            q, r = divmod(x, base)
            col += r
            nxt.append(q)
        yield col
        xs = nxt


def cvt(xs, base):
    total, place = 0, base
    for s in _columns(xs, base):
        total += (s // base) * place
        place *= base
    return total


def xor(xs, base):
    total, place = 0, 1
    for s in _columns(xs, base):
        total += (s % base) * place
        place *= base
    return total

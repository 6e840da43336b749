"""Pure-Python word kernels.

A syllable word is a tuple of ``(generator, exponent)`` pairs with generator
indices starting at 1 and nonzero exponents. These functions mirror the
compiled versions in ``_ckernels.pyx`` exactly and serve as the fallback.
"""


def reduce_syllables(syllables):
    out = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            total = out[-1][1] + exp
            if total:
                out[-1] = (gen, total)
            else:
                out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


def multiply(a, b):
    # both inputs already reduced: only the seam can cancel
    if not a:
        return b
    if not b:
        return a
    left = list(a)
    j = 0
    nb = len(b)
    while j < nb and left:
        gen, exp = b[j]
        lg, le = left[-1]
        if lg != gen:
            break
        total = le + exp
        if total:
            left[-1] = (gen, total)
            j += 1
            break
        left.pop()
        j += 1
    left.extend(b[j:])
    return tuple(left)


def invert(a):
    return tuple((gen, -exp) for gen, exp in reversed(a))


def fox_terms(syllables, index):
    """Terms of the right-convention Fox derivative d_index.

    Returns a list of ``(coefficient, word)``. For a positive letter at
    prefix P the term is ``+P^-1``; for a negative letter the term is
    ``-(P x^-1)^-1``.
    """
    terms = []
    inv_prefix = ()
    for gen, exp in syllables:
        if gen == index:
            if exp > 0:
                for s in range(exp):
                    terms.append((1, multiply(((gen, -s),) if s else (), inv_prefix)))
            else:
                for s in range(1, -exp + 1):
                    terms.append((-1, multiply(((gen, s),), inv_prefix)))
        inv_prefix = multiply(((gen, -exp),), inv_prefix)
    return terms


def abelianize(syllables, rank):
    vec = [0] * rank
    for gen, exp in syllables:
        vec[gen - 1] += exp
    return tuple(vec)


def fox_abelian(syllables, index, rank):
    """Fox derivative d_index pushed to Z[Z^rank], as ``{exponent vector: coefficient}``.

    One pass over the word: the term for a letter at prefix P has exponent
    ``-abelianize(P)`` (shifted along the letter's own generator).
    """
    acc = {}
    a = [0] * rank
    g = index - 1
    for gen, exp in syllables:
        if gen == index:
            base = [-x for x in a]
            if exp > 0:
                for s in range(exp):
                    base[g] = -(a[g] + s)
                    key = tuple(base)
                    acc[key] = acc.get(key, 0) + 1
            else:
                for s in range(1, -exp + 1):
                    base[g] = -(a[g] - s)
                    key = tuple(base)
                    acc[key] = acc.get(key, 0) - 1
        a[gen - 1] += exp
    return {k: c for k, c in acc.items() if c}

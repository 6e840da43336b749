# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled word kernels; same contract as ``_pykernels``."""


cpdef tuple reduce_syllables(object syllables):
    cdef list out = []
    cdef long gen, exp, total
    for item in syllables:
        gen = item[0]
        exp = item[1]
        if exp == 0:
            continue
        if out and (<tuple>out[len(out) - 1])[0] == gen:
            total = <long>(<tuple>out[len(out) - 1])[1] + exp
            if total:
                out[len(out) - 1] = (gen, total)
            else:
                out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


cpdef tuple multiply(tuple a, tuple b):
    if not a:
        return b
    if not b:
        return a
    cdef list left = list(a)
    cdef Py_ssize_t j = 0
    cdef Py_ssize_t nb = len(b)
    cdef long gen, exp, lg, le, total
    cdef tuple item
    while j < nb and left:
        item = <tuple>b[j]
        gen = item[0]
        exp = item[1]
        item = <tuple>left[len(left) - 1]
        lg = item[0]
        le = item[1]
        if lg != gen:
            break
        total = le + exp
        if total:
            left[len(left) - 1] = (gen, total)
            j += 1
            break
        left.pop()
        j += 1
    left.extend(b[j:])
    return tuple(left)


cpdef tuple invert(tuple a):
    cdef Py_ssize_t k
    cdef Py_ssize_t n = len(a)
    cdef list out = [None] * n
    cdef tuple item
    for k in range(n):
        item = <tuple>a[n - 1 - k]
        out[k] = (item[0], -<long>item[1])
    return tuple(out)


cpdef list fox_terms(tuple syllables, long index):
    cdef list terms = []
    cdef tuple inv_prefix = ()
    cdef long gen, exp, s
    cdef tuple item
    for item in syllables:
        gen = item[0]
        exp = item[1]
        if gen == index:
            if exp > 0:
                for s in range(exp):
                    if s:
                        terms.append((1, multiply(((gen, -s),), inv_prefix)))
                    else:
                        terms.append((1, inv_prefix))
            else:
                for s in range(1, -exp + 1):
                    terms.append((-1, multiply(((gen, s),), inv_prefix)))
        inv_prefix = multiply(((gen, -exp),), inv_prefix)
    return terms


cpdef tuple abelianize(tuple syllables, long rank):
    cdef list vec = [0] * rank
    cdef long gen
    cdef tuple item
    for item in syllables:
        gen = item[0]
        vec[gen - 1] += item[1]
    return tuple(vec)


cpdef dict fox_abelian(tuple syllables, long index, long rank):
    cdef dict acc = {}
    cdef list a = [0] * rank
    cdef list base
    cdef long g = index - 1
    cdef long gen, exp, s
    cdef tuple item, key
    for item in syllables:
        gen = item[0]
        exp = item[1]
        if gen == index:
            base = [-x for x in a]
            if exp > 0:
                for s in range(exp):
                    base[g] = -(<long>a[g] + s)
                    key = tuple(base)
                    acc[key] = acc.get(key, 0) + 1
            else:
                for s in range(1, -exp + 1):
                    base[g] = -(<long>a[g] - s)
                    key = tuple(base)
                    acc[key] = acc.get(key, 0) - 1
        a[gen - 1] = <long>a[gen - 1] + exp
    return {kk: c for kk, c in acc.items() if c}

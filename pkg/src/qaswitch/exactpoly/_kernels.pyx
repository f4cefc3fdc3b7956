# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse product kernels (same contract as ``_kernels_py``)."""

BACKEND = "cython"


def mul(dict a, dict b):
    cdef dict out = {}
    cdef list bl
    cdef Py_ssize_t i, n
    cdef object ka, ca, kb, cb, k, prev
    if len(a) < len(b):
        a, b = b, a
    bl = list(b.items())
    n = len(bl)
    for ka, ca in a.items():
        for i in range(n):
            kb, cb = <tuple>bl[i]
            k = ka + kb
            prev = out.get(k)
            if prev is None:
                out[k] = ca * cb
            else:
                out[k] = prev + ca * cb
    return {k: prev for k, prev in out.items() if prev}


cdef inline void _acc(dict out, object k, object c):
    cdef object prev = out.get(k)
    if prev is None:
        out[k] = c
    else:
        out[k] = prev + c


def trig_mul(dict a, dict b):
    cdef dict out = {}
    cdef list bm = []
    cdef list bc = []
    cdef int[:] bj
    cdef int[:] bs
    cdef Py_ssize_t i, n
    cdef int ja, sa, jb, sb, jp, jm
    cdef object ka, ca, kb, cb, ma, m, c
    n = len(b)
    import array
    jarr = array.array('i', [0]) * n
    sarr = array.array('i', [0]) * n
    bj = jarr
    bs = sarr
    i = 0
    for kb, cb in b.items():
        bm.append(kb >> 9)
        bc.append(cb)
        bj[i] = (kb >> 1) & 255
        bs[i] = kb & 1
        i += 1
    for ka, ca in a.items():
        ma = ka >> 9
        ja = (ka >> 1) & 255
        sa = ka & 1
        for i in range(n):
            jb = bj[i]
            sb = bs[i]
            c = ca * bc[i]
            m = (ma + bm[i]) << 9
            jp = ja + jb
            jm = ja - jb
            if sa == 0:
                if sb == 0:
                    _acc(out, m | ((jm if jm >= 0 else -jm) << 1), c)
                    _acc(out, m | (jp << 1), c)
                else:
                    _acc(out, m | (jp << 1) | 1, c)
                    if jm > 0:
                        _acc(out, m | (jm << 1) | 1, -c)
                    elif jm < 0:
                        _acc(out, m | ((-jm) << 1) | 1, c)
            else:
                if sb == 0:
                    _acc(out, m | (jp << 1) | 1, c)
                    if jm > 0:
                        _acc(out, m | (jm << 1) | 1, c)
                    elif jm < 0:
                        _acc(out, m | ((-jm) << 1) | 1, -c)
                else:
                    _acc(out, m | ((jm if jm >= 0 else -jm) << 1), c)
                    _acc(out, m | (jp << 1), -c)
    return {k: c for k, c in out.items() if c}


def or_keys(dict a):
    cdef object acc = 0
    cdef object k
    for k in a:
        acc |= k
    return acc

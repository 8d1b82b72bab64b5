# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernels; see ``_kernels_py`` for the reference semantics."""

from array import array

from cpython.mem cimport PyMem_Malloc, PyMem_Free

from . import _kernels_py

cdef enum:
    STACK = 128

# |g0| stays below this bound on the fast path, so every product fits in 64 bits
cdef long long _SAFE = 1LL << 40


cdef int[::1] _flat(seq):
    return array('i', [int(x) for x in seq])


cdef tuple _syllables(int* sides, int* reps, Py_ssize_t top):
    return tuple([(sides[top - 1 - i], reps[top - 1 - i]) for i in range(top)])


cdef class AmalgamKernel:
    cdef int[::1] mul0, mul1, rep0, rep1, ap0, ap1, ae0, ae1
    cdef int n0, n1, e0, e1
    cdef object _args

    def __init__(self, mul, rep, apart, aelem, ident):
        self._args = (mul, rep, apart, aelem, ident)
        self.mul0 = _flat(mul[0])
        self.mul1 = _flat(mul[1])
        self.rep0 = _flat(rep[0])
        self.rep1 = _flat(rep[1])
        self.ap0 = _flat(apart[0])
        self.ap1 = _flat(apart[1])
        self.ae0 = _flat(aelem[0])
        self.ae1 = _flat(aelem[1])
        self.n0 = len(rep[0])
        self.n1 = len(rep[1])
        self.e0 = int(ident[0])
        self.e1 = int(ident[1])

    def __reduce__(self):
        return (type(self), self._args)

    def left_mul(self, letters, int prefix, syllables):
        cdef Py_ssize_t nl = len(letters), ns = len(syllables), cap = nl + ns
        cdef int sbuf[STACK]
        cdef int rbuf[STACK]
        cdef int* sides = sbuf
        cdef int* reps = rbuf
        if cap > STACK:
            sides = <int*>PyMem_Malloc(cap * sizeof(int))
            reps = <int*>PyMem_Malloc(cap * sizeof(int))
            if sides == NULL or reps == NULL:
                raise MemoryError()
        try:
            return self._run(tuple(letters), prefix, tuple(syllables), sides, reps)
        finally:
            if cap > STACK:
                PyMem_Free(sides)
                PyMem_Free(reps)

    cdef object _run(self, tuple letters, int k, tuple syllables, int* sides, int* reps):
        cdef Py_ssize_t nl = len(letters), ns = len(syllables), top = 0, i
        cdef int s, f, c, r
        cdef tuple item
        for i in range(ns):
            item = <tuple>syllables[ns - 1 - i]
            sides[top] = item[0]
            reps[top] = item[1]
            top += 1
        for i in range(nl - 1, -1, -1):
            item = <tuple>letters[i]
            s = item[0]
            f = item[1]
            if s == 0:
                c = self.mul0[f * self.n0 + self.ae0[k]]
                if top and sides[top - 1] == 0:
                    top -= 1
                    c = self.mul0[c * self.n0 + reps[top]]
                k = self.ap0[c]
                r = self.rep0[c]
                if r != self.e0:
                    sides[top] = 0
                    reps[top] = r
                    top += 1
            else:
                c = self.mul1[f * self.n1 + self.ae1[k]]
                if top and sides[top - 1] == 1:
                    top -= 1
                    c = self.mul1[c * self.n1 + reps[top]]
                k = self.ap1[c]
                r = self.rep1[c]
                if r != self.e1:
                    sides[top] = 1
                    reps[top] = r
                    top += 1
        return k, _syllables(sides, reps, top)


cdef inline long long _floordiv(long long a, long long b):
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef class BSKernel:
    cdef readonly object p, q, sigma
    cdef long long pp, qq, sg
    cdef object _slow

    def __init__(self, p, q, sigma):
        self.p = int(p)
        self.q = int(q)
        self.sigma = int(sigma)
        self.pp, self.qq, self.sg = self.p, self.q, self.sigma
        self._slow = _kernels_py.BSKernel(p, q, sigma)

    def __reduce__(self):
        return (type(self), (self.p, self.q, self.sigma))

    def left_mul(self, letters, g0, syllables):
        cdef Py_ssize_t nl = len(letters), ns = len(syllables), cap = nl + ns
        cdef int sbuf[STACK]
        cdef int rbuf[STACK]
        cdef int* eps = sbuf
        cdef int* reps = rbuf
        cdef long long start
        try:
            start = g0
        except OverflowError:
            return self._slow.left_mul(letters, g0, syllables)
        if not (-_SAFE < start < _SAFE):
            return self._slow.left_mul(letters, g0, syllables)
        if cap > STACK:
            eps = <int*>PyMem_Malloc(cap * sizeof(int))
            reps = <int*>PyMem_Malloc(cap * sizeof(int))
            if eps == NULL or reps == NULL:
                raise MemoryError()
        try:
            out = self._run(tuple(letters), start, tuple(syllables), eps, reps)
        finally:
            if cap > STACK:
                PyMem_Free(eps)
                PyMem_Free(reps)
        if out is None:  # left the 64-bit range; redo exactly
            return self._slow.left_mul(letters, g0, syllables)
        return out

    cdef object _run(self, tuple letters, long long g0, tuple syllables, int* eps, int* reps):
        cdef Py_ssize_t nl = len(letters), ns = len(syllables), top = 0, i
        cdef long long pp = self.pp, qq = self.qq, sg = self.sg, r, img, v
        cdef int kind
        cdef tuple item
        for i in range(ns):
            item = <tuple>syllables[ns - 1 - i]
            eps[top] = item[0]
            reps[top] = item[1]
            top += 1
        for i in range(nl - 1, -1, -1):
            item = <tuple>letters[i]
            kind = item[0]
            try:
                v = item[1]
            except OverflowError:
                return None
            if not (-_SAFE < v < _SAFE):
                return None
            if kind == 0:
                g0 = v + g0
            elif v == 1:
                r = g0 - qq * _floordiv(g0, qq)
                img = sg * pp * _floordiv(g0 - r, qq)
                if r == 0 and top and eps[top - 1] == -1:
                    top -= 1
                    g0 = img + reps[top]
                else:
                    eps[top] = 1
                    reps[top] = <int>r
                    top += 1
                    g0 = img
            else:
                r = g0 - pp * _floordiv(g0, pp)
                img = sg * qq * _floordiv(g0 - r, pp)
                if r == 0 and top and eps[top - 1] == 1:
                    top -= 1
                    g0 = img + reps[top]
                else:
                    eps[top] = -1
                    reps[top] = <int>r
                    top += 1
                    g0 = img
            if not (-_SAFE < g0 < _SAFE):
                return None
        return g0, _syllables(eps, reps, top)

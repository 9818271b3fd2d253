# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernel for F_{p^n}; same surface as ``_pykernel``."""

ctypedef unsigned long long u64

cdef extern from *:
    """
    static inline unsigned long long picgen_mulmod(unsigned long long a,
                                                   unsigned long long b,
                                                   unsigned long long m) {
        return (unsigned long long)(((unsigned __int128)a * b) % m);
    }
    """
    u64 picgen_mulmod(u64 a, u64 b, u64 m) nogil

cdef enum:
    MAXDEG = 64

BACKEND = "cython"


cdef class FieldKernel:
    cdef public object p, n, q, modulus
    cdef u64 _p, _q, _red, _top
    cdef int _n
    cdef bint _binary
    cdef u64 _redd[MAXDEG]

    def __init__(self, p, n, modulus):
        if n >= MAXDEG:
            raise ValueError("extension degree too large for the compiled kernel")
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = list(modulus)
        self._p = p
        self._n = n
        self._q = self.q
        self._binary = p == 2
        cdef int j
        if self._binary:
            self._red = 0
            for j in range(n):
                if modulus[j]:
                    self._red |= (<u64>1) << j
            self._top = (<u64>1) << n
        else:
            for j in range(n):
                self._redd[j] = (p - modulus[j]) % p

    cdef inline void _digits(self, u64 a, u64* out):
        cdef int j
        for j in range(self._n):
            out[j] = a % self._p
            a //= self._p

    cdef inline u64 _encode(self, u64* d, int length):
        cdef u64 a = 0
        cdef int j
        for j in range(length - 1, -1, -1):
            a = a * self._p + d[j]
        return a

    cdef u64 c_add(self, u64 a, u64 b):
        if self._binary:
            return a ^ b
        if self._n == 1:
            a += b
            return a - self._p if a >= self._p else a
        cdef u64 da[MAXDEG]
        cdef u64 db[MAXDEG]
        cdef int j
        self._digits(a, da)
        self._digits(b, db)
        for j in range(self._n):
            da[j] = (da[j] + db[j]) % self._p
        return self._encode(da, self._n)

    cdef u64 c_sub(self, u64 a, u64 b):
        if self._binary:
            return a ^ b
        if self._n == 1:
            return a - b if a >= b else a + (self._p - b)
        cdef u64 da[MAXDEG]
        cdef u64 db[MAXDEG]
        cdef int j
        self._digits(a, da)
        self._digits(b, db)
        for j in range(self._n):
            da[j] = (da[j] + self._p - db[j]) % self._p
        return self._encode(da, self._n)

    cdef u64 c_mul(self, u64 a, u64 b):
        cdef u64 r = 0
        cdef int j, k, i
        if self._binary:
            for j in range(63, -1, -1):
                if (b >> j) & 1:
                    break
            while j >= 0:
                r <<= 1
                if r & self._top:
                    r ^= self._top | self._red
                if (b >> j) & 1:
                    r ^= a
                j -= 1
            return r
        if self._n == 1:
            return picgen_mulmod(a, b, self._p)
        cdef u64 da[MAXDEG]
        cdef u64 db[MAXDEG]
        cdef u64 prod[2 * MAXDEG]
        cdef u64 c
        cdef u64 p = self._p
        cdef int n = self._n
        self._digits(a, da)
        self._digits(b, db)
        for k in range(2 * n - 1):
            prod[k] = 0
        for i in range(n):
            if da[i]:
                for j in range(n):
                    prod[i + j] = (prod[i + j] + picgen_mulmod(da[i], db[j], p)) % p
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j in range(n):
                    prod[k - n + j] = (prod[k - n + j] + picgen_mulmod(c, self._redd[j], p)) % p
        return self._encode(prod, n)

    cdef u64 c_pow(self, u64 a, object e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        e = e % (self.q - 1)
        if e == 0:
            return 1
        cdef u64 ee = e
        cdef u64 r = 1
        cdef u64 base = a
        while ee:
            if ee & 1:
                r = self.c_mul(r, base)
            ee >>= 1
            if ee:
                base = self.c_mul(base, base)
        return r

    cpdef add(self, a, b):
        return self.c_add(a, b)

    cpdef sub(self, a, b):
        return self.c_sub(a, b)

    cpdef neg(self, a):
        return self.c_sub(0, a)

    cpdef scale(self, c, a):
        """Multiply ``a`` by the prime-field scalar ``c``."""
        c = c % self.p
        if self._binary:
            return a if c else 0
        cdef u64 da[MAXDEG]
        cdef int j
        cdef u64 cc = c
        self._digits(a, da)
        for j in range(self._n):
            da[j] = picgen_mulmod(cc, da[j], self._p)
        return self._encode(da, self._n)

    cpdef mul(self, a, b):
        return self.c_mul(a, b)

    cpdef pow(self, a, e):
        return self.c_pow(a, e)

    cpdef inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.c_pow(a, self.q - 2)

    cpdef poly_eval(self, list coeffs, x):
        cdef u64 r = 0
        cdef u64 xx = x
        cdef Py_ssize_t k
        for k in range(len(coeffs) - 1, -1, -1):
            r = self.c_add(self.c_mul(r, xx), <u64>coeffs[k])
        return r

    cpdef list poly_mul(self, list a, list b):
        cdef Py_ssize_t la = len(a), lb = len(b), i, j
        if la == 0 or lb == 0:
            return []
        cdef list out = [0] * (la + lb - 1)
        cdef u64 x, y
        for i in range(la):
            x = a[i]
            if x:
                for j in range(lb):
                    y = b[j]
                    if y:
                        out[i + j] = self.c_add(<u64>out[i + j], self.c_mul(x, y))
        while out and out[len(out) - 1] == 0:
            out.pop()
        return out

    cpdef tuple poly_divmod(self, list a, list b):
        cdef list r = list(a)
        cdef Py_ssize_t db = len(b) - 1, k, j
        if len(r) - 1 < db:
            while r and r[len(r) - 1] == 0:
                r.pop()
            return [], r
        cdef u64 lead_inv = self.c_pow(<u64>b[db], self.q - 2)
        cdef list q = [0] * (len(r) - db)
        cdef u64 c, bj
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = self.c_mul(c, lead_inv)
                q[k - db] = c
                for j in range(db + 1):
                    bj = b[j]
                    if bj:
                        r[k - db + j] = self.c_sub(<u64>r[k - db + j], self.c_mul(c, bj))
        del r[db:]
        while q and q[len(q) - 1] == 0:
            q.pop()
        while r and r[len(r) - 1] == 0:
            r.pop()
        return q, r

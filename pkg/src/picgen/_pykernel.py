"""Pure-Python arithmetic kernel for F_{p^n}.

Elements are passed around as their canonical encoding: the coefficient
vector over F_p (constant term first) read as a base-p integer. In
characteristic 2 the encoding is a bit vector, so addition is XOR.

This module mirrors ``_kernel.pyx`` function for function; ``picgen.kernel``
picks whichever is importable.
"""

BACKEND = "python"


class FieldKernel:
    __slots__ = ("p", "n", "q", "modulus", "_red", "_top", "_binary")

    def __init__(self, p, n, modulus):
        # modulus: list of n+1 ints in [0, p), monic, constant term first
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = list(modulus)
        self._binary = p == 2
        if self._binary:
            self._red = sum(c << j for j, c in enumerate(modulus[:n]))
            self._top = 1 << n
        else:
            # x^n = -(m_0 + ... + m_{n-1} x^{n-1})
            self._red = [(-c) % p for c in modulus[:n]]
            self._top = None

    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.n):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _encode(self, digits):
        p = self.p
        a = 0
        for d in reversed(digits):
            a = a * p + d
        return a

    def add(self, a, b):
        if self._binary:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % p for x, y in zip(da, db)])

    def sub(self, a, b):
        if self._binary:
            return a ^ b
        if self.n == 1:
            return (a - b) % self.p
        p = self.p
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x - y) % p for x, y in zip(da, db)])

    def neg(self, a):
        if self._binary:
            return a
        if self.n == 1:
            return (-a) % self.p
        p = self.p
        return self._encode([(-x) % p for x in self._digits(a)])

    def scale(self, c, a):
        """Multiply ``a`` by the prime-field scalar ``c``."""
        c %= self.p
        if self._binary:
            return a if c else 0
        if self.n == 1:
            return (c * a) % self.p
        p = self.p
        return self._encode([(c * x) % p for x in self._digits(a)])

    def mul(self, a, b):
        if self._binary:
            n, red, top = self.n, self._red, self._top
            r = 0
            for j in range(b.bit_length() - 1, -1, -1):
                r <<= 1
                if r & top:
                    r ^= top | red
                if (b >> j) & 1:
                    r ^= a
            return r
        p, n = self.p, self.n
        if n == 1:
            return (a * b) % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        red = self._red
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                base = k - n
                for j in range(n):
                    prod[base + j] += c * red[j]
        return self._encode([c % p for c in prod[:n]])

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        e %= self.q - 1
        if e == 0:
            return 1
        r = 1
        base = a
        while e:
            if e & 1:
                r = self.mul(r, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.q - 2)

    # -- dense polynomial helpers (lists of encodings, constant term first) --

    def poly_eval(self, coeffs, x):
        r = 0
        for c in reversed(coeffs):
            r = self.add(self.mul(r, x), c)
        return r

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = self.add(out[i + j], self.mul(x, y))
        while out and out[-1] == 0:
            out.pop()
        return out

    def poly_divmod(self, a, b):
        # b must be nonzero with nonzero leading coefficient
        r = list(a)
        db = len(b) - 1
        if len(r) - 1 < db:
            return [], _trim(r)
        lead_inv = self.inv(b[-1])
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = self.mul(c, lead_inv)
                q[k - db] = c
                for j in range(db + 1):
                    if b[j]:
                        r[k - db + j] = self.sub(r[k - db + j], self.mul(c, b[j]))
        return _trim(q), _trim(r[:db])


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c

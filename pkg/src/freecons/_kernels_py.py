"""Pure-Python reduction kernels.

Same classes and signatures as the compiled ``_kernels`` extension; used when
the extension is unavailable or ``FREECONS_PURE_PYTHON`` is set.
"""


class AmalgamKernel:
    """Left-multiplication normal form for ``G *_A H`` with both factors given
    by multiplication tables and A finite.

    Per side ``s`` (0 = G, 1 = H): ``mul[s]`` is the flattened table,
    ``rep[s][x]`` the canonical right-coset representative of ``x``,
    ``apart[s][x]`` the index in A of ``x * rep^-1``, ``aelem[s][k]`` the
    element of side ``s`` carrying A-index ``k``.
    """

    def __init__(self, mul, rep, apart, aelem, ident):
        self.mul = [list(mul[0]), list(mul[1])]
        self.rep = [list(rep[0]), list(rep[1])]
        self.apart = [list(apart[0]), list(apart[1])]
        self.aelem = [list(aelem[0]), list(aelem[1])]
        self.ident = [int(ident[0]), int(ident[1])]
        self.n = [len(self.rep[0]), len(self.rep[1])]

    def __reduce__(self):
        return (type(self), (self.mul, self.rep, self.apart, self.aelem, self.ident))

    def left_mul(self, letters, prefix, syllables):
        """Normal form of ``letters * (prefix . syllables)``.

        ``letters`` is a sequence of ``(side, element)``; ``syllables`` a
        sequence of ``(side, rep)``; returns ``(prefix, syllables)``.
        """
        mul, rep, apart, aelem, ident, n = (
            self.mul, self.rep, self.apart, self.aelem, self.ident, self.n)
        sides = [s for s, _ in reversed(syllables)]
        reps = [r for _, r in reversed(syllables)]
        k = prefix
        for s, f in reversed(letters):
            m = mul[s]
            ns = n[s]
            c = m[f * ns + aelem[s][k]]
            if sides and sides[-1] == s:
                sides.pop()
                c = m[c * ns + reps.pop()]
            k = apart[s][c]
            r = rep[s][c]
            if r != ident[s]:
                sides.append(s)
                reps.append(r)
        return k, tuple(zip(reversed(sides), reversed(reps)))


class BSKernel:
    """Britton normal form for ``<Z, t | t^-1 (p k) t = sigma q k>``.

    Letters are ``(0, g)`` for the integer ``g`` or ``(1, +-1)`` for ``t^{+-1}``.
    Syllables are ``(eps, r)`` with ``0 <= r < q`` after ``t`` and
    ``0 <= r < p`` after ``t^-1``.
    """

    def __init__(self, p, q, sigma):
        self.p = int(p)
        self.q = int(q)
        self.sigma = int(sigma)

    def __reduce__(self):
        return (type(self), (self.p, self.q, self.sigma))

    def left_mul(self, letters, g0, syllables):
        p, q, sg = self.p, self.q, self.sigma
        eps = [e for e, _ in reversed(syllables)]
        reps = [r for _, r in reversed(syllables)]
        for kind, v in reversed(letters):
            if kind == 0:
                g0 = v + g0
            elif v == 1:
                r = g0 % q
                img = sg * p * ((g0 - r) // q)
                if r == 0 and eps and eps[-1] == -1:
                    eps.pop()
                    g0 = img + reps.pop()
                else:
                    eps.append(1)
                    reps.append(r)
                    g0 = img
            else:
                r = g0 % p
                img = sg * q * ((g0 - r) // p)
                if r == 0 and eps and eps[-1] == 1:
                    eps.pop()
                    g0 = img + reps.pop()
                else:
                    eps.append(-1)
                    reps.append(r)
                    g0 = img
        return g0, tuple(zip(reversed(eps), reversed(reps)))

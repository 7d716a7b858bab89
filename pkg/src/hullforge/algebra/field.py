"""Exact coefficient fields: the rationals (gmpy2.mpq) and GF(p) (reduced ints)."""

from fractions import Fraction

from gmpy2 import mpq, mpz

from ..errors import MalformedInput


def _is_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """Base field: characteristic 0 means QQ, otherwise GF(p) with p < 2**31."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic=0):
        characteristic = int(characteristic)
        if characteristic != 0:
            if characteristic >= 2**31 or not _is_prime(characteristic):
                raise MalformedInput(f"characteristic must be 0 or a prime < 2^31, got {characteristic}")
        self.characteristic = characteristic

    @property
    def kind(self):
        return "rationals" if self.characteristic == 0 else "prime-field"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("FieldSpec", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def __call__(self, value):
        """Coerce an int, Fraction, mpq or 'a/b' string into the field."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value.strip())
        if p == 0:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        if isinstance(value, (Fraction, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes in GF({p})")
            return num * pow(den, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if self.characteristic == 0:
            return 1 / a
        return pow(int(a), -1, self.characteristic)

    def to_fraction(self, a):
        """Exact value as a Fraction (for GF(p): the representative in [0, p))."""
        if self.characteristic == 0:
            return Fraction(int(a.numerator), int(a.denominator))
        return Fraction(int(a))

    def format(self, a):
        if self.characteristic == 0:
            num, den = int(a.numerator), int(a.denominator)
            return str(num) if den == 1 else f"{num}/{den}"
        a = int(a)
        # symmetric representative reads better in output
        if a > self.characteristic // 2:
            a -= self.characteristic
        return str(a)

    def is_integral(self, a):
        return self.characteristic != 0 or a.denominator == 1


QQ = FieldSpec(0)


def GF(p):
    return FieldSpec(p)


__all__ = ["FieldSpec", "QQ", "GF", "mpq", "mpz"]

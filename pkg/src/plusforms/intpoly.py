"""Dense integer power series with fast truncated multiplication.

Series are plain lists of Python ints, index = exponent of q.  Large
products go through Kronecker substitution (pack the coefficients into one
huge integer, multiply with GMP via gmpy2 when available, unpack).  This is
what makes exact eigenform coefficients up to index ~2*10^4 and discriminant
coefficients up to ~2*10^5 cheap.
"""

from __future__ import annotations

from functools import lru_cache

try:
    from gmpy2 import mpz

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 present in normal installs
    mpz = int
    _HAVE_GMPY2 = False

_SCHOOLBOOK_CUTOFF = 160


def poly_mul_trunc(a: list[int], b: list[int], prec: int) -> list[int]:
    """Product of integer series truncated to indices <= prec."""
    la = min(len(a), prec + 1)
    lb = min(len(b), prec + 1)
    if la == 0 or lb == 0:
        return []
    a = a[:la]
    b = b[:lb]
    if la * lb <= _SCHOOLBOOK_CUTOFF * _SCHOOLBOOK_CUTOFF:
        return _mul_schoolbook(a, b, prec)
    if any(c < 0 for c in a) or any(c < 0 for c in b):
        ap = [c if c > 0 else 0 for c in a]
        an = [-c if c < 0 else 0 for c in a]
        bp = [c if c > 0 else 0 for c in b]
        bn = [-c if c < 0 else 0 for c in b]
        pp = _mul_kronecker(ap, bp, prec)
        nn = _mul_kronecker(an, bn, prec)
        pn = _mul_kronecker(ap, bn, prec)
        np_ = _mul_kronecker(an, bp, prec)
        n = max(len(pp), len(nn), len(pn), len(np_))
        for lst in (pp, nn, pn, np_):
            lst.extend([0] * (n - len(lst)))
        return [pp[i] + nn[i] - pn[i] - np_[i] for i in range(n)]
    return _mul_kronecker(a, b, prec)


def _mul_schoolbook(a: list[int], b: list[int], prec: int) -> list[int]:
    n = min(prec, len(a) + len(b) - 2)
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > n:
            continue
        jmax = min(len(b) - 1, n - i)
        for j in range(jmax + 1):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _mul_kronecker(a: list[int], b: list[int], prec: int) -> list[int]:
    """Multiply nonnegative-coefficient series via packed big integers."""
    max_a = max(a, default=0)
    max_b = max(b, default=0)
    if max_a == 0 or max_b == 0:
        return [0] * (min(prec, len(a) + len(b) - 2) + 1)
    bits = max_a.bit_length() + max_b.bit_length() + min(len(a), len(b)).bit_length() + 1
    width = (bits + 7) // 8  # bytes per packed coefficient
    pa = _pack(a, width)
    pb = _pack(b, width)
    prod = int(mpz(pa) * mpz(pb))
    n = min(prec, len(a) + len(b) - 2)
    return _unpack(prod, width, n)


def _pack(coeffs: list[int], width: int) -> int:
    buf = bytearray(width * len(coeffs))
    for i, c in enumerate(coeffs):
        if c:
            buf[i * width : i * width + width] = c.to_bytes(width, "little")
    return int.from_bytes(buf, "little")


def _unpack(value: int, width: int, n: int) -> list[int]:
    nbytes = max(width * (n + 1), (value.bit_length() + 7) // 8)
    raw = value.to_bytes(nbytes, "little")
    out = []
    for i in range(n + 1):
        out.append(int.from_bytes(raw[i * width : (i + 1) * width], "little"))
    return out


def poly_pow_trunc(a: list[int], e: int, prec: int) -> list[int]:
    """a(q)^e truncated, by binary powering."""
    if e == 0:
        return [1]
    result = None
    base = a[: prec + 1]
    while e:
        if e & 1:
            result = base[:] if result is None else poly_mul_trunc(result, base, prec)
        e >>= 1
        if e:
            base = poly_mul_trunc(base, base, prec)
    return result


def poly_scale_shift(a: list[int], scale: int, shift: int, prec: int) -> list[int]:
    """scale * q^shift * a(q), truncated."""
    out = [0] * min(prec + 1, shift + len(a))
    for i, c in enumerate(a):
        j = i + shift
        if j > prec:
            break
        out[j] = scale * c
    return out


def poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


# ---------------------------------------------------------------------------
# Specific series
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def theta_int(prec: int) -> tuple[int, ...]:
    """Theta(z) = 1 + 2 sum_{n>=1} q^(n^2), coefficients up to prec."""
    out = [0] * (prec + 1)
    out[0] = 1
    n = 1
    while n * n <= prec:
        out[n * n] = 2
        n += 1
    return tuple(out)


@lru_cache(maxsize=64)
def sigma_odd_int(prec: int) -> tuple[int, ...]:
    """sum over odd n >= 1 of sigma1(n) q^n, the weight-2 generator."""
    out = [0] * (prec + 1)
    for d in range(1, prec + 1, 2):
        for m in range(d, prec + 1, 2 * d):
            out[m] += d
    return tuple(out)


def eta3_int(prec: int) -> list[int]:
    """q^(-1/8) eta(z)^3 = sum_{j>=0} (-1)^j (2j+1) q^(j(j+1)/2)."""
    out = [0] * (prec + 1)
    j = 0
    while j * (j + 1) // 2 <= prec:
        out[j * (j + 1) // 2] = (-1) ** j * (2 * j + 1)
        j += 1
    return out


@lru_cache(maxsize=8)
def delta_int(prec: int) -> tuple[int, ...]:
    """Ramanujan tau coefficients: Delta = q prod (1-q^n)^24 up to index prec."""
    e3 = eta3_int(prec)
    e6 = poly_mul_trunc(e3, e3, prec)
    e12 = poly_mul_trunc(e6, e6, prec)
    e24 = poly_mul_trunc(e12, e12, prec)
    return tuple(poly_scale_shift(e24, 1, 1, prec))


@lru_cache(maxsize=32)
def eisenstein_int(weight: int, prec: int) -> tuple[int, ...]:
    """Normalized E4 or E6 times its denominator: returns integer series of
    240*sigma3 / -504*sigma5 style, i.e. E_w itself (constant term 1)."""
    if weight == 4:
        mult, power = 240, 3
    elif weight == 6:
        mult, power = -504, 5
    else:
        raise ValueError("only E4 and E6 are provided")
    out = [0] * (prec + 1)
    out[0] = 1
    for d in range(1, prec + 1):
        dp = d**power
        for m in range(d, prec + 1, d):
            out[m] += mult * dp
    return tuple(out)

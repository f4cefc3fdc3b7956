"""Pure-Python sparse product kernels.

Operands are ``dict[int, int]`` mapping a packed term key to an integer
coefficient.  The low nine bits of a key hold the Fourier slot (bit 0: 0 for
cos, 1 for sin; bits 1-8: harmonic j); everything above is the packed
monomial, so monomial multiplication is integer addition of ``key >> 9``.

The compiled module ``_kernels`` exposes the same three functions with the
same semantics.
"""

BACKEND = "python"


def mul(a, b):
    """Plain product; at most one operand may carry Fourier bits."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    bl = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bl:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def trig_mul(a, b):
    """Twice the product of two Fourier-basis sums (product-to-sum form).

    Returning ``2*a*b`` keeps every coefficient integral; the caller halves
    the common denominator.
    """
    out = {}
    get = out.get
    bl = [(kb >> 9, (kb >> 1) & 255, kb & 1, cb) for kb, cb in b.items()]
    for ka, ca in a.items():
        ma = ka >> 9
        ja = (ka >> 1) & 255
        sa = ka & 1
        for mb, jb, sb, cb in bl:
            c = ca * cb
            m = (ma + mb) << 9
            jp = ja + jb
            jm = ja - jb
            if sa == 0:
                if sb == 0:
                    # cos A cos B = cos(A-B) + cos(A+B)   (times 1/2)
                    k = m | ((jm if jm >= 0 else -jm) << 1)
                    out[k] = get(k, 0) + c
                    k = m | (jp << 1)
                    out[k] = get(k, 0) + c
                else:
                    # cos A sin B = sin(A+B) - sin(A-B)
                    k = m | (jp << 1) | 1
                    out[k] = get(k, 0) + c
                    if jm > 0:
                        k = m | (jm << 1) | 1
                        out[k] = get(k, 0) - c
                    elif jm < 0:
                        k = m | ((-jm) << 1) | 1
                        out[k] = get(k, 0) + c
            else:
                if sb == 0:
                    # sin A cos B = sin(A+B) + sin(A-B)
                    k = m | (jp << 1) | 1
                    out[k] = get(k, 0) + c
                    if jm > 0:
                        k = m | (jm << 1) | 1
                        out[k] = get(k, 0) + c
                    elif jm < 0:
                        k = m | ((-jm) << 1) | 1
                        out[k] = get(k, 0) - c
                else:
                    # sin A sin B = cos(A-B) - cos(A+B)
                    k = m | ((jm if jm >= 0 else -jm) << 1)
                    out[k] = get(k, 0) + c
                    k = m | (jp << 1)
                    out[k] = get(k, 0) - c
    return {k: v for k, v in out.items() if v}


def or_keys(a):
    """Bitwise OR of all keys (used for the exponent-overflow guard)."""
    acc = 0
    for k in a:
        acc |= k
    return acc

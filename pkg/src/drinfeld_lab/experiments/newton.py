"""Characteristic polynomials from power traces via Newton's identities."""

from __future__ import annotations

from drinfeld_lab.errors import BadInput, CharacteristicDivision


def newton_reconstruct(field, power_traces, n):
    """e_1..e_n from p_k = tr(M^k), k = 1..n.

    Uses k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i with e_0 = 1.  Dividing
    by k needs k invertible in the field, so any k divisible by the
    characteristic raises CharacteristicDivision.  The characteristic
    polynomial is X^n - e_1 X^(n-1) + ... + (-1)^n e_n.
    """
    if n < 1:
        raise BadInput("dimension must be >= 1")
    if len(power_traces) < n:
        raise BadInput(f"need {n} power traces, got {len(power_traces)}")
    F = field
    e = [F.one]
    for k in range(1, n + 1):
        if k % F.p == 0:
            raise CharacteristicDivision(k, F.p)
        acc = F.zero
        for i in range(1, k + 1):
            term = F.mul(e[k - i], power_traces[i - 1])
            acc = F.add(acc, term) if i % 2 == 1 else F.sub(acc, term)
        e.append(F.div(acc, F.from_int(k)))
    return e[1:]


def charpoly_from_elementary(field, e):
    """Coefficients (lowest first, monic) of X^n - e_1 X^(n-1) + ... + (-1)^n e_n."""
    n = len(e)
    out = [field.zero] * (n + 1)
    out[n] = field.one
    for k, ek in enumerate(e, start=1):
        out[n - k] = ek if k % 2 == 0 else field.neg(ek)
    return out


def power_traces(matrix, n):
    """tr(M^k) for k = 1..n."""
    out = []
    P = matrix
    for _ in range(n):
        out.append(P.trace())
        P = P @ matrix
    return out

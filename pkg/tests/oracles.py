"""Brute-force reference implementations used as test oracles.

Everything here works on explicit term lists (frozensets of variable
indices) or on full truth tables, never touching the ZDD code paths it is
meant to check.
"""

from __future__ import annotations

import itertools


def eval_terms(terms, point) -> int:
    """Value at a 0/1 point of the polynomial with the given term set."""
    acc = 0
    for t in terms:
        if all(point[v] for v in t):
            acc ^= 1
    return acc


def truth_table(terms, n: int) -> tuple[int, ...]:
    return tuple(
        eval_terms(terms, p) for p in itertools.product((0, 1), repeat=n)
    )


def naive_mul(terms1, terms2) -> frozenset:
    """Term-list product reduced modulo the field relations."""
    acc: set[frozenset] = set()
    for a in terms1:
        for b in terms2:
            t = frozenset(a) | frozenset(b)
            acc.symmetric_difference_update({t})
    return frozenset(acc)


def naive_add(terms1, terms2) -> frozenset:
    return frozenset(set(map(frozenset, terms1)) ^ set(map(frozenset, terms2)))


def naive_nf_monomials(terms, monomials) -> frozenset:
    """Drop terms divisible by any member of the monomial set."""
    monomials = [frozenset(m) for m in monomials]
    return frozenset(
        t for t in map(frozenset, terms)
        if not any(m <= t for m in monomials)
    )


def variety(polys_terms, n: int) -> set:
    """Common zeros in {0,1}^n of polynomials given as term sets."""
    return {
        p
        for p in itertools.product((0, 1), repeat=n)
        if all(eval_terms(ts, p) == 0 for ts in polys_terms)
    }


def all_polynomials(n: int):
    """Every Boolean polynomial on n variables, as a term set (2^(2^n))."""
    monomials = [
        frozenset(s)
        for k in range(n + 1)
        for s in itertools.combinations(range(n), k)
    ]
    for mask in range(2 ** len(monomials)):
        yield frozenset(
            m for i, m in enumerate(monomials) if (mask >> i) & 1
        )


def interpolates(terms, zeros_pts, ones_pts) -> bool:
    return all(eval_terms(terms, p) == 0 for p in zeros_pts) and all(
        eval_terms(terms, p) == 1 for p in ones_pts
    )


def lex_poly_key(terms, n: int):
    """Key realizing the lexicographic extension of lex to polynomials:
    smaller key = lex-smaller polynomial (0 smallest)."""

    def mon_key(m):
        return tuple(-v for v in sorted(m))

    return tuple(sorted((mon_key(m) for m in terms), reverse=True))


# -- Z/m helpers -----------------------------------------------------------------


def zm_divides(m: int, a: int, b: int) -> bool:
    return any(a * x % m == b % m for x in range(m))


def zm_annihilator_set(m: int, a: int) -> set:
    return {x for x in range(m) if a * x % m == 0}


def zm_ideal_generated(m: int, a: int) -> set:
    return {a * x % m for x in range(m)}


def eval_zm_terms(terms, point, m: int) -> int:
    total = 0
    for exps, c in terms:
        v = c
        for x, e in zip(point, exps):
            v = v * pow(x, e, m) % m
        total = (total + v) % m
    return total


def zm_variety(polys, n: int, m: int) -> set:
    pts = itertools.product(range(m), repeat=n)
    return {
        p
        for p in pts
        if all(eval_zm_terms(f.terms, p, m) == 0 for f in polys)
    }

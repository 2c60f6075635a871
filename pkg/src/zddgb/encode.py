"""Translate verification problems into polynomial systems.

Word-level: circuits over Z/2^n become ideals with the disequality gadget
s*(f-e) = 2^(n-1).  Bit-level: word equations blast into n Boolean
polynomials each, with the gadget replaced by prod(1 + f_i + e_i);
arithmetic is ripple-carry addition and schoolbook multiplication with
fully expanded carries (fresh carry variables are opt-in).  A DIMACS
reader maps CNF clauses to products of literal polynomials, and the
pigeonhole / multiplier families generate the benchmark instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .boolpoly import BoolPoly, BoolRing, Ordering
from .ringstd import ZmPoly, ZmRing


class EncodeError(Exception):
    """Malformed circuit or CNF input."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# -- circuits -------------------------------------------------------------------


@dataclass
class Circuit:
    """Combinational word-level circuit with optional property and
    disequality pair."""

    wordlen: int
    signals: list[str] = field(default_factory=list)
    assigns: list[tuple] = field(default_factory=list)   # (dest, op, x, y)
    asserts: list[tuple] = field(default_factory=list)
    disequality: tuple[str, str] | None = None

    def targets(self) -> list[str]:
        out = []
        for dest, _, _, _ in self.assigns + self.asserts:
            if dest not in out:
                out.append(dest)
        return out

    def validate(self) -> None:
        seen = set(self.signals)
        for dest, op, x, y in self.assigns + self.asserts:
            for s in (dest, x, y):
                if isinstance(s, str) and s not in seen:
                    raise EncodeError(f"signal {s!r} not declared")
        if self.disequality:
            for s in self.disequality:
                if s not in seen:
                    raise EncodeError(f"signal {s!r} not declared")


def parse_circuit(text: str) -> Circuit:
    """Line-oriented format: wordlen, signal, assign, assert, disequal."""
    c = Circuit(wordlen=0)
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        try:
            if kw == "wordlen":
                c.wordlen = int(parts[1])
            elif kw == "signal":
                c.signals.extend(parts[1:])
            elif kw in ("assign", "assert"):
                # assign z = x op y   |   assign z = x   |   assign z = 3
                if parts[2] != "=":
                    raise EncodeError("expected '='", ln)
                dest = parts[1]
                rhs = parts[3:]
                if len(rhs) == 1:
                    val = rhs[0]
                    stmt = (
                        (dest, "const", int(val), 0)
                        if val.lstrip("-").isdigit()
                        else (dest, "copy", val, 0)
                    )
                elif len(rhs) == 3 and rhs[1] in ("add", "mul", "+", "*"):
                    op = "add" if rhs[1] in ("add", "+") else "mul"
                    stmt = (dest, op, rhs[0], rhs[2])
                else:
                    raise EncodeError(f"cannot parse rhs {' '.join(rhs)!r}", ln)
                (c.assigns if kw == "assign" else c.asserts).append(stmt)
            elif kw == "disequal":
                c.disequality = (parts[1], parts[2])
            else:
                raise EncodeError(f"unknown keyword {kw!r}", ln)
        except (IndexError, ValueError) as exc:
            raise EncodeError(f"cannot parse {line!r} ({exc})", ln) from None
    if c.wordlen <= 0:
        raise EncodeError("missing or invalid wordlen")
    c.validate()
    return c


# -- word level -------------------------------------------------------------------


@dataclass
class WordSystem:
    """Polynomial model over Z/2^n, disequality gadget included."""

    wordlen: int
    ring: ZmRing
    polys: list[ZmPoly]
    equations: list[ZmPoly]          # without the gadget
    disequality: tuple[str, str] | None
    s_name: str | None
    outputs: list[str] = field(default_factory=list)
    statements: list[tuple] = field(default_factory=list)


def word_level_encode(c: Circuit, require_disequality: bool = False) -> WordSystem:
    """One generator per assignment/property; a disequality pair (f, e)
    contributes s*(f-e) - 2^(n-1) with a fresh variable s."""
    if require_disequality and c.disequality is None:
        raise EncodeError("refutation system requested but no disequality pair")
    names = list(c.signals)
    s_name = None
    if c.disequality is not None:
        s_name = "s"
        while s_name in names:
            s_name += "_"
        names.append(s_name)
    ring = ZmRing(2**c.wordlen, names)

    def rhs_poly(op, x, y):
        if op == "const":
            return ring.const(x)
        if op == "copy":
            return ring.var(x)
        xv, yv = ring.var(x), ring.var(y)
        return xv + yv if op == "add" else xv * yv

    equations = []
    for dest, op, x, y in c.assigns + c.asserts:
        equations.append(rhs_poly(op, x, y) - ring.var(dest))
    polys = list(equations)
    if c.disequality is not None:
        f, e = c.disequality
        gadget = ring.var(s_name) * (ring.var(f) - ring.var(e)) - ring.const(
            2 ** (c.wordlen - 1)
        )
        polys.append(gadget)
    return WordSystem(
        c.wordlen, ring, polys, equations, c.disequality, s_name,
        c.targets(), list(c.assigns + c.asserts),
    )


# -- bit level --------------------------------------------------------------------


@dataclass
class BitSystem:
    """Boolean polynomial system plus its variable naming map."""

    ring: BoolRing
    polys: list[BoolPoly]
    bit_names: dict[str, list[int]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def num_vars(self) -> int:
        return self.ring.n

    @property
    def num_eqs(self) -> int:
        return len(self.polys)


def bit_add(a_bits, b_bits, fresh=None):
    """Bitwise sum mod 2^n by ripple carry: s = a+b+c, c' = ab+ac+bc.

    With `fresh` (a callable tag -> variable polynomial) each carry becomes
    a fresh variable and its defining polynomial goes to the aux list;
    otherwise carries are expanded in place and aux stays empty.
    """
    if len(a_bits) != len(b_bits):
        raise ValueError("bit vectors must have equal length")
    n = len(a_bits)
    ring = a_bits[0].ring
    aux = []
    carry = ring.zero
    out = []
    for i in range(n):
        a, b = a_bits[i], b_bits[i]
        out.append(a + b + carry)
        if i == n - 1:
            break
        new_carry = a * b + a * carry + b * carry
        if fresh is not None:
            cv = fresh(f"carry{i}")
            aux.append(cv + new_carry)
            carry = cv
        else:
            carry = new_carry
    return out, aux


def bit_mul(a_bits, b_bits, fresh=None):
    """Schoolbook product mod 2^n: partial-product rows accumulated with
    ripple additions."""
    if len(a_bits) != len(b_bits):
        raise ValueError("bit vectors must have equal length")
    n = len(a_bits)
    ring = a_bits[0].ring
    aux = []
    acc = [a_bits[i] * b_bits[0] for i in range(n)]
    for j in range(1, n):
        row = [ring.zero] * j + [a_bits[i] * b_bits[j] for i in range(n - j)]
        acc, more = bit_add(acc, row, fresh)
        aux.extend(more)
    return acc, aux


def const_bits(ring: BoolRing, n: int, value: int):
    return [ring.one if (value >> i) & 1 else ring.zero for i in range(n)]


def blast(ws: WordSystem) -> BitSystem:
    """n Boolean polynomials per word equation; the disequality pair adds
    prod(1 + f_i + e_i) instead of the s-gadget."""
    n = ws.wordlen
    signals = [nm for nm in ws.ring.names if nm != ws.s_name]
    # outputs first, then inputs, most significant bit first
    ordered = [nm for nm in ws.outputs if nm in signals]
    ordered += [nm for nm in signals if nm not in ordered]
    names: list[str] = []
    bit_names: dict[str, list[int]] = {}
    for nm in ordered:
        idxs = []
        for i in range(n - 1, -1, -1):
            idxs.append(len(names))
            names.append(f"{nm}{i}")
        bit_names[nm] = idxs[::-1]      # position i = bit of weight 2^i
    ring = BoolRing(names, Ordering("lp"))

    def signal_bits(nm: str):
        return [ring.var(v) for v in bit_names[nm]]

    def rhs_bits(op, x, y):
        if op == "const":
            return const_bits(ring, n, x % (2**n))
        if op == "copy":
            return signal_bits(x)
        xb, yb = signal_bits(x), signal_bits(y)
        return (bit_add if op == "add" else bit_mul)(xb, yb)[0]

    polys = []
    for dest, op, x, y in ws.statements:
        db = signal_bits(dest)
        rb = rhs_bits(op, x, y)
        polys.extend(rb[i] + db[i] for i in range(n))
    if ws.disequality is not None:
        f, e = ws.disequality
        fb, eb = signal_bits(f), signal_bits(e)
        prod = ring.one
        for i in range(n):
            prod = prod * (ring.one + fb[i] + eb[i])
        polys.append(prod)
    return BitSystem(ring, polys, bit_names, {"wordlen": n})


# -- CNF ---------------------------------------------------------------------------


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    """DIMACS CNF: 'p cnf V C' header, clauses terminated by 0."""
    nvars = None
    nclauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise EncodeError(f"malformed header {line!r}", ln)
            try:
                nvars, nclauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise EncodeError(f"malformed header {line!r}", ln) from None
            continue
        if nvars is None:
            raise EncodeError("clause before header", ln)
        for col, tok in enumerate(line.split()):
            try:
                lit = int(tok)
            except ValueError:
                raise EncodeError(f"bad literal {tok!r}", ln, col) from None
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > nvars:
                    raise EncodeError(f"literal {lit} out of range", ln, col)
                current.append(lit)
    if current:
        clauses.append(current)
    if nvars is None:
        raise EncodeError("missing 'p cnf' header")
    if nclauses is not None and nclauses != len(clauses):
        raise EncodeError(
            f"header announces {nclauses} clauses, found {len(clauses)}"
        )
    return nvars, clauses


def cnf_to_polys(source, ring: BoolRing | None = None) -> BitSystem:
    """One polynomial per clause: positive literal v maps to (x_v + 1),
    negative to x_v; the product vanishes exactly on satisfying
    assignments (truth value 1 means x = 1)."""
    if isinstance(source, str):
        nvars, clauses = parse_dimacs(source)
    else:
        nvars, clauses = source
    if ring is None:
        ring = BoolRing([f"v{i}" for i in range(1, nvars + 1)], Ordering("lp"))
    elif ring.n < nvars:
        raise EncodeError("ring too small for the clause set")
    polys = []
    for clause in clauses:
        p = ring.one
        for lit in clause:
            x = ring.var(abs(lit) - 1)
            p = p * (x + ring.one) if lit > 0 else p * x
        polys.append(p)
    return BitSystem(
        ring,
        polys,
        {"v": list(range(nvars))},
        {"nvars": nvars, "nclauses": len(clauses)},
    )


# -- benchmark families ----------------------------------------------------------------


def pigeonhole_cnf(k: int) -> tuple[int, list[list[int]]]:
    """PHP with k+1 pigeons and k holes; x_{p,h} = (p-1)*k + h."""
    if k < 1:
        raise ValueError("need at least one hole")
    nvars = (k + 1) * k

    def var(p, h):
        return (p - 1) * k + h

    clauses = [[var(p, h) for h in range(1, k + 1)] for p in range(1, k + 2)]
    for h in range(1, k + 1):
        for p1 in range(1, k + 2):
            for p2 in range(p1 + 1, k + 2):
                clauses.append([-var(p1, h), -var(p2, h)])
    return nvars, clauses


def pigeonhole(k: int) -> BitSystem:
    sys = cnf_to_polys(pigeonhole_cnf(k))
    sys.meta["family"] = f"hole{k}"
    return sys


def mult_verification(n: int, tamper: bool = False) -> BitSystem:
    """Equivalence of two n-bit multiplier encodings as an UNSAT instance.

    Encoding A is the fully expanded schoolbook product; encoding B is a
    gate-level array multiplier with explicit partial-product and carry
    variables.  The system asserts that some output bit differs, so it is
    unsatisfiable exactly when the encodings agree.  `tamper` drops one
    partial product from encoding B, which opens a countermodel.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    pp_cells = sum(n - j for j in range(n))
    carry_cells = (n - 1) * (n - 1)
    names = [f"o{i}" for i in range(n - 1, -1, -1)]
    names += [f"t{j}" for j in range(pp_cells + carry_cells)]
    names += [f"a{i}" for i in range(n - 1, -1, -1)]
    names += [f"b{i}" for i in range(n - 1, -1, -1)]
    ring = BoolRing(names, Ordering("lp"))

    aux_used = 0

    def fresh(_tag: str) -> BoolPoly:
        nonlocal aux_used
        v = ring.var(f"t{aux_used}")
        aux_used += 1
        return v

    a_bits = [ring.var(f"a{i}") for i in range(n)]
    b_bits = [ring.var(f"b{i}") for i in range(n)]
    polys: list[BoolPoly] = []

    pp = {}
    for j in range(n):
        for i in range(n - j):
            t = fresh(f"pp{i}_{j}")
            pp[(i, j)] = t
            polys.append(t + a_bits[i] * b_bits[j])
    if tamper:
        pp[(n - 2, 1)] = ring.zero

    acc = [pp[(i, 0)] for i in range(n)]
    for j in range(1, n):
        row = [ring.zero] * j + [pp[(i, j)] for i in range(n - j)]
        acc, aux = bit_add(acc, row, fresh)
        polys.extend(aux)
    out_bits = [ring.var(f"o{i}") for i in range(n)]
    polys.extend(out_bits[i] + acc[i] for i in range(n))

    golden, _ = bit_mul(a_bits, b_bits)
    diseq = ring.one
    for i in range(n):
        diseq = diseq * (ring.one + out_bits[i] + golden[i])
    polys.append(diseq)

    bit_names = {
        "o": [ring.index(f"o{i}") for i in range(n)],
        "a": [ring.index(f"a{i}") for i in range(n)],
        "b": [ring.index(f"b{i}") for i in range(n)],
    }
    sysname = f"mult{n}x{n}" + ("_tampered" if tamper else "")
    return BitSystem(ring, polys, bit_names, {"family": sysname, "n": n})

"""Command-line front end: function-file ingestion, spectral and rectangle
checks, construction drivers and reproduction of the library's headline
counts.

Exit codes: 0 predicate true / success, 1 predicate false / mismatch,
2 usage error, 3 malformed input or invalid construction parameters.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
import time

import numpy as np

from . import constructions as cons
from . import partitions as parts
from .affine_group import is_normal, random_affine_image
from .planes import AffinePlane, all_planes
from .qalg import QFunction, is_prime
from .rectangle import is_bent_rectangle, rectangle
from .spectral import (is_bent, is_regular_bent, plateaued_order,
                       wht, wht_numeric)

USAGE_ERROR = 2
INPUT_ERROR = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _fail(message: str, code: int):
    raise CliError(message, code)


# ---------------------------------------------------------------------------
# function files

def read_function(path: str) -> QFunction:
    """Parse a function file: header line "q n", then q^n residues in
    lexicographic argument order (x_1 most significant); '#' comments."""
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            text = fh.read()
    except OSError as e:
        _fail(f"cannot read {path}: {e}", INPUT_ERROR)
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if len(tokens) < 2:
        _fail("missing header", INPUT_ERROR)
    try:
        q, n = int(tokens[0]), int(tokens[1])
        body = [int(t) for t in tokens[2:]]
    except ValueError:
        _fail("non-integer token in function file", INPUT_ERROR)
    if q < 2 or n < 0:
        _fail("invalid header", INPUT_ERROR)
    if len(body) != q**n:
        _fail(f"expected {q**n} values, got {len(body)}", INPUT_ERROR)
    if any(not 0 <= v < q for v in body):
        _fail("residue out of range", INPUT_ERROR)
    return QFunction(q, n, body)


def write_function(f: QFunction, out=None):
    out = out or sys.stdout
    print(f"{f.q} {f.n}", file=out)
    width = f.q**max(f.n - (f.n + 1) // 2, 0) if f.n else 1
    table = list(f.table)
    for i in range(0, len(table), width):
        print(" ".join(str(v) for v in table[i:i + width]), file=out)


def _format_entry(coeffs, q: int) -> str:
    if q == 2:
        return str(int(coeffs[0]))
    return "[" + " ".join(str(int(c)) for c in coeffs) + "]"


# ---------------------------------------------------------------------------
# commands

def cmd_wht(args) -> int:
    f = read_function(args.file)
    if not is_prime(f.q) or os.environ.get("BENTRECT_MODE") == "numeric":
        spec = wht_numeric(f)
        for v in spec:
            print(f"{v.real:+.6f}{v.imag:+.6f}j")
        return 0
    spec = wht(f)
    for u in range(f.q**f.n):
        print(_format_entry(spec.values[u], f.q))
    return 0


def cmd_check(args) -> int:
    f = read_function(args.file)
    kind = args.kind
    if kind == "bent":
        return 0 if is_bent(f) else 1
    if kind == "regular":
        return 0 if is_regular_bent(f) else 1
    if kind == "plateaued":
        if f.q != 2:
            _fail("plateaued check requires q = 2", USAGE_ERROR)
        r = plateaued_order(f)
        if r is None:
            return 1
        print(r)
        return 0
    if kind == "normal":
        if f.q != 2 or f.n % 2:
            _fail("normality check requires q = 2 and even arity", USAGE_ERROR)
        witness = is_normal(f)
        if witness is None:
            return 1
        print("basis: " + ", ".join(" ".join(map(str, row)) for row in witness.basis)
              + "; shift: " + " ".join(map(str, witness.shift)))
        return 0
    _fail(f"unknown check kind {kind}", USAGE_ERROR)


def cmd_rect(args) -> int:
    f = read_function(args.file)
    if not 0 <= args.m <= f.n:
        _fail(f"m must be in 0..{f.n}", USAGE_ERROR)
    r = rectangle(f, args.m)
    if args.check:
        if (f.n % 2) or not is_prime(f.q):
            _fail("bentness check needs prime q and even arity", USAGE_ERROR)
        return 0 if is_bent_rectangle(r) else 1
    for u in range(r.q**r.m):
        print(" ".join(_format_entry(r.entries[u, v], r.q)
                       for v in range(r.q**r.k)))
    return 0


def cmd_partitions(args) -> int:
    q = args.q
    if not is_prime(q):
        _fail("q must be prime", USAGE_ERROR)
    if q**args.n > 1 << 16:
        _fail("space too large", USAGE_ERROR)
    stream = parts.enumerate_partitions(args.n, args.m, q, args.primitive_only)
    if args.list:
        for p in stream:
            print(f"{q} {args.n} {args.m}")
            for pl in p.planes:
                basis = ", ".join(" ".join(map(str, row)) for row in pl.basis)
                print(f"basis: {basis}; shift: " + " ".join(map(str, pl.shift)))
            print()
        return 0
    print(sum(1 for _ in stream))
    return 0


# ---------------------------------------------------------------------------
# construction specs

def _parse_spec(path: str) -> dict:
    """Construction spec: "key = value" lines; a bare "key =" starts a block
    whose rows run until the next line containing '='."""
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        _fail(f"cannot read {path}: {e}", INPUT_ERROR)
    data = {}
    block = None
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if value:
                data[key] = value
                block = None
            else:
                data[key] = []
                block = data[key]
        elif block is not None:
            block.append(line)
        else:
            _fail(f"stray line in spec: {raw!r}", INPUT_ERROR)
    return data


def _ints(text: str) -> list:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        _fail(f"expected integers, got {text!r}", INPUT_ERROR)


def _matrix(spec, key) -> tuple:
    rows = spec.get(key)
    if rows is None:
        _fail(f"missing matrix {key!r}", INPUT_ERROR)
    if isinstance(rows, str):
        rows = [rows]
    return tuple(tuple(_ints(r)) for r in rows)


def _need(spec, key) -> str:
    if key not in spec or isinstance(spec[key], list):
        _fail(f"missing parameter {key!r}", INPUT_ERROR)
    return spec[key]


def _qfunc(q, n, spec, key) -> QFunction:
    vals = _ints(_need(spec, key))
    if len(vals) != q**n:
        _fail(f"{key}: expected {q**n} values", INPUT_ERROR)
    return QFunction(q, n, vals)


def _build(spec: dict) -> QFunction:
    name = _need(spec, "construction")
    try:
        if name == "mm":
            q, n = int(_need(spec, "q")), int(_need(spec, "n"))
            return cons.maiorana(q, n, _ints(_need(spec, "pi")),
                                 _qfunc(q, n, spec, "phi"))
        if name == "sum":
            q = int(_need(spec, "q"))
            n1, n2 = int(_need(spec, "n1")), int(_need(spec, "n2"))
            return cons.direct_sum(_qfunc(q, n1, spec, "f1"),
                                   _qfunc(q, n2, spec, "f2"))
        if name == "rothaus":
            n = int(_need(spec, "n"))
            fs = [_qfunc(2, n, spec, k) for k in ("f1", "f2", "f3", "f4")]
            return cons.rothaus(*fs)
        if name == "carlet":
            n2 = int(_need(spec, "nvars"))
            f = _qfunc(2, n2, spec, "f")
            plane = AffinePlane.make(2, n2, _matrix(spec, "basis"),
                                     _ints(_need(spec, "shift")))
            g, ok = cons.carlet_flip(f, plane)
            if not ok:
                _fail("flip condition fails: restriction not plateaued of "
                      "the required order", INPUT_ERROR)
            return g
        if name == "biaffine":
            q, n = int(_need(spec, "q")), int(_need(spec, "n"))
            pi = cons.BiaffineMap.from_linear(
                q, _matrix(spec, "A"), _matrix(spec, "B"),
                _ints(spec["d"]) if "d" in spec else None)
            phi = _phase(spec, q, n)
            from .rectangle import rectangle_function
            return rectangle_function(cons.biaffine_square(
                pi, _qfunc(q, n, spec, "g"), phi))
        if name == "bilinear":
            q, n = int(_need(spec, "q")), int(_need(spec, "n"))
            fam = _family(spec, q, n)
            g = _qfunc(q, n, spec, "g")
            c = int(spec.get("c", 0))
            h = QFunction.constant(q, n, c)
            phi = _phase(spec, q, n, bilinear_only=True)
            from .rectangle import rectangle_function
            return rectangle_function(cons.bilinear_square(fam, g, phi, h, h))
        if name == "dillon":
            q, n = int(_need(spec, "q")), int(_need(spec, "n"))
            fam = _family(spec, q, n)
            return cons.dillon(cons.Spread.from_family(fam, n),
                               _qfunc(q, n, spec, "g"),
                               int(spec.get("c", 0)))
        if name == "partition":
            q, n, m = (int(_need(spec, k)) for k in ("q", "n", "m"))
            planes = []
            for line in spec.get("planes", []):
                head, _, tail = line.partition(";")
                basis = [_ints(b) for b in
                         head.split(":", 1)[1].split(",")] if ":" in head else []
                shift = _ints(tail.split(":", 1)[1])
                planes.append(AffinePlane.make(q, n, basis, shift))
            p = parts.PlanePartition.make(q, n, m, planes)
            gens_rows = spec.get("gens")
            if gens_rows is None:
                _fail("missing generator block 'gens'", INPUT_ERROR)
            gens = [QFunction(q, n - m, _ints(row)) for row in gens_rows]
            _, f = parts.partition_bent(p, gens)
            return f
        if name == "apart2":
            family = int(_need(spec, "family"))
            r = int(_need(spec, "r"))
            gs = [_qfunc(2, r, spec, k) for k in ("g1", "g2", "g3", "g4")]
            return parts.apart2_form(family, *gs)
    except CliError:
        raise
    except (ValueError, KeyError, IndexError) as e:
        _fail(f"invalid construction parameters: {e}", INPUT_ERROR)
    _fail(f"unknown construction {name!r}", INPUT_ERROR)


def _phase(spec, q, n, bilinear_only=False) -> cons.BiaffinePhase:
    if "alpha" not in spec and not any(k in spec for k in ("beta", "gamma", "delta")):
        return cons.BiaffinePhase.zero(q, n)
    alpha = _matrix(spec, "alpha") if "alpha" in spec else \
        tuple((0,) * n for _ in range(n))
    if bilinear_only:
        beta = gamma = (0,) * n
        delta = 0
    else:
        beta = tuple(_ints(spec["beta"])) if "beta" in spec else (0,) * n
        gamma = tuple(_ints(spec["gamma"])) if "gamma" in spec else (0,) * n
        delta = int(spec.get("delta", 0))
    return cons.BiaffinePhase(q, alpha, beta, gamma, delta)


def _family(spec, q, n) -> cons.BilinearFamily:
    if spec.get("family", "field") == "field":
        return cons.field_family(q, n)
    mats = []
    rows = spec.get("mats")
    if isinstance(rows, list) and len(rows) == n * n:
        for i in range(n):
            mats.append(tuple(tuple(_ints(r)) for r in rows[i * n:(i + 1) * n]))
        return cons.BilinearFamily(q, tuple(mats))
    _fail("matrix family needs an n*n-row 'mats' block", INPUT_ERROR)


def cmd_construct(args) -> int:
    f = _build(_parse_spec(args.spec))
    write_function(f)
    if args.verify:
        if f.n % 2:
            return 1
        return 0 if is_regular_bent(f) else 1
    return 0


# ---------------------------------------------------------------------------
# reproduction targets

def _report(target, expected, actual, started) -> int:
    ok = expected == actual
    print(f"target: {target}")
    print(f"expected: {expected}")
    print(f"actual: {actual}")
    print(f"elapsed_s: {time.time() - started:.2f}")
    print(f"status: {'ok' if ok else 'mismatch'}")
    return 0 if ok else 1


def random_b6(rng: random.Random) -> QFunction:
    """A pseudo-random 6-variable bent function: one of several
    constructions composed with a random affine equivalence."""
    kind = rng.randrange(4)
    if kind == 0:
        pi = list(range(8))
        rng.shuffle(pi)
        phi = QFunction(2, 3, [rng.randrange(2) for _ in range(8)])
        f = cons.maiorana(2, 3, pi, phi)
    elif kind == 1:
        f1 = random_b6_base(rng, 4)
        l1 = _random_affine_fn(rng, 4)
        l2 = _random_affine_fn(rng, 4)
        f2, f3 = f1 + l1, f1 + l2
        f4 = QFunction(2, 4, ((f1.table_array() + f2.table_array()
                               + f3.table_array()) % 2).tolist())
        f = cons.rothaus(f1, f2, f3, f4)
    elif kind == 2:
        fams = parts.canonical_partitions_v3()
        p = parts.lift_canonical(fams[rng.randrange(3)], 2)
        gens = [random_b6_base(rng, 2) for _ in range(4)]
        _, f = parts.partition_bent(p, gens)
    else:
        g = _random_balanced(rng, 3)
        f = cons.dillon(cons.field_spread(2, 3), g, rng.randrange(2))
    return random_affine_image(f, rng)


def random_b6_base(rng: random.Random, n: int) -> QFunction:
    """A random bent function of n in {2, 4} variables (MM over V_{n/2})."""
    h = n // 2
    pi = list(range(2**h))
    rng.shuffle(pi)
    phi = QFunction(2, h, [rng.randrange(2) for _ in range(2**h)])
    return cons.maiorana(2, h, pi, phi)


def _random_affine_fn(rng, n) -> QFunction:
    b = [rng.randrange(2) for _ in range(n)]
    c = rng.randrange(2)
    return QFunction.from_callable(2, n, lambda x: sum(bi * xi for bi, xi in zip(b, x)) + c)


def _random_balanced(rng, n) -> QFunction:
    table = [0] * 2**(n - 1) + [1] * 2**(n - 1)
    rng.shuffle(table)
    return QFunction(2, n, table)


def cmd_reproduce(args) -> int:
    started = time.time()
    target = args.target
    rng = random.Random(args.seed)
    if target == "b4-count":
        return _report(target, 896, parts.bent_count(2, 4), started)
    if target == "partitions":
        actual = (parts.count_partitions(3, 2, 2),
                  parts.count_partitions(3, 2, 2, primitive_only=True))
        return _report(target, (105, 98), actual, started)
    if target == "formulas":
        expected, actual = [], []
        for n, m in ((2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)):
            brute = parts.count_partitions(n, m, 2)
            expected.append((n, m, brute, brute))
            actual.append((n, m, parts.count_partitions_decomposition(n, m, 2),
                           parts.count_partitions_formula(n, m, 2)))
        return _report(target, expected, actual, started)
    if target == "normality":
        total = 200
        normal = sum(1 for _ in range(total)
                     if is_normal(random_b6(rng)) is not None)
        return _report(target, f"{total}/{total}", f"{normal}/{total}", started)
    if target == "carlet":
        mismatches = 0
        planes = [p for r in (2, 3, 4) for p in all_planes(4, r, 2)]
        for f in _all_b4():
            for plane in planes:
                g, cond = cons.carlet_flip(f, plane)
                if is_bent(g) != cond:
                    mismatches += 1
        return _report(target, 0, mismatches, started)
    _fail(f"unknown target {target!r}", USAGE_ERROR)


def _all_b4():
    idx = np.arange(16)
    from .partitions import _popcount
    hadamard = np.where(_popcount(idx[:, None] & idx[None, :]) % 2, -1, 1)
    tables = (np.arange(1 << 16)[:, None] >> idx[None, :]) & 1
    spectra = (1 - 2 * tables).astype(np.int64) @ hadamard
    for code in np.nonzero(np.all(np.abs(spectra) == 4, axis=1))[0]:
        yield QFunction(2, 4, tables[code].tolist())


# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bentrect",
        description="exact tools for generalized bent functions over Z_q")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized commands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wht", help="print the Walsh-Hadamard spectrum")
    p.add_argument("file")
    p.set_defaults(func=cmd_wht)

    p = sub.add_parser("check", help="test a spectral predicate")
    p.add_argument("kind", choices=("bent", "regular", "plateaued", "normal"))
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rect", help="print or check the (m, n-m)-rectangle")
    p.add_argument("file")
    p.add_argument("m", type=int)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_rect)

    p = sub.add_parser("construct", help="build a function from a spec file")
    p.add_argument("spec")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("partitions", help="enumerate plane partitions of V_n")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--primitive-only", action="store_true")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--count", action="store_true")
    group.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("reproduce", help="re-run a headline computation")
    p.add_argument("target", choices=("b4-count", "partitions", "formulas",
                                      "normality", "carlet"))
    p.set_defaults(func=cmd_reproduce)

    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_ERROR if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())

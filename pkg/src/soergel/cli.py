"""Command line front end.

    python3 -m soergel rank     --config A2.txt --word 0,1,0,1
    python3 -m soergel leaves   --config A2.txt --word s,r,s,r --emit json
    python3 -m soergel braid    --config A2.txt --word 0,1
    python3 -m soergel verify   --config A2.txt --word 0,1,0,1 --max-degree 4
    python3 -m soergel hombasis --config A2.txt --word 0 --target 0

Configuration files are line oriented:

    rank N
    m I J V          one line per unordered pair I < J; V an integer or inf
    cartan I J P/Q   optional override of a(I, J)
    label I NAME     optional generator name

with ``#`` starting a comment.  Exit status: 0 success, 1 verification
failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import bsmod, hecke, lightleaves, verify
from .bsmod import BSElement, bits_str
from .coxeter import INF, CoxeterMatrix
from .errors import ConfigError, PreconditionViolation, SoergelError, VerificationFailure
from .polyring import CartanRealization, Polynomial, format_polynomial
from .scalars import Rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# -- configuration ------------------------------------------------------------------

@dataclass
class Config:
    coxeter: CoxeterMatrix
    realization: CartanRealization

    @property
    def names(self) -> list[str]:
        return [self.coxeter.label(s) for s in range(self.coxeter.rank)]

    @property
    def variables(self) -> list[str]:
        return [f"x_{n}" for n in self.names]


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ConfigError(f"line {lineno}: {what} must be an integer, got {token!r}") from None


def parse_config(text: str) -> Config:
    rank = None
    orders: dict = {}
    cartan: dict = {}
    labels: dict = {}

    def index(token, lineno):
        i = _int(token, lineno, "generator index")
        if rank is None:
            raise ConfigError(f"line {lineno}: 'rank' must come first")
        if not 0 <= i < rank:
            raise ConfigError(f"line {lineno}: generator index {i} out of range for rank {rank}")
        return i

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *args = line.split()
        if key == "rank":
            if rank is not None:
                raise ConfigError(f"line {lineno}: rank given twice")
            if len(args) != 1:
                raise ConfigError(f"line {lineno}: expected 'rank N'")
            rank = _int(args[0], lineno, "rank")
            if rank < 1:
                raise ConfigError(f"line {lineno}: rank must be positive")
        elif key == "m":
            if len(args) != 3:
                raise ConfigError(f"line {lineno}: expected 'm I J V'")
            i, j = index(args[0], lineno), index(args[1], lineno)
            if i == j:
                raise ConfigError(f"line {lineno}: m is only given for distinct generators")
            pair = (min(i, j), max(i, j))
            if pair in orders:
                raise ConfigError(f"line {lineno}: m{pair} given twice")
            v = args[2].lower()
            orders[pair] = INF if v in ("inf", "infinity") else _int(args[2], lineno, "m value")
        elif key == "cartan":
            if len(args) != 3:
                raise ConfigError(f"line {lineno}: expected 'cartan I J NUM/DEN'")
            i, j = index(args[0], lineno), index(args[1], lineno)
            if i == j:
                raise ConfigError(f"line {lineno}: a(i,i) = 2 is fixed")
            try:
                cartan[(i, j)] = Rational(args[2])
            except ValueError:
                raise ConfigError(f"line {lineno}: bad rational {args[2]!r}") from None
        elif key == "label":
            if len(args) != 2:
                raise ConfigError(f"line {lineno}: expected 'label I NAME'")
            i = index(args[0], lineno)
            if args[1] in labels.values() or args[1].lstrip("-").isdigit():
                raise ConfigError(f"line {lineno}: label {args[1]!r} is duplicated or numeric")
            labels[i] = args[1]
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if rank is None:
        raise ConfigError("missing 'rank N'")
    missing = [(i, j) for i in range(rank) for j in range(i + 1, rank) if (i, j) not in orders]
    if missing:
        raise ConfigError(f"missing 'm I J V' lines for pairs {missing}")
    if labels and len(labels) != rank:
        raise ConfigError("either label every generator or none")
    names = tuple(labels[i] for i in range(rank)) if labels else ()
    cm = CoxeterMatrix.from_orders(rank, orders, names)
    return Config(cm, CartanRealization.default(cm, cartan))


def load_config(path: str) -> Config:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def parse_word(text: str | None, cfg: Config) -> tuple:
    if text is None or not text.strip():
        return ()
    out = []
    names = cfg.names
    for tok in text.split(","):
        tok = tok.strip()
        if tok in names and cfg.coxeter.labels:
            out.append(names.index(tok))
            continue
        try:
            i = int(tok)
        except ValueError:
            raise PreconditionViolation(f"unknown generator {tok!r}") from None
        if not 0 <= i < cfg.coxeter.rank:
            raise PreconditionViolation(f"generator {i} out of range for rank {cfg.coxeter.rank}")
        out.append(i)
    return tuple(out)


# -- formatting ----------------------------------------------------------------------

def rational_str(c) -> str:
    c = Rational(c)
    return f"{c.numerator}/{c.denominator}"


def poly_json(p: Polynomial) -> list:
    return [[list(mono), rational_str(c)] for mono, c in p.sorted_terms()]


def element_json(e: BSElement) -> dict:
    return {bits_str(b) or "-": poly_json(p) for b, p in sorted(e.coeffs.items())}


def element_str(e: BSElement, names) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for b, p in sorted(e.coeffs.items()):
        coef = format_polynomial(p, names)
        parts.append(coef if not b else f"({coef})*b[{bits_str(b)}]")
    return " + ".join(parts)


def word_str(w, cfg: Config) -> str:
    return " ".join(cfg.names[s] for s in w) if w else "()"


def q_json(p: hecke.LaurentPoly) -> dict:
    return {str(k): c for k, c in sorted(p.q_coefficients().items())}


def _hom_summary(ranks) -> str:
    parts = []
    for i, n in ranks:
        mod = "R" if i == 0 else f"R({2 * i})"
        parts.append(mod if n == 1 else f"{mod}^{n}")
    return " + ".join(parts) if parts else "0"


def _path_json(log, cfg: Config) -> list:
    return [{"stage": p, "target": list(t), "letter": s,
             "moves": [{"position": mv.position, "s": mv.s, "t": mv.t} for mv in moves]}
            for p, t, s, moves in log]


def _path_str(log, cfg: Config) -> str:
    if not log:
        return "-"
    out = []
    for p, t, s, moves in log:
        mv = ", ".join(f"{cfg.names[m.s]}{cfg.names[m.t]}@{m.position}" for m in moves) or "none"
        out.append(f"stage {p}: ({word_str(t, cfg)}) -> ...{cfg.names[s]} via [{mv}]")
    return "; ".join(out)


# (j, i) -> the map applied at that stage
STEP_NAMES = {(0, 0): "multiply (m)", (0, 1): "keep (Id)", (1, 0): "braid, cap (i_0)", (1, 1): "braid, i_1"}


def render_tree(word, cr: CartanRealization, cfg: Config) -> list[str]:
    """ASCII rendering: each node shows the target word after that stage; i = 1 branches first."""
    lines = [f"theta({word_str(word, cfg)})"]

    def walk(node, depth, prefix):
        if depth == len(word):
            return
        kids = [lightleaves.step(node, i, word[depth], cr) for i in (1, 0)]
        for k, child in enumerate(kids):
            last = k == len(kids) - 1
            mark = "`-- " if last else "|-- "
            op = STEP_NAMES[(child.bits_j[-1], child.bits_i[-1])]
            tag = ""
            if depth + 1 == len(word):
                tag = f"   [{bits_str(child.bits_i)}]" + ("  <- light leaf" if child.is_light else "")
            target = word_str(child.target, cfg) if child.target else "R"
            lines.append(f"{prefix}{mark}i={child.bits_i[-1]} {op}: {target}{tag}")
            walk(child, depth + 1, prefix + ("    " if last else "|   "))

    walk(lightleaves.root(cr), 0, "")
    return lines


# -- subcommands ---------------------------------------------------------------------

def cmd_rank(cfg: Config, word, args) -> tuple[int, dict, list[str]]:
    t = hecke.tau(hecke.product_one_plus(word, cfg.coxeter))
    ranks = hecke.graded_rank(word, cfg.coxeter)
    data = {"word": list(word), "tau": q_json(t), "graded_rank": [[i, n] for i, n in ranks]}
    lines = [f"word: {word_str(word, cfg)}",
             f"tau((1+T_s1)...(1+T_sn)) = {hecke.format_q(t)}; Hom = {_hom_summary(ranks)}"]
    lines += [f"  i={i}  n_i={n}" for i, n in ranks]
    return EXIT_OK, data, lines


def cmd_leaves(cfg: Config, word, args) -> tuple[int, dict, list[str]]:
    cr = cfg.realization
    tree = lightleaves.build_tree(word, cr)
    light = lightleaves.light_leaves(word, cr)
    records = []
    for lf in sorted(tree, key=lambda l: lightleaves.order_key(l.bits_i)):
        records.append({"i": bits_str(lf.bits_i), "j": bits_str(lf.bits_j), "target": list(lf.target),
                        "weight": lf.weight, "degree": lf.degree, "light": lf.is_light,
                        "path_log": _path_json(lf.path_log, cfg)})
    census = lightleaves.graded_census(word, cr)
    data = {"word": list(word), "leaves": records, "light_leaves": [bits_str(l.bits_i) for l in light],
            "census": {",".join(map(str, x)): q_json(p) for x, p in sorted(census.items())}}
    lines = [f"word: {word_str(word, cfg)}; {len(tree)} leaves, {len(light)} light leaves"]
    lines += render_tree(word, cr, cfg)
    lines.append("light leaves (increasing order):")
    for lf in light:
        lines.append(f"  i={bits_str(lf.bits_i) or '-'} j={bits_str(lf.bits_j) or '-'} weight={lf.weight} "
                     f"degree={lf.degree} paths: {_path_str(lf.path_log, cfg)}")
    lines.append("census by target:")
    for x, p in sorted(census.items()):
        lines.append(f"  {word_str(x, cfg)}: {hecke.format_q(p)}")
    return EXIT_OK, data, lines


def cmd_braid(cfg: Config, word, args) -> tuple[int, dict, list[str]]:
    if len(word) != 2:
        raise PreconditionViolation("braid needs --word S,R (two distinct generators)")
    s, r = word
    if s == r or cfg.coxeter.order(s, r) == INF:
        raise PreconditionViolation(f"no braid relation between {cfg.names[s]} and {cfg.names[r]}")
    cr = cfg.realization
    f = bsmod.solve_braid(s, r, cr)
    ok = bsmod.validate_morphism(f, cr).passed
    images = {bits_str(b): element_json(f.image(b)) for b in bsmod.cube(len(f.source))}
    data = {"source": list(f.source), "target": list(f.target), "degree": f.degree, "valid": ok, "images": images}
    lines = [f"f_({cfg.names[s]},{cfg.names[r]}): theta({word_str(f.source, cfg)}) -> theta({word_str(f.target, cfg)}),"
             f" degree {f.degree}, bimodule map: {'yes' if ok else 'NO'}"]
    for b in bsmod.cube(len(f.source)):
        lines.append(f"  b[{bits_str(b)}] -> {element_str(f.image(b), cfg.variables)}")
    return (EXIT_OK if ok else EXIT_FAIL), data, lines


def cmd_verify(cfg: Config, word, args) -> tuple[int, dict, list[str]]:
    results = verify.run_suite(word, cfg.realization, max_degree=args.max_degree, seed=args.seed)
    ok = all(r.passed for r in results)
    data = {"word": list(word), "passed": ok,
            "checks": [{"name": r.name, "passed": r.passed, "checked": r.checked,
                        "failures": [str(x) for x in r.failures[:5]]} for r in results]}
    lines = [r.line() for r in results]
    lines.append("all checks passed" if ok else "VERIFICATION FAILED")
    return (EXIT_OK if ok else EXIT_FAIL), data, lines


def cmd_hombasis(cfg: Config, word, args) -> tuple[int, dict, list[str]]:
    target = parse_word(args.target, cfg)
    cr = cfg.realization
    pairs = lightleaves.hom_basis_pairs(word, target, cr)
    records = []
    lines = [f"Hom(theta({word_str(word, cfg)}), theta({word_str(target, cfg)})): {len(pairs)} basis elements"]
    ok = True
    for lf, f in pairs:
        valid = bsmod.validate_morphism(f, cr).passed
        ok &= valid
        records.append({"leaf": bits_str(lf.bits_i), "weight": lf.weight, "degree": f.degree, "valid": valid,
                        "images": {bits_str(b) or "-": element_json(f.image(b)) for b in bsmod.cube(len(word))}})
        lines.append(f"  leaf {bits_str(lf.bits_i) or '-'}: degree {f.degree}, bimodule map: {'yes' if valid else 'NO'}")
        for b in bsmod.cube(len(word)):
            lines.append(f"    b[{bits_str(b) or '-'}] -> {element_str(f.image(b), cfg.variables)}")
    data = {"source": list(word), "target": list(target), "basis": records}
    return (EXIT_OK if ok else EXIT_FAIL), data, lines


COMMANDS = {"rank": cmd_rank, "leaves": cmd_leaves, "braid": cmd_braid, "verify": cmd_verify,
            "hombasis": cmd_hombasis}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="soergel", description="Light leaves for Bott-Samelson bimodules.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="Coxeter system configuration file")
        p.add_argument("--word", default="", help="comma separated generators (indices or labels)")
        p.add_argument("--emit", choices=("human", "json"), default="human")
        p.add_argument("--max-degree", type=int, default=4, dest="max_degree")
        p.add_argument("--seed", type=int, default=0)
        if name == "hombasis":
            p.add_argument("--target", default="", help="target word for hombasis")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        word = parse_word(args.word, cfg)
        code, data, lines = COMMANDS[args.command](cfg, word, args)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ConfigError, PreconditionViolation, SoergelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.emit == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())

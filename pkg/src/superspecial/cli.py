"""Command-line front end.

Exit codes: 0 success, 2 computed but negative (singular, non-superspecial,
a failed check), 1 could not compute, 64 bad usage.
"""

import argparse
import csv
import os
import sys
from dataclasses import asdict, dataclass, fields

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- config

@dataclass
class RunConfig:
    p: int = 5
    n: int = 2
    modulus: str = ""
    case: str = ""
    mode: str = "full"
    sample: int = 0
    seed: int = 0
    cells: str = ""
    jobs: int = 1
    checkpoint: str = ""
    out: str = ""
    csv: str = ""
    format: str = "json"

    def validate(self):
        if self.mode not in ("full", "sample"):
            raise UsageError(f"mode must be full or sample, not {self.mode!r}")
        if self.mode == "full" and self.sample:
            raise UsageError("a sample size needs mode = sample")
        if self.mode == "sample" and self.sample < 1:
            raise UsageError("sample mode needs a positive sample size")
        if self.format not in ("json", "csv"):
            raise UsageError(f"format must be json or csv, not {self.format!r}")
        if self.jobs < 1:
            raise UsageError("jobs must be at least 1")
        return self

    def to_text(self):
        return "".join(f"{k} = {v}\n" for k, v in asdict(self).items())

    @classmethod
    def from_mapping(cls, data):
        known = {f.name: f.type for f in fields(cls)}
        kw = {}
        for k, v in data.items():
            k = k.replace("-", "_")
            if k not in known:
                raise UsageError(f"unknown config key {k!r}")
            kw[k] = int(v) if known[k] in (int, "int") else str(v)
        return cls(**kw)

    @classmethod
    def from_text(cls, text):
        return cls.from_mapping(read_flat_config(text))


def read_flat_config(text):
    """key = value lines; '#' starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


def _field(args):
    from .gf import make_field
    modulus = None
    if getattr(args, "modulus", ""):
        modulus = [int(c) for c in args.modulus.replace(",", " ").split()]
    return make_field(args.p, args.n, modulus)


def _ring(args, field, names=None):
    from .poly import poly_ring
    names = names or args.vars
    return poly_ring(field, names, getattr(args, "order", None) or "grevlex")


# ---------------------------------------------------------------- commands

def parse_cells(text, total):
    """'0-99,200,300-310' -> sorted cell indices (ranges inclusive)."""
    out = set()
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(part))
    bad = [c for c in out if not 0 <= c < total]
    if bad:
        raise UsageError(f"cell {min(bad)} outside [0, {total})")
    return sorted(out)


def cmd_enumerate(args):
    from .enumerate import enumerate_case, sample_cells, validate_report, write_csv, write_report
    from .families import case_spec
    cfg = RunConfig(case=args.case, mode="sample" if args.sample else "full", sample=args.sample or 0,
                    seed=args.seed, cells=args.cells or "", jobs=args.jobs,
                    checkpoint=args.checkpoint or "", out=args.out, csv=args.csv or "").validate()
    spec = case_spec(cfg.case)
    if cfg.mode == "sample":
        cells = sample_cells(spec, cfg.sample, cfg.seed)
    else:
        cells = None
    if cfg.cells:
        chosen = parse_cells(cfg.cells, spec.cell_count)
        cells = chosen if cells is None else sorted(set(cells) & set(chosen))

    def progress(rep, elapsed):
        if args.quiet:
            return
        rate = rep.cursor / elapsed if elapsed else 0.0
        left = len(rep.cells) - rep.cursor
        eta = left / rate if rate else float("inf")
        print(f"[{spec.case_id}] {rep.cursor}/{len(rep.cells)} cells, {rate:.2f} cells/s, "
              f"ETA {eta:.0f}s, solutions {rep.solutions}, survivors {len(rep.survivors)}",
              file=sys.stderr, flush=True)

    rep = enumerate_case(spec, cells, jobs=cfg.jobs, checkpoint=cfg.checkpoint or None,
                         progress=progress, mode=cfg.mode, seed=cfg.seed if cfg.mode == "sample" else None,
                         debug=args.debug)
    data = write_report(rep, cfg.out, spec.field)
    validate_report(data)
    if cfg.csv:
        write_csv(rep, cfg.csv, spec.field)
    print(f"{spec.case_id}: {rep.cursor} cells, {rep.solutions} solutions, "
          f"{len(rep.survivors)} survivors, {rep.total_s:.1f}s")
    return EXIT_OK


def cmd_hw(args):
    from .families import xyzw_ring
    from .hasse_witt import hasse_witt_matrix
    field = _field(args)
    if args.eq:
        R = _ring(args, field)
        polys = [R.parse(e) for e in args.eq]
    else:
        if not (args.q and args.c):
            raise UsageError("give --q and --c, or --eq equations")
        R = xyzw_ring(field)
        polys = [R.parse(args.q), R.parse(args.c)]
    H = hasse_witt_matrix(polys)
    print(H)
    if H.is_zero():
        print("SUPERSPECIAL-CANDIDATE (zero Hasse-Witt matrix)")
    else:
        print(f"not superspecial (Hasse-Witt rank {H.rank()})")
    return EXIT_OK if H.is_zero() else EXIT_NEGATIVE


def cmd_smooth(args):
    from .smoothness import NONSINGULAR, determine_nonsingularity
    field = _field(args)
    R = _ring(args, field)
    polys = [R.parse(e) for e in args.eq]
    verdict = determine_nonsingularity(polys, expected_dim=args.dim)
    print(verdict)
    return EXIT_OK if verdict == NONSINGULAR else EXIT_NEGATIVE


def cmd_solve(args):
    from .groebner import variety_over_Fq
    field = _field(args)
    R = _ring(args, field)
    sols = variety_over_Fq([R.parse(e) for e in args.eq])
    for s in sols:
        print("(" + ", ".join(str(x) for x in s) + ")")
    print(f"{len(sols)} solutions over F_{field.q} in ({', '.join(R.names)})")
    return EXIT_OK


def cmd_nf(args):
    from .groebner import normal_form
    field = _field(args)
    R = _ring(args, field)
    print(normal_form(R.parse(args.f), [R.parse(g) for g in args.g]))
    return EXIT_OK


def _read_curve_file(path):
    with open(path) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    kv = {}
    for ln in lines:
        if "=" in ln and ln.split("=", 1)[0].strip().upper() in ("Q", "P"):
            k, v = ln.split("=", 1)
            kv[k.strip().upper()] = v.strip()
    if kv:
        return kv.get("Q"), kv.get("P")
    if len(lines) != 2:
        raise UsageError("curve file needs a quadric line and a cubic line")
    return lines[0], lines[1]


def cmd_points(args):
    from .curves import count_points, curve
    field = _field(args)
    if args.curve:
        Qt, Pt = _read_curve_file(args.curve)
    else:
        Qt, Pt = args.q, args.c
    if not (Qt and Pt):
        raise UsageError("give --curve FILE or both --q and --c")
    print(count_points(curve(Qt, Pt, field)))
    return EXIT_OK


def cmd_classify(args):
    from .curves import classification_table
    rows = classification_table()
    bad = 0
    for r in rows:
        ok = r["computed"] == r["expected"] and r["superspecial"]
        bad += not ok
        print(f"({r['family']}) ({r['i']},{r['j']})  {r['equation']:<40} expected {r['expected']:>3}  "
              f"computed {r['computed']:>3}  superspecial {r['superspecial']}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["family", "i", "j", "equation", "expected", "computed", "superspecial"])
            for r in rows:
                w.writerow([r["family"], r["i"], r["j"], r["equation"], r["expected"], r["computed"],
                            r["superspecial"]])
    print(f"{len(rows)} representatives, {bad} mismatches")
    return EXIT_OK if not bad else EXIT_NEGATIVE


def cmd_mass(args):
    from .curves import mass_formula, mass_share
    m = mass_formula(args.genus, args.p)
    print(f"{m.numerator}/{m.denominator}")
    if args.aut_order:
        share = mass_share(args.aut_order, m)
        print(f"share {share.numerator}/{share.denominator} = {100 * float(share):.2f}%")
    return EXIT_OK


def cmd_aut_check(args):
    from .curves import automorphism_group_elements, verify_s5_presentation
    ok = verify_s5_presentation()
    print(f"s1..s4 automorphisms with S5 Coxeter relations: {ok}")
    elements, failures = automorphism_group_elements()
    order = len({m for m, _ in elements})
    print(f"listed elements: {order} distinct, {len(failures)} failing membership")
    good = ok and not failures and order == 720
    print(f"|G| = 720: {order == 720}; |Aut(C)| = {order // 2}")
    return EXIT_OK if good else EXIT_NEGATIVE


# ---------------------------------------------------------------- parser

def _field_flags(p, default_n=2):
    p.add_argument("--p", type=int, default=5, help="characteristic (default 5)")
    p.add_argument("--n", type=int, default=default_n, help=f"extension degree (default {default_n})")
    p.add_argument("--modulus", default="", help="defining polynomial coefficients, low degree first")


def build_parser():
    ap = _Parser(prog="superspecial", description="Superspecial genus-4 curves over F_25 and F_49.",
                 allow_abbrev=False)
    ap.add_argument("--config", help="flat key = value file; keys mirror the flags")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub_kw = {"allow_abbrev": False}

    p = sub.add_parser("enumerate", **sub_kw, help="sweep the cells of a case")
    p.add_argument("--case", required=True)
    p.add_argument("--sample", type=int, default=0, help="sample this many cells uniformly")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cells", default="", help="cell filter, e.g. 0-99,250")
    p.add_argument("--checkpoint", default="")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", required=True, help="JSON report path")
    p.add_argument("--csv", default="", help="also write survivors as CSV")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--debug", action="store_true", help="re-verify the curve dimension on 1%% of the cells")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hw", **sub_kw, help="Hasse-Witt matrix of a complete intersection")
    p.add_argument("--q", help="quadric (genus-4 shorthand, variables x y z w)")
    p.add_argument("--c", help="cubic (genus-4 shorthand)")
    p.add_argument("--eq", action="append", default=[], help="equation (repeatable)")
    p.add_argument("--vars", default="x,y,z,w")
    _field_flags(p, default_n=1)
    p.set_defaults(func=cmd_hw)

    p = sub.add_parser("smooth", **sub_kw, help="non-singularity of a projective variety")
    p.add_argument("--eq", action="append", required=True)
    p.add_argument("--vars", default="x,y,z,w")
    p.add_argument("--dim", type=int, default=None, help="known projective dimension")
    _field_flags(p)
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("solve", **sub_kw, help="F_q-rational solutions of a polynomial system")
    p.add_argument("--eq", action="append", required=True)
    p.add_argument("--vars", required=True)
    _field_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("nf", **sub_kw, help="normal form modulo a Groebner basis of the given polynomials")
    p.add_argument("--f", required=True)
    p.add_argument("--g", action="append", required=True)
    p.add_argument("--vars", default="x,y,z,w")
    p.add_argument("--order", choices=["lex", "grevlex"], default="lex")
    _field_flags(p)
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("points", **sub_kw, help="count F_q-rational points of V(Q, P)")
    p.add_argument("--curve", help="file with 'Q = ...' and 'P = ...' lines")
    p.add_argument("--q")
    p.add_argument("--c")
    _field_flags(p)
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("classify", **sub_kw, help="the 21 F_25-forms with point counts")
    p.add_argument("--out", default="", help="CSV path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mass", **sub_kw, help="exact superspecial mass")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--aut-order", type=int, default=0, help="also print the share of a curve with this |Aut|")
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("aut-check", **sub_kw, help="automorphisms of 2yw+z^2, x^3+y^3+w^3 over F_25")
    p.set_defaults(func=cmd_aut_check)
    return ap


def _apply_config(parser, argv):
    """Config values become defaults of the chosen subcommand; flags win."""
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config) as fh:
        values = read_flat_config(fh.read())
    cmd = next((a for a in argv if not a.startswith("-") and a in _subparsers(parser)), None)
    if cmd is None:
        return
    sp = _subparsers(parser)[cmd]
    dests = {a.dest: a for a in sp._actions}
    defaults = {}
    for k, v in values.items():
        if k == "mode":
            continue
        if k not in dests:
            raise UsageError(f"config key {k!r} is not a flag of {cmd}")
        act = dests[k]
        if isinstance(act, argparse._AppendAction):
            defaults[k] = [s.strip() for s in v.split(";") if s.strip()]
        elif isinstance(act, argparse._StoreTrueAction):
            defaults[k] = v.lower() in ("1", "true", "yes")
        else:
            defaults[k] = act.type(v) if act.type else v
        act.required = False
    sp.set_defaults(**defaults)


def _subparsers(parser):
    for a in parser._actions:
        if isinstance(a, argparse._SubParsersAction):
            return a.choices
    return {}


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"superspecial: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"superspecial: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"superspecial: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, IndexError, KeyError, OSError) as e:
        print(f"superspecial: error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command line front end.

Identities travel through JSON files (long compressed words do not survive
shell quoting); words given directly on the command line are short literals
over {a, b} or digit strings over 1..4.  Exit codes: 0 success, 1 when a
check lands on the wrong side (an unexpected counterexample, or a witness
that fails to separate), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as cons
from .plactic import (
    from_word,
    knuth_closure,
    plactic_identity_lift,
    rho,
    subset_order,
)
from .reproduce import run_all
from .tropical import TropMatrix
from .verify import (
    SamplerConfig,
    WitnessFailed,
    check_falsification,
    check_plactic_satisfaction,
    check_satisfaction,
)
from .words import Identity, expand

__all__ = ["main"]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(obj, out: "str | None") -> None:
    text = _dump(obj)
    if out is None:
        sys.stdout.write(text)
    else:
        path = Path(out)
        if path.parent != Path():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _sibling(out: "str | None", suffix: str) -> "str | None":
    # id.json -> id.witness.json, keeping stdout mode as stdout
    if out is None:
        return None
    path = Path(out)
    return str(path.with_suffix(f".{suffix}.json"))


def _identity_doc(ident: Identity, max_expand: int) -> dict:
    doc = dict(ident.to_json())
    l1, l2 = ident.side_lengths()
    doc["side_lengths"] = [str(l1), str(l2)]
    if max(l1, l2) <= max_expand:
        doc["lhs_word"] = expand(ident.lhs)
        doc["rhs_word"] = expand(ident.rhs)
    return doc


def _witness_doc(env: dict) -> dict:
    return {k: m.to_json() for k, m in sorted(env.items())}


def _load_identity(path: str) -> Identity:
    return Identity.from_json(json.loads(Path(path).read_text()))


def _load_witness(path: str) -> dict:
    obj = json.loads(Path(path).read_text())
    return {k: TropMatrix.from_json(v) for k, v in obj.items()}


# --- construct ---------------------------------------------------------------


def _cmd_construct(args) -> int:
    kind = args.what
    witness = None
    extra: "tuple[str, object] | None" = None

    if kind == "factor-witness":
        fw = cons.factor_witness(args.word)
        doc = {
            "word": fw.word,
            "dim": fw.dim,
            "corner": list(fw.corner()),
            **_witness_doc(fw.assignment()),
        }
        _emit(doc, args.out)
        return 0
    if kind == "zur":
        ident = cons.covering_word_identity(args.word, args.n)
    elif kind == "ut-sep":
        pair = cons.ut_separating_pair(args.n)
        ident = pair.identity
        witness = pair.witness
        if pair.inner is not None:
            extra = ("inner", {"u": pair.inner[0], "v": pair.inner[1]})
    elif kind == "m3":
        ident = cons.m3_identity()
        witness = cons.m4_witness()
    elif kind == "m2-falsifier":
        ident = cons.m2_falsifier_pair()
        witness = cons.commuting_falsifier(args.n)
    elif kind == "fulliden-i":
        ident = cons.full_matrix_identity_i(
            args.u, args.v, args.q, args.r, args.t, args.n,
            allow_short_exponent=args.allow_short_exponent,
        )
    elif kind == "fulliden-ii":
        ident = cons.full_matrix_identity_ii(
            args.u, args.v, args.p, args.q, args.r, args.t, args.n,
            allow_short_exponent=args.allow_short_exponent,
        )
    elif kind == "induct":
        levels = cons.NestedLevels(
            args.n,
            tuple(cons.ut_separating_pair(k).identity for k in range(3, args.n + 1)),
            tuple((k - 1) ** 2 + 1 for k in range(3, args.n + 1)),
        )
        base = cons.m2_falsifier_pair()
        ident = cons.nested_identity(levels, base.lhs, base.rhs)
    elif kind == "prime-sep":
        ps = cons.prime_separation(args.p)
        ident = ps.identity
        witness = ps.witness
        extra = ("diagnostics", ps.diagnostics_json())
    elif kind == "plactic-lift":
        ident = plactic_identity_lift(args.u, args.v)
        witness = cons.factor_witness("abab").assignment()
    else:  # pragma: no cover - argparse restricts choices
        raise AssertionError(kind)

    _emit(_identity_doc(ident, args.max_expand), args.out)
    if witness is not None:
        _emit(_witness_doc(witness), _sibling(args.out, "witness"))
    if extra is not None:
        name, payload = extra
        _emit({name: payload}, _sibling(args.out, name))
    return 0


# --- verify / falsify --------------------------------------------------------


def _cmd_verify(args) -> int:
    ident = _load_identity(args.identity)
    if args.plactic:
        report = check_plactic_satisfaction(
            ident, max_word_len=args.max_word_len,
            trials=args.trials, seed=args.seed,
        )
    else:
        cfg = SamplerConfig(
            dim=args.dim,
            shape={"ut": "upper-triangular", "full": "full"}[args.shape],
            entry_min=args.entry_min,
            entry_max=args.entry_max,
            neginf_prob=args.neginf_prob,
            trials=args.trials,
            seed=args.seed,
        )
        report = check_satisfaction(ident, cfg)
    _emit(report.to_json(), args.out)
    if not report.ok:
        print(f"counterexample at trial {report.counterexample['trial']}",
              file=sys.stderr)
        return 1
    return 0


def _cmd_falsify(args) -> int:
    ident = _load_identity(args.identity)
    if args.witness is not None:
        env = _load_witness(args.witness)
    elif args.factor_word is not None:
        env = cons.factor_witness(args.factor_word).assignment()
    else:
        print("falsify: need --witness FILE or --factor-word WORD",
              file=sys.stderr)
        return 2
    try:
        report = check_falsification(ident, env)
    except WitnessFailed as exc:
        print(f"witness failed: {exc}", file=sys.stderr)
        return 1
    _emit(report.to_json(), args.out)
    return 0


# --- plactic -----------------------------------------------------------------


def _cmd_plactic(args) -> int:
    if args.what == "canon":
        t = from_word(args.word, n=args.rank)
        doc = {
            "word": args.word,
            "rows": [list(r) for r in t.rows],
            "shape": list(t.shape()),
            "reading_word": "".join(map(str, t.reading_word())),
        }
    elif args.what == "closure":
        cls = knuth_closure(args.word, n=args.rank, cap=args.cap)
        doc = {
            "word": args.word,
            "size": len(cls),
            "class": sorted("".join(map(str, w)) for w in cls),
        }
    else:
        m = rho(args.word, n=args.rank)
        legend = ["".join(map(str, s)) for s in subset_order(args.rank)]
        doc = {"word": args.word, "matrix": m.to_json(), "index_legend": legend}
    _emit(doc, args.out)
    return 0


# --- reproduce ---------------------------------------------------------------


def _cmd_reproduce(args) -> int:
    if not args.all:
        print("reproduce: pass --all to run the full suite", file=sys.stderr)
        return 2
    out = Path(args.out) if args.out is not None else Path("reproduction")
    rows = run_all(args.seed, out)
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        print(f"[{r['status']}] {r['criterion']} {r['name']:<{width}} {r['detail']}")
    failures = [r for r in rows if r["status"] != "PASS"]
    print(f"{len(rows) - len(failures)}/{len(rows)} criteria passed; "
          f"artifacts in {out}")
    return 1 if failures else 0


# --- wiring ------------------------------------------------------------------


def _common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--max-expand", type=int, default=10_000,
                     help="include expanded words only up to this length")
    sub.add_argument("--trials", type=int, default=1000)
    sub.add_argument("--entry-min", type=int, default=-8)
    sub.add_argument("--entry-max", type=int, default=8)
    sub.add_argument("--neginf-prob", type=float, default=0.1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropid",
        description="Construct, verify, and falsify identities of tropical "
                    "matrix semigroups.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    p_con = verbs.add_parser("construct", help="build an identity or witness")
    what = p_con.add_subparsers(dest="what", required=True)

    w = what.add_parser("factor-witness", help="matrices detecting one factor")
    w.add_argument("--word", required=True)
    _common(w)

    w = what.add_parser("zur", aliases=["covering"],
                        help="identity from a word covering all n-factors")
    w.add_argument("--word", required=True)
    w.add_argument("--n", type=int, required=True)
    _common(w)

    w = what.add_parser("ut-sep", help="identity of UT_n failing in UT_{n+1}")
    w.add_argument("--n", type=int, required=True)
    _common(w)

    w = what.add_parser("m3", help="identity of M_3 with its M_4 witness")
    _common(w)

    w = what.add_parser("m2-falsifier",
                        help="identity of M_2 with an odd-cycle witness")
    w.add_argument("--n", type=int, default=3,
                   help="odd witness dimension (default 3)")
    _common(w)

    w = what.add_parser("fulliden-i", help="full-matrix composition, form i")
    for flag in ("--u", "--v", "--q", "--r"):
        w.add_argument(flag, required=True)
    w.add_argument("--t", type=int, required=True)
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--allow-short-exponent", action="store_true")
    _common(w)

    w = what.add_parser("fulliden-ii", help="full-matrix composition, form ii")
    for flag in ("--u", "--v", "--p", "--q", "--r"):
        w.add_argument(flag, required=True)
    w.add_argument("--t", type=int, default=None)
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--allow-short-exponent", action="store_true")
    _common(w)

    w = what.add_parser("induct",
                        help="nested composition of the standard chain up to M_n")
    w.add_argument("--n", type=int, required=True)
    _common(w)

    w = what.add_parser("prime-sep",
                        help="identity of M_{p-1} failing in M_p, p prime")
    w.add_argument("--p", type=int, required=True)
    _common(w)

    w = what.add_parser("plactic-lift",
                        help="wrap a word pair in ab..ab and substitute ab/ba")
    w.add_argument("--u", required=True, help="word over {a,b}")
    w.add_argument("--v", required=True, help="word over {a,b}")
    _common(w)

    p_ver = verbs.add_parser("verify", help="sampled satisfaction check")
    p_ver.add_argument("--identity", required=True, help="identity JSON file")
    p_ver.add_argument("--dim", type=int, default=2)
    p_ver.add_argument("--shape", choices=("ut", "full"), default="ut")
    p_ver.add_argument("--plactic", action="store_true",
                       help="sample rank-4 plactic elements instead of matrices")
    p_ver.add_argument("--max-word-len", type=int, default=6)
    _common(p_ver)

    p_fal = verbs.add_parser("falsify", help="exact counterexample check")
    p_fal.add_argument("--identity", required=True, help="identity JSON file")
    p_fal.add_argument("--witness", default=None, help="matrix pair JSON file")
    p_fal.add_argument("--factor-word", default=None,
                       help="build the witness from this factor word")
    _common(p_fal)

    p_pl = verbs.add_parser("plactic", help="rank-4 plactic computations")
    which = p_pl.add_subparsers(dest="what", required=True)
    for name, aliases, help_text in (
        ("canon", [], "canonical tableau of a digit word"),
        ("closure", [], "rewrite class of a digit word"),
        ("rho", ["rep"], "tropical matrix image of a digit word"),
    ):
        sp = which.add_parser(name, aliases=aliases, help=help_text)
        sp.add_argument("word")
        sp.add_argument("--rank", type=int, default=4)
        if name == "closure":
            sp.add_argument("--cap", type=int, default=8)
        _common(sp)

    p_rep = verbs.add_parser("reproduce", help="rerun every headline check")
    p_rep.add_argument("--all", action="store_true")
    _common(p_rep)

    return parser


_ALIAS = {"covering": "zur", "rep": "rho"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "what", None) in _ALIAS:
        args.what = _ALIAS[args.what]
    handlers = {
        "construct": _cmd_construct,
        "verify": _cmd_verify,
        "falsify": _cmd_falsify,
        "plactic": _cmd_plactic,
        "reproduce": _cmd_reproduce,
    }
    try:
        return handlers[args.verb](args)
    except (ValueError, cons.ExponentBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands cover the individual quantities (chromatic, local, alt,
cd, xind, indbounds), the constructions (kneser, box, hom), the bound
hierarchy (bounds), witness search (colorful, zigzag), and verification
campaigns (verify).  All outputs are available as human-readable text
or JSON; seeded runs are bit-for-bit reproducible.

Exit codes: 0 ok, 1 usage or input error, 2 a verification
counterexample was found, 3 a search budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from typing import Optional

from . import altdefect, colorful, complexes, gindex, hypergraph, tucker
from .complexes import _is_prime
from .hypergraph import BudgetExhausted, Coloring, Hypergraph

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_BUDGET = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# Instance loading
# ---------------------------------------------------------------------------


def _named_hypergraph(name: str) -> Hypergraph:
    """Builtin families: K<n> (complete graph), C<n> (cycle), petersen,
    K:<n>:<k> (complete k-uniform), KG:<n>:<k> (Kneser graph),
    KG:<r>:<n>:<k> (r-uniform Kneser hypergraph of K_n^k)."""
    if name == "petersen":
        return hypergraph.usual_kneser(5, 2, 2)
    if name.startswith("KG:"):
        nums = [int(x) for x in name.split(":")[1:]]
        if len(nums) == 2:
            return hypergraph.usual_kneser(nums[0], nums[1], 2)
        if len(nums) == 3:
            r, n, k = nums
            return hypergraph.usual_kneser(n, k, r)
        raise ValueError(f"bad Kneser spec {name!r}")
    if name.startswith("K:"):
        n, k = (int(x) for x in name.split(":")[1:])
        return hypergraph.complete_hypergraph(n, k)
    if name.startswith("K") and name[1:].isdigit():
        return hypergraph.complete_hypergraph(int(name[1:]), 2)
    if name.startswith("C") and name[1:].isdigit():
        n = int(name[1:])
        return hypergraph.build_hypergraph(
            n, [[i, i % n + 1] for i in range(1, n + 1)]
        )
    raise ValueError(f"unknown graph name {name!r}")


def _load(args) -> Hypergraph:
    if getattr(args, "file", None):
        with open(args.file) as fh:
            return hypergraph.parse_hypergraph(fh.read())
    if getattr(args, "graph", None):
        return _named_hypergraph(args.graph)
    raise _UsageError("provide --file or --graph")


def _check_prime(p: int, args) -> None:
    if not _is_prime(p) and not args.allow_nonprime:
        raise _UsageError(
            f"p = {p} is not prime; pass --allow-nonprime to experiment anyway"
        )


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=_json_default))
    else:
        print(human)


def _json_default(obj):
    if isinstance(obj, (frozenset, set)):
        return sorted(obj, key=repr)
    if isinstance(obj, tuple):
        return list(obj)
    return repr(obj)


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_chromatic(args) -> int:
    H = _load(args)
    res = hypergraph.chromatic_number(H)
    payload = {
        "chromatic_number": res.value if res.value != math.inf else "inf",
        "exact": res.exact,
        "coloring": list(res.coloring.assignment) if res.coloring else None,
    }
    _emit(args, payload, f"chi = {res.value}")
    return EXIT_OK


def _cmd_local(args) -> int:
    H = _load(args)
    value = hypergraph.local_chromatic_number(H)
    _emit(args, {"local_chromatic_number": value}, f"chi_l = {value}")
    return EXIT_OK


def _cmd_kneser(args) -> int:
    F = _load(args)
    K = hypergraph.kneser(F, args.r)
    text = hypergraph.format_hypergraph(K)
    _emit(
        args,
        {"n": K.n, "edges": [sorted(e) for e in K.edges], "text": text},
        text.rstrip("\n"),
    )
    return EXIT_OK


def _cmd_alt(args) -> int:
    F = _load(args)
    _check_prime(args.p, args)
    res = altdefect.alt_min(F, args.p, mode=args.mode, seed=args.seed or 0)
    payload = {
        "alt": res.value,
        "exact": res.exact,
        "ordering": list(res.ordering.images) if res.ordering else None,
    }
    _emit(args, payload, f"alt_{args.p} = {res.value}" + ("" if res.exact else " (upper bound)"))
    return EXIT_OK


def _cmd_cd(args) -> int:
    F = _load(args)
    value = altdefect.colorability_defect(F, args.p)
    _emit(args, {"cd": value}, f"cd_{args.p} = {value}")
    return EXIT_OK


def _cmd_box(args) -> int:
    H = _load(args)
    _check_prime(args.p, args)
    B = complexes.box_complex(H, args.p)
    text = complexes.complex_to_text(B)
    _emit(
        args,
        {
            "vertices": len(B.vertices),
            "maximal_simplices": len(B.maximal_simplices),
            "dim": B.dim,
            "free": B.is_free(),
            "text": text,
        },
        text.rstrip("\n"),
    )
    return EXIT_OK


def _cmd_hom(args) -> int:
    H = _load(args)
    _check_prime(args.p, args)
    P = complexes.hom_poset(H, args.r, args.p)
    text = complexes.poset_to_text(P)
    _emit(
        args,
        {"elements": len(P), "height": P.height(), "text": text},
        text.rstrip("\n"),
    )
    return EXIT_OK


def _cmd_xind(args) -> int:
    _check_prime(args.p, args)
    if args.poset == "hom":
        H = _load(args)
        P = complexes.hom_poset(H, args.r, args.p)
    elif args.poset == "q":
        P = complexes.q_poset(args.n, args.p)
    else:
        raise _UsageError(f"unknown poset kind {args.poset!r}")
    res = gindex.xind_exact(P)
    _emit(args, {"xind": res.value, "n_max": res.n_max}, f"Xind = {res}")
    return EXIT_OK


def _cmd_indbounds(args) -> int:
    H = _load(args)
    _check_prime(args.p, args)
    B = complexes.box_complex(H, args.p)
    iv = gindex.ind_bounds(B, depth=args.depth)
    payload = {
        "lower": iv.lower,
        "upper": iv.upper,
        "certificates": [
            {"kind": c.kind, "bound": c.bound} for c in iv.certificates
        ],
    }
    _emit(args, payload, f"ind in [{iv.lower}, {iv.upper}]")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    F = _load(args)
    r, p = args.r, args.p
    _check_prime(p, args)
    entries = []

    def add(name, value, lower=None, upper=None, note=""):
        entries.append(
            {
                "name": name,
                "value": value,
                "lower": lower if lower is not None else value,
                "upper": upper if upper is not None else value,
                "note": note,
                "time": round(time.time() - t0, 3),
            }
        )

    t0 = time.time()
    add("cd_p(F)", altdefect.colorability_defect(F, p))
    alt = altdefect.alt_min(F, p)
    add("|V(F)| - alt_p(F)", F.n - alt.value, note="" if alt.exact else "alt inexact")
    K = hypergraph.kneser(F, r)
    B = complexes.box_complex(K, p)
    iv = gindex.ind_bounds(B, depth=args.depth)
    add("ind(B0(KG^r(F))) + 1", None, iv.lower + 1, iv.upper + 1)
    omega = hypergraph.clique_number(K)
    if omega >= p:
        P = complexes.hom_poset(K, r, p)
        x = gindex.xind_exact(P)
        add("Xind(Hom(K^r_p, KG^r(F))) + p", x.value + p)
    else:
        add("Xind(Hom(K^r_p, KG^r(F))) + p", None, note="omega < p: not applicable")
    chi = hypergraph.chromatic_number(K)
    add("(r-1) * chi(KG^r(F))", (r - 1) * int(chi.value))

    # Theorem-2 order: each certified adjacent pair must be nondecreasing
    violations = []
    chain = [e for e in entries if e["lower"] is not None]
    for a, b in zip(chain, chain[1:]):
        if a["upper"] is not None and b["lower"] is not None and a["lower"] > b["upper"]:
            violations.append((a["name"], b["name"]))
    payload = {
        "instance": args.graph or args.file,
        "r": r,
        "p": p,
        "entries": entries,
        "consistent": not violations,
        "violations": violations,
    }
    lines = []
    for e in entries:
        if e["value"] is not None:
            val = str(e["value"])
        elif e["lower"] is not None:
            val = f"[{e['lower']}, {e['upper']}]"
        else:
            val = "n/a"
        note = f"  ({e['note']})" if e["note"] else ""
        lines.append(f"{e['name']:<38} {val}{note}")
    lines.append(f"consistent: {not violations}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if not violations else EXIT_COUNTEREXAMPLE


def _cmd_colorful(args) -> int:
    H = _load(args)
    p = args.p
    _check_prime(p, args)
    if args.seed is not None:
        rng = random.Random(args.seed)
        colors = args.colors or int(hypergraph.chromatic_number(H).value)
        c = colorful.random_proper_coloring(H, colors, rng)
    else:
        c = hypergraph.chromatic_number(H).coloring
    w = colorful.find_colorful_balanced(H, c, p, args.target)
    if isinstance(w, colorful.ColorfulWitness):
        payload = {
            "found": True,
            "parts": [sorted(part) for part in w.parts.parts],
            "colors": [sorted(s) for s in w.color_sets],
            "total": w.total_size,
        }
        _emit(args, payload, f"colorful witness: parts {payload['parts']}")
        return EXIT_OK
    _emit(args, {"found": False, "detail": w.detail}, f"COUNTEREXAMPLE: {w.detail}")
    return EXIT_COUNTEREXAMPLE


def _cmd_zigzag(args) -> int:
    G = _load(args)
    if args.seed is not None:
        rng = random.Random(args.seed)
        colors = args.colors or int(hypergraph.chromatic_number(G).value)
        c = colorful.random_proper_coloring(G, colors, rng)
    else:
        c = hypergraph.chromatic_number(G).coloring
    w = colorful.zigzag_check(G, c, args.t)
    if isinstance(w, colorful.ZigzagWitness):
        payload = {
            "found": True,
            "side_a": sorted(w.side_a),
            "side_b": sorted(w.side_b),
            "colors": list(w.colors),
        }
        _emit(
            args,
            payload,
            f"zig-zag witness: {payload['side_a']} | {payload['side_b']}"
            f" colors {payload['colors']}",
        )
        return EXIT_OK
    _emit(args, {"found": False, "detail": w.detail}, f"COUNTEREXAMPLE: {w.detail}")
    return EXIT_COUNTEREXAMPLE


def _run_campaign_entry(entry: dict) -> dict:
    lemma = entry.get("lemma")
    if lemma == "zp-fan":
        rep = tucker.fan_sweep(entry["n"], entry["m"], entry["p"], entry["alpha"])
        return {
            "lemma": lemma,
            "params": list(rep.params),
            "admissible": rep.admissible,
            "checked": rep.checked,
            "counterexamples": len(rep.failures),
            "regime_ok": rep.regime_ok,
            "ok": rep.ok and rep.regime_ok,
        }
    raise _UsageError(f"unknown lemma {lemma!r} in campaign")


def _cmd_verify(args) -> int:
    if args.manifest:
        with open(args.manifest) as fh:
            manifest = json.load(fh)
        runs = manifest["runs"]
    elif args.lemma:
        runs = [
            {
                "lemma": args.lemma,
                "n": args.n,
                "m": args.m,
                "p": args.p,
                "alpha": args.alpha,
            }
        ]
    else:
        raise _UsageError("provide --lemma or --manifest")
    for run in runs:
        if run.get("lemma") == "zp-fan":
            _check_prime(run["p"], args)
    if args.threads > 1 and len(runs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_run_campaign_entry, runs))
    else:
        results = [_run_campaign_entry(run) for run in runs]
    bad = sum(0 if r["ok"] else 1 for r in results)
    payload = {"runs": results, "counterexamples_total": bad}
    lines = [
        f"{r['lemma']} {tuple(r['params'])}: admissible={r['admissible']} "
        f"counterexamples={r['counterexamples']} "
        f"{'ok' if r['ok'] else 'FAIL'}"
        for r in results
    ]
    lines.append(f"{bad} counterexample run(s)")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if bad == 0 else EXIT_COUNTEREXAMPLE


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------


def _add_instance(sp, family=False):
    sp.add_argument("--file", help="hypergraph text file (v/e line format)")
    sp.add_argument(
        "--graph",
        "--family",
        dest="graph",
        help="builtin instance: K<n>, C<n>, petersen, K:<n>:<k>, "
        "KG:<n>:<k>, KG:<r>:<n>:<k>",
    )


def _global_options(parser, suppress: bool) -> None:
    """The four global flags, accepted before or after the subcommand."""
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument(
        "--json", action="store_true", help="machine-readable output", **kw
    )
    parser.add_argument(
        "--seed",
        type=int,
        help="seed sampled corpora",
        **(kw if suppress else {"default": None}),
    )
    parser.add_argument(
        "--allow-nonprime",
        action="store_true",
        help="permit non-prime p (experimental; the theorems assume p prime)",
        **kw,
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="campaign workers",
        **(kw if suppress else {"default": 1}),
    )


def build_parser() -> _Parser:
    top = _Parser(prog="hyperchrom", description=__doc__)
    _global_options(top, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = top.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    sp = add_parser("chromatic", help="exact chromatic number")
    _add_instance(sp)
    sp.set_defaults(func=_cmd_chromatic)

    sp = add_parser("local", help="exact local chromatic number")
    _add_instance(sp)
    sp.set_defaults(func=_cmd_local)

    sp = add_parser("kneser", help="build the r-uniform Kneser hypergraph")
    _add_instance(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.set_defaults(func=_cmd_kneser)

    sp = add_parser("alt", help="alternation number alt_p")
    _add_instance(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--mode", choices=("exact", "sampled"), default="exact")
    sp.set_defaults(func=_cmd_alt)

    sp = add_parser("cd", help="colorability defect cd_p")
    _add_instance(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=_cmd_cd)

    sp = add_parser("box", help="Z_p box complex B_0(H, Z_p)")
    _add_instance(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=_cmd_box)

    sp = add_parser("hom", help="hom poset Hom(K^r_p, H)")
    _add_instance(sp)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=_cmd_hom)

    sp = add_parser("xind", help="exact cross-index of a poset")
    _add_instance(sp)
    sp.add_argument("--poset", choices=("hom", "q"), default="hom")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, help="level count for --poset q")
    sp.set_defaults(func=_cmd_xind)

    sp = add_parser("indbounds", help="certified interval for ind(B_0(H))")
    _add_instance(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--depth", type=int, default=0, help="subdivision depth")
    sp.set_defaults(func=_cmd_indbounds)

    sp = add_parser("bounds", help="the full bound hierarchy for F, r, p")
    _add_instance(sp, family=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--depth", type=int, default=0)
    sp.set_defaults(func=_cmd_bounds)

    sp = add_parser("colorful", help="colorful balanced witness search")
    _add_instance(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--colors", type=int, help="palette for seeded colorings")
    sp.set_defaults(func=_cmd_colorful)

    sp = add_parser("zigzag", help="alternating multicolored bipartite witness")
    _add_instance(sp)
    sp.add_argument("--t", type=int, help="total size (default Xind+2)")
    sp.add_argument("--colors", type=int, help="palette for seeded colorings")
    sp.set_defaults(func=_cmd_zigzag)

    sp = add_parser("verify", help="run a lemma verification campaign")
    sp.add_argument("--lemma", choices=("zp-fan",))
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--alpha", type=int)
    sp.add_argument(
        "--exhaustive",
        action="store_true",
        help="exhaustive enumeration (always on; accepted for manifests)",
    )
    sp.add_argument("--manifest", help="campaign manifest JSON")
    sp.set_defaults(func=_cmd_verify)

    return top


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExhausted, TimeoutError):
        print("error: search budget exhausted", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

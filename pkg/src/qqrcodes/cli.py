"""Command-line front end.

Every command prints a human-readable summary and can also write a JSON
report (--json PATH).  `verify` replays the finite-p statements for one prime
and exits nonzero only if two internal computation routes disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__, bounds, families as fam, field, gf2linalg as gl, zeta
from .field import Prime, Subset

CHECK, CLAIM, REPORT = "check", "claim", "report"


class Reporter:
    def __init__(self, command: str, argv: list[str], args: argparse.Namespace):
        self.args = args
        self.data = {
            "command": command,
            "argv": argv,
            "p": getattr(args, "p", None),
            "seed": args.seed,
            "version": __version__,
            "started": _now(),
            "results": {},
        }
        self.rows: list[dict] = []

    def put(self, key: str, value) -> None:
        self.data["results"][key] = value

    def say(self, text: str = "") -> None:
        print(text)

    def row(self, name: str, kind: str, ok: bool | None, detail: str = "") -> None:
        self.rows.append({"name": name, "kind": kind, "ok": ok, "detail": detail})

    @property
    def failed_checks(self) -> list[dict]:
        return [r for r in self.rows if r["kind"] == CHECK and r["ok"] is False]

    def finish(self) -> int:
        if self.rows:
            width = max(len(r["name"]) for r in self.rows)
            for r in self.rows:
                status = {True: "pass", False: "FAIL", None: "----"}[r["ok"]]
                print(f"{r['name']:<{width}}  {r['kind']:<6}  {status}  {r['detail']}")
            self.put("table", self.rows)
        self.data["finished"] = _now()
        if self.args.json:
            with open(self.args.json, "w") as fh:
                json.dump(self.data, fh, indent=2, default=_jsonable)
        return 1 if self.failed_checks else 0


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, Subset):
        return x.elements()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _prime_arg(text: str) -> int:
    try:
        return int(Prime(int(text)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"p must be an odd prime ({exc})") from None


def _code_prime(text: str) -> int:
    p = _prime_arg(text)
    if p <= 5:
        raise argparse.ArgumentTypeError("the QQR/LQR codes need a prime p > 5")
    return p


def _subset_arg(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


# -- commands -------------------------------------------------------------------


def _zeta_block(rep: Reporter, W: gl.WeightDistribution, n: int, k: int, key: str) -> None:
    z = zeta.zeta_report(W, n, k, tol=rep.args.tol)
    rep.put(key, z.to_dict())
    rep.say(f"P(T) = {z.P}")
    rep.say(f"deg P = {z.P.degree}, P(1) = {z.P(1)}, functional equation: {z.functional_equation}")
    rep.say(f"zeros on |T| = 1/sqrt(2): {z.on_circle_count} of {len(z.zeros)} (tol {z.tol:g}); RH holds: {z.rh_holds}")
    rep.say(f"2 - sum 1/rho = {z.d_from_zeros:.9f} (d = {z.d})")


def cmd_qqr(rep: Reporter) -> None:
    a = rep.args
    p = a.p
    if p <= 5 and a.dual_check:
        raise SystemExit("--dual-check needs a prime p > 5")
    C = fam.build_qqr(p, allow_small=True)
    rep.put("n", C.n)
    rep.put("k", C.k)
    if a.codeword is not None:
        w = fam.qqr_codeword(Subset.of(p, a.codeword))
        rep.put("codeword", {"S": a.codeword, "left": str(w.left), "right": str(w.right),
                             "bits": fam.format_tuple(w.bits()), "weight": w.weight})
        rep.say(f"S = {sorted(set(x % p for x in a.codeword))}")
        rep.say(f"(r_N r_S, r_Q r_S) = ({w.left}, {w.right})")
        rep.say(f"codeword {fam.format_tuple(w.bits())} of weight {w.weight}")
    if a.spectrum or a.zeta:
        W = gl.weight_distribution(C, a.cap, a.threads)
        d = W.min_weight()
        rep.put("d", d)
        rep.put("distribution", list(W.counts))
        rep.say(f"[{C.n},{C.k},{d}] QQR code")
        rep.say(W.csv().rstrip() if a.csv else W.bracket())
        if a.zeta:
            _zeta_block(rep, W, C.n, C.k, "zeta")
    else:
        rep.say(f"[{C.n},{C.k}] QQR code")
    if a.dual_check:
        r = fam.conjecture_checks(p, enumerate_code=False, search=False, cap=a.cap)
        rep.put("duality", r.to_dict())
        if p % 4 == 3:
            rep.say(f"self-dual: {r.self_dual}")
        else:
            rep.say(f"C & C^perp = 0: {r.trivial_intersection}; C + C^perp = F^{2 * p}: {r.full_sum}")
    if a.extended:
        if p % 4 != 1:
            raise SystemExit("--extended needs p = 1 (mod 4)")
        e = fam.build_extended_qqr(p, a.cap, a.threads)
        d = e.distribution.min_weight()
        rep.put("extended", {"n": e.code.n, "k": e.code.k, "d": d,
                             "distribution": list(e.distribution.counts),
                             "matches_a_plus_reversed": e.matches_a_plus_reversed,
                             "formally_self_dual": e.formally_self_dual})
        rep.say(f"extended code C': [{e.code.n},{e.code.k},{d}]")
        rep.say(e.distribution.csv().rstrip() if a.csv else e.distribution.bracket())
        rep.say(f"distribution = A + reverse(A): {e.matches_a_plus_reversed}; "
                f"formally self-dual: {e.formally_self_dual}")
        if a.zeta:
            _zeta_block(rep, e.distribution, e.code.n, e.code.k, "extended_zeta")


def cmd_lqr(rep: Reporter) -> None:
    a = rep.args
    p = a.p
    if a.codeword is not None:
        S = Subset.of(p, a.codeword)
        c = fam.lqr_codeword(S)
        bits = gl.int_to_bits(c, 4 * p)
        rep.put("codeword", {"S": S.elements(), "bits": fam.format_tuple(bits), "weight": c.bit_count()})
        rep.say(f"c_S for S = {S.elements()}: {fam.format_tuple(bits)} of weight {c.bit_count()}")
    if p > a.cap:
        rep.say(f"p = {p} exceeds the enumeration cap {a.cap}; skipping |C|")
        return
    L = fam.build_lqr(p)
    rep.put("size", L.size)
    rep.put("weights", sorted(L.weights()))
    rep.say(f"|C| = {L.size} = 2^{L.size.bit_length() - 1}; S -> c_S injective: {L.injective}")
    rep.say(f"codeword weights: {sorted(L.weights())}")
    if p % 4 == 1:
        rep.say(L.weight_distribution().bracket())
    elif a.closure and p + 1 <= a.cap:
        bar = fam.build_lqr_bar(p)
        W = gl.weight_distribution(bar, a.cap, a.threads)
        rep.put("closure", {"k": bar.k, "d": W.min_weight(), "distribution": list(W.counts)})
        rep.say(f"linear closure: [{bar.n},{bar.k},{W.min_weight()}]")


def cmd_curve(rep: Reporter) -> None:
    a = rep.args
    p = a.p
    if a.subset is not None:
        S = Subset.of(p, a.subset)
        cc = field.point_count(S)
        rep.put("curve", cc.__dict__ | {"S": S.elements()})
        rep.say(f"S = {S.elements()} (|S| = {cc.size}, genus {cc.genus})")
        rep.say(f"char_sum = {cc.char_sum}")
        rep.say(f"affine = {cc.affine}, at infinity = {cc.at_infinity}, total = {cc.total}")
        rep.say(f"Weil bound |char_sum| <= {field.weil_bound(cc.size, p):.3f}")
        if a.moebius is not None:
            m = field.moebius_reduce(S, a.moebius)
            rep.put("moebius", {"reduced": m.reduced.elements(), "leading": m.leading,
                                "twisted": m.twisted, "total": m.transformed_total,
                                "reduced_total": m.reduced_total})
            rep.say(f"x = {a.moebius} + 1/u gives v^2 = {m.leading} * f_S'(u), S' = {m.reduced.elements()}, "
                    f"twist: {m.twisted}, count {m.transformed_total}")
    if a.search:
        _search(rep, a.search)
    if a.voloch:
        total, excess = field.voloch_q_count(p)
        rep.put("voloch", {"total": total, "a": excess})
        rep.say(f"|X_Q| = {total} = 3p/2 + ({excess})")
    if a.ell:
        r = field.ell_power_construction(p, a.ell)
        rep.put("ell_power", {"ell": a.ell, "P": r.powers.elements(), "condition_holds": r.condition_holds,
                              "total": r.total, "a": r.excess})
        rep.say(f"ell = {a.ell}: |P| = {len(r.powers)}, condition {r.condition_holds}, "
                f"|X_P| = {r.total} = (2 - 1/{a.ell})p + ({r.excess})")


def _search(rep: Reporter, strategy: str) -> bounds.SearchResult:
    a = rep.args
    res = bounds.max_point_count_search(a.p, strategy, a.budget, a.seed, a.exhaustive_cap, a.threads)
    rep.put("search", res.to_dict())
    rep.say(f"{strategy} search over {res.samples} subsets: max |X_S| = {res.best_total} "
            f"at S = {res.best_S.elements()} ({res.ratio:.4f} p)")
    for c in bounds.REFERENCE_RATIOS:
        rep.say(f"  best/p {'>' if res.ratio > c else '<='} {c:.4f}")
    return res


def cmd_search(rep: Reporter) -> None:
    _search(rep, rep.args.strategy)


def cmd_zeta(rep: Reporter) -> None:
    a = rep.args
    if a.distribution:
        W = gl.WeightDistribution.parse(a.distribution)
        if a.k is None:
            raise SystemExit("--distribution needs --k")
        _zeta_block(rep, W, W.n, a.k, "zeta")
        return
    if a.p is None:
        raise SystemExit("give --p or --distribution")
    if a.extended:
        e = fam.build_extended_qqr(a.p, a.cap, a.threads)
        _zeta_block(rep, e.distribution, e.code.n, e.code.k, "zeta")
    else:
        C = fam.build_qqr(a.p, allow_small=True)
        _zeta_block(rep, gl.weight_distribution(C, a.cap, a.threads), C.n, C.k, "zeta")


def cmd_bounds(rep: Reporter) -> None:
    a = rep.args
    if a.constants or not (a.b or a.window or a.volume):
        table = bounds.constants_table()
        rep.put("constants", dict(table))
        for name, value in table:
            rep.say(f"{name:<26} {value:.6f}")
    if a.volume:
        n, r = a.volume
        v = bounds.hamming_volume(n, r)
        rep.put("volume", {"n": n, "r": r, "V": v, "gv_dimension": bounds.gv_dimension(n, r + 1)})
        rep.say(f"V({n},{r}) = {v}; GV dimension for d = {r + 1}: {bounds.gv_dimension(n, r + 1):.4f}")
    if a.b is not None:
        if a.p is None:
            raise SystemExit("--b needs --p")
        v = bounds.b_statement(a.p, a.b, a.strategy, a.budget, a.seed, a.exhaustive_cap)
        rep.put("b_statement", v.__dict__)
        rep.say(f"B({a.b}, {a.p}): holds = {v.holds} (decided: {v.decided}), max seen {v.best_total}, "
                f"witness {v.witness.elements() if v.witness else None}")
    if a.window is not None:
        if a.p is None:
            raise SystemExit("--window needs --p")
        v = bounds.tarnanen_window(a.p, a.window, a.strategy if a.strategy != "greedy" else "random",
                                   a.budget, a.seed, a.exhaustive_cap)
        rep.put("window", v.__dict__)
        rep.say(f"all |S| <= {a.window} p inside (0.42p, 1.42p): {v.holds} (decided: {v.decided}); "
                f"witness {v.witness.elements() if v.witness else None}")


# -- verify -------------------------------------------------------------------


def _three_way(p: int, subsets: list[Subset]) -> tuple[bool, bool, int]:
    """(ring == character sum == point count, all weights even, number checked)."""
    B = field.masks_to_matrix(p, subsets)
    totals = field.batch_point_totals(p, B)
    comp_totals = field.batch_point_totals(p, 1.0 - B)
    agree = even = True
    for S, total, comp_total in zip(subsets, totals, comp_totals):
        ring_w = fam.qqr_codeword(S).weight
        cs_w = fam.qqr_weight_via_curve(S)
        if len(S) % 2 == 0:
            pc_w = 2 * p + 2 - int(total)
        elif len(S) == p:
            pc_w = cs_w  # complement is empty; no curve to count
        else:
            pc_w = 2 * p + 2 - int(comp_total) if p % 4 == 1 else int(comp_total) - 2
        agree &= ring_w == cs_w == pc_w
        even &= ring_w % 2 == 0
    return agree, even, len(subsets)


def cmd_verify(rep: Reporter) -> None:
    a = rep.args
    p = a.p
    C = fam.build_qqr(p)
    k_exp = fam.qqr_dimension(p)
    rep.row("QQR dimension", CLAIM, C.k == k_exp, f"k = {C.k}, expected {k_exp}")

    if p <= 16:
        subsets = [Subset(p, m) for m in range(1, 1 << p)]
    else:
        rng = random.Random(a.seed)
        subsets = [Subset(p, rng.getrandbits(p) or 1) for _ in range(2000)]
    agree, even, count = _three_way(p, subsets)
    rep.row("weight: ring = char sum = point count", CHECK, agree, f"{count} subsets")
    rep.row("all codeword weights even", CLAIM, even, f"{count} subsets")

    W = None
    if C.k <= a.cap:
        W = gl.weight_distribution(C, a.cap, a.threads)
        rep.put("distribution", list(W.counts))
        rep.row("distribution has no odd weights", CLAIM, not any(W.counts[1::2]), W.bracket())

    r = fam.conjecture_checks(p, enumerate_code=C.k <= a.cap, search=True, cap=a.cap,
                              exhaustive_cap=a.exhaustive_cap, workers=a.threads)
    rep.put("conjectures", r.to_dict())
    if p % 4 == 3:
        rep.row("C_NQ self-dual", REPORT, r.self_dual)
        if r.min_distance is not None:
            rep.row("d <= 4[p/12] + 6", REPORT, r.within_sloane_mallows,
                    f"d = {r.min_distance}, bound {r.sloane_mallows_bound}")
    else:
        rep.row("C_NQ & dual = 0, sum = F^2p", REPORT, r.trivial_intersection and r.full_sum)
    if r.sqrt_bound_applies and r.min_distance is not None:
        rep.row("d >= sqrt(p)", REPORT, r.meets_sqrt_bound, f"d = {r.min_distance}")
    if r.exceeds_five_thirds is not None:
        rep.row("max |X_S| > 5p/3 - 4", REPORT, r.exceeds_five_thirds,
                f"max {r.max_points} at S = {r.max_points_witness}")

    if p % 4 == 1 and p <= a.cap:
        e = fam.build_extended_qqr(p, a.cap, a.threads)
        rep.row("C' has dimension p", REPORT, e.dimension_is_p, f"k = {e.code.k}")
        rep.row("C' distribution = A + reverse(A)", REPORT, e.matches_a_plus_reversed)
        rep.row("C' formally self-dual", REPORT, e.formally_self_dual)

    if p <= a.cap:
        _verify_lqr(rep, p, r.max_points)

    if p % 8 in (1, 3):
        total, excess = field.voloch_q_count(p)
        rep.row("|X_Q| = 3p/2 + a, a in [-1/2, 5/2]", CLAIM, True, f"|X_Q| = {total}, a = {excess}")
    if (p - 1) % 3 == 0:
        er = field.ell_power_construction(p, 3)
        rep.row("cube-power construction", REPORT, None,
                f"splitting condition {'holds' if er.condition_holds else 'fails'}; "
                f"|X_P3| = {er.total} = (5/3)p + ({er.excess})")


def _verify_lqr(rep: Reporter, p: int, max_points: int | None) -> None:
    a = rep.args
    L = fam.build_lqr(p)
    rng = random.Random(a.seed)
    ok = True
    for _ in range(200):
        S1, S2 = Subset(p, rng.getrandbits(p)), Subset(p, rng.getrandbits(p))
        ok &= fam.lqr_codeword(S1) ^ fam.lqr_codeword(S2) == fam.lqr_v(S1.symmetric_difference(S2))
        ok &= fam.lqr_codeword(S1) in L.codewords
        ok &= fam.lqr_codeword(S1).bit_count() == fam.lqr_weight_via_curve(S1)
    rep.row("LQR addition law / curve weights", CHECK, ok, "200 random pairs")
    if p % 4 == 3:
        rep.row("|C| = 2^p", CLAIM, L.size == 1 << p, f"|C| = {L.size}")
        rep.row("LQR constant weight 2p", CLAIM, L.weights() == {2 * p}, f"weights {sorted(L.weights())}")
        bar = fam.build_lqr_bar(p)
        rep.row("closure dimension p + 1", CLAIM, bar.k == p + 1, f"k = {bar.k}")
        if bar.k <= a.cap and max_points is not None:
            d = gl.min_distance(bar, a.cap, a.threads)
            d_p = 4 * p - 2 * max_points
            rep.row("closure d = min(d_p, 2p)", CLAIM, d == min(d_p, 2 * p),
                    f"d = {d}, d_p = {d_p}")
    else:
        qqr_w = gl.weight_distribution(fam.build_qqr(p), a.cap, a.threads).counts
        doubled = [0] * (4 * p + 1)
        for w, c in enumerate(qqr_w):
            doubled[2 * w] += c
        rep.row("|C| = 2^(p-1)", CLAIM, L.size == 1 << (p - 1), f"|C| = {L.size}")
        rep.row("C = duplicated C_NQ", CLAIM,
                list(L.weight_distribution().counts) == doubled
                and all(fam.duplicate_block(fam.qqr_codeword(Subset(p, 1 << i)).vector, p)
                        == fam.lqr_codeword(Subset(p, 1 << i)) for i in range(p)))
        S = [Subset(p, rng.getrandbits(p)) for _ in range(200)]
        diverge = sum(1 for s in S if s.mask and fam.lqr_literal_weight(s) != fam.lqr_codeword(s).bit_count())
        rep.row("unsplit weight formula 2p - 2 sum chi(f_S)", REPORT, diverge == 0,
                f"diverges on {diverge} of 200 random S")


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (recorded in reports)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker count")
    common.add_argument("--tol", type=float, default=1e-8, help="tolerance for |rho| = 1/sqrt(q)")
    common.add_argument("--cap", type=int, default=gl.DEFAULT_CAP, help="max dimension to enumerate")
    common.add_argument("--exhaustive-cap", type=int, default=bounds.EXHAUSTIVE_CAP,
                        help="max p for exhaustive subset search")
    common.add_argument("--json", metavar="PATH", help="write the full report as JSON")
    common.add_argument("--csv", action="store_true", help="print distributions as weight,count CSV")

    parser = argparse.ArgumentParser(prog="qqrcodes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("qqr", parents=[common], help="quasi-quadratic residue code")
    q.add_argument("--p", type=_prime_arg, required=True)
    q.add_argument("--spectrum", action="store_true")
    q.add_argument("--dual-check", action="store_true")
    q.add_argument("--zeta", action="store_true")
    q.add_argument("--extended", action="store_true")
    q.add_argument("--codeword", type=_subset_arg, metavar="S")
    q.set_defaults(func=cmd_qqr)

    lq = sub.add_parser("lqr", parents=[common], help="long quadratic residue code")
    lq.add_argument("--p", type=_code_prime, required=True)
    lq.add_argument("--codeword", type=_subset_arg, metavar="S")
    lq.add_argument("--closure", action="store_true", help="linear closure (p = 3 mod 4)")
    lq.set_defaults(func=cmd_lqr)

    cv = sub.add_parser("curve", parents=[common], help="point counts on y^2 = f_S(x)")
    cv.add_argument("--p", type=_prime_arg, required=True)
    cv.add_argument("--subset", type=_subset_arg, metavar="S")
    cv.add_argument("--moebius", type=int, metavar="A", help="send root A of f_S to infinity")
    cv.add_argument("--search", choices=["exhaustive", "random", "greedy"])
    cv.add_argument("--budget", type=int, default=10_000)
    cv.add_argument("--voloch", action="store_true", help="count points on X_Q")
    cv.add_argument("--ell", type=int, help="ell-th power construction")
    cv.set_defaults(func=cmd_curve)

    z = sub.add_parser("zeta", parents=[common], help="Duursma zeta polynomial")
    z.add_argument("--p", type=_prime_arg)
    z.add_argument("--extended", action="store_true")
    z.add_argument("--distribution", metavar="[A0, A1, ...]")
    z.add_argument("--k", type=int)
    z.set_defaults(func=cmd_zeta)

    b = sub.add_parser("bounds", parents=[common], help="rate/distance constants and predicates")
    b.add_argument("--constants", action="store_true")
    b.add_argument("--p", type=_prime_arg)
    b.add_argument("--b", type=float, metavar="C", help="decide B(C, p)")
    b.add_argument("--window", type=float, metavar="TAU", help="window predicate for |S| <= TAU p")
    b.add_argument("--volume", type=int, nargs=2, metavar=("N", "R"))
    b.add_argument("--strategy", choices=["exhaustive", "random", "greedy"], default="exhaustive")
    b.add_argument("--budget", type=int, default=10_000)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", parents=[common], help="search for S with many points")
    s.add_argument("--p", type=_prime_arg, required=True)
    s.add_argument("--strategy", choices=["exhaustive", "random", "greedy"], default="exhaustive")
    s.add_argument("--budget", type=int, default=10_000)
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", parents=[common], help="replay every finite-p check for one prime")
    v.add_argument("--p", type=_code_prime, required=True)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Reporter(args.command, argv, args)
    try:
        args.func(rep)
    except (ValueError, gl.EnumerationCapError) as exc:
        parser.exit(2, f"qqrcodes {args.command}: error: {exc}\n")
    return rep.finish()


if __name__ == "__main__":
    sys.exit(main())

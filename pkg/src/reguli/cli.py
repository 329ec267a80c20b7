"""Command-line entry point: ``reguli <group> <verb> [options]``.

Exit status is 0 when the checked statement is verified, 1 when it is
falsified (the report carries a counterexample) and 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import sys

from . import report as rp

EPILOG = "verbs:\n" + "\n".join(f"  {v}" for v in rp.verb_list())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, seed=False, threads=False):
    p.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    if seed:
        p.add_argument("--seed", type=int, default=rp.DEFAULT_SEED, help="seed for random choices")
    if threads:
        p.add_argument("--threads", type=int, default=1, help="worker threads (1 is the reference)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="reguli", description="Exact checks on reguli, curves and clubs over finite fields.",
                 epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = ap.add_subparsers(dest="group", metavar="{verify,reproduce,abb,clubs,extend-check}",
                               parser_class=_Parser)
    groups.required = True

    verify = groups.add_parser("verify", help="exhaustive or sampled checks").add_subparsers(
        dest="verb", parser_class=_Parser)
    verify.required = True
    p = verify.add_parser("thm3-3", help="curve orders of all n-spaces through F(Theta)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all-theta", action="store_true", help="every Theta off b, not one per degree")
    p.add_argument("--up-to-conjugacy", action="store_true", help="one Theta per Frobenius orbit")
    p.add_argument("--closed-form-samples", type=int, default=0,
                   help="also compare the closed-form intersection on this many random (theta, xi)")
    _common(p, seed=True, threads=True)
    p = verify.add_parser("prop3-2", help="n-spaces through a regulus element")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p, threads=True)
    p = verify.add_parser("lemma2-1", help="orders of transversal traces")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--case", choices=("a", "b"), help="explicit configuration for q = t")
    p.add_argument("--samples", type=int, default=5)
    _common(p, seed=True)
    p = verify.add_parser("prop3-1", help="frame independence of the degree")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    _common(p, seed=True)
    p = verify.add_parser("appendix", help="3-space meeting S_{2,1,q} in a single line")
    p.add_argument("--q", type=int, required=True)
    _common(p)

    rep = groups.add_parser("reproduce", help="reproduce a worked example").add_subparsers(
        dest="verb", parser_class=_Parser)
    rep.required = True
    p = rep.add_parser("gf4-remark", help="non-constant order profile over GF(4), n = 4")
    p.add_argument("--modulus", help="top modulus over GF(4) in the element grammar, e.g. [[1,0],...]")
    p.add_argument("--force-search", action="store_true", help="skip the literal subspace")
    _common(p, seed=True)

    abb = groups.add_parser("abb", help="Andre-Bruck-Bose images").add_subparsers(
        dest="verb", parser_class=_Parser)
    abb.required = True
    p = abb.add_parser("subline", help="image of a q-subline")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta-degree", type=int, required=True)
    p.add_argument("--k-seed", type=int, help="re-randomize the 2n-space K")
    _common(p)
    p = abb.add_parser("subplane", help="image of a tangent q-subplane")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k-seed", type=int)
    p.add_argument("--dump-lines", metavar="PATH", help="write the generator lines here")
    _common(p)

    clubs = groups.add_parser("clubs", help="clubs of PG(1, q^n)").add_subparsers(
        dest="verb", parser_class=_Parser)
    clubs.required = True
    p = clubs.add_parser("distinguish", help="span invariants of the clubs L_h")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=10)
    _common(p, seed=True, threads=True)
    p = clubs.add_parser("invariant", help="span invariant of one club")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--projectivity-trials", type=int, default=5)
    _common(p, seed=True)

    p = groups.add_parser("extend-check", help="order profile of a subspace file")
    p.add_argument("--subspace", metavar="FILE", required=True)
    p.add_argument("--modulus", help="top modulus in the element grammar")
    _common(p, threads=True)
    return ap


def _dispatch(a) -> rp.RunReport:
    key = (a.group, getattr(a, "verb", None))
    if getattr(a, "threads", 1) < 1:
        raise rp.InputError("--threads must be at least 1")
    if key == ("verify", "thm3-3"):
        return rp.run_curve_orders(a.q, a.n, a.all_theta, a.up_to_conjugacy, a.threads,
                                   a.closed_form_samples, a.seed)
    if key == ("verify", "prop3-2"):
        return rp.run_line_plus_element(a.q, a.n, a.threads)
    if key == ("verify", "lemma2-1"):
        return rp.run_trace_orders(a.q, a.t, a.case, a.samples, a.seed)
    if key == ("verify", "prop3-1"):
        return rp.run_degree_frames(a.q, a.n, a.trials, a.seed)
    if key == ("verify", "appendix"):
        return rp.run_external_line(a.q)
    if key == ("reproduce", "gf4-remark"):
        return rp.run_gf4_example(a.modulus, a.seed, a.force_search)
    if key == ("abb", "subline"):
        return rp.run_abb_subline(a.q, a.n, a.theta_degree, a.k_seed)
    if key == ("abb", "subplane"):
        return rp.run_abb_subplane(a.q, a.n, a.h, a.k_seed, a.dump_lines)
    if key == ("clubs", "distinguish"):
        return rp.run_clubs_distinguish(a.q, a.n, a.samples, a.seed, a.threads)
    if key == ("clubs", "invariant"):
        return rp.run_clubs_invariant(a.q, a.n, a.h, a.samples, a.seed, a.projectivity_trials)
    if a.group == "extend-check":
        return rp.run_extend_check(a.subspace, a.modulus, a.threads)
    raise rp.InputError(f"unknown verb {key}")


def run(argv=None) -> tuple[rp.RunReport | None, int]:
    """Parse ``argv``, run the driver and emit the report; returns it with the exit code."""
    args = build_parser().parse_args(argv)
    try:
        report = rp.timed(lambda: _dispatch(args))
    except (rp.InputError, ValueError) as e:
        print(f"reguli: error: {e}", file=sys.stderr)
        return None, 2
    text = report.to_json()
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report, report.exit_code


def main(argv=None) -> int:
    try:
        return run(argv)[1]
    except SystemExit as e:
        return int(e.code or 0)

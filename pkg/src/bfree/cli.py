"""Command-line front end: one subcommand per lab capability.

Every run is reproducible from the config echoed into its report; there
is no hidden state and no randomness. Output formats: json (canonical,
default when piped), text (indented, default on a terminal), csv for
the tabular commands.

Exit codes: 0 success, 2 parse errors, 3 budget/overflow errors,
4 precondition violations. Failures emit a JSON error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import kernels
from .blocks import block_frequencies, heredity_check, observed_blocks, support_stability, xeta_vs_xphi
from .density import (
    davenport_erdos_sequence,
    exact_density,
    light_tails_profile,
    log_density_estimate,
    natural_density_bounds,
)
from .errors import (
    FamilyParseError,
    PeriodOverflowError,
    PreconditionError,
    SearchExhaustedError,
)
from .families import parse_family
from .reports import canonical_json, csv_text, fraction_str, plain
from .sieve import sieve_interval
from .tautlab import as511_check, behrend_profile, lemma520_check, prime_exhaust, tautness_diagnostic
from .window import coding_word, phi_blocks, window_report


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _config_echo(args: argparse.Namespace) -> dict:
    skip = {"func", "format", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfree", description="Density, window and block lab for sets of multiples."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None,
                        help="output format; default json when piped, text on a terminal")
    common.add_argument("--output", default=None, help="write the report to this path")
    common.add_argument("--threads", type=int,
                        default=int(os.environ.get("BFREE_THREADS", os.cpu_count() or 1)),
                        help="worker threads for accelerated kernels (default: BFREE_THREADS or cores)")
    common.add_argument("--lcm-cap", type=int, default=None,
                        help="cap on exact counting periods (per-command default otherwise)")
    common.add_argument("--subset-budget", type=int, default=1 << 22,
                        help="cap on inclusion-exclusion subset enumeration")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_text, func):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = cmd("density", "exact or estimated density of the set of multiples", _run_density)
    p.add_argument("--bset", required=True, help="family spec, e.g. list:6,10,15 or prime_squares:10000")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact rational density (default)")
    mode.add_argument("--natural", action="store_true", help="natural-density bounds at window n")
    mode.add_argument("--log", action="store_true", help="logarithmic estimate at window n")
    p.add_argument("--n", type=int, default=10**6, help="estimation window")
    p.add_argument("--method", choices=("auto", "subset", "sieve"), default="auto")

    p = cmd("de-sequence", "exact densities of truncations at growing cutoffs", _run_de_sequence)
    p.add_argument("--bset", required=True)
    p.add_argument("--Ks", type=_int_list, required=True, help="increasing truncation cutoffs")

    p = cmd("light-tails", "upper density estimates of the tails {b > K}", _run_light_tails)
    p.add_argument("--bset", required=True)
    p.add_argument("--Ks", type=_int_list, required=True)
    p.add_argument("--n", type=int, default=10**6)

    p = cmd("behrend", "dichotomy profile over spectrum cutoffs", _run_behrend)
    p.add_argument("--bset", required=True)
    p.add_argument("--Ns", type=_int_list, required=True)
    p.add_argument("--n", type=int, default=10**6)

    p = cmd("taut", "tautness diagnostic over quotient families", _run_taut)
    p.add_argument("--bset", required=True)
    p.add_argument("--qs", type=_int_list, required=True)
    p.add_argument("--Ns", type=_int_list, required=True)
    p.add_argument("--n", type=int, default=10**6)

    p = cmd("prime-exhaust", "search a prime set exhausting the family's density", _run_prime_exhaust)
    p.add_argument("--bset", required=True)
    p.add_argument("--avoid", type=_int_list, default=[], help="primes the set P must avoid")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--n", type=int, default=10**6)

    p = cmd("window", "finite-quotient window measure and residues", _run_window)
    p.add_argument("--bset", required=True)
    p.add_argument("--phi-n", type=int, default=None, help="also enumerate coding blocks of this length")
    p.add_argument("--word", type=_int_list, default=None, metavar="H,START,LENGTH",
                   help="emit the coding word at residue h on [start, start+length)")

    p = cmd("blocks", "frequency table of indicator blocks", _run_blocks)
    p.add_argument("--bset", required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = cmd("heredity", "downward-closure violations among observed blocks", _run_heredity)
    p.add_argument("--bset", required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = cmd("support", "block frequency stability across nested windows", _run_support)
    p.add_argument("--bset", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--windows", type=_int_list, required=True)
    p.add_argument("--decay", type=float, default=4.0, help="flag factor per window doubling")

    p = cmd("lemma520", "exact progression/free-shift density inequality", _run_lemma520)
    p.add_argument("--cset", required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--P", type=_int_list, required=True)

    p = cmd("as511", "empirical recurrence of the block pattern at offset r", _run_as511)
    p.add_argument("--bset", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=int, required=True)

    p = cmd("xphi", "observed blocks versus coding blocks at a truncation", _run_xphi)
    p.add_argument("--bset", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--length", type=int, required=True)

    return parser


def _run_density(args):
    fam = parse_family(args.bset)
    b = fam.expand()
    if args.natural:
        lower, upper = natural_density_bounds(b, args.n)
        payload = {"lower": lower.as_dict(), "upper": upper.as_dict(),
                   "final": lower.trace[-1][1], "truncation": fam.natural_bound()}
        return payload, None
    if args.log:
        est = log_density_estimate(b, args.n)
        return {"estimate": est.as_dict(), "truncation": fam.natural_bound()}, None
    dens = exact_density(b, method=args.method, lcm_cap=args.lcm_cap or 10**9,
                         subset_budget=args.subset_budget)
    return {"density": fraction_str(dens.value), "period": dens.period,
            "moduli_count": len(b)}, None


def _run_de_sequence(args):
    fam = parse_family(args.bset)
    seq = davenport_erdos_sequence(fam, args.Ks, lcm_cap=args.lcm_cap or 10**9,
                                   subset_budget=args.subset_budget)
    rows = [[k, fraction_str(d.value), d.period] for k, d in zip(args.Ks, seq)]
    payload = {"Ks": args.Ks, "densities": [fraction_str(d.value) for d in seq],
               "non_decreasing": all(a.value <= b.value for a, b in zip(seq, seq[1:]))}
    return payload, (["K", "density", "period"], rows)


def _run_light_tails(args):
    fam = parse_family(args.bset)
    ests = light_tails_profile(fam, args.Ks, args.n)
    rows = [[k, e.value, e.kind, e.n] for k, e in zip(args.Ks, ests)]
    return {"Ks": args.Ks, "estimates": [e.as_dict() for e in ests]}, (["K", "value", "kind", "n"], rows)


def _run_behrend(args):
    prof = behrend_profile(parse_family(args.bset), args.Ns, args.n)
    return prof.as_dict(), None


def _run_taut(args):
    rep = tautness_diagnostic(parse_family(args.bset), args.qs, args.Ns, args.n)
    return rep.as_dict(), None


def _run_prime_exhaust(args):
    res = prime_exhaust(parse_family(args.bset), args.avoid, args.epsilon, n=args.n)
    return res.as_dict(), None


def _run_window(args):
    fam = parse_family(args.bset)
    b = fam.expand()
    payload = window_report(b, lcm_cap=args.lcm_cap or 10**12)
    if args.phi_n is not None:
        phi = phi_blocks(b, args.phi_n)
        payload["phi_blocks"] = {
            "n": args.phi_n,
            "count": len(phi.blocks),
            "blocks": sorted(blk.to01() for blk in phi.blocks),
            "exhaustive": phi.exhaustive,
        }
    if args.word is not None:
        if len(args.word) != 3:
            raise PreconditionError("--word needs h,start,length")
        h, start, length = args.word
        payload["word"] = coding_word(b, h, start, length).to01()
    return payload, None


def _run_blocks(args):
    b = parse_family(args.bset).expand()
    seg = sieve_interval(b, args.start, args.length)
    stats = block_frequencies(seg, args.n)
    rows = [[s.block.to01(), s.count, s.window_length, fraction_str(s.frequency)] for s in stats]
    payload = {"start": args.start, "length": args.length, "n": args.n,
               "blocks": {s.block.to01(): s.count for s in stats}}
    return payload, (["block", "count", "window_length", "frequency"], rows)


def _run_heredity(args):
    b = parse_family(args.bset).expand()
    seg = sieve_interval(b, args.start, args.length)
    violations = heredity_check(observed_blocks(seg, args.n))
    payload = {
        "start": args.start,
        "length": args.length,
        "n": args.n,
        "violations": [{"missing": v.missing.to01(), "below": v.dominating.to01()} for v in violations],
    }
    return payload, None


def _run_support(args):
    b = parse_family(args.bset).expand()
    rep = support_stability(b, args.n, args.windows, decay_factor=args.decay)
    payload = {
        "n": args.n,
        "windows": list(rep.windows),
        "decay_factor": rep.decay_factor,
        "flagged": [blk.to01() for blk in rep.flagged_blocks],
        "rows": [
            {"block": r.block.to01(), "counts": list(r.counts),
             "frequencies": [fraction_str(f) for f in r.frequencies], "flagged": r.flagged}
            for r in rep.rows
        ],
    }
    return payload, None


def _run_lemma520(args):
    cfam = parse_family(args.cset)
    rep = lemma520_check(cfam.expand(), args.beta, args.r, args.n, args.P,
                         lcm_cap=args.lcm_cap or 10**8)
    return rep.as_dict(), None


def _run_as511(args):
    rep = as511_check(parse_family(args.bset), args.r, args.n, args.window)
    return rep.as_dict(), None


def _run_xphi(args):
    rep = xeta_vs_xphi(parse_family(args.bset), args.K, args.n, args.start, args.length)
    return rep.as_dict(), None


def _resolve_format(args) -> str:
    if args.format:
        return args.format
    if args.output is None and sys.stdout.isatty():
        return "text"
    return "json"


def _emit_error(kind: str, exc: Exception) -> None:
    sys.stderr.write(canonical_json({"error": {"kind": kind, "message": str(exc)}}))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    kernels.set_threads(args.threads)
    fmt = _resolve_format(args)
    try:
        payload, table = args.func(args)
    except FamilyParseError as e:
        _emit_error("parse", e)
        return 2
    except (PeriodOverflowError, SearchExhaustedError) as e:
        _emit_error("budget", e)
        return 3
    except PreconditionError as e:
        _emit_error("precondition", e)
        return 4
    payload = plain(payload)
    payload["config"] = plain(_config_echo(args))
    payload["config"]["kernel_backend"] = kernels.backend()
    if fmt == "csv":
        if table is None:
            _emit_error("parse", ValueError(f"command {args.command!r} has no tabular output"))
            return 2
        text = csv_text(*table)
    elif fmt == "json":
        text = canonical_json(payload)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

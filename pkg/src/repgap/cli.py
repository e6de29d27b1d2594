"""Command-line entry point.

Subcommands: obstruct, eqsearch, poly, analytic, reproduce-all.
Exit codes: 0 success (certified discrepancies allowed), 1 verification
failure, 2 environment or IO error, 64 usage error.  Every run emits one
manifest; data files carry no timestamps, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from datetime import datetime, timezone

import gmpy2

from . import __version__, analytic, arith, baseline, eqsearch, obstruction, polynomials

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_ENVIRONMENT = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class ManifestWriter:
    """Collects emitted files and writes the per-run manifest.

    Timing fields live under a single "timing" key so that everything else
    in the manifest is reproducible across reruns.
    """

    def __init__(self, args: argparse.Namespace):
        self.t0 = time.monotonic()
        self.started = datetime.now(timezone.utc).isoformat()
        self.args = args
        self.outputs: list[dict] = []

    def record(self, path: str) -> None:
        self.outputs.append(
            {"path": path, "sha256": _sha256_file(path), "bytes": os.path.getsize(path)}
        )

    def finish(self) -> None:
        config = {
            k: v for k, v in sorted(vars(self.args).items()) if k != "func"
        }
        manifest = {
            "command": sys.argv,
            "config": config,
            "version": __version__,
            "jobs": getattr(self.args, "jobs", 1),
            "outputs": self.outputs,
            "timing": {
                "started_utc": self.started,
                "wall_seconds": round(time.monotonic() - self.t0, 3),
            },
        }
        out = getattr(self.args, "out", None)
        if out:
            path = out + ".manifest.json"
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(manifest, fh, indent=1, sort_keys=True)
                fh.write("\n")
        else:
            print(json.dumps(manifest, sort_keys=True), file=sys.stderr)


def _emit_records(records: list[dict], args, manifest: ManifestWriter) -> None:
    """Write records as JSONL (default) or CSV to --out, else stdout."""
    fmt = getattr(args, "format", "jsonl") or "jsonl"
    if fmt == "jsonl":
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    else:
        buf = io.StringIO()
        cols: list[str] = []
        for r in records:
            for key in r:
                if key not in cols:
                    cols.append(key)
        writer = csv.DictWriter(buf, fieldnames=cols)
        writer.writeheader()
        writer.writerows(records)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        manifest.record(args.out)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# obstruct


def _cmd_obstruct_scan(args, manifest) -> int:
    result = obstruction.reproduce_S0(args.amax, args.qbound, jobs=args.jobs)
    records = []
    for rec in result.survivors:
        records.append(
            {
                "a": rec.a,
                "p": rec.p,
                "status": "survivor",
                "integer_root": rec.integer_root,
            }
        )
    for a, p in result.fiat:
        records.append({"a": a, "p": p, "status": "fiat"})
    for e in result.eliminated:
        rec = {"a": e.a, "p": e.p, "status": "obstructed", "q": e.q}
        if args.residues:
            cert = obstruction.find_obstruction(e.a, e.p, args.qbound)
            rec["residues"] = list(cert.residues)
        records.append(rec)
    _emit_records(records, args, manifest)
    return EXIT_OK


def _cmd_obstruct_probe(args, manifest) -> int:
    cert = obstruction.find_obstruction(args.a, args.p, args.qbound)
    if cert is None:
        rec = {"a": args.a, "p": args.p, "status": "survivor"}
        root = obstruction._integer_root_of_pair(args.a, args.p)
        if root is not None:
            rec["integer_root"] = root
    else:
        rec = {
            "a": args.a,
            "p": args.p,
            "status": "obstructed",
            "q": cert.q,
            "residues": list(cert.residues),
        }
    _emit_records([rec], args, manifest)
    return EXIT_OK


# ---------------------------------------------------------------------------
# eqsearch


def _cmd_eqsearch(args, manifest) -> int:
    hits = eqsearch.search_fixed_a(args.a, args.nmax, m_min=args.mmin)
    _emit_records([h.as_dict() for h in hits], args, manifest)
    return EXIT_OK


# ---------------------------------------------------------------------------
# poly


def _cmd_poly_disc(args, manifest) -> int:
    closed = polynomials.discriminant_closed(args.p, args.a)
    oracle = polynomials.discriminant_resultant(polynomials.build_P(args.p, args.a))
    rec = {
        "p": args.p,
        "a": args.a,
        "closed_abs": str(closed),
        "resultant": str(oracle),
        "equal": closed == abs(oracle),
    }
    _emit_records([rec], args, manifest)
    return EXIT_OK if rec["equal"] else EXIT_VERIFICATION


def _cmd_poly_shape(args, manifest) -> int:
    shape = polynomials.classify_shape(args.p, args.a, args.bound)
    rec = {
        "p": args.p,
        "a": args.a,
        "shape": shape.tag.value,
        "root": shape.root,
        "certificate": shape.certificate,
    }
    _emit_records([rec], args, manifest)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analytic


def _cmd_analytic_prop_pom(args, manifest) -> int:
    x = int(float(args.x))
    sieve = arith.get_sieve(x, cache_path=args.seed_cache)
    report = analytic.check_prop_pom(
        x, args.kmax, args.constant, sieve=sieve, delta=args.delta
    )
    records = []
    for rec in report.records:
        phi = arith.euler_phi(rec.k)
        bound = float(
            gmpy2.log(rec.p_kl) / rec.p_kl
            + args.constant * rec.k**args.delta * gmpy2.log(rec.k) / phi
        )
        records.append(
            {
                "x": rec.x,
                "k": rec.k,
                "l": rec.l,
                "pi": rec.pi,
                "S": str(rec.S),
                "T": str(rec.T),
                "p_kl": rec.p_kl,
                "bound": str(bound),
                "violation": abs(float(rec.T)) > bound,
            }
        )
    if not getattr(args, "format", None):
        args.format = "csv"
    _emit_records(records, args, manifest)
    print(
        f"fitted-constant {report.fitted_constant:.6f} "
        f"(configured {args.constant}, violations {len(report.violations)})",
        file=sys.stderr,
    )
    return EXIT_OK if not report.violations else EXIT_VERIFICATION


def _cmd_analytic_lhs6(args, manifest) -> int:
    if args.m is not None:
        rows = [(args.m, analytic.class_set_C(args.m).lhs6)]
    else:
        rows = analytic.lhs6_scan(args.mmax)
    records = [
        {"m_prime": mp, "lhs6": str(v), "positive": v > 0} for mp, v in rows
    ]
    _emit_records(records, args, manifest)
    return EXIT_OK


def _cmd_analytic_bt(args, manifest) -> int:
    x_fixed = [int(float(v)) for v in args.x]
    max_x = max(max(x_fixed, default=2), 100 * args.kmax)
    sieve = arith.get_sieve(max_x, cache_path=args.seed_cache)
    recs = analytic.bt_grid(
        range(args.kmin, args.kmax + 1),
        lambda k: [10 * k, 100 * k, *x_fixed],
        sieve=sieve,
    )
    records = [
        {
            "x": r.x,
            "k": r.k,
            "l": r.l,
            "pi": r.pi,
            "ratio": str(r.ratio),
            "exceeds_2": r.exceeds,
        }
        for r in recs
    ]
    _emit_records(records, args, manifest)
    worst = max((float(r.ratio) for r in recs), default=0.0)
    print(f"worst-ratio {worst:.6f}", file=sys.stderr)
    return EXIT_OK if all(not r.exceeds for r in recs) else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# reproduce-all


def _diff_s0(scan: obstruction.SurvivorSet, paper_pairs) -> dict:
    """Three-way diff against the published table with certificates for
    every direction of disagreement.  Pairs the table lists beyond the scan
    range are out of scope for the diff."""
    discovered = scan.pairs
    listed = {(a, p) for a, p in paper_pairs if abs(a) <= scan.a_max}
    matched = sorted(discovered & listed)
    missing = sorted(listed - discovered)
    extra = sorted(discovered - listed)
    discrepancies = []
    uncertified = 0
    stable = list(matched)
    for a, p in missing:
        try:
            in_candidates = p in obstruction.candidate_primes(a)
        except arith.DomainError:
            in_candidates = False
        cert = obstruction.find_obstruction(a, p, q_bound=obstruction.STABLE_Q_BOUND)
        entry = {
            "a": a,
            "p": p,
            "status": "discrepancy",
            "kind": "listed_pair_not_discovered",
            "candidate_prime_member": in_candidates,
        }
        if cert is not None:
            entry["q"] = cert.q
            entry["residues"] = list(cert.residues)
            entry["certified"] = cert.replay()
        else:
            entry["certified"] = False
        uncertified += 0 if entry["certified"] else 1
        discrepancies.append(entry)
    for a, p in extra:
        root = obstruction._integer_root_of_pair(a, p)
        entry = {
            "a": a,
            "p": p,
            "status": "discrepancy",
            "kind": "discovered_pair_not_listed",
        }
        if root is not None:
            # a linear factor gives a root modulo every prime: certified survivor
            entry["integer_root"] = root
            entry["certified"] = arith.repunit(root, p) == -a
            stable.append((a, p))
        else:
            cert = obstruction.find_obstruction(
                a, p, q_bound=obstruction.STABLE_Q_BOUND
            )
            if cert is not None:
                entry["q"] = cert.q
                entry["residues"] = list(cert.residues)
                entry["kind"] = "survivor_only_below_q_bound"
                entry["certified"] = cert.replay()
            else:
                entry["certified"] = False
        uncertified += 0 if entry["certified"] else 1
        discrepancies.append(entry)
    return {
        "matched": matched,
        "missing_from_scan": missing,
        "extra_in_scan": extra,
        "discrepancies": discrepancies,
        "uncertified": uncertified,
        "stable_pairs": sorted(stable),
    }


def _cmd_reproduce_all(args, manifest) -> int:
    try:
        paper = baseline.load_baseline(args.baseline)
    except baseline.BaselineError as exc:
        print(f"baseline error: {exc}", file=sys.stderr)
        return EXIT_ENVIRONMENT
    report: dict = {"version": __version__}
    failures = 0

    scan = obstruction.reproduce_S0(args.amax, args.qbound, jobs=args.jobs)
    s0 = _diff_s0(scan, paper.s0_pairs)
    s0["survivors"] = sorted(scan.pairs)
    s0["fiat_count"] = len(scan.fiat)
    s0["params"] = {"amax": args.amax, "qbound": args.qbound}
    lo, hi = paper.fiat_prime_range
    expected_fiat = sum(
        1 for p in arith.primes_up_to(min(args.amax, hi)) if p >= lo
    )
    s0["fiat_matches_range"] = len(scan.fiat) == expected_fiat
    report["s0_scan"] = s0
    failures += s0["uncertified"]
    if not s0["fiat_matches_range"]:
        failures += 1

    hits = eqsearch.search_fixed_a(-1, 100)
    known = tuple(paper.known_solution)
    eq_extra = [h.as_dict() for h in hits if (h.n, h.m, h.b, h.a) != known]
    eq = {
        "solutions": [h.as_dict() for h in hits],
        "known_solution_found": any((h.n, h.m, h.b, h.a) == known for h in hits),
        "extra_verified_solutions": eq_extra,
    }
    if not eq["known_solution_found"]:
        failures += 1
    report["eqsearch"] = eq

    lhs6_rows = analytic.lhs6_scan(1000, m_min=2)
    lhs6_bad = [
        mp
        for mp, v in lhs6_rows
        if (
            mp in paper.lhs6_positive_points
            or paper.lhs6_positive_range[0] <= mp <= paper.lhs6_positive_range[1]
        )
        and v <= 0
    ]
    report["lhs6"] = {
        "checked_through": 1000,
        "value_at_4": str(dict(lhs6_rows)[4]),
        "nonpositive_in_claimed_range": lhs6_bad,
    }
    failures += len(lhs6_bad)
    if dict(lhs6_rows)[4] != 0:
        failures += 1

    disc_bad = []
    for p in (3, 5, 7, 11, 13):
        for a in range(-30, 31):
            if a == -p:
                continue
            closed = polynomials.discriminant_closed(p, a)
            oracle = polynomials.discriminant_resultant(polynomials.build_P(p, a))
            if closed != abs(oracle):
                disc_bad.append((p, a))
    report["discriminants"] = {"grid": "p in {3,5,7,11,13}, a in [-30,30]", "mismatches": disc_bad}
    failures += len(disc_bad)

    shapes = []
    for a, p in s0["stable_pairs"]:
        if a == -p:
            continue
        shape = polynomials.classify_shape(p, a)
        shapes.append(
            {
                "a": a,
                "p": p,
                "shape": shape.tag.value,
                "root": shape.root,
                "certificate": shape.certificate,
            }
        )
        if shape.tag not in (
            polynomials.ShapeTag.LINEAR_TIMES_IRREDUCIBLE,
            polynomials.ShapeTag.IRREDUCIBLE,
        ):
            failures += 1
    report["shapes"] = shapes

    report["status"] = "ok" if failures == 0 else f"{failures} failure(s)"
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        manifest.record(args.out)
    else:
        sys.stdout.write(text)
    for d in s0["discrepancies"]:
        tag = "certified" if d["certified"] else "UNCERTIFIED"
        print(
            f"discrepancy [{tag}] ({d['a']}, {d['p']}): {d['kind']}",
            file=sys.stderr,
        )
    for h in eq_extra:
        print(
            f"discrepancy [certified] extra solution {tuple(h.values())} "
            "re-verified by exact arithmetic",
            file=sys.stderr,
        )
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


# ---------------------------------------------------------------------------


def _add_common_flags(p: argparse.ArgumentParser, leaf: bool = False) -> None:
    # leaf copies use SUPPRESS so an inline flag overrides the global one
    # without clobbering it with a default
    def dflt(v):
        return argparse.SUPPRESS if leaf else v

    p.add_argument("--jobs", type=int, default=dflt(1), help="worker processes")
    p.add_argument("--out", default=dflt(None), help="output file (stdout if absent)")
    p.add_argument(
        "--format", choices=("jsonl", "csv"), default=dflt(None), help="record format"
    )
    p.add_argument(
        "--seed-cache", default=dflt(None), help="sieve cache file (see RGL_CACHE_DIR)"
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="repgap")
    _add_common_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    ob = sub.add_parser("obstruct", help="local obstruction scans")
    obsub = ob.add_subparsers(dest="subcommand", required=True)
    scan = obsub.add_parser("scan", help="full survivor scan")
    scan.add_argument("--amax", type=int, default=obstruction.DEFAULT_A_MAX)
    scan.add_argument("--qbound", type=int, default=obstruction.DEFAULT_Q_BOUND)
    scan.add_argument(
        "--residues", action="store_true", help="embed residue tables in records"
    )
    scan.set_defaults(func=_cmd_obstruct_scan)
    probe = obsub.add_parser("probe", help="single-pair certificate probe")
    probe.add_argument("--a", type=int, required=True)
    probe.add_argument("--p", type=int, required=True)
    probe.add_argument("--qbound", type=int, default=obstruction.DEFAULT_Q_BOUND)
    probe.set_defaults(func=_cmd_obstruct_probe)

    eq = sub.add_parser("eqsearch", help="factorial-repunit equation search")
    eq.add_argument("--a", type=int, required=True)
    eq.add_argument("--nmax", type=int, required=True)
    eq.add_argument("--mmin", type=int, default=3)
    eq.set_defaults(func=_cmd_eqsearch)

    poly = sub.add_parser("poly", help="polynomial checks")
    polysub = poly.add_subparsers(dest="subcommand", required=True)
    disc = polysub.add_parser("disc", help="closed-form vs resultant discriminant")
    disc.add_argument("--p", type=int, required=True)
    disc.add_argument("--a", type=int, required=True)
    disc.set_defaults(func=_cmd_poly_disc)
    shape = polysub.add_parser("shape", help="factorization shape")
    shape.add_argument("--p", type=int, required=True)
    shape.add_argument("--a", type=int, required=True)
    shape.add_argument("--bound", type=int, default=1000)
    shape.set_defaults(func=_cmd_poly_shape)

    an = sub.add_parser("analytic", help="progression-sum checks")
    ansub = an.add_subparsers(dest="subcommand", required=True)
    pp = ansub.add_parser("prop-pom", help="progression sum bound sweep")
    pp.add_argument("--x", default="1e6")
    pp.add_argument("--kmax", type=int, default=101)
    pp.add_argument("--constant", type=float, default=10.0)
    pp.add_argument(
        "--delta", type=float, default=0.5, help="split exponent in k^delta"
    )
    pp.set_defaults(func=_cmd_analytic_prop_pom)
    lh = ansub.add_parser("lhs6", help="class-set inequality table")
    lh.add_argument("--mmax", type=int, default=1000)
    lh.add_argument("--m", type=int, default=None)
    lh.set_defaults(func=_cmd_analytic_lhs6)
    bt = ansub.add_parser("bt", help="progression prime-count ratios")
    bt.add_argument("--kmin", type=int, default=3)
    bt.add_argument("--kmax", type=int, default=101)
    bt.add_argument("--x", nargs="*", default=["1e4", "1e6"])
    bt.set_defaults(func=_cmd_analytic_bt)

    rep = sub.add_parser("reproduce-all", help="full verification pipeline")
    rep.add_argument("--amax", type=int, default=obstruction.DEFAULT_A_MAX)
    rep.add_argument("--qbound", type=int, default=obstruction.DEFAULT_Q_BOUND)
    rep.add_argument("--baseline", default=None, help="override baseline file")
    rep.set_defaults(func=_cmd_reproduce_all)

    for leaf in (scan, probe, eq, disc, shape, pp, lh, bt, rep):
        _add_common_flags(leaf, leaf=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    manifest = ManifestWriter(args)
    try:
        code = args.func(args, manifest)
    except (OSError, baseline.BaselineError) as exc:
        print(f"environment error: {exc}", file=sys.stderr)
        return EXIT_ENVIRONMENT
    except arith.DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    manifest.finish()
    return code


if __name__ == "__main__":
    sys.exit(main())

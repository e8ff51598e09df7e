"""Command-line surface: spec ingestion, check orchestration, report
emission.

    verify check --spec <path-or-fixture> [--suites ...] [--seed N]
                 [--samples N] [--tol X] [--format text|structured]
    verify fixtures list
    verify fixtures dump <name>

Exit codes: 0 every requested record passed, 1 at least one record failed,
2 input or usage error.  Reports are byte-identical across runs for the
same inputs and seed.
"""

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .contactstruct import (check_almost_contact, check_contact_metric,
                            check_sasakian, check_sasakian_statistical)
from .crchecks import (check_contact_cr, check_cr_product,
                       check_dual_shape_identities, check_integrability_D,
                       check_integrability_Dperp,
                       check_mixed_geodesic_consequences, classify_geodesic)
from .fixtures import fixture_doc, fixture_names
from .geometry import GeometryError, check_statistical, metric_samples
from .report import CheckReport, Record
from .sampling import sample_box, samples_from_points
from .specfile import SpecError, load_spec
from .submanifold import (check_gauss_weingarten, check_transport_identities,
                          check_structure_identities)

SUITE_ORDER = ("ambient", "contact", "submanifold", "cr", "product")

__all__ = ["main", "run"]


def _ambient_samples(spec, seed, count):
    mode = spec.sampling.get("mode", "seeded-random")
    if mode == "points":
        pts = spec.sampling.get("ambient")
        if pts is None:
            raise SpecError(["sampling.ambient: explicit points required "
                             "for ambient suites in points mode"])
        return samples_from_points(pts)
    box = tuple(spec.sampling.get("box", (-1.0, 1.0)))
    return metric_samples(spec.g, count=count, seed=seed, box=box)


def _domain_samples(spec, seed, count):
    mode = spec.sampling.get("mode", "seeded-random")
    if mode == "points":
        pts = spec.sampling.get("domain")
        if pts is None:
            raise SpecError(["sampling.domain: explicit points required "
                             "for submanifold suites in points mode"])
        return samples_from_points(pts)
    box = tuple(spec.sampling.get("box", (-1.0, 1.0)))
    return sample_box(spec.embedding.m, count=count, seed=seed, box=box)


def _guarded(fn, check_name):
    try:
        return fn()
    except GeometryError as e:
        rep = CheckReport(check=check_name, census={})
        rep.records.append(Record(
            name="engine-precondition", identity="inputs admit this check",
            residual=1.0, scale=0.0, tolerance=0.0, note=str(e)))
        return rep


def run(spec, suites, seed=None, count=None, tol=None):
    """Execute the requested suites in dependency order and collect one
    report document.  Engine precondition failures become failed records;
    the run continues."""
    if suites == "auto":
        suites = list(SUITE_ORDER) if spec.has_submanifold \
            else ["ambient", "contact"]
    suites = [s for s in SUITE_ORDER if s in suites]
    needs_sub = {"submanifold", "cr", "product"}
    missing = [s for s in suites if s in needs_sub and not spec.has_submanifold]
    if missing:
        raise SpecError([f"suite {s!r} requires a submanifold block"
                         for s in missing])

    sampling = dict(spec.sampling)
    if seed is not None:
        sampling["seed"] = seed
    if count is not None:
        sampling["count"] = count
    eff_seed = sampling.get("seed", 42)
    eff_count = sampling.get("count", 64)

    suite_reports = {}
    overall = True
    shared = {}

    def tol_for(suite):
        return tol if tol is not None else spec.tol_for(suite)

    def shared_mg():
        if "mg" not in shared:
            from .submanifold import MapGeometry
            st = spec.sss.st
            shared["mg"] = MapGeometry(spec.embedding, spec.g, nabla=st.nabla,
                                       nabla_star=st.nabla_star, acs=spec.acs)
        return shared["mg"]

    def shared_cr():
        if "cr" not in shared:
            shared["cr"] = spec.cr_structure(mg=shared_mg())
        return shared["cr"]

    for suite in suites:
        checks = []
        if suite == "ambient":
            samples = _ambient_samples(spec, eff_seed, eff_count)
            t = tol_for(suite)
            checks.append(_guarded(
                lambda: check_statistical(spec.sss.st, samples, t),
                "statistical"))
        elif suite == "contact":
            samples = _ambient_samples(spec, eff_seed, eff_count)
            t = tol_for(suite)
            checks.append(_guarded(
                lambda: check_almost_contact(spec.acs, spec.g, samples, t),
                "almost-contact"))
            checks.append(_guarded(
                lambda: check_contact_metric(spec.acs, spec.g, samples, t),
                "contact-metric"))
            checks.append(_guarded(
                lambda: check_sasakian(spec.acs, spec.g, samples, t),
                "sasakian"))
            checks.append(_guarded(
                lambda: check_sasakian_statistical(spec.sss, samples, t,
                                                   delegate=False),
                "sasakian-statistical"))
        elif suite == "submanifold":
            samples = _domain_samples(spec, eff_seed, eff_count)
            t = tol_for(suite)
            checks.append(_guarded(
                lambda: check_gauss_weingarten(spec.embedding, spec.sss.st,
                                               samples, t, mg=shared_mg()),
                "gauss-weingarten"))
            checks.append(_guarded(
                lambda: check_structure_identities(spec.embedding,
                                                   spec.sss.st, spec.acs,
                                                   samples, t, mg=shared_mg()),
                "structure-identities"))
            checks.append(_guarded(
                lambda: check_transport_identities(spec.embedding, spec.sss, samples, t,
                                     mg=shared_mg()),
                "transport-identities"))
        elif suite == "cr":
            samples = _domain_samples(spec, eff_seed, eff_count)
            t = tol_for(suite)
            cr = shared_cr()
            for name, fn in (
                    ("contact-cr", check_contact_cr),
                    ("integrability-d", check_integrability_D),
                    ("integrability-dperp", check_integrability_Dperp),
                    ("dual-shape-identities", check_dual_shape_identities),
                    ("geodesic-classifiers", classify_geodesic),
                    ("mixed-geodesic-consequences",
                     check_mixed_geodesic_consequences)):
                checks.append(_guarded(
                    lambda fn=fn: fn(cr, samples, t), name))
        elif suite == "product":
            samples = _domain_samples(spec, eff_seed, eff_count)
            t = tol_for(suite)
            cr = shared_cr()
            checks.append(_guarded(
                lambda: check_cr_product(cr, samples, t), "cr-product"))
        passed = all(rep.passed for rep in checks)
        overall = overall and passed
        suite_reports[suite] = {"passed": passed,
                                "checks": [rep.to_dict() for rep in checks],
                                "reports": checks}

    digest = hashlib.sha256(spec.canonical_bytes()).hexdigest()
    doc = {
        "tool": {"name": "contactstat", "version": __version__},
        "input": {"name": spec.name, "digest": digest},
        "sampling": {"seed": eff_seed, "count": eff_count,
                     "mode": sampling.get("mode", "seeded-random")},
        "suites": {s: {"passed": r["passed"], "checks": r["checks"]}
                   for s, r in suite_reports.items()},
        "overall": "PASS" if overall else "FAIL",
    }
    return doc, suite_reports, (0 if overall else 1)


def _format_text(doc, suite_reports):
    lines = [f"contactstat {doc['tool']['version']}  "
             f"input={doc['input']['name']}  digest={doc['input']['digest'][:12]}",
             f"sampling: mode={doc['sampling']['mode']} "
             f"seed={doc['sampling']['seed']} count={doc['sampling']['count']}",
             ""]
    for suite, data in suite_reports.items():
        verdict = "PASS" if data["passed"] else "FAIL"
        lines.append(f"== suite {suite}: {verdict}")
        for rep in data["reports"]:
            lines.append(f"-- {rep.check}")
            lines.append(rep.table())
            lines.append("")
    lines.append(f"overall: {doc['overall']}")
    return "\n".join(lines) + "\n"


def _cmd_check(args):
    try:
        spec = load_spec(args.spec)
        if args.suites.strip() == "auto":
            suites = "auto"
        else:
            suites = [s.strip() for s in args.suites.split(",") if s.strip()]
            unknown = [s for s in suites if s not in SUITE_ORDER]
            if unknown:
                raise SpecError([f"unknown suite {s!r}; expected subset of "
                                 f"{','.join(SUITE_ORDER)}" for s in unknown])
            if not suites:
                raise SpecError(["no suites requested"])
        doc, suite_reports, code = run(spec, suites, seed=args.seed,
                                       count=args.samples, tol=args.tol)
    except SpecError as e:
        for d in e.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return 2
    if args.format == "structured":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_format_text(doc, suite_reports))
    return code


def _cmd_fixtures(args):
    if args.fixtures_cmd == "list":
        for name in fixture_names():
            doc = fixture_doc(name)
            dim = doc["ambient"]["dim"]
            sub = doc.get("submanifold")
            shape = f"ambient dim {dim}"
            if sub:
                shape += f", submanifold dim {sub['dim']}"
            print(f"{name:28s} {shape}")
        return 0
    name = args.name
    try:
        doc = fixture_doc(name)
    except KeyError as e:
        print(f"error: {e.args[0]}", file=sys.stderr)
        return 2
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="verify",
        description="Residual checks for statistical, Sasakian and contact "
                    "CR structures on chart fixtures.")
    ap.add_argument("--version", action="version",
                    version=f"contactstat {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    chk = sub.add_parser("check", help="run check suites against a spec")
    chk.add_argument("--spec", required=True,
                     help="path to a spec file, or a built-in fixture name")
    chk.add_argument("--suites", default="auto",
                     help="comma-separated subset of "
                          f"{','.join(SUITE_ORDER)}, or 'auto' for all "
                          "suites the spec provides inputs for")
    chk.add_argument("--seed", type=int, default=None)
    chk.add_argument("--samples", type=int, default=None)
    chk.add_argument("--tol", type=float, default=None)
    chk.add_argument("--format", choices=("text", "structured"),
                     default="text")
    chk.set_defaults(fn=_cmd_check)

    fix = sub.add_parser("fixtures", help="list or dump built-in fixtures")
    fsub = fix.add_subparsers(dest="fixtures_cmd", required=True)
    fsub.add_parser("list", help="list fixture names")
    dump = fsub.add_parser("dump", help="print a fixture spec document")
    dump.add_argument("name")
    fix.set_defaults(fn=_cmd_fixtures)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help/--version;
        # anything else is still a usage problem under this contract
        code = e.code if isinstance(e.code, int) else 2
        return 0 if code == 0 else 2
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())

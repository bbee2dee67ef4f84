"""Command line front end.

Commands:

* ``spheres``        sphere sizes with a per-layer breakdown
* ``bounds``         packing / covering / singleton bound tables
* ``verify``         brute-force cross-checks of the counting engine
* ``simulate``       random linear forwarding over a DAG topology
* ``export-lattice`` JSON dump of a small submodule lattice

Exit status: 0 on success, 1 on input validation errors, 2 when ``verify``
finds a mismatch.  All cardinalities are printed as decimal strings, never
floating point.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import bounds as bounds_mod
from .bounds import BoundRequest, tightest
from .channel import NetworkTopology, butterfly_topology, simulate
from .enumerable import LatticeProfile, count_table
from .oracle import enumerate_lattice, parse_module_spec
from .partitions import Partition, partitions_of
from .verify import verify_module


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit status 1
        raise _CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="latsphere", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    spheres = sub.add_parser("spheres", help="sphere sizes, layer by layer")
    spheres.add_argument("--profile", required=True, help="F:q=..,N=.. or Z:p=..,s=..,N=..")
    spheres.add_argument("--type", required=True, help="center type, e.g. [1]")
    spheres.add_argument("--radius", required=True, type=int)
    spheres.add_argument("--format", choices=("table", "json", "csv"), default="table")

    bounds = sub.add_parser("bounds", help="code-size bound tables")
    bounds.add_argument("kind", choices=("packing", "covering", "singleton"))
    bounds.add_argument("--profile", required=True)
    bounds.add_argument("--height", type=int, help="constant-height code layer")
    bounds.add_argument("--type", help="constant-type code layer, e.g. [2]")
    bounds.add_argument("--min-distance", required=True, type=int)
    bounds.add_argument(
        "--layer",
        help="reference layer: a height like 2, or a type like [1,1]",
    )
    bounds.add_argument("--sweep", action="store_true", help="evaluate all layers")
    bounds.add_argument("--format", choices=("table", "json", "csv"), default="table")

    verify = sub.add_parser("verify", help="cross-check formulas against brute force")
    verify.add_argument("--module", required=True, help="e.g. Z:p=2,s=2,N=2 or Z:p=2,shape=[2,1]")
    verify.add_argument("--all", action="store_true", help="run the full formula suite")
    verify.add_argument("--cap", type=int, help="override the module-size cap")
    verify.add_argument("--format", choices=("table", "json"), default="table")

    sim = sub.add_parser("simulate", help="random linear forwarding over a DAG")
    sim.add_argument("--module", required=True)
    sim.add_argument("--generators", required=True, help='JSON, e.g. "[[1,0],[0,1]]"')
    sim.add_argument("--topology", help="JSON topology file; default: butterfly")
    sim.add_argument("--inject", help='JSON list of [edge_index, vector] injections')
    sim.add_argument("--rounds", type=int, default=2)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--format", choices=("table", "json"), default="json")

    export = sub.add_parser("export-lattice", help="dump a lattice as JSON")
    export.add_argument("--module", required=True)
    export.add_argument("--cap", type=int, help="override the module-size cap")
    export.add_argument("--format", choices=("table", "json"), default="json")

    return parser


def _print_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    widths = [
        max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
        for i, h in enumerate(headers)
    ]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


def _emit_csv(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(headers)
    writer.writerows(rows)
    sys.stdout.write(out.getvalue())


def _cmd_spheres(args) -> int:
    profile = LatticeProfile.parse(args.profile)
    center = Partition.parse(args.type)
    if args.radius < 0:
        raise _CliError("radius must be nonnegative")
    table = count_table(profile)
    if not center <= profile.top_type:
        raise _CliError(f"{center} is not a type of {profile.spec()}")
    h = center.weight
    layers = []
    for height in range(max(0, h - args.radius), min(profile.top_height, h + args.radius) + 1):
        by_type = {
            str(mu): table.sphere_layer_by_type(center, args.radius, mu)
            for mu in partitions_of(height, bound=profile.top_type)
        }
        layers.append({"height": height, "size": sum(by_type.values()), "by_type": by_type})
    total = table.sphere_size(center, args.radius)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "profile": profile.spec(),
                    "center_type": str(center),
                    "radius": args.radius,
                    "total": str(total),
                    "layers": [
                        {
                            "height": l["height"],
                            "size": str(l["size"]),
                            "by_type": {k: str(v) for k, v in l["by_type"].items()},
                        }
                        for l in layers
                    ],
                },
                indent=2,
            )
        )
    else:
        rows = [[str(l["height"]), str(l["size"])] for l in layers]
        rows.append(["total", str(total)])
        if args.format == "csv":
            _emit_csv(["height", "size"], rows)
        else:
            _print_table(["height", "size"], rows)
    return 0


def _parse_constraint(args, profile) -> BoundRequest:
    if (args.height is None) == (args.type is None):
        raise _CliError("specify exactly one of --height and --type")
    layer_height = layer_type = None
    if args.layer is not None:
        text = args.layer.strip()
        if text.startswith("["):
            layer_type = Partition.parse(text)
        else:
            layer_height = int(text)
    return BoundRequest(
        profile=profile,
        height=args.height,
        mu=Partition.parse(args.type) if args.type is not None else None,
        min_distance=args.min_distance,
        layer_height=layer_height,
        layer_type=layer_type,
    )


def _cmd_bounds(args) -> int:
    profile = LatticeProfile.parse(args.profile)
    req = _parse_constraint(args, profile)
    if args.kind == "packing":
        results = (
            bounds_mod.packing_sweep(req) if args.sweep else [bounds_mod.packing_bound(req)]
        )
    elif args.kind == "covering":
        results = (
            bounds_mod.covering_sweep(req) if args.sweep else [bounds_mod.covering_bound(req)]
        )
    else:
        results = (
            bounds_mod.singleton_sweep(req)
            if args.sweep
            else [bounds_mod.singleton_bound(req)]
        )
    best = tightest(results)
    headers = ["selector", "radius", "numerator", "denominator", "bound", "note"]
    rows = [
        [
            r.selector,
            str(r.radius),
            str(r.numerator),
            str(r.denominator),
            str(r.value),
            r.note,
        ]
        for r in results
    ]
    if args.format == "json":
        print(
            json.dumps(
                {
                    "kind": best.kind,
                    "profile": profile.spec(),
                    "results": [r.row() for r in results],
                    "best": best.row(),
                },
                indent=2,
            )
        )
    elif args.format == "csv":
        _emit_csv(headers, rows)
    else:
        _print_table(headers, rows)
        print(f"best: {best.selector} -> {best.value}")
    return 0


def _cmd_verify(args) -> int:
    report = verify_module(args.module, full=args.all, max_module_size=args.cap)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "module": report.module_spec,
                    "lattice_size": report.lattice_size,
                    "type_counts": {
                        str(t): n for t, n in report.type_counts.items()
                    },
                    "checks": [
                        {"name": c.name, "ok": c.ok, "detail": c.detail}
                        for c in report.checks
                    ],
                    "ok": report.ok,
                },
                indent=2,
            )
        )
    else:
        print(f"module {report.module_spec}: {report.lattice_size} submodules")
        counts = ", ".join(
            f"{t}: {n}" for t, n in report.type_counts.items()
        )
        print(f"type counts: {counts}")
        for c in report.checks:
            state = "PASS" if c.ok else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            print(f"{state} {c.name}{detail}")
    return 0 if report.ok else 2


def _cmd_simulate(args) -> int:
    module = parse_module_spec(args.module)
    try:
        generators = json.loads(args.generators)
    except json.JSONDecodeError as exc:
        raise _CliError(f"bad --generators JSON: {exc}")
    if args.topology:
        with open(args.topology, "r", encoding="utf-8") as fh:
            topology = NetworkTopology.from_json(fh.read())
    else:
        topology = butterfly_topology()
    injections = []
    if args.inject:
        try:
            injections = [
                (int(edge), vec) for edge, vec in json.loads(args.inject)
            ]
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise _CliError(f"bad --inject JSON: {exc}")
    outcome = simulate(
        topology,
        module,
        generators,
        error_injection=injections,
        seed=args.seed,
        rounds=args.rounds,
    )
    payload = outcome.to_json_dict(module)
    payload["seed"] = args.seed
    payload["rounds"] = args.rounds
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        rows = [
            ["seed", str(args.seed)],
            ["sent size", str(len(outcome.sent))],
            ["received size", str(len(outcome.received))],
            ["era", str(outcome.era)],
            ["err", str(outcome.err)],
            ["dist", str(outcome.dist)],
        ]
        _print_table(["field", "value"], rows)
    return 0


def _cmd_export(args) -> int:
    module = parse_module_spec(args.module)
    lat = enumerate_lattice(module, max_module_size=args.cap)
    data = lat.export()
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        rows = [
            [
                str(e["id"]),
                str(e["height"]),
                e["type"],
                ",".join(str(c) for c in e["covers"]),
            ]
            for e in data["elements"]
        ]
        _print_table(["id", "height", "type", "covers"], rows)
    return 0


_COMMANDS = {
    "spheres": _cmd_spheres,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "simulate": _cmd_simulate,
    "export-lattice": _cmd_export,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse and dispatch; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

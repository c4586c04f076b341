"""Command-line front end: JSON in, JSON out, exit codes 0 ok / 1 violation / 2 error."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import actions, building, constructions, coxeter, metric, realizations

OK, VIOLATION, ERROR = "ok", "violation-found", "error"
EXIT = {OK: 0, VIOLATION: 1, ERROR: 2}


@dataclass
class CommandResult:
    status: str
    payload: dict | None = None
    diagnostics: list = field(default_factory=list)
    format: str = "json"

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


class CliError(Exception):
    pass


class ParseError(CliError):
    pass


class UnknownSubcommandError(CliError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


# -- input helpers -------------------------------------------------------------

def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _building(args) -> building.Building:
    if not args.building:
        raise ParseError("--building is required")
    return building.Building.from_json(_read_json(args.building))


def _coxeter(args) -> coxeter.CoxeterSystem:
    if not args.coxeter:
        raise ParseError("--coxeter is required")
    return coxeter.CoxeterSystem.from_json(_read_json(args.coxeter))


def _action(args) -> actions.ActionSpec:
    if not args.action:
        raise ParseError("--action is required")
    base = Path(args.action).parent if args.action != "-" else Path(".")
    return actions.ActionSpec.from_json(_read_json(args.action), base)


def _ints(text: str | None) -> tuple:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _realize(b, which):
    return realizations.tits_realization(b) if which == "tits" else realizations.davis_realization(b)


def _chambers(b, text):
    out = [c.strip() for c in (text or "").split(",") if c.strip()]
    for c in out:
        b.check_chamber(c)
    return out


# -- subcommands ---------------------------------------------------------------

def cmd_coxeter(args):
    W = _coxeter(args)
    out = {"rank": W.rank, "m": W.to_json()["m"], "finite": W.is_finite(),
           "spherical_subsets": [sorted(J) for J in W.spherical_subsets()]}
    if W.is_finite():
        out["order"] = W.order()
        out["longest_element"] = list(W.longest_element())
    if args.word is not None:
        w = _ints(args.word)
        out["reduced"] = list(W.reduce(w))
        out["length"] = W.length(w)
    return CommandResult(OK, out)


def cmd_build(args):
    r = int(args.radius) if args.radius is not None else 0
    if args.graph_product:
        spec = constructions.GraphProductSpec.from_json(_read_json(args.graph_product))
        b = constructions.graph_product_building(spec, r)
    elif args.incidence:
        doc = _read_json(args.incidence)
        pts = doc["points"]
        pts = list(range(pts)) if isinstance(pts, int) else pts
        b = constructions.flag_building_from_incidence(pts, doc["lines"])
    elif args.coxeter:
        b = constructions.cayley_building(_coxeter(args), r)
    else:
        raise ParseError("build needs --coxeter, --graph-product or --incidence")
    return CommandResult(OK, b.to_json())


def cmd_verify(args):
    b = _building(args)
    rep = building.verify_axioms(b)
    out = {"axioms": "pass" if rep.ok else "fail", "thin": b.is_thin(), "thick": b.is_thick()}
    if not rep.ok:
        out["violations"] = [v.to_json() for v in rep.violations]
    return CommandResult(OK if rep.ok else VIOLATION, out)


def cmd_delta(args):
    b = _building(args)
    if not args.from_ or not args.to:
        raise ParseError("delta needs --from and --to")
    w = b.weyl_distance(b.check_chamber(args.from_), b.check_chamber(args.to))
    return CommandResult(OK, {"delta": list(w), "length": len(w)})


def cmd_residue(args):
    b = _building(args)
    if not args.chamber:
        raise ParseError("residue needs --chamber")
    J = _ints(args.colors)
    cham = b.residue_chambers(b.check_chamber(args.chamber), J)
    return CommandResult(OK, {"colors": sorted(J), "chambers": sorted(cham)})


def cmd_apartments(args):
    b = _building(args)
    apts = building.enumerate_apartments(b)
    return CommandResult(OK, {"count": len(apts), "apartments": [sorted(A.chambers) for A in apts]})


def cmd_realize(args):
    K = _realize(_building(args), args.realization)
    return CommandResult(OK, {"realization": args.realization, "complex": K.to_json(),
                              "f_vector": K.f_vector()})


def cmd_homology(args):
    K = _realize(_building(args), args.realization)
    return CommandResult(OK, {"betti": realizations.homology_ranks(K)})


def _metric_complex(args):
    if args.complex:
        K = realizations.SimplicialComplex.from_json(_read_json(args.complex))
        if args.shapes:
            return metric.MZeroComplex.from_json(K, _read_json(args.shapes))
        return metric.MZeroComplex.regular(K)
    return metric.davis_metric_complex(_building(args))


def _vertex(mc, label):
    for v in mc.vertices:
        if str(v) == label:
            return metric.ComplexPoint.vertex(v)
    raise ParseError(f"no vertex labelled {label!r}")


def cmd_metric(args):
    mc = _metric_complex(args)
    out = {"vertex_separation": metric.vertex_separation(mc)}
    if args.from_ or args.to:
        if not (args.from_ and args.to):
            raise ParseError("metric needs both --from and --to")
        tol = args.tol if args.tol is not None else 1e-9
        est = metric.geodesic_estimate(mc, _vertex(mc, args.from_), _vertex(mc, args.to), tol)
        out.update({"distance": est.value, "converged": est.converged, "tol": tol})
        if not est.converged:
            return CommandResult(VIOLATION, out, ["tolerance not reached; distance is an upper bound"])
    return CommandResult(OK, out)


def cmd_aut(args):
    spec = actions.automorphism_group(_building(args))
    return CommandResult(OK, spec.to_json())


def cmd_transitivity(args):
    spec = _action(args) if args.action else actions.automorphism_group(_building(args))
    if not actions.verify_action(spec):
        return CommandResult(VIOLATION, {"action": "not color-preserving"})
    out = {"order": actions.group_order(spec),
           "chamber_transitive": actions.chamber_orbits(spec).transitive}
    weyl = actions.is_weyl_transitive(spec)
    out["weyl_transitive"] = weyl.transitive
    out["weyl_classes"] = weyl.classes
    ok = weyl.transitive
    if spec.building.system.is_finite() and not spec.building.is_ball:
        strong = actions.is_strongly_transitive_max_atlas(spec)
        out["strongly_transitive"] = strong.transitive
        out["apartment_chamber_orbits"] = len(strong.orbits)
        ok = ok and strong.transitive
    return CommandResult(OK if ok else VIOLATION, out)


def cmd_proper(args):
    if args.action:
        spec = _action(args)
        b = spec.building
        B = _chambers(b, args.from_ or args.chamber)
        C = _chambers(b, args.to) or B
        if not B:
            raise ParseError("proper --action needs --from (or --chamber)")
        depth = int(args.depth) if args.depth is not None else len(b.chambers)
        cert = actions.properness_certificate(spec, B, C, depth)
        out = {"certificate": cert.to_json()}
        if args.epsilon is not None:
            out["discreteness"] = actions.discreteness_witness(spec, B, args.epsilon, depth).to_json()
        return CommandResult(OK, out)
    mc = _metric_complex(args)
    x = _vertex(mc, args.from_) if args.from_ else metric.ComplexPoint.vertex(mc.vertices[0])
    r = float(args.radius) if args.radius is not None else 1.0
    rep = metric.check_properness(mc, x, r)
    return CommandResult(OK if rep.proper else VIOLATION, rep.to_json())


COMMANDS = {
    "coxeter": cmd_coxeter, "build": cmd_build, "verify": cmd_verify, "delta": cmd_delta,
    "residue": cmd_residue, "apartments": cmd_apartments, "realize": cmd_realize,
    "homology": cmd_homology, "metric": cmd_metric, "aut": cmd_aut,
    "transitivity": cmd_transitivity, "proper": cmd_proper,
}


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="buildings", description="Compute with buildings as colored chamber graphs.")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("--building")
    p.add_argument("--coxeter")
    p.add_argument("--action")
    p.add_argument("--graph-product", dest="graph_product")
    p.add_argument("--incidence")
    p.add_argument("--complex")
    p.add_argument("--shapes")
    p.add_argument("--radius")
    p.add_argument("--tol", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--depth", type=int)
    p.add_argument("--realization", choices=["tits", "davis"], default="tits")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--from", dest="from_")
    p.add_argument("--to")
    p.add_argument("--chamber")
    p.add_argument("--colors")
    p.add_argument("--word")
    return p


def run(argv) -> CommandResult:
    try:
        args = _parser().parse_args(argv)
        fn = COMMANDS.get(args.command)
        if fn is None:
            raise UnknownSubcommandError(f"unknown subcommand {args.command!r}")
        res = fn(args)
        res.format = args.format
        return res
    except CliError as e:
        return CommandResult(ERROR, None, [f"cli: {e}"])
    except (ValueError, KeyError, TypeError) as e:
        module = type(e).__module__.rsplit(".", 1)[-1]
        if module == "builtins":
            module = "input"
        return CommandResult(ERROR, None, [f"{module}: {e}"])


def _round(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def render(res: CommandResult, fmt: str = "json") -> str:
    payload = _round(res.payload)
    if fmt == "text":
        return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(payload.items())) + "\n"
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res = run(argv)
    if res.payload is not None:
        sys.stdout.write(render(res, res.format))
    for line in res.diagnostics:
        print(line, file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())

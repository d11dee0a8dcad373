"""Command-line front end: load a fixture, run one check, print a report."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable

from . import cotorsion as ct
from . import homotopy as ho
from . import model as md
from . import proper as pc
from .addcat import Obj
from .errors import EngineError, PreconditionError, SearchBudgetExceeded, TheoremViolation, ValidationError
from .ext import ext_group
from .fixtures import Fixture, load_fixture
from .report import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, EXIT_VIOLATION, Report

DEFAULT_FIXTURE = "n3"


# ---------------------------------------------------------------------------
# argument helpers


def parse_object(fx: Fixture, text: str) -> Obj:
    """``M1``, ``M1+M2`` or ``M1^2``; ``0`` is the zero object."""
    cat = fx.backend.cat
    mult = [0] * cat.n
    if text.strip() not in ("0", ""):
        for part in text.split("+"):
            label, _, k = part.strip().partition("^")
            try:
                mult[cat.index_of(label)] += int(k) if k else 1
            except (KeyError, ValueError) as exc:
                raise ValidationError(f"unknown object {part!r}") from exc
    return Obj(tuple(mult))


def parse_pair(fx: Fixture, text: str | None) -> tuple[ct.Subcategory, ct.Subcategory]:
    if not text:
        raise ValidationError("this command needs --pair X,Y")
    names = [s.strip() for s in text.split(",")]
    if len(names) != 2:
        raise ValidationError("--pair takes two subcategory names separated by a comma")
    return fx.subcategory(names[0]), fx.subcategory(names[1])


def parse_triple(fx: Fixture, text: str) -> tuple[ct.Subcategory, ct.Subcategory, ct.Subcategory]:
    names = [s.strip() for s in text.split(",")]
    if len(names) != 3:
        raise ValidationError("--triple takes three subcategory names C,F,W")
    return tuple(fx.subcategory(n) for n in names)  # type: ignore[return-value]


def _labels(fx: Fixture, s: ct.Subcategory) -> list[str]:
    return s.labels(fx.backend.cat)


def _lattice(fx: Fixture):
    return ct.subcategory_lattice(fx.backend)


def _qualifies(x, y, xi, bound) -> bool:
    return ct.is_hereditary_complete(x, y, xi, bound) and ct.contravariantly_finite(x & y, xi.backend, bound)


def _pairs(fx: Fixture, args, xi, bound):
    if args.pair:
        return [parse_pair(fx, args.pair)]
    return [(x, y) for x in _lattice(fx) for y in _lattice(fx) if _qualifies(x, y, xi, bound)]


# ---------------------------------------------------------------------------
# commands; each fills rep.body / rep.prose and returns an exit code


def cmd_proper_check(fx, args, rep):
    xi = fx.xi(args.xi)
    ar = pc.verify_proper_class_axioms(xi, args.bound)
    rot = pc.rotation_closure_report(xi, args.bound)
    nonsplit, misses = pc.strictness_report(xi, args.bound)
    rep.body = {"axioms": ar.to_json(), "rotation_closure": rot, "contains_nonsplit_triangle": nonsplit, "misses_some_triangle": misses}
    for v in ar.verdicts:
        rep.prose.append(f"{v.name}: {_verdict(v.passed)} ({v.checked} checked)")
    rep.prose.append(f"rotation closed: {rot.get('rotation_closed')}")
    rep.prose.append(f"contains a non-split triangle: {nonsplit}; misses some triangle: {misses}")
    if ar.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_PASS if ar.passed else EXIT_FAIL


def cmd_ext(fx, args, rep):
    xi = fx.xi(args.xi)
    if not (args.source and args.target):
        raise ValidationError("ext needs --from and --to")
    x, y = parse_object(fx, args.source), parse_object(fx, args.target)
    g = ext_group(x, y, xi)
    rep.body = g.to_json()
    rep.prose.append(f"dim Ext({args.source}, {args.target}) = {g.dim} inside Hom of dimension {g.ambient_dim}")
    return EXIT_PASS


def cmd_ctp_check(fx, args, rep):
    xi = fx.xi(args.xi)
    x, y = parse_pair(fx, args.pair)
    right, left = ct.orthogonal(x, "right", xi), ct.orthogonal(y, "left", xi)
    ok = right == y and left == x
    rep.body = {"cotorsion_pair": ok, "right_perp_of_X": _labels(fx, right), "left_perp_of_Y": _labels(fx, left)}
    rep.prose.append(f"cotorsion pair: {ok}")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_ctp_complete(fx, args, rep):
    xi = fx.xi(args.xi)
    x, y = parse_pair(fx, args.pair)
    is_pair = ct.is_cotorsion_pair(x, y, xi)
    c = ct.completeness(x, y, xi, args.bound)
    rep.body = {"cotorsion_pair": is_pair, "completeness": c.to_json()}
    ok = is_pair and c.complete
    rep.prose.append(f"cotorsion pair: {is_pair}; complete within bound {c.bound}: {c.complete}")
    if c.failing:
        rep.prose.append(f"fails at: {c.failing}")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_ctp_hereditary(fx, args, rep):
    xi = fx.xi(args.xi)
    x, y = parse_pair(fx, args.pair)
    complete = ct.is_complete_pair(x, y, xi, args.bound)
    both, hk, hc = ct.heredity(x, y, xi, args.bound, require_complete=complete)
    ext_closed = ct.extension_closure_check(x, xi, args.bound) and ct.extension_closure_check(y, xi, args.bound)
    rep.body = {
        "complete_pair": complete,
        "hereditary": both,
        "X_closed_under_hokernels": hk,
        "Y_closed_under_hocokernels": hc,
        "both_sides_extension_closed": ext_closed,
    }
    if xi.name == "all" or isinstance(xi, pc.AllTriangles):
        rep.body["co_t_structure"] = ct.co_t_structure_check(x, y, fx.backend, args.bound)
    rep.prose.append(f"complete pair: {complete}; hereditary: {both} (hokernels {hk}, hocokernels {hc})")
    return EXIT_PASS if complete and both else EXIT_FAIL


def _build(fx, args):
    xi = fx.xi(args.xi)
    if args.triple:
        c, f, w = parse_triple(fx, args.triple)
        return xi, md.build_xi_triangulated_model(c, f, w, xi, args.bound)
    x, y = parse_pair(fx, args.pair)
    builders: dict[str, Callable] = {
        "projective": md.build_projective_model,
        "injective": md.build_injective_model,
        "transported": md.transported_injective_model,
    }
    return xi, builders[args.construction](x, y, xi, args.bound)


def _triple_json(fx, ms):
    c, f, w = md.derive_triple(ms)
    return {"cofibrant": _labels(fx, c), "fibrant": _labels(fx, f), "trivial": _labels(fx, w)}


def cmd_model_build(fx, args, rep):
    _, ms = _build(fx, args)
    rep.body = {"structure": ms.describe(), "object_classes": _triple_json(fx, ms)}
    counts = {"cofib": 0, "fib": 0, "weq": 0, "morphisms": 0}
    for f in md.scan.morphisms(fx.backend, args.bound):
        counts["morphisms"] += 1
        for k in ("cofib", "fib", "weq"):
            counts[k] += ms.predicate(k)(f)
    rep.body["class_sizes_over_representatives"] = counts
    rep.prose.append(f"object classes: {rep.body['object_classes']}")
    return EXIT_PASS


def cmd_model_verify(fx, args, rep):
    _, ms = _build(fx, args)
    ar = md.verify_model_axioms(ms, args.bound)
    rep.body = {"structure": ms.describe(), "axioms": ar.to_json(), "object_classes": _triple_json(fx, ms)}
    for v in ar.verdicts:
        rep.prose.append(f"{v.name}: {_verdict(v.passed)} ({v.checked} checked)")
    if ar.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_PASS if ar.passed else EXIT_FAIL


def cmd_br_roundtrip(fx, args, rep):
    xi = fx.xi(args.xi)
    rows = []
    ok = True
    for x, y in _pairs(fx, args, xi, args.bound):
        ms = md.build_projective_model(x, y, xi, args.bound)
        back = md.psi(ms)
        ident = back == (x, y)
        wp = md.weakly_projective_check(ms, xi, args.bound)
        rebuilt = md.same_predicates(ms, md.model_from_structure(ms, xi, args.bound), args.bound) if wp.verdict else None
        row = {"X": _labels(fx, x), "Y": _labels(fx, y), "psi_phi_identity": ident, "weakly_projective": wp.to_json(), "phi_psi_mismatch": rebuilt}
        rows.append(row)
        if not ident or rebuilt is not None:
            raise TheoremViolation(f"correspondence fails on {row}")
        rep.prose.append(f"({fx.subcategory_name(x)}, {fx.subcategory_name(y)}): round trip is the identity")
    rep.body = {"pairs": rows}
    if not rows:
        rep.prose.append("no qualifying pairs")
    return EXIT_PASS if ok else EXIT_FAIL


def _fixture_triples(fx, args):
    if args.triple:
        return [(args.xi, *parse_triple(fx, args.triple))]
    return [(t["xi"], fx.subcategory(t["C"]), fx.subcategory(t["F"]), fx.subcategory(t["W"])) for t in fx.hovey_triples if args.xi in (None, t["xi"])]


def cmd_hovey_check(fx, args, rep):
    rows = []
    ok = True
    for xi_name, c, f, w in _fixture_triples(fx, args):
        xi = fx.xi(xi_name)
        hovey = md.is_hovey_triple(c, f, w, xi, args.bound)
        row = {"xi": xi_name, "C": _labels(fx, c), "F": _labels(fx, f), "W": _labels(fx, w), "hovey_triple": hovey}
        if hovey:
            ms = md.build_xi_triangulated_model(c, f, w, xi, args.bound)
            ar = md.verify_model_axioms(ms, args.bound)
            back = md.derive_triple(ms)
            row["axioms_pass"] = ar.passed
            row["roundtrip_identity"] = back == (c, f, w)
            if ar.passed and not row["roundtrip_identity"]:
                raise TheoremViolation(f"triple to model to triple is not the identity on {row}")
            ok = ok and bool(ar.passed) and row["roundtrip_identity"]
        else:
            ok = False
        rows.append(row)
        rep.prose.append(f"[{xi_name}] ({', '.join(fx.subcategory_name(s) for s in (c, f, w))}): " + ", ".join(f"{k}={v}" for k, v in row.items() if isinstance(v, bool)))
    rep.body = {"triples": rows}
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_xi_proj(fx, args, rep):
    xi = fx.xi(args.xi)
    be = fx.backend
    proj, enough = md.xi_projective_report(xi, args.bound)
    pair_ok = ct.is_cotorsion_pair(proj, ct.everything(be), xi)
    rows = []
    for x, y in _pairs(fx, args, xi, args.bound):
        rows.append({"X": _labels(fx, x), "Y": _labels(fx, y), "xi_triangulated": md.xi_triangulated_equivalence_check(x, y, xi, args.bound)})
    rep.body = {"projectives": _labels(fx, proj), "enough_projectives": enough, "projectives_with_everything_is_cotorsion_pair": pair_ok, "pairs": rows}
    rep.prose.append(f"projectives: {_labels(fx, proj)}; enough: {enough}; (P, all) cotorsion pair: {pair_ok}")
    for r in rows:
        rep.prose.append(f"({r['X']}, {r['Y']}): triangulated model {r['xi_triangulated']}")
    if not pair_ok:
        raise TheoremViolation("projectives and the whole category fail to form a cotorsion pair")
    return EXIT_PASS


def _quotient_reference(fx, ms):
    c, f, w = md.derive_triple(ms)
    cf = c & f
    if ms.provenance == "projective":
        return ho.additive_quotient(cf, ms.data["omega"] & cf, fx.backend)
    return ho.additive_quotient(cf, cf & w, fx.backend)


def cmd_homotopy_check(fx, args, rep):
    _, ms = _build(fx, args)
    ar = md.verify_model_axioms(ms, args.bound)
    if not ar.passed:
        rep.body = {"model": False}
        rep.prose.append("not a model structure at this bound; homotopy checks skipped")
        return EXIT_FAIL
    push, pull = ho.verify_fundamental_conditions(ms, args.bound)
    q = ho.pi_cf(ms, args.bound)
    ref = _quotient_reference(fx, ms)
    same = ho.quotient_equivalence_check(q, ref)
    be = fx.backend
    relations = {}
    cofib_formulation = True
    for a in q.objects:
        for b in q.objects:
            ao, bo = be.cat.indec(a), be.cat.indec(b)
            rel = ho.homotopy_equivalence_relation_check(ms, ao, bo, args.bound)
            relations[f"{be.cat.labels[a]}->{be.cat.labels[b]}"] = rel
            for f in md.scan.all_homs(be, ao, bo):
                z = be.cat.zero(ao, bo)
                if ho.left_homotopic(f, z, ms, args.bound) != ho.left_homotopic(f, z, ms, args.bound, require_cofibration=True):
                    cofib_formulation = False
    rel_ok = all(r["reflexive"] and r["symmetric"] and r["transitive"] for r in relations.values())
    rep.body = {
        "pushout_condition": push,
        "pullback_condition": pull,
        "left_equals_right_on_cofibrant_fibrant": True,
        "cylinder_formulations_agree": cofib_formulation,
        "homotopy_is_equivalence_relation": relations,
        "quotient_matches_additive_quotient": same,
        "quotient": q.to_json(),
    }
    rep.prose.append(f"push-out condition: {push}; pull-back condition: {pull}")
    rep.prose.append(f"homotopy category equals the additive quotient: {same}")
    if not (push and pull and same and rel_ok and cofib_formulation):
        raise TheoremViolation(f"homotopy checks fail: {rep.body}")
    return EXIT_PASS


def cmd_ho_compute(fx, args, rep):
    _, ms = _build(fx, args)
    q = ho.pi_cf(ms, args.bound)
    rep.body = {"quotient": q.to_json(), "triangulation": ho.triangulation_diagnostic(q)}
    rep.prose.append(f"objects: {q.to_json()['objects']}; hom dimensions: {q.dims()}")
    rep.prose.append(f"diagnostic only: {rep.body['triangulation']}")
    return EXIT_PASS


def cmd_dual_build(fx, args, rep):
    xi = fx.xi(args.xi)
    x, y = parse_pair(fx, args.pair)
    direct = md.build_injective_model(x, y, xi, args.bound)
    moved = md.transported_injective_model(x, y, xi, args.bound)
    diff = md.same_predicates(direct, moved, args.bound)
    ar = md.verify_model_axioms(direct, args.bound)
    rep.body = {"constructions_agree": diff is None, "first_difference": diff, "axioms": ar.to_json(), "object_classes": _triple_json(fx, direct)}
    rep.prose.append(f"direct and transported constructions agree: {diff is None}; axioms pass: {ar.passed}")
    if diff is not None:
        raise TheoremViolation(f"dual constructions differ: {diff}")
    if ar.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_PASS if ar.passed else EXIT_FAIL


COMMANDS: dict[str, Callable] = {
    "proper-check": cmd_proper_check,
    "ext": cmd_ext,
    "ctp-check": cmd_ctp_check,
    "ctp-complete": cmd_ctp_complete,
    "ctp-hereditary": cmd_ctp_hereditary,
    "model-build": cmd_model_build,
    "model-verify": cmd_model_verify,
    "br-roundtrip": cmd_br_roundtrip,
    "hovey-check": cmd_hovey_check,
    "xi-proj": cmd_xi_proj,
    "homotopy-check": cmd_homotopy_check,
    "ho-compute": cmd_ho_compute,
    "dual-build": cmd_dual_build,
}

# commands whose proper class defaults to "all" when --xi is omitted
_XI_DEFAULT_ALL = set(COMMANDS) - {"hovey-check"}


def _verdict(v) -> str:
    return {True: "pass", False: "FAIL", None: "budget exceeded"}[v]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trimodel", description="Certify proper classes, cotorsion pairs and model structures on finite triangulated categories.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--fixture", default=None, help="fixture path or shipped name (default n3)")
    ap.add_argument("--xi", default=None, help="proper class name from the fixture")
    ap.add_argument("--pair", default=None, help="cotorsion pair X,Y by subcategory names")
    ap.add_argument("--triple", default=None, help="Hovey triple C,F,W by subcategory names")
    ap.add_argument("--construction", choices=["projective", "injective", "transported"], default="projective")
    ap.add_argument("--from", dest="source", default=None, help="object such as M1+M2 or M1^2")
    ap.add_argument("--to", dest="target", default=None)
    ap.add_argument("--bound", type=int, default=None)
    ap.add_argument("--budget", type=int, default=None)
    ap.add_argument("--format", choices=["text", "machine"], default="text")
    return ap


def run(command: str, fixture: Fixture, args: argparse.Namespace) -> Report:
    if command not in COMMANDS:
        raise ValidationError(f"unknown command {command!r}")
    if args.xi is None and command in _XI_DEFAULT_ALL:
        args.xi = "all"
    if args.bound is None:
        args.bound = fixture.bound
    if args.budget is not None:
        fixture.backend.budget = args.budget
    params = {
        "xi": args.xi,
        "pair": args.pair,
        "triple": args.triple,
        "construction": args.construction if command in ("model-build", "model-verify", "homotopy-check", "ho-compute") else None,
        "from": args.source,
        "to": args.target,
        "bound": args.bound,
        "budget": fixture.backend.budget,
    }
    rep = Report(command, fixture.source or fixture.name, {k: v for k, v in params.items() if v is not None})
    try:
        rep.exit_code = COMMANDS[command](fixture, args, rep)
    except TheoremViolation as exc:
        rep.exit_code = EXIT_VIOLATION
        rep.body["error"] = str(exc)
        rep.prose.append(f"theorem violation: {exc}")
    except SearchBudgetExceeded as exc:
        rep.exit_code = EXIT_BUDGET
        rep.body["error"] = str(exc)
        rep.prose.append(f"budget exceeded: {exc}")
    except (PreconditionError, ValidationError) as exc:
        rep.exit_code = EXIT_FAIL
        rep.body["error"] = str(exc)
        rep.prose.append(f"error: {exc}")
    return rep


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fx = load_fixture(args.fixture or DEFAULT_FIXTURE)
    except (ValidationError, FileNotFoundError) as exc:
        failures = exc.failures if isinstance(exc, ValidationError) else [str(exc)]
        for f in failures:
            print(f"fixture error: {f}", file=sys.stderr)
        return EXIT_FAIL
    except EngineError as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rep = run(args.command, fx, args)
    sys.stdout.write(rep.render(args.format))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())

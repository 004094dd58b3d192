"""Command-line front end.

Exit codes: 0 every certificate verified, 1 at least one falsified,
2 input error (bad polynomial, bad JSON, violated precondition).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .certificate import Certificate
from .errors import (
    CapError,
    DegreeError,
    InputError,
    MoveError,
    SimpleZerosError,
    ValidationError,
)
from .fibration import (
    CoordX,
    DoubleSection,
    TwoSection,
    as_surface_elem,
    euler_report,
    fibration_from_json,
    verify_conic_pencil_identity,
    verify_deg4_parametrization,
    verify_nu0_eigenvalue,
    verify_trivialization,
)
from .graphcalc import (
    Reversion,
    WeightedGraph,
    Zigzag,
    classify_zigzag,
    contract_to_minimal,
    make_standard_from_semistandard,
    normalize_via_zero_moves,
    parse_step,
    transcript,
)
from .surface import SurfaceDef
from .vfield import (
    Family1,
    Family2,
    Family3,
    VectorField,
    build_family,
    family_from_json,
    generators,
    is_tangent,
    nu0,
    preserves_fibration,
)

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2


def _load_json(value: str):
    """``value`` is a path to a JSON file or inline JSON text."""
    if os.path.exists(value):
        with open(value, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = value
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not a JSON file or JSON text: {value!r} ({exc.msg})") from exc


def _surface(text: str) -> SurfaceDef:
    if text is None:
        raise InputError("--p is required")
    s = SurfaceDef(text)
    if s.params:
        raise InputError(f"p must be numeric, found parameters {s.params}")
    return s


class _Out:
    def __init__(self, stream):
        self.stream = stream

    def __call__(self, *parts):
        print(*parts, file=self.stream)


def _emit_json(path, payload, out):
    if not path:
        return
    text = json.dumps(payload, indent=2)
    if path == "-":
        out(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _status_line(cert: Certificate) -> str:
    line = f"[{cert.status}] {cert.claim}"
    if cert.residue is not None:
        line += f"  residue: {cert.residue}"
    return line


def _exit_for(certs) -> int:
    return EXIT_OK if all(c.verified for c in certs) else EXIT_FALSIFIED


# -- classify ----------------------------------------------------------------------

def cmd_classify(args, out) -> int:
    s = _surface(args.p)
    dp = s.dp
    d2 = s.p.derivative("z").derivative("z") / 6
    d3 = d2.derivative("z")
    g = generators(s)
    fams = [
        {
            "family": 1,
            "field": "c HF + (A(x) z + B(x)) SF^x",
            "parameters": "c in Q; A, B in Q[x]",
            "fibration": "x",
        },
        {
            "family": 2,
            "field": (
                "c((z+a)/x + Q(x)/x^(l+1)) SF^x + A(f) [n HF - ((m+nl)(z+a)/x "
                "+ (mQ(x) + nxQ'(x))/x^(l+1)) SF^x]"
            ),
            "parameters": (
                "m, n coprime positive; l >= 0; a in Q; deg Q < l; A in Q[t] with A(0) = c/(m+nl) "
                "and A(f)(mQ+nxQ') - cQ in x^(l+1) C[S]"
            ),
            "fibration": "f = x^m (x^l (z+a) + Q(x))^n",
        },
    ]
    if s.k == 4:
        n0 = nu0(s)
        f3 = str(as_surface_elem(DoubleSection(), s))
        fams.append({
            "family": 3,
            "field": f"A({f3}) * nu0",
            "nu0": n0.to_json(),
            "parameters": "A in Q[t]",
            "fibration": f3,
        })
    else:
        fams.append({"family": 3, "available": False, "reason": f"needs deg p = 4, here deg p = {s.k}"})
    report = {
        "p": str(s.p),
        "k": s.k,
        "p'": str(dp),
        "p''/6": str(d2),
        "p'''/6": str(d3),
        "HF": g.hf.to_json(),
        "SFx": g.sfx.to_json(),
        "SFy": g.sfy.to_json(),
        "families": fams,
    }
    out(f"S: xy = {s.p}   (deg p = {s.k}, simple zeros)")
    out(f"HF  = {g.hf}")
    out(f"SFx = {g.sfx}")
    out(f"SFy = {g.sfy}")
    for fam in fams:
        if fam.get("available") is False:
            out(f"({fam['family']}) unavailable: {fam['reason']}")
            continue
        out(f"({fam['family']}) nu = {fam['field']}")
        out(f"    parameters: {fam['parameters']}")
        out(f"    preserved fibration: {fam['fibration']}")
        if "nu0" in fam:
            n0 = fam["nu0"]
            out(f"    nu0 = ({n0['nu_x']}, {n0['nu_y']}, {n0['nu_z']})")
    _emit_json(args.json, report, out)
    return EXIT_OK


# -- verify-field --------------------------------------------------------------------

def _default_fibration(params):
    if params is None or isinstance(params, Family1):
        return CoordX()
    return params.fibration()


def cmd_verify_field(args, out) -> int:
    s = _surface(args.p)
    if (args.field is None) == (args.family is None):
        raise InputError("give exactly one of --field and --family")
    certs = []
    params = None
    nu = None
    if args.family is not None:
        params = family_from_json(_load_json(args.family))
        try:
            nu = build_family(params, s)
            certs.append(Certificate("family parameters satisfy every defining condition", "verified",
                                     inputs=params.to_json(), details={"field": nu.to_json()}))
        except DegreeError:
            raise
        except ValidationError as exc:
            certs.append(Certificate(
                f"family parameters: {exc.condition}", "falsified",
                residue=str(exc.witness), inputs=params.to_json(),
            ))
    else:
        nu = VectorField.from_json(s, _load_json(args.field))
    if nu is not None:
        tang = is_tangent(nu)
        certs.append(Certificate.from_residue(
            "tangency: x nu_y + y nu_x - p'(z) nu_z = 0 in C[S]", tang.residue,
            inputs={"p": str(s.p), "field": nu.to_json()},
        ))
        if tang:
            spec = fibration_from_json(_load_json(args.fibration)) if args.fibration else _default_fibration(params)
            certs.append(_fibration_cert(nu, spec, s, args.degree_cap))
    for c in certs:
        out(_status_line(c))
        for key, val in c.details.items():
            if key != "field":
                out(f"    {key}: {val}")
    _emit_json(args.json, [c.to_json() for c in certs], out)
    return _exit_for(certs)


def _fibration_cert(nu, spec, s, cap) -> Certificate:
    f = as_surface_elem(spec, s)
    claim = f"nu(f) = h(f) for f = {f}"
    inputs = {"fibration": spec.to_json(), "f": str(f), "degree_cap": cap}
    try:
        h = preserves_fibration(nu, f, cap)
    except CapError as exc:
        return Certificate(claim, "falsified", residue=str(nu(f)), inputs=inputs,
                           details={"inconclusive": str(exc)})
    if h is None:
        return Certificate(claim, "falsified", residue=str(nu(f)), inputs=inputs,
                           details={"nu(f)": str(nu(f)), "reason": "no polynomial h exists"})
    return Certificate(claim, "verified", inputs=inputs, details={"h": str(h)})


# -- graph ----------------------------------------------------------------------

def _read_graph(args):
    if (args.zigzag is None) == (args.graph is None):
        raise InputError("give exactly one of --zigzag and --graph")
    if args.zigzag is not None:
        return Zigzag.parse(args.zigzag)
    g = WeightedGraph.from_json(_load_json(args.graph))
    return Zigzag.from_graph(g) if g.is_path() else g


def _show(obj):
    if isinstance(obj, Zigzag):
        return str(obj)
    if isinstance(obj, WeightedGraph):
        return json.dumps(obj.to_json()) if not obj.is_path() else str(Zigzag.from_graph(obj))
    return str(obj)


def cmd_graph(args, out) -> int:
    start = _read_graph(args)
    action = args.action
    steps = []
    if args.steps:
        tokens = [t for t in args.steps.split(",") if t.strip()]
    else:
        tokens = []
    if action is None:
        action = "apply" if tokens else "classify"
    result = {"input": _show(start), "action": action}
    if action == "apply":
        cur, records = start, []
        for tok in tokens:
            step = parse_step(tok, cur if isinstance(cur, Zigzag) else None)
            cur, recs = transcript(cur, [step])
            records.extend(recs)
            steps.append(str(step))
        final = cur
    elif action == "revert":
        if not isinstance(start, Zigzag):
            raise InputError("reversion needs a zigzag")
        final, records = transcript(start, [Reversion()])
        steps = ["revert"]
    elif action == "normalize":
        final, moves = normalize_via_zero_moves(start)
        _, records = transcript(start, moves)
        steps = [str(m) for m in moves]
    elif action == "standardize":
        final, moves = make_standard_from_semistandard(start)
        _, records = transcript(start, moves)
        steps = [str(m) for m in moves]
    elif action == "minimal":
        final, moves = contract_to_minimal(start)
        _, records = transcript(start, moves)
        steps = [str(m) for m in moves]
    elif action == "classify":
        if not isinstance(start, Zigzag):
            raise InputError("classification needs a zigzag")
        cls = classify_zigzag(start)
        out(f"{start}: {cls}")
        _emit_json(args.json, {**result, "class": str(cls)}, out)
        return EXIT_OK
    else:  # argparse restricts choices
        raise InputError(f"unknown action {action!r}")
    result.update(output=_show(final), steps=steps, transcript=records)
    out(f"before: {_show(start)}")
    out(f"after:  {_show(final)}")
    for rec in records:
        out(f"  {rec['step']}: {_fmt(rec['before'])} -> {_fmt(rec['after'])}")
    _emit_json(args.json, result, out)
    return EXIT_OK


def _fmt(v):
    return v if isinstance(v, str) else json.dumps(v)


# -- fibration ----------------------------------------------------------------------

_CHECKS = ("euler", "trivialization", "parametrization", "eigenvalue", "conic")


def cmd_fibration(args, out) -> int:
    s = _surface(args.p)
    spec = fibration_from_json(_load_json(args.fibration)) if args.fibration else CoordX()
    f = as_surface_elem(spec, s)
    if args.check:
        checks = [c.strip() for c in args.check.split(",") if c.strip()]
        bad = [c for c in checks if c not in _CHECKS]
        if bad:
            raise InputError(f"unknown check(s) {bad}; choose from {list(_CHECKS)}")
    else:
        checks = ["euler"]
        if isinstance(spec, TwoSection):
            checks.append("trivialization")
        if isinstance(spec, DoubleSection):
            checks += ["parametrization", "eigenvalue", "conic"]
    payload = {"p": str(s.p), "fibration": spec.to_json(), "f": str(f)}
    certs = []
    out(f"f = {f}")
    for check in checks:
        if check == "euler":
            rep = euler_report(spec, s)
            payload["euler"] = rep.to_json()
            out(f"generic fiber: {rep.generic_fiber} (chi {rep.generic_chi})")
            out(f"special values: roots of {rep.special_values} ({rep.special_count} distinct)")
            for label, chi in rep.special_fibers:
                out(f"  fiber over {label}: chi {chi}")
            if rep.chi_S is not None:
                certs.append(Certificate.from_residue(
                    "Euler characteristic: chi(F) chi(C) + sum(chi(F') - chi(F)) = deg p",
                    rep.chi_S - s.k, inputs={"p": str(s.p), "fibration": spec.to_json()},
                    details={"chi_S": rep.chi_S, "deg p": s.k},
                ))
        elif check == "trivialization":
            if not isinstance(spec, TwoSection):
                raise InputError("the trivialization check applies to TwoSection fibrations")
            certs.append(verify_trivialization(spec))
        elif check == "parametrization":
            certs.append(verify_deg4_parametrization(s, args.alpha, args.xi))
        elif check == "eigenvalue":
            certs.append(verify_nu0_eigenvalue(s, args.alpha, args.xi))
        elif check == "conic":
            certs.append(verify_conic_pencil_identity())
    for c in certs:
        out(_status_line(c))
    payload["certificates"] = [c.to_json() for c in certs]
    _emit_json(args.json, payload, out)
    return _exit_for(certs)


# -- selftest --------------------------------------------------------------------

def _selftest_checks():
    s2 = SurfaceDef("z^2 - 1")
    s4 = SurfaceDef("z^4 - 1")
    g = generators(s2)
    zero = s2.const(0)
    yield "HF tangent", is_tangent(g.hf).ok
    yield "(1,0,0) not tangent, residue y", is_tangent((s2.const(1), zero, zero)).residue == s2.y
    yield "[HF, SFx] = SFx", _bracket_ok(g.hf, g.sfx, g.sfx)
    yield "Family2 c=1 A=1 is HF", build_family(Family2(1, "1"), s2) == g.hf
    nu = build_family(Family2(1, "1+t"), s2)
    yield "Family2 c=1 A=1+t preserves xz with h=t", str(preserves_fibration(nu, s2("x*z"))) == "t"
    n0 = build_family(Family3("1"), s4)
    yield "Family3 is fiber-tangent", preserves_fibration(n0, s4("x + y + 2*z^2")).is_zero()
    yield "Euler CoordX z^4-1", euler_report(CoordX(), s4).chi_S == 4
    yield "DoubleSection count 3", euler_report(DoubleSection(), s4).special_count == 3
    yield "parametrization alpha=4 xi=2", verify_deg4_parametrization(s4, 4, 2).verified
    yield "eigenvalue alpha=4 xi=2", verify_nu0_eigenvalue(s4, 4, 2).verified
    yield "conic pencil", verify_conic_pencil_identity().verified
    yield "trivialization m=2", verify_trivialization(TwoSection(m=2)).verified
    z = Zigzag.parse("[[0,0,-4]]")
    yield "reversion [[0,0,-4]]", str(z.apply(Reversion())) == "[[-4,0,0]]"


def _bracket_ok(u, v, expected):
    from .vfield import bracket

    return bracket(u, v) == expected


def cmd_selftest(args, out) -> int:
    ok = True
    for name, passed in _selftest_checks():
        ok &= bool(passed)
        out(f"{'PASS' if passed else 'FAIL'}  {name}")
    return EXIT_OK if ok else EXIT_FALSIFIED


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="danielewski", description="Exact checks on Danielewski surfaces xy = p(z).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p=True):
        if p:
            sp.add_argument("--p", help="p(z), e.g. \"z^4 - 1\"")
        sp.add_argument("--json", metavar="OUT", help="write JSON output to OUT ('-' for stdout)")

    sp = sub.add_parser("classify", help="list the complete-field families for p")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify-field", help="certify a vector field or family instance")
    common(sp)
    sp.add_argument("--field", help="vector field JSON (file or inline)")
    sp.add_argument("--family", help="family parameters JSON (file or inline)")
    sp.add_argument("--fibration", help="fibration JSON (file or inline)")
    sp.add_argument("--degree-cap", type=int, default=32)
    sp.set_defaults(func=cmd_verify_field)

    sp = sub.add_parser("graph", help="apply dual-graph moves and print the transcript")
    common(sp, p=False)
    sp.add_argument("action", nargs="?", choices=["apply", "revert", "normalize", "standardize", "minimal", "classify"])
    sp.add_argument("--zigzag", help='zigzag such as "[[0,0,-3]]"')
    sp.add_argument("--graph", help="weighted graph JSON (file or inline)")
    sp.add_argument("--steps", help="comma list: outer@k, inner@i-j, blowdown@k, makezero[-inv]@k, movezero@k:left|right, revert")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("fibration", help="fiber analysis and identity certificates")
    common(sp)
    sp.add_argument("--fibration", help="fibration JSON (file or inline); default CoordX")
    sp.add_argument("--check", help="comma list of: " + ", ".join(_CHECKS))
    sp.add_argument("--alpha", help="fiber parameter alpha (deg-4 checks); symbolic if omitted")
    sp.add_argument("--xi", help="square root of alpha + b^2/4 - c; symbolic if omitted")
    sp.set_defaults(func=cmd_fibration)

    sp = sub.add_parser("selftest", help="run the built-in regression checks")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    out = _Out(stdout or sys.stdout)
    err = _Out(stderr or sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except SimpleZerosError as exc:
        err(f"input error: {exc}")
        err(f"witness: gcd(p, p') = {exc.witness}")
        return EXIT_INPUT
    except MoveError as exc:
        err(f"move error: {exc}")
        return EXIT_INPUT
    except (InputError, DegreeError) as exc:
        err(f"input error: {exc}")
        return EXIT_INPUT
    except OSError as exc:
        err(f"input error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

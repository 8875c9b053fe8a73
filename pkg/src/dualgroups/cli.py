"""Command-line front end.

Subcommands parse presentation files, run the library operations and emit
deterministic textual reports (byte-identical across runs for identical
inputs; timing lines are opt-in via --timing precisely so the default
output stays reproducible).

Exit codes: 0 success, 2 verification failure, 3 parse/usage error,
4 bound-insufficiency diagnostics.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time

from . import catalog as cat
from .dieudonne import BoundsError, UnsupportedGroupError, classify, d_normal_form
from .extensions import (
    Cocycle2,
    CocycleError,
    Deformation,
    NotADeformationError,
    NotRigidError,
    build_extension,
    deform,
    scalar_mul,
    weil_extend,
)
from .fields import GF, QQ
from .hopf import verify_hopf
from .poly import DualPoly, IModule
from .presentation_io import (
    ParseError,
    PresentationFile,
    parse_presentation,
    print_presentation,
    render_value,
)
from .weil import extension_of, special_fibre, weil_restrict
from .witt import WittVector, ghost_components


EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_PARSE = 3
EXIT_BOUNDS = 4


class StepError(Exception):
    pass


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


class Report:
    def __init__(self, command, digests, timing=False):
        self.lines = ["# dualgroups report", f"command: {command}"]
        for name, d in digests:
            self.lines.append(f"input {name}: sha256:{d}")
        self._t0 = time.perf_counter()
        self._timing = timing

    def add(self, text=""):
        self.lines.extend(text.splitlines() if text else [""])

    def finish(self) -> str:
        if self._timing:
            self.lines.append(f"elapsed: {time.perf_counter() - self._t0:.3f}s")
        return "\n".join(self.lines) + "\n"


def _emit(report: Report, out_path):
    text = report.finish()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path) -> tuple[str, PresentationFile]:
    with open(path) as fh:
        text = fh.read()
    return text, parse_presentation(text)


def _initial_state(pf: PresentationFile):
    """File -> pipeline state: deformation / k-group (+ optional cocycle)."""
    if pf.is_dual:
        base = special_fibre(pf.group)
        return {
            "kind": "deformation",
            "value": Deformation(base, pf.iota, pf.group, None, pf.rigidification),
        }
    state = {"kind": "group", "value": pf.group, "iota": pf.iota}
    if pf.cocycle_values is not None:
        state["cocycle"] = Cocycle2(pf.group, pf.iota, pf.cocycle_values)
    return state


def _report_flags(report, group):
    rep = verify_hopf(group)
    flags = (
        f"coassoc={str(rep.coassoc).lower()} counit={str(rep.counit).lower()} "
        f"antipode={str(rep.antipode).lower()} relations={str(rep.relations_preserved).lower()}"
    )
    if group.smooth:
        flags += " smooth"
    report.add(f"flags: {flags}")
    return rep


def cmd_verify(args) -> int:
    text, pf = _load(args.file)
    report = Report(f"verify {args.file}", [(args.file, _digest(text))], args.timing)
    rep = _report_flags(report, pf.group)
    ok = rep.ok
    if pf.cocycle_values is not None:
        from .extensions import check_cocycle

        c = Cocycle2(pf.group, pf.iota, pf.cocycle_values)
        cc = check_cocycle(c)
        nn = c.is_normalized()
        report.add(f"cocycle: identity={str(cc).lower()} normalized={str(nn).lower()}")
        ok = ok and cc and nn
    _emit(report, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def _run_steps(state, steps, args, report):
    cohom_bound = args.cohom_deg
    for step in steps:
        lam = None
        if step.startswith("scale"):
            step, _, lam_text = step.partition("=")
            if not lam_text:
                raise StepError("scale needs a value: scale=<lambda>")
            lam = lam_text
        report.add()
        report.add(f"## step: {step}" + (f" {lam}" if lam is not None else ""))
        if step == "deform":
            if state["kind"] != "group" or "cocycle" not in state:
                raise StepError("deform needs a base-field group with a COCYCLE section")
            dm = deform(state["value"], state["cocycle"])
            state = {"kind": "deformation", "value": dm}
            report.add(print_presentation(dm.hopf, dm.iota))
        elif step == "weil-restrict":
            if state["kind"] == "deformation":
                dm = state["value"]
                wr = weil_restrict(dm.hopf)
                report.add(print_presentation(wr.result))
                ext = extension_of(dm)
                state = {"kind": "extension", "value": ext}
            else:
                raise StepError("weil-restrict needs a presentation over k[I]")
        elif step == "extract-cocycle":
            if state["kind"] == "extension":
                ext = state["value"]
            elif state["kind"] == "deformation":
                ext = extension_of(state["value"])
            else:
                raise StepError("extract-cocycle needs a deformation or extension")
            report.add("COCYCLE")
            for g in ext.base.gens:
                report.add(
                    f"  {g} = "
                    + render_value(ext.base, ext.cocycle.values[g], 2, ext.iota.labels)
                )
            state = {"kind": "extension", "value": ext}
        elif step == "weil-extend":
            if state["kind"] != "extension":
                raise StepError("weil-extend needs an extension")
            dm = weil_extend(state["value"])
            state = {"kind": "deformation", "value": dm}
            report.add(print_presentation(dm.hopf, dm.iota))
        elif step == "baer-sum":
            if state["kind"] != "extension":
                raise StepError("baer-sum needs an extension on the left")
            if not args.with_file:
                raise StepError("baer-sum needs --with FILE for the second extension")
            _, pf2 = _load(args.with_file)
            if pf2.cocycle_values is None:
                raise StepError("the --with file must carry a COCYCLE")
            # rebuild the second extension over the same base presentation
            left = state["value"]
            c2 = Cocycle2(left.base, left.iota, {
                g: pf2.cocycle_values[g] for g in left.base.gens
            })
            from .extensions import baer_sum

            summed = baer_sum(left, build_extension(left.base, c2))
            state = {"kind": "extension", "value": summed}
            report.add(print_presentation(summed.hopf))
        elif step == "scale":
            lam_v = lam
            if state["kind"] == "extension":
                ext = scalar_mul(lam_v, state["value"])
                state = {"kind": "extension", "value": ext}
                report.add(print_presentation(ext.hopf))
            elif state["kind"] == "deformation":
                from .extensions import scale_deformation

                dm = scale_deformation(lam_v, state["value"])
                state = {"kind": "deformation", "value": dm}
                report.add(print_presentation(dm.hopf, dm.iota))
            else:
                raise StepError("scale needs an extension or deformation")
        elif step == "classify":
            if state["kind"] != "deformation":
                raise StepError("classify needs a deformation")
            di = classify(state["value"], args.witt_len, args.fdeg)
            report.add(_render_diextension(di))
        else:
            raise StepError(f"unknown step {step!r}")
    return state


def _render_diextension(di) -> str:
    lines = ["DIEXTENSION"]
    lines.append(
        f"  windows: witt-len {di.module_base.m} fdeg {di.module_base.D_F}"
    )
    lines.append(
        "  lengths: base {base} total {total} lie-image {lie_image}".format(**di.lengths)
    )
    lines.append(f"  injective: {str(di.injective).lower()}")
    lines.append(f"  composite-zero: {str(di.composite_zero).lower()}")
    lines.append(f"  exact-middle: {str(di.exact_middle).lower()}")
    lines.append(f"  right-surjective: {str(di.right_surjective).lower()}")
    lines.append(f"  lie-certificate: {str(di.lie_certificate).lower()}")
    lines.append(f"  split: {str(di.split).lower()}")
    if di.module_base.bound_sensitive or di.module_total.bound_sensitive:
        lines.append("  note: solution spaces reach the F-degree bound (windowed result)")
    return "\n".join(lines)


def cmd_pipeline(args) -> int:
    text, pf = _load(args.file)
    digests = [(args.file, _digest(text))]
    if args.with_file:
        with open(args.with_file) as fh:
            digests.append((args.with_file, _digest(fh.read())))
    report = Report(
        "pipeline " + args.file + " " + " ".join(args.steps), digests, args.timing
    )
    state = _initial_state(pf)
    _run_steps(state, args.steps, args, report)
    _emit(report, args.out)
    return EXIT_OK


def cmd_witt(args) -> int:
    p = args.p
    n = args.witt_len
    report = Report(f"witt {args.op} {args.a} {args.b or ''}".rstrip(), [], args.timing)
    va = [int(x) for x in args.a.split(",")]
    if len(va) != n:
        raise ParseError(f"vector length {len(va)} != witt-len {n}")
    wa = WittVector(p, va)
    if args.op in ("add", "mul"):
        vb = [int(x) for x in args.b.split(",")]
        wb = WittVector(p, vb)
        res = wa + wb if args.op == "add" else wa * wb
    elif args.op == "neg":
        res = -wa
    elif args.op == "ghost":
        report.add("ghost: " + ", ".join(str(g) for g in ghost_components(p, va)))
        _emit(report, args.out)
        return EXIT_OK
    else:
        raise ParseError(f"unknown witt op {args.op!r}")
    comps = [c.constant_term() for c in res.components]
    report.add("result: " + ", ".join(str(c) for c in comps))
    _emit(report, args.out)
    return EXIT_OK


def cmd_dmod(args) -> int:
    report = Report(f"dmod {args.op} {args.expr}", [], args.timing)
    if args.op == "nf":
        e = d_normal_form(args.p, args.prec, args.expr)
        report.add(f"normal form (p={args.p}, precision {args.prec}): {e.render()}")
    elif args.op == "lie":
        from .dieudonne import DModulePresentation, lie_functor

        n = int(args.expr)
        L = lie_functor(DModulePresentation(args.p, 1, [n]), args.fdeg)
        report.add(
            f"Lie(D/DV^{n}) window: rank {len(L.labels)} "
            f"(= {n} x (fdeg+1)), V acts by shift, F by degree raise"
        )
    else:
        raise ParseError(f"unknown dmod op {args.op!r}")
    _emit(report, args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    text, pf = _load(args.file)
    report = Report(f"classify {args.file}", [(args.file, _digest(text))], args.timing)
    state = _initial_state(pf)
    if state["kind"] == "group" and "cocycle" in state:
        state = {"kind": "deformation", "value": deform(state["value"], state["cocycle"])}
    if state["kind"] != "deformation":
        raise StepError("classify needs a deformation (k[I] presentation or group+cocycle)")
    di = classify(state["value"], args.witt_len, args.fdeg)
    report.add(_render_diextension(di))
    _emit(report, args.out)
    return EXIT_OK


def cmd_emit_catalog(args) -> int:
    import os

    from .cocycles import witt_cocycle

    os.makedirs(args.dir, exist_ok=True)
    files = {}
    for p in (0, 5):
        field = QQ if p == 0 else GF(p)
        tag = "q" if p == 0 else f"f{p}"
        files[f"ga_{tag}.grp"] = print_presentation(cat.additive_group(field))
        files[f"gm_{tag}.grp"] = print_presentation(cat.multiplicative_group(field))
        files[f"mu4_{tag}.grp"] = print_presentation(cat.roots_of_unity(field, 4))
        files[f"w2_{tag}.grp"] = print_presentation(cat.witt_group(field, 2))
        files[f"ga_gm_{tag}.grp"] = print_presentation(cat.ga_semidirect_gm(field))
        files[f"ga_x_ga_{tag}.grp"] = print_presentation(cat.ga_times_ga(field))
        files[f"z2_{tag}.grp"] = print_presentation(cat.constant_cyclic(field, 2))
    for p in (2, 3, 5):
        field = GF(p)
        files[f"alpha_{p}.grp"] = print_presentation(cat.frobenius_kernel(field))
        Ga = cat.additive_group(field)
        I1 = IModule(1)
        files[f"ga_witt_f{p}.grp"] = print_presentation(
            Ga, I1, cocycle=witt_cocycle(Ga, I1)
        )
        files[f"nonrigid_f{p}.grp"] = print_presentation(
            cat.nonrigid_frobenius_twist(p), IModule(1)
        )
    for name, text in sorted(files.items()):
        with open(os.path.join(args.dir, name), "w") as fh:
            fh.write(text)
    print(f"wrote {len(files)} files to {args.dir}")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dualgroups",
        description="Exact calculus for affine group schemes over dual numbers",
    )
    ap.add_argument("--out", help="write the report to a file")
    ap.add_argument("--timing", action="store_true", help="append a timing line")
    ap.add_argument("--trunc", type=int, default=4, help="group-algebra truncation")
    ap.add_argument("--witt-len", type=int, default=2, help="Witt vector length")
    ap.add_argument("--fdeg", type=int, default=4, help="F-degree bound")
    ap.add_argument("--prec", type=int, default=2, help="p-adic precision")
    ap.add_argument("--cohom-deg", type=int, default=4, help="coboundary solve degree bound")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("verify", help="run the Hopf axiom checks on a file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pipeline", help="chain operations on a presentation")
    sp.add_argument("file")
    sp.add_argument("steps", nargs="+",
                    help="steps: deform weil-restrict extract-cocycle weil-extend "
                         "baer-sum scale=<l> classify")
    sp.add_argument("--with", dest="with_file", help="second operand file")
    sp.set_defaults(func=cmd_pipeline)

    for name in ("weil-restrict", "deform", "extract-cocycle", "weil-extend"):
        sp = sub.add_parser(name, help=f"single-step pipeline: {name}")
        sp.add_argument("file")
        sp.set_defaults(func=lambda a, _n=name: _single_step(a, _n))

    sp = sub.add_parser("baer-sum", help="Baer sum of two extensions")
    sp.add_argument("file")
    sp.add_argument("--with", dest="with_file", required=True)
    sp.set_defaults(func=lambda a: _single_step(a, "baer-sum"))

    sp = sub.add_parser("scale", help="scalar multiple of an extension/deformation")
    sp.add_argument("lam")
    sp.add_argument("file")
    sp.set_defaults(func=lambda a: _single_step(a, f"scale={a.lam}"))

    sp = sub.add_parser("witt", help="Witt vector arithmetic")
    sp.add_argument("op", choices=["add", "mul", "neg", "ghost"])
    sp.add_argument("a")
    sp.add_argument("b", nargs="?")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_witt)

    sp = sub.add_parser("dmod", help="Dieudonne ring / module utilities")
    sp.add_argument("op", choices=["nf", "lie"])
    sp.add_argument("expr")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_dmod)

    sp = sub.add_parser("classify", help="Dieudonne classification of a deformation")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("emit-catalog", help="write the built-in fixture files")
    sp.add_argument("dir")
    sp.set_defaults(func=cmd_emit_catalog)
    return ap


def _single_step(args, step) -> int:
    text, pf = _load(args.file)
    digests = [(args.file, _digest(text))]
    if getattr(args, "with_file", None):
        with open(args.with_file) as fh:
            digests.append((args.with_file, _digest(fh.read())))
    report = Report(f"{step} {args.file}", digests, args.timing)
    state = _initial_state(pf)
    if step in ("weil-restrict", "extract-cocycle") and state["kind"] == "group" \
            and "cocycle" in state:
        state = {"kind": "deformation", "value": deform(state["value"], state["cocycle"])}
    if step in ("weil-extend", "baer-sum") or step.startswith("scale"):
        if state["kind"] == "group" and "cocycle" in state:
            ext = build_extension(state["value"], state["cocycle"])
            state = {"kind": "extension", "value": ext}
    if not hasattr(args, "with_file"):
        args.with_file = None
    _run_steps(state, [step], args, report)
    _emit(report, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, StepError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CocycleError, NotRigidError, NotADeformationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (BoundsError,) as exc:
        print(f"bounds: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedGroupError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())

"""Command line: ``eicat <command> [options]``; every run prints one JSON report."""

import argparse
import hashlib
import json
import sys
import time

from . import bredon, catalg, catalog, fincat, mackey, orbitcat, schemas

COMMANDS = ["check-ufp", "orbit-cat", "hereditary", "resolve", "ext", "tor", "bredon", "kunneth",
            "split", "chern", "mackey-dim", "mackey-F", "mackey-extend", "dinfty-witness", "survey"]

EXIT_OK, EXIT_VALIDATION, EXIT_COMPUTATION = 0, 2, 3


class UsageError(ValueError):
    pass


class UnknownCommand(UsageError):
    pass


# errors caused by the inputs rather than by the computation
_VALIDATION = (UsageError, schemas.SchemaViolation, fincat.CategoryError, orbitcat.GroupError,
               catalg.ModuleError, bredon.ComplexError, catalog.UnknownEntry, mackey.CategoryMismatch,
               json.JSONDecodeError, OSError, ValueError, KeyError)
_COMPUTATION = (catalg.ResolutionTooLong, orbitcat.GroupTooLarge, bredon.HomologyTooSpread,
                bredon.CoefficientsNotFlat, bredon.ZeroClass)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input resolution ------------------------------------------------------------

class Inputs:
    """Resolves the shared flags and records what was read for the digest."""

    def __init__(self, args):
        self.args = args
        self.read = {}
        self._category = None
        self._group = None

    def _load(self, path, kind):
        with open(path) as fh:
            text = fh.read()
        self.read[path] = hashlib.sha256(text.encode()).hexdigest()
        data = json.loads(text)
        schemas.validate(data, kind)
        return data

    def group(self):
        if self._group is None:
            spec = self.args.group
            if not spec:
                raise UsageError("--group is required")
            if spec.startswith("file:"):
                self._group = orbitcat.FiniteGroup.from_json(self._load(spec[5:], "group"), name=spec[5:])
            else:
                try:
                    self._group = orbitcat.parse_group(spec)
                except ValueError as exc:
                    raise orbitcat.GroupError("bad group spec %r: %s" % (spec, exc)) from None
        return self._group

    def family(self, g):
        spec = self.args.family
        if spec in (None, "all"):
            return orbitcat.SubgroupFamily.all_subgroups(g)
        data = self._load(spec[5:], "family") if spec.startswith("file:") else json.loads(spec)
        schemas.validate(data, "family")
        return orbitcat.SubgroupFamily(g, data)

    def category(self):
        if self._category is None:
            spec = self.args.category or ("orbit" if self.args.group else None)
            if not spec:
                raise UsageError("--category is required")
            if spec.startswith("catalog:"):
                self._category = catalog.get_category(spec[8:])
            elif spec.startswith("file:"):
                self._category = fincat.FiniteCategory.from_json(self._load(spec[5:], "category"),
                                                                 name=spec[5:])
            elif spec == "orbit":
                g = self.group()
                self._category = orbitcat.orbit_category(g, self.family(g))
            else:
                raise UsageError("--category must be catalog:NAME, file:PATH or orbit")
        return self._category

    def modules(self):
        specs = self.args.module or []
        if not specs:
            raise UsageError("--module is required")
        return [self.module(s) for s in specs]

    def module(self, spec):
        c = self.category()
        if spec.startswith("file:"):
            return catalg.CatModule.from_json(c, self._load(spec[5:], "module"))
        return catalog.get_module(spec[8:] if spec.startswith("catalog:") else spec, c)

    def free_complex(self):
        spec = self.args.complex
        if not spec:
            raise UsageError("--complex is required")
        c = self.category()
        if spec.startswith("file:"):
            return bredon.FreeBasedComplex.from_json(c, self._load(spec[5:], "free-complex"))
        x = catalog.get_complex(spec[8:] if spec.startswith("catalog:") else spec, c)
        if not isinstance(x, bredon.FreeBasedComplex):
            raise UsageError("%r is not a free based complex" % spec)
        return x

    def module_complex(self, spec):
        c = self.category()
        if spec.startswith("file:"):
            path = spec[5:]
            with open(path) as fh:
                data = json.load(fh)
            if "dims" in data:
                schemas.validate(data, "module")
                self.read[path] = hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()
                m = catalg.CatModule.from_json(c, data)
                return bredon.ModuleComplex(c, m.variance, {0: m}, {})
            return bredon.ModuleComplex.from_json(c, self._load(path, "module-complex"))
        name = spec[8:] if spec.startswith("catalog:") else spec
        if name.startswith(("module:", "nonsplit:")):
            x = catalog.get_complex(name, c)
        else:
            m = catalog.get_module(name, c)
            x = bredon.ModuleComplex(c, m.variance, {0: m}, {})
        if not isinstance(x, bredon.ModuleComplex):
            raise UsageError("%r is not a complex of modules" % spec)
        return x

    def coefficients_module(self):
        spec = self.args.coefficients
        if not spec:
            raise UsageError("--coefficients is required")
        return self.module(spec)

    def coefficients_complex(self):
        spec = self.args.coefficients
        if not spec:
            raise UsageError("--coefficients is required")
        return self.module_complex(spec)


# -- commands ----------------------------------------------------------------

def cmd_check_ufp(inp):
    c = inp.category()
    ok, witness = fincat.ufp_check(c)
    out = {"category": c.name, "ufp": ok, "unfactorisables": len(fincat.unfactorisables(c))}
    if witness is not None:
        out["witness"] = {"chain": list(witness[0]), "other_chain": list(witness[1])}
    return out


def cmd_orbit_cat(inp):
    g = inp.group()
    fam = inp.family(g)
    c = orbitcat.orbit_category(g, fam)
    homs = {"%s->%s" % (a, b): len(c.hom(a, b)) for a in c.objects for b in c.objects}
    return {
        "group": g.name,
        "order": g.order,
        "family": fam.to_json(),
        "objects": list(c.objects),
        "morphisms": len(c.morphisms),
        "hom_dims": homs,
        "ei": fincat.is_ei(c),
        "ufp": fincat.ufp_check(c)[0],
        "criterion": orbitcat.orbit_ufp_criterion(fam),
        "category_json": c.to_json(),
    }


def cmd_hereditary(inp):
    c = inp.category()
    return {"category": c.name, "hereditary": catalg.is_hereditary(c), "ufp": fincat.ufp_check(c)[0]}


def _resolution_report(res):
    return {
        "length": res.length,
        "terms": [t.dim_vector() for t in res.terms],
        "last_term_free": isinstance(res.terms[-1], catalg.FreeModule),
        "exact": res.check_exact(),
    }


def cmd_resolve(inp):
    m = inp.modules()[0]
    res = catalg.projective_resolution(m, inp.args.max_resolution)
    out = {"module": m.to_json(), "projective": res.length == 0}
    out.update(_resolution_report(res))
    return out


def cmd_ext(inp):
    mods = inp.modules()
    if len(mods) != 2:
        raise UsageError("ext needs two --module options (M then N)")
    m, n = mods
    dims = catalg.ext_groups(m, n, inp.args.degree_max, inp.args.max_resolution)
    return {"ext": {str(i): d for i, d in enumerate(dims)}, "M": m.dim_vector(), "N": n.dim_vector()}


def cmd_tor(inp):
    mods = inp.modules()
    if len(mods) != 2:
        raise UsageError("tor needs two --module options (contravariant X then covariant Y)")
    x, y = mods
    if x.variance != catalg.CONTRAVARIANT or y.variance != catalg.COVARIANT:
        raise catalg.VarianceMismatch("tor needs a contravariant then a covariant module")
    dims = catalg.tor_groups(x, y, inp.args.degree_max, inp.args.max_resolution)
    return {"tor": {str(i): d for i, d in enumerate(dims)}, "X": x.dim_vector(), "Y": y.dim_vector()}


def cmd_bredon(inp):
    x = inp.free_complex()
    m = inp.coefficients_module()
    return {"homology": bredon.bredon_homology(x, m).to_json(), "coefficients": m.dim_vector()}


def cmd_kunneth(inp):
    x = inp.free_complex()
    e = inp.coefficients_complex()
    return bredon.kunneth_check(e, x, inp.args.mode or "homology", inp.args.max_resolution).to_json()


def cmd_chern(inp):
    x = inp.free_complex()
    e = inp.coefficients_complex()
    return bredon.chern_character(e, x).to_json()


def cmd_split(inp):
    if not inp.args.complex:
        raise UsageError("--complex is required")
    c = inp.module_complex(inp.args.complex)
    res = bredon.is_derived_split(c, inp.args.mode or "auto", seed=inp.args.seed,
                                  max_len=inp.args.max_resolution)
    out = res.to_json()
    out["homology"] = {str(n): {str(o): v for o, v in d.items()}
                       for n, d in sorted(bredon.homology(c).dims().items())}
    return out


def cmd_mackey_dim(inp):
    g = inp.group()
    a = mackey.mackey_algebra(g)
    assoc, how = a.verify_associativity(seed=inp.args.seed)
    out = a.to_json()
    out.update({"dim": a.dimension, "associative": assoc, "associativity_check": how,
                "semisimple": mackey.is_semisimple(a),
                "identification_is_equivalence": mackey.check_identification(g)})
    return out


def cmd_mackey_f(inp):
    g = inp.group()
    rep = mackey.verify_F_isomorphism(g)
    out = rep.to_json()
    out["functoriality_failures"] = len(mackey.functor_I(g).functoriality_failures())
    return out


def cmd_mackey_extend(inp):
    m = inp.modules()[0]
    res = mackey.mackey_extension_exists(m, seed=inp.args.seed)
    out = res.to_json()
    out["module"] = m.to_json()
    out["projective"] = catalg.is_projective(m)
    return out


def cmd_dinfty(inp):
    return mackey.dinfty_witness().to_json()


def cmd_survey(inp):
    top = inp.args.max_order
    if top > 12:
        raise orbitcat.GroupTooLarge("the built-in group list is complete up to order 12")
    rows = []
    for spec in orbitcat.small_group_specs(top):
        g = orbitcat.parse_group(spec)
        for fam in orbitcat.all_families(g):
            c = orbitcat.orbit_category(g, fam)
            crit = orbitcat.orbit_ufp_criterion(fam)
            ufp = fincat.ufp_check(c)[0]
            her = catalg.is_hereditary(c)
            rows.append({"group": spec, "family": fam.to_json(), "criterion": crit, "ufp": ufp,
                         "hereditary": her, "agree": crit == ufp == her})
    return {"max_order": top, "rows": rows, "row_count": len(rows), "all_agree": all(r["agree"] for r in rows)}


_HANDLERS = {
    "check-ufp": cmd_check_ufp, "orbit-cat": cmd_orbit_cat, "hereditary": cmd_hereditary,
    "resolve": cmd_resolve, "ext": cmd_ext, "tor": cmd_tor, "bredon": cmd_bredon, "kunneth": cmd_kunneth,
    "split": cmd_split, "chern": cmd_chern, "mackey-dim": cmd_mackey_dim, "mackey-F": cmd_mackey_f,
    "mackey-extend": cmd_mackey_extend, "dinfty-witness": cmd_dinfty, "survey": cmd_survey,
}


# -- driver ------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="eicat", description="Finite EI categories, Bredon homology and Mackey algebras.")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("--category", help="catalog:NAME | file:PATH | orbit")
    p.add_argument("--group", help="cyclic:6 | dihedral:4 | sym:3 | ... | file:PATH")
    p.add_argument("--family", help="all (default), file:PATH or an inline JSON list of subgroups")
    p.add_argument("--module", action="append", help="catalog name or file:PATH; repeat for ext/tor")
    p.add_argument("--complex", help="catalog name or file:PATH")
    p.add_argument("--coefficients", help="catalog name or file:PATH")
    p.add_argument("--mode", help="kunneth: homology|cohomology; split: auto|two_stage|randomized")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-resolution", type=int, default=32)
    p.add_argument("--degree-max", type=int, default=3)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--timing", action="store_true", help="add wall-clock time (breaks byte identity)")
    return p


def _digest(args, read):
    payload = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "timing")}
    payload["files"] = read
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def run(argv):
    """Return ``(exit code, report dict, output path or None)``."""
    report = {"format": 1}
    inputs = None
    out = None
    try:
        args = build_parser().parse_args(argv)
        report["command"] = args.command
        if args.command not in _HANDLERS:
            raise UnknownCommand("unknown command %r; expected one of %s" % (args.command, ", ".join(COMMANDS)))
        out = args.out
        inputs = Inputs(args)
        start = time.perf_counter()
        report["result"] = _HANDLERS[args.command](inputs)
        if args.timing:
            report["seconds"] = round(time.perf_counter() - start, 3)
        code = EXIT_OK
    except _COMPUTATION as exc:
        report["error"] = _error(exc)
        code = EXIT_COMPUTATION
    except _VALIDATION as exc:
        report["error"] = _error(exc)
        code = EXIT_VALIDATION
    if inputs is not None:
        report["inputs"] = {k: v for k, v in sorted(vars(inputs.args).items())
                            if v is not None and k not in ("out", "timing")}
        report["inputs_digest"] = _digest(inputs.args, inputs.read)
    return code, report, out


def _error(exc):
    msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    out = {"type": type(exc).__name__, "message": str(msg)}
    loc = getattr(exc, "location", None)
    if loc:
        out["location"] = loc
    return out


def render(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None):
    code, report, out = run(sys.argv[1:] if argv is None else argv)
    text = render(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""crtool: batch front end for the hypersurface library.

    crtool <command> --spec FILE [--degree D] [--format json|text|latex] [--seed S] [--out PATH]

The spec file is JSON.  Most commands read a ``model``; see README for the
per-command keys.  A file of the form ``{"tasks": [...]}`` runs several tasks
and reports them in index order.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .classify import (ClassifyError, classify, equivalent_at_origin, equivalent_at_points,
                       homogeneity_test)
from .hypersurface import BlockSpec, HSModel, ModelError, SModel, enumerate_block_structures
from .jet import FAMILY_NAMES, FamilyTag, Jet, JetError, family_jet, normalize
from .levi import (LeviError, adjoint_operator, check_2nondegeneracy, jordan_type, kernel_field,
                   levi_form, model_adjoint)
from .ring import GaussRat, Poly, RationalFormatError, format_rat, parse_rat

COMMANDS = ("levi", "kernel", "adjoint", "symbol", "check2nd", "symmetries", "tangency",
            "classify", "equivalent", "homogeneous", "enumerate", "table")
FORMATS = ("json", "text", "latex")
DEFAULT_DEGREE = 12

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class SpecError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path or '<root>'}: {message}")


# spec parsing ---------------------------------------------------------------

@dataclass
class TaskSpec:
    command: str
    model: object = None
    params: dict = field(default_factory=dict)
    degree: int | None = None
    format: str = "json"
    seed: int = 0
    index: int = 0
    batch: bool = False


def _get(d, key, path, required=True):
    if not isinstance(d, dict):
        raise SpecError(path, "expected an object")
    if key not in d:
        if required:
            raise SpecError(f"{path}.{key}" if path else key, "missing required field")
        return None
    return d[key]


def _sub(path, key):
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _int(v, path, lo=None):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(path, f"expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise SpecError(path, f"must be >= {lo}, got {v}")
    return v


def _rat(v, path):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise SpecError(path, f"expected a rational string 'p/q', got {v!r}")
    try:
        return parse_rat(v if isinstance(v, str) else str(v))
    except RationalFormatError as exc:
        raise SpecError(path, str(exc)) from None


def parse_family(data, path):
    if isinstance(data, str):
        data = {"name": data}
    name = _get(data, "name", path)
    if name not in FAMILY_NAMES:
        raise SpecError(_sub(path, "name"), f"unknown family {name!r}")
    m = _get(data, "m", path, required=False)
    a = _get(data, "a", path, required=False)
    try:
        return FamilyTag(name, None if m is None else _int(m, _sub(path, "m"), 4),
                         None if a is None else _rat(a, _sub(path, "a")))
    except JetError as exc:
        raise SpecError(path, str(exc)) from None


def parse_jet(data, path):
    if not isinstance(data, dict):
        raise SpecError(path, "expected a jet object")
    if "family" in data:
        tag = parse_family(data["family"], _sub(path, "family"))
        order = _int(_get(data, "order", path), _sub(path, "order"), 4)
        return family_jet(tag, order)
    coeffs = _get(data, "coeffs", path)
    if not isinstance(coeffs, list) or not coeffs:
        raise SpecError(_sub(path, "coeffs"), "expected a non-empty list")
    cs = [_rat(c, _sub(_sub(path, "coeffs"), i)) for i, c in enumerate(coeffs)]
    order = _get(data, "order", path, required=False)
    order = len(cs) - 1 if order is None else _int(order, _sub(path, "order"), 0)
    if len(cs) > order + 1:
        raise SpecError(_sub(path, "coeffs"), f"{len(cs)} coefficients exceed order {order}")
    exact = _get(data, "exact", path, required=False)
    if exact is not None and not isinstance(exact, bool):
        raise SpecError(_sub(path, "exact"), "expected true or false")
    try:
        return Jet(cs, order, exact=bool(exact))
    except JetError as exc:
        raise SpecError(path, str(exc)) from None


def parse_model(data, path="model"):
    if not isinstance(data, dict):
        raise SpecError(path, "expected a model object")
    if "S" in data:
        S = data["S"]
        if not isinstance(S, list) or not all(isinstance(r, list) for r in S):
            raise SpecError(_sub(path, "S"), "expected a matrix (list of rows)")
        rows = [[_rat(x, _sub(_sub(_sub(path, "S"), i), j)) for j, x in enumerate(r)] for i, r in enumerate(S)]
        try:
            return SModel(rows)
        except ModelError as exc:
            raise SpecError(_sub(path, "S"), str(exc)) from None
    n = _int(_get(data, "n", path), _sub(path, "n"), 3)
    blocks = _get(data, "blocks", path)
    if not isinstance(blocks, list) or not blocks:
        raise SpecError(_sub(path, "blocks"), "expected a non-empty list of blocks")
    specs = []
    for i, b in enumerate(blocks):
        bp = _sub(_sub(path, "blocks"), i)
        size = _int(_get(b, "size", bp), _sub(bp, "size"), 1)
        sign = _get(b, "sign", bp, required=False)
        sign = 1 if sign is None else _int(sign, _sub(bp, "sign"))
        if sign not in (1, -1):
            raise SpecError(_sub(bp, "sign"), "must be 1 or -1")
        jd = _get(b, "jet", bp, required=False)
        jet = Jet.zero() if jd is None else parse_jet(jd, _sub(bp, "jet"))
        specs.append(BlockSpec(size, sign, jet))
    total = sum(b.size for b in specs)
    if total != n - 1:
        raise SpecError(_sub(path, "blocks"), f"block sizes sum to {total}, expected n - 1 = {n - 1}")
    return HSModel(n, tuple(specs))


NEEDS_MODEL = {"levi", "kernel", "adjoint", "symbol", "check2nd", "symmetries", "tangency", "classify"}


def _task_from(data, command, path, degree, fmt, seed, index, batch=False):
    if not isinstance(data, dict):
        raise SpecError(path, "expected an object")
    cmd = data.get("command", command)
    if cmd not in COMMANDS:
        raise SpecError(_sub(path, "command"), f"unknown command {cmd!r}")
    if not batch and command is not None and "command" in data and data["command"] != command:
        raise SpecError(_sub(path, "command"), f"file says {data['command']!r}, command line says {command!r}")
    model = None
    if cmd in NEEDS_MODEL or (cmd == "homogeneous" and "model" in data):
        model = parse_model(_get(data, "model", path), _sub(path, "model"))
    params = {}
    if cmd == "symbol":
        pt = data.get("point") or {}
        if not isinstance(pt, dict):
            raise SpecError(_sub(path, "point"), "expected an object variable -> 'p/q'")
        params["point"] = {k: _rat(v, _sub(_sub(path, "point"), k)) for k, v in pt.items()}
    elif cmd == "tangency":
        fields = data.get("fields")
        basis = data.get("basis")
        if fields is None and basis is None:
            raise SpecError(path, "tangency needs 'fields' or 'basis'")
        if fields is not None:
            if not isinstance(fields, list) or not fields:
                raise SpecError(_sub(path, "fields"), "expected a non-empty list")
            params["fields"] = [_field_spec(f, _sub(_sub(path, "fields"), i)) for i, f in enumerate(fields)]
        if basis is not None:
            if basis not in ("g", "f", "m"):
                raise SpecError(_sub(path, "basis"), "expected 'g', 'f' or 'm'")
            params["basis"] = basis
    elif cmd == "equivalent":
        params["f"] = parse_jet(_get(data, "f", path), _sub(path, "f"))
        params["fstar"] = parse_jet(_get(data, "fstar", path), _sub(path, "fstar"))
        pts = data.get("points")
        if pts is not None:
            if not isinstance(pts, list) or len(pts) != 2:
                raise SpecError(_sub(path, "points"), "expected [x1', x1'']")
            params["points"] = [_rat(p, _sub(_sub(path, "points"), i)) for i, p in enumerate(pts)]
    elif cmd == "homogeneous":
        if model is None:
            params["jet"] = parse_jet(_get(data, "jet", path), _sub(path, "jet"))
        n = data.get("n")
        params["n"] = None if n is None else _int(n, _sub(path, "n"), 3)
    elif cmd == "enumerate":
        params["n"] = _int(_get(data, "n", path), _sub(path, "n"), 3)
    elif cmd == "table":
        n = _int(_get(data, "n", path), _sub(path, "n"), 3)
        params["n"] = n
        basis = data.get("basis")
        fields = data.get("fields")
        if (basis is None) == (fields is None):
            raise SpecError(path, "table needs exactly one of 'basis' or 'fields'")
        if basis is not None and basis not in ("g", "f", "m"):
            raise SpecError(_sub(path, "basis"), "expected 'g', 'f' or 'm'")
        params["basis"] = basis
        if fields is not None:
            if not isinstance(fields, list) or not fields:
                raise SpecError(_sub(path, "fields"), "expected a non-empty list")
            params["fields"] = [_field_spec(f, _sub(_sub(path, "fields"), i)) for i, f in enumerate(fields)]
        over = data.get("over", "complex" if basis == "m" else "real")
        if over not in ("real", "complex"):
            raise SpecError(_sub(path, "over"), "expected 'real' or 'complex'")
        params["over"] = over
    d = data.get("degree", degree)
    if d is not None:
        d = _int(d, _sub(path, "degree"), 0)
    return TaskSpec(cmd, model, params, d, fmt, seed, index, batch)


def _field_spec(f, path):
    if isinstance(f, str):
        f = {"name": f}
    from .symmetry.catalog import CATALOG

    name = _get(f, "name", path)
    if name not in CATALOG:
        raise SpecError(_sub(path, "name"), f"unknown field {name!r}")
    out = {"name": name}
    for k, v in f.items():
        if k == "name":
            continue
        if k in ("j",):
            out[k] = _int(v, _sub(path, k), 1)
        elif k in ("m", "a"):
            out[k] = _rat(v, _sub(path, k))
        elif k == "family":
            out[k] = parse_family(v, _sub(path, k))
        elif k == "flip_quadratic":
            out[k] = bool(v)
        else:
            raise SpecError(_sub(path, k), "unknown field parameter")
    return out


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def parse_spec(path, command=None, degree=None, fmt="json", seed=0):
    """Validated list of TaskSpec from a spec file (one entry unless it holds ``tasks``)."""
    data = load_json(path)
    return parse_spec_data(data, command, degree, fmt, seed)


def parse_spec_data(data, command=None, degree=None, fmt="json", seed=0):
    if isinstance(data, dict) and "tasks" in data:
        tasks = data["tasks"]
        if not isinstance(tasks, list) or not tasks:
            raise SpecError("tasks", "expected a non-empty list")
        return [_task_from(t, command, f"tasks[{i}]", degree, fmt, seed, i, True) for i, t in enumerate(tasks)]
    return [_task_from(data, command, "", degree, fmt, seed, 0)]


# running --------------------------------------------------------------------

@dataclass
class Report:
    data: dict
    ok: bool = True
    latex: str | None = None
    usage_error: bool = False


def _matrix(M):
    return [[e for e in row] for row in M]


def _degree_for(task, limit):
    if limit is None:
        return None
    if task.degree is None:
        return min(DEFAULT_DEGREE, limit)
    if task.degree > limit:
        raise SpecError("degree", f"degree {task.degree} exceeds the jet-guaranteed range {limit}")
    return task.degree


def _model_json(M):
    if isinstance(M, SModel):
        return {"S": [[format_rat(x) for x in row] for row in M.S]}
    return M.to_json()


def _single_jet(M):
    if getattr(M, "blocks", None) is None or len(M.blocks) != 1:
        raise SpecError("model", "this command needs a single-block model")
    return M.blocks[0].jet


def run(task: TaskSpec) -> Report:
    cmd = task.command
    M = task.model
    out = {"command": cmd}
    if M is not None:
        out["model"] = _model_json(M)
    if cmd == "levi":
        out["levi_form"] = _matrix(levi_form(M))
        return Report(out)
    if cmd == "kernel":
        out["kernel_field"] = kernel_field(M)
        return Report(out)
    if cmd == "adjoint":
        v = kernel_field(M)
        A = adjoint_operator(M, v)
        out["adjoint"] = _matrix(A)
        if getattr(M, "blocks", None) is not None and len(M.blocks) == 1:
            out["matches_shift_sum"] = A == model_adjoint(M.n, M.table)
        return Report(out)
    if cmd == "symbol":
        A = adjoint_operator(M)
        jt = jordan_type(A, task.params.get("point"), seed=task.seed)
        out.update({"jordan_type": jt.partition, "ranks": jt.ranks, "constant": jt.constant,
                    "samples": jt.samples, "point": jt.point})
        if getattr(M, "blocks", None) is not None:
            out["block_sizes"] = sorted(M.sizes, reverse=True)
        return Report(out, jt.constant)
    if cmd == "check2nd":
        rep = check_2nondegeneracy(M, seed=task.seed)
        out.update(rep)
        return Report(out, rep["passed"])
    if cmd == "symmetries":
        from .symmetry import hol_basis
        from .symmetry.tangency import guaranteed_degree

        f = _single_jet(M)
        g, rec = normalize(f, M.n)
        if not rec.identity:
            M = M.with_jet(g)
            out["normalized_model"] = M.to_json()
        B = hol_basis(M)
        limits = [guaranteed_degree(X, M) for X in B.fields]
        lim = None if all(x is None for x in limits) else min(x for x in limits if x is not None)
        D = _degree_for(task, lim)
        verdicts = B.certify(M, D)
        out.update({"case": B.case, "dimension": B.dimension,
                    "family": None if B.family is None else B.family.to_json(),
                    "fields": [{"label": lab, "field": X, "tangency": verdicts[lab].to_json()}
                               for lab, X in zip(B.labels, B.fields)]})
        return Report(out, all(v.ok for v in verdicts.values()))
    if cmd == "tangency":
        from .symmetry import BASES, field_from_spec, tangency_check
        from .symmetry.tangency import guaranteed_degree

        items = []
        if "basis" in task.params:
            items += BASES[task.params["basis"]](M.n)
        for spec in task.params.get("fields", []):
            X, lab = field_from_spec(M.n, spec)
            items.append((lab, X))
        results = []
        ok = True
        for lab, X in items:
            D = _degree_for(task, guaranteed_degree(X, M))
            v = tangency_check(X, M, D)
            ok = ok and v.ok
            results.append({"label": lab, "field": X, "tangency": v.to_json()})
        out["results"] = results
        return Report(out, ok)
    if cmd == "classify":
        f = _single_jet(M)
        out.update(classify(f, M.n))
        return Report(out)
    if cmd == "equivalent":
        f, g = task.params["f"], task.params["fstar"]
        if "points" in task.params:
            res = equivalent_at_points(f, task.params["points"][0], g, task.params["points"][1])
        else:
            res = equivalent_at_origin(f, g)
        out.update(res.to_json())
        return Report(out, res.equivalent)
    if cmd == "homogeneous":
        f = _single_jet(M) if M is not None else task.params["jet"]
        g, rec = normalize(f, M.n if M is not None else task.params.get("n"))
        h = homogeneity_test(g)
        out.update(h.to_json())
        out["normalized"] = g.to_json()
        return Report(out, h.homogeneous)
    if cmd == "enumerate":
        n = task.params["n"]
        structs = enumerate_block_structures(n)
        out.update({"n": n, "count": len(structs), "expected_count": 2 ** ((n - 1) // 2) - 1,
                    "structures": [list(s) for s in structs]})
        return Report(out, len(structs) == 2 ** ((n - 1) // 2) - 1)
    if cmd == "table":
        from .symmetry import BASES, compare_ad_matrices, field_from_spec, heisenberg_check, structure_table

        n = task.params["n"]
        if task.params["basis"]:
            items = BASES[task.params["basis"]](n)
        else:
            items = [field_from_spec(n, s)[::-1] for s in task.params["fields"]]
        T = structure_table([X for _, X in items], [lab for lab, _ in items], over=task.params["over"])
        out.update(T.to_json())
        ok = T.closed and T.jacobi and T.antisymmetric
        if task.params["basis"] == "m":
            ad = compare_ad_matrices(n)
            hz, bad = heisenberg_check(n)
            out["ad_matrices_match"] = {"e_2n-1": ad["e_2n-1"], "e_2n": ad["e_2n"]}
            out["heisenberg"] = hz
            ok = ok and hz and ad["e_2n-1"] and ad["e_2n"]
        return Report(out, ok, T.to_latex())
    raise SpecError("command", f"unknown command {cmd!r}")


def run_many(tasks, jobs=1):
    """Run tasks (possibly concurrently); results come back in task-index order."""
    if jobs <= 1 or len(tasks) == 1:
        return [_guarded(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_guarded, tasks))
    return results


MODULE_ERRORS = (ModelError, JetError, LeviError, ClassifyError, ArithmeticError)


def _guarded(task):
    from .symmetry import FieldError, TangencyRangeError, TransportError

    try:
        return run(task)
    except SpecError:
        raise
    except (FieldError, TangencyRangeError, TransportError, *MODULE_ERRORS) as exc:
        return Report({"command": task.command, "error": {"type": type(exc).__name__, "message": str(exc)}},
                      False, usage_error=True)


# formatting -----------------------------------------------------------------

def jsonable(x):
    if isinstance(x, Poly):
        return x.to_json()
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, GaussRat):
        return {"re": format_rat(x.re), "im": format_rat(x.im)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return str(x)


def render_json(data):
    return json.dumps(jsonable(data), sort_keys=True, indent=2) + "\n"


def _text_leaf(x):
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    return str(x)


def _is_leafy(x):
    return not isinstance(x, (dict, list, tuple)) or (
        isinstance(x, (list, tuple)) and all(not isinstance(e, (dict, list, tuple)) for e in x))


def _text_lines(x, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(x, dict):
        for k in sorted(x, key=str):
            v = x[k]
            if hasattr(v, "to_json") and not isinstance(v, Poly):
                v = v.to_json()
            if _is_leafy(v):
                val = "[" + ", ".join(_text_leaf(e) for e in v) + "]" if isinstance(v, (list, tuple)) else _text_leaf(v)
                lines.append(f"{pad}{k}: {val}")
            else:
                lines.append(f"{pad}{k}:")
                lines.extend(_text_lines(v, indent + 1))
    elif isinstance(x, (list, tuple)):
        for i, v in enumerate(x):
            if hasattr(v, "to_json") and not isinstance(v, Poly):
                v = v.to_json()
            if _is_leafy(v):
                val = "[" + ", ".join(_text_leaf(e) for e in v) + "]" if isinstance(v, (list, tuple)) else _text_leaf(v)
                lines.append(f"{pad}- {val}")
            else:
                lines.append(f"{pad}-")
                lines.extend(_text_lines(v, indent + 1))
    else:
        lines.append(pad + _text_leaf(x))
    return lines


def render_text(data):
    return "\n".join(_text_lines(data)) + "\n"


_TEX_ESC = {"_": "\\_", "&": "\\&", "%": "\\%", "#": "\\#", "{": "\\{", "}": "\\}"}


def _tex(s):
    return "".join(_TEX_ESC.get(ch, ch) for ch in str(s))


def _latex_value(x):
    if isinstance(x, Poly):
        return f"${_poly_tex(x)}$"
    if isinstance(x, (list, tuple)) and x and all(isinstance(r, (list, tuple)) for r in x) and all(
            not isinstance(e, (dict, list, tuple)) for r in x for e in r):
        rows = " \\\\ ".join(" & ".join(_poly_tex(e) if isinstance(e, Poly) else _tex(_text_leaf(e)) for e in r)
                             for r in x)
        return f"$\\begin{{pmatrix}} {rows} \\end{{pmatrix}}$"
    if isinstance(x, (list, tuple)) and all(not isinstance(e, (dict, list, tuple)) for e in x):
        return ", ".join(_latex_value(e) for e in x) or "--"
    return _tex(_text_leaf(x))


def _poly_tex(p):
    s = str(p)
    return s.replace("*", " ").replace("zeta", "\\zeta").replace("d/d", "\\partial_")


def _latex_lines(x):
    lines = ["\\begin{description}"]
    items = sorted(x.items(), key=lambda kv: str(kv[0])) if isinstance(x, dict) else list(enumerate(x))
    for k, v in items:
        if hasattr(v, "to_json") and not isinstance(v, Poly):
            v = v.to_json()
        nested = isinstance(v, dict) or (isinstance(v, (list, tuple)) and any(isinstance(e, dict) for e in v))
        if nested and v:
            lines.append(f"\\item[{_tex(k)}]")
            lines.extend(_latex_lines(v))
        else:
            lines.append(f"\\item[{_tex(k)}] {_latex_value(v)}")
    lines.append("\\end{description}")
    return lines


def render_latex(report: Report):
    if report.latex is not None:
        return report.latex + "\n"
    return "\n".join(_latex_lines(report.data)) + "\n"


def render(reports, fmt, batch):
    if fmt == "json":
        return render_json({"tasks": [r.data for r in reports]} if batch else reports[0].data)
    if fmt == "text":
        if not batch:
            return render_text(reports[0].data)
        return "".join(f"# task {i}\n" + render_text(r.data) for i, r in enumerate(reports))
    if not batch:
        return render_latex(reports[0])
    return "".join(f"% task {i}\n" + render_latex(r) for i, r in enumerate(reports))


# entry point ----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="crtool", description="Exact computations on 2-nondegenerate CR hypersurface models.")
    p.add_argument("--version", action="version", version=f"crtool {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--spec", required=True, help="JSON spec file")
    p.add_argument("--degree", type=int, default=None, help=f"verification degree (default {DEFAULT_DEGREE}, capped by the jets)")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for batch files")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        tasks = parse_spec(args.spec, args.command, args.degree, args.format, args.seed)
        reports = run_many(tasks, args.jobs)
    except SpecError as exc:
        print(f"crtool: spec error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(reports, args.format, tasks[0].batch)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if any("error" in r.data for r in reports):
        print("crtool: " + "; ".join(r.data["error"]["message"] for r in reports if "error" in r.data),
              file=sys.stderr)
    if any(r.usage_error for r in reports):
        return EXIT_USAGE
    return EXIT_PASS if all(r.ok for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
